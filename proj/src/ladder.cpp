#include "vidshift/ladder.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vidshift/error.hpp"
#include "vidshift/seed.hpp"

namespace vidshift {

double ParamSet::get(std::string_view name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw Error(ErrorCode::InvalidArgument, "no ladder parameter '" + std::string(name) + "'");
}

void ParamSet::set(std::string_view name, double value) {
  for (auto& [k, v] : values)
    if (k == name) {
      v = value;
      return;
    }
  values.emplace_back(std::string(name), value);
}

std::vector<ParamInfo> ladder_params(Kind kind) {
  switch (kind) {
    case Kind::Gaussian:
    case Kind::Speckle: return {{"sigma", Trend::Increasing}};
    case Kind::Shot: return {{"lambda", Trend::Decreasing}};
    case Kind::Impulse: return {{"p", Trend::Increasing}};
    case Kind::Defocus: return {{"radius", Trend::Increasing}};
    case Kind::Motion: return {{"radius", Trend::Increasing}, {"sigma", Trend::Increasing}};
    case Kind::Zoom: return {{"max_zoom", Trend::Increasing}, {"step", Trend::Fixed}};
    case Kind::Jpeg: return {{"quality", Trend::Decreasing}};
    case Kind::Mpeg1:
    case Kind::Mpeg2: return {{"bitrate_fraction", Trend::Decreasing}};
    case Kind::Sampling:
    case Kind::Reversal: return {{"skip", Trend::Increasing}};
    case Kind::Jumbling: return {{"segment", Trend::Increasing}};
    case Kind::BoxJumbling: return {{"segment", Trend::Decreasing}};
    case Kind::Freezing: return {{"p", Trend::Increasing}};
    case Kind::StaticRotation: return {{"angle", Trend::Increasing}};
    case Kind::RandomRotation: return {{"bound", Trend::Increasing}};
    case Kind::Translation: return {{"jitter", Trend::Increasing}};
  }
  return {};
}

namespace {

using Row = std::array<double, 5>;

SeverityLadder build_defaults() {
  SeverityLadder l;
  auto put = [&](Kind k, std::string_view param, const Row& row) {
    for (int s = 0; s < 5; ++s) l.set(k, s + 1, param, row[s]);
  };
  put(Kind::Gaussian, "sigma", {0.04, 0.08, 0.12, 0.18, 0.26});
  put(Kind::Shot, "lambda", {60, 25, 12, 5, 3});
  put(Kind::Impulse, "p", {0.02, 0.04, 0.07, 0.10, 0.17});
  put(Kind::Speckle, "sigma", {0.10, 0.20, 0.35, 0.45, 0.60});
  put(Kind::Defocus, "radius", {2, 3, 4, 6, 8});
  const Row motion{5, 7, 9, 12, 15};
  put(Kind::Motion, "radius", motion);
  put(Kind::Motion, "sigma", {motion[0] / 3, motion[1] / 3, motion[2] / 3, motion[3] / 3, motion[4] / 3});
  put(Kind::Zoom, "max_zoom", {1.06, 1.11, 1.16, 1.21, 1.26});
  put(Kind::Zoom, "step", {0.01, 0.01, 0.01, 0.01, 0.01});
  put(Kind::Jpeg, "quality", {25, 18, 15, 10, 7});
  put(Kind::Mpeg1, "bitrate_fraction", {0.50, 0.30, 0.20, 0.12, 0.07});
  put(Kind::Mpeg2, "bitrate_fraction", {0.50, 0.30, 0.20, 0.12, 0.07});
  put(Kind::Sampling, "skip", {2, 3, 4, 5, 6});
  put(Kind::Reversal, "skip", {2, 3, 4, 5, 6});
  put(Kind::Jumbling, "segment", {4, 8, 16, 32, 64});
  put(Kind::BoxJumbling, "segment", {64, 32, 16, 8, 4});
  put(Kind::Freezing, "p", {0.1, 0.2, 0.3, 0.4, 0.5});
  put(Kind::StaticRotation, "angle", {10, 20, 30, 45, 60});
  put(Kind::RandomRotation, "bound", {10, 20, 30, 45, 60});
  put(Kind::Translation, "jitter", {4, 8, 12, 14, 16});
  return l;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void check_severity(int severity) {
  if (severity < kMinSeverity || severity > kMaxSeverity)
    throw Error(ErrorCode::InvalidArgument, "severity " + std::to_string(severity) + " outside 1..5");
}

}  // namespace

std::string to_string(const ParamSet& params) {
  std::string out;
  for (const auto& [k, v] : params.values) {
    if (!out.empty()) out += ", ";
    out += k + " = " + format_number(v);
  }
  return out;
}

const SeverityLadder& SeverityLadder::defaults() {
  static const SeverityLadder ladder = build_defaults();
  return ladder;
}

const ParamSet& SeverityLadder::at(Kind kind, int severity) const {
  check_severity(severity);
  const auto it = table_.find(kind);
  if (it == table_.end())
    throw Error(ErrorCode::UnsupportedSpec, "no ladder for kind " + std::string(name(kind)));
  return it->second[severity - 1];
}

void SeverityLadder::set(Kind kind, int severity, std::string_view param, double value) {
  check_severity(severity);
  table_[kind][severity - 1].set(param, value);
}

namespace {

std::string body_of(const std::map<Kind, std::array<ParamSet, 5>>& table) {
  std::string out;
  for (Kind k : kAllKinds) {
    const auto it = table.find(k);
    if (it == table.end()) continue;
    for (int s = 0; s < 5; ++s)
      for (const auto& [param, value] : it->second[s].values)
        out += std::string(name(k)) + "." + std::to_string(s + 1) + "." + param + " = " +
               format_number(value) + "\n";
  }
  return out;
}

}  // namespace

std::string SeverityLadder::version() const {
  if (this == &defaults() || *this == defaults()) return "v1";
  const std::string body = body_of(table_);
  const auto h = fnv1a64({reinterpret_cast<const std::uint8_t*>(body.data()), body.size()});
  std::ostringstream os;
  os << "custom-" << std::hex << h;
  return os.str();
}

std::string SeverityLadder::dump() const {
  return "# vidshift severity ladders: kind.severity.parameter = value\nversion = " + version() +
         "\n" + body_of(table_);
}

SeverityLadder SeverityLadder::parse(std::string_view text) {
  SeverityLadder ladder = defaults();
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "ladder line " + std::to_string(lineno) + ": " + why);
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value_text = trim(std::string_view(line).substr(eq + 1));
    if (key == "version") continue;  // informational; recomputed from content

    const auto d1 = key.find('.');
    const auto d2 = d1 == std::string::npos ? d1 : key.find('.', d1 + 1);
    if (d2 == std::string::npos) fail("key must be kind.severity.parameter");
    const auto kind = parse_kind(std::string_view(key).substr(0, d1));
    if (!kind) fail("unknown kind in '" + key + "'");
    int severity = 0;
    {
      const auto sev = std::string_view(key).substr(d1 + 1, d2 - d1 - 1);
      const auto [p, ec] = std::from_chars(sev.data(), sev.data() + sev.size(), severity);
      if (ec != std::errc{} || p != sev.data() + sev.size() || severity < 1 || severity > 5)
        fail("bad severity in '" + key + "'");
    }
    const std::string param = key.substr(d2 + 1);
    bool known = false;
    for (const auto& info : ladder_params(*kind)) known = known || info.name == param;
    if (!known) fail("kind " + std::string(name(*kind)) + " has no parameter '" + param + "'");
    double value = 0.0;
    const auto [p, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || p != value_text.data() + value_text.size()) fail("bad number '" + value_text + "'");
    ladder.set(*kind, severity, param, value);
  }
  return ladder;
}

SeverityLadder SeverityLadder::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open ladder file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::vector<std::string> SeverityLadder::monotonicity_violations() const {
  std::vector<std::string> out;
  for (const auto& [kind, rows] : table_) {
    for (const auto& info : ladder_params(kind)) {
      if (info.trend == Trend::Fixed) continue;
      for (int s = 1; s < 5; ++s) {
        const double prev = rows[s - 1].get(info.name);
        const double cur = rows[s].get(info.name);
        const bool ok = info.trend == Trend::Increasing ? cur > prev : cur < prev;
        if (!ok)
          out.push_back(std::string(name(kind)) + "." + std::string(info.name) + " severity " +
                        std::to_string(s) + "->" + std::to_string(s + 1) + ": " +
                        format_number(prev) + " -> " + format_number(cur));
      }
    }
  }
  return out;
}

}  // namespace vidshift
