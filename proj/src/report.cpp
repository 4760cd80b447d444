#include "vidshift/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "vidshift/error.hpp"

namespace vidshift {

namespace {

std::string num(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') out.emplace_back();
    else if (c != '\r') out.back() += c;
  }
  return out;
}

std::vector<std::string> models_in_order(const std::vector<ScoreRow>& rows) {
  std::vector<std::string> models;
  for (const auto& r : rows)
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
  return models;
}

constexpr std::string_view kScoresHeader = "model,level,category,kind,severity,accuracy,gamma_abs,gamma_rel";

}  // namespace

std::vector<ScoreRow> score_rows(const std::string& model, const AccuracyTable& table,
                                 const RobustnessScore& score) {
  std::vector<ScoreRow> rows;
  if (table.clean) rows.push_back({model, "clean", "", "", 0, *table.clean, std::nullopt, std::nullopt});
  for (const auto& [key, c] : score.cells)
    rows.push_back({model, "cell", std::string(name(category_of(key.first))), std::string(name(key.first)),
                    key.second, c.accuracy, c.gamma_abs, c.gamma_rel});
  for (const auto& [kind, g] : score.per_kind)
    rows.push_back({model, "kind", std::string(name(category_of(kind))), std::string(name(kind)), 0, g.accuracy,
                    g.gamma_abs, g.gamma_rel});
  for (const auto& [cat, g] : score.per_category)
    rows.push_back({model, "category", std::string(name(cat)), "", 0, g.accuracy, g.gamma_abs, g.gamma_rel});
  if (score.overall.count > 0)
    rows.push_back({model, "overall", "", "", 0, score.overall.accuracy, score.overall.gamma_abs,
                    score.overall.gamma_rel});
  return rows;
}

void write_scores(std::ostream& out, const std::vector<ScoreRow>& rows) {
  out << kScoresHeader << '\n';
  for (const auto& r : rows) {
    out << r.model << ',' << r.level << ',' << r.category << ',' << r.kind << ',' << r.severity << ','
        << num(r.accuracy) << ',' << (r.gamma_abs ? num(*r.gamma_abs) : "") << ','
        << (r.gamma_rel ? num(*r.gamma_rel) : "") << '\n';
  }
}

std::vector<ScoreRow> read_scores(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "scores: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScoresHeader) throw Error(ErrorCode::ParseError, "scores: unexpected header");
  std::vector<ScoreRow> rows;
  int lineno = 1;
  static const std::set<std::string> levels = {"clean", "cell", "kind", "category", "overall"};
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "scores line " + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 8) fail("expected 8 fields");
    ScoreRow r;
    r.model = f[0];
    r.level = f[1];
    if (!levels.count(r.level)) fail("unknown level '" + r.level + "'");
    r.category = f[2];
    if (!r.category.empty() && !parse_category(r.category)) fail("unknown category");
    r.kind = f[3];
    if (!r.kind.empty() && !parse_kind(r.kind)) fail("unknown kind");
    auto parse_d = [&](const std::string& s, double& v) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) fail("bad number '" + s + "'");
    };
    {
      const auto [p, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), r.severity);
      if (ec != std::errc{} || p != f[4].data() + f[4].size()) fail("bad severity");
    }
    parse_d(f[5], r.accuracy);
    if (!f[6].empty()) parse_d(f[6], r.gamma_abs.emplace());
    if (!f[7].empty()) parse_d(f[7], r.gamma_rel.emplace());
    if (r.level != "clean" && (!r.gamma_abs || !r.gamma_rel)) fail("gamma values required");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string robustness_markdown(const std::vector<ScoreRow>& rows) {
  static constexpr Category order[] = {Category::Noise, Category::Blur, Category::Temporal, Category::Digital,
                                       Category::Camera};
  std::ostringstream md;
  md << "| Network |";
  for (Category c : order) md << ' ' << name(c) << " γa | " << name(c) << " γr |";
  md << " Mean γa | Mean γr |\n|---|";
  for (int i = 0; i < 12; ++i) md << "---|";
  md << '\n';
  for (const auto& model : models_in_order(rows)) {
    md << "| " << model << " |";
    for (Category c : order) {
      const ScoreRow* hit = nullptr;
      for (const auto& r : rows)
        if (r.model == model && r.level == "category" && r.category == name(c)) hit = &r;
      if (hit) md << ' ' << fixed2(*hit->gamma_abs) << " | " << fixed2(*hit->gamma_rel) << " |";
      else md << " n/a | n/a |";
    }
    const ScoreRow* overall = nullptr;
    for (const auto& r : rows)
      if (r.model == model && r.level == "overall") overall = &r;
    if (overall) md << ' ' << fixed2(*overall->gamma_abs) << " | " << fixed2(*overall->gamma_rel) << " |\n";
    else md << " n/a | n/a |\n";
  }
  return md.str();
}

std::string severity_series_csv(const std::vector<ScoreRow>& rows) {
  std::ostringstream out;
  out << "model,kind,severity,accuracy\n";
  for (const auto& model : models_in_order(rows)) {
    std::optional<double> clean;
    for (const auto& r : rows)
      if (r.model == model && r.level == "clean") clean = r.accuracy;
    for (Kind k : kAllKinds) {
      std::map<int, double> series;
      for (const auto& r : rows)
        if (r.model == model && r.level == "cell" && r.kind == name(k)) series[r.severity] = r.accuracy;
      if (series.empty()) continue;
      if (clean) out << model << ',' << name(k) << ",0," << num(*clean) << '\n';
      for (const auto& [s, a] : series) out << model << ',' << name(k) << ',' << s << ',' << num(a) << '\n';
    }
  }
  return out.str();
}

std::string category_series_csv(const std::vector<ScoreRow>& rows) {
  std::ostringstream out;
  out << "model,category,severity,accuracy\n";
  for (const auto& model : models_in_order(rows)) {
    std::optional<double> clean;
    for (const auto& r : rows)
      if (r.model == model && r.level == "clean") clean = r.accuracy;
    for (Category c : kAllCategories) {
      std::map<int, std::pair<double, int>> acc;
      for (const auto& r : rows)
        if (r.model == model && r.level == "cell" && r.category == name(c)) {
          acc[r.severity].first += r.accuracy;
          acc[r.severity].second += 1;
        }
      if (acc.empty()) continue;
      if (clean) out << model << ',' << name(c) << ",0," << num(*clean) << '\n';
      for (const auto& [s, sum] : acc)
        out << model << ',' << name(c) << ',' << s << ',' << num(sum.first / sum.second) << '\n';
    }
  }
  return out.str();
}

}  // namespace vidshift
