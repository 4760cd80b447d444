#include "vidshift/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "vidshift/error.hpp"

namespace vidshift {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

Prediction parse_pred(const std::string& text, int line) {
  auto fail = [&] { throw Error(ErrorCode::ParseError, "predictions line " + std::to_string(line) + ": bad pred '" + text + "'"); };
  if (text.find('|') == std::string::npos) {
    int id = 0;
    if (parse_number(text, id)) {
      if (id < 0) fail();
      return id;
    }
  }
  std::vector<double> scores;
  for (const auto& part : split(text, '|')) {
    double v = 0.0;
    if (!parse_number(part, v)) fail();
    scores.push_back(v);
  }
  return scores;
}

constexpr std::string_view kPredHeader = "video_id,model,perturbation,severity,crop_id,true_label,pred";

}  // namespace

std::vector<PredictionRecord> read_predictions(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "predictions: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kPredHeader)
    throw Error(ErrorCode::ParseError, "predictions: expected header '" + std::string(kPredHeader) + "'");
  std::vector<PredictionRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split(line, ',');
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "predictions line " + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 7) fail("expected 7 fields");
    PredictionRecord r;
    r.video_id = f[0];
    r.model = f[1];
    if (r.video_id.empty() || r.model.empty()) fail("empty video_id or model");
    if (!parse_number(f[3], r.severity)) fail("bad severity");
    if (f[2] == "clean") {
      if (r.severity != 0) fail("clean rows must have severity 0");
    } else {
      r.kind = parse_kind(f[2]);
      if (!r.kind) fail("unknown perturbation '" + f[2] + "'");
      if (r.severity < kMinSeverity || r.severity > kMaxSeverity) fail("severity must be 1..5");
    }
    if (!parse_number(f[4], r.crop_id)) fail("bad crop_id");
    if (!parse_number(f[5], r.true_label) || r.true_label < 0) fail("bad true_label");
    r.pred = parse_pred(f[6], lineno);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PredictionRecord> read_predictions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_predictions(in);
}

void write_predictions(std::ostream& out, std::span<const PredictionRecord> records) {
  out << kPredHeader << '\n';
  for (const auto& r : records) {
    out << r.video_id << ',' << r.model << ',' << (r.kind ? std::string(name(*r.kind)) : "clean") << ','
        << r.severity << ',' << r.crop_id << ',' << r.true_label << ',';
    if (const int* id = std::get_if<int>(&r.pred)) {
      out << *id;
    } else {
      const auto& v = std::get<std::vector<double>>(r.pred);
      for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[64];
        const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v[i]);
        out << (i ? "|" : "") << std::string_view(buf, p - buf);
      }
    }
    out << '\n';
  }
}

int fuse_crops(std::span<const Prediction> crops) {
  if (crops.empty()) throw Error(ErrorCode::EmptyGroup, "no crops to fuse");
  const bool scores = std::holds_alternative<std::vector<double>>(crops.front());
  for (const auto& c : crops)
    if (std::holds_alternative<std::vector<double>>(c) != scores)
      throw Error(ErrorCode::InvalidArgument, "a video mixes score vectors and class ids");

  if (scores) {
    const std::size_t classes = std::get<std::vector<double>>(crops.front()).size();
    if (classes == 0) throw Error(ErrorCode::InvalidArgument, "empty score vector");
    std::vector<double> sum(classes, 0.0);
    for (const auto& c : crops) {
      const auto& v = std::get<std::vector<double>>(c);
      if (v.size() != classes) throw Error(ErrorCode::InvalidArgument, "score vectors differ in length");
      for (std::size_t i = 0; i < classes; ++i) sum[i] += v[i];
    }
    // Dividing by the crop count does not change the argmax.
    return static_cast<int>(std::max_element(sum.begin(), sum.end()) - sum.begin());
  }

  std::map<int, std::size_t> votes;
  for (const auto& c : crops) ++votes[std::get<int>(c)];
  int best = votes.begin()->first;
  std::size_t best_votes = 0;
  for (const auto& [cls, n] : votes)
    if (n > best_votes) {  // ascending class order keeps the smallest id on ties
      best = cls;
      best_votes = n;
    }
  return best;
}

std::map<std::string, AccuracyTable> accuracy(std::span<const PredictionRecord> records) {
  std::map<std::string, int> labels;
  std::map<std::string, std::size_t> score_len;  // per model
  // model -> cell (nullopt kind = clean) -> video -> crops
  using CellId = std::pair<int, int>;  // (kind index or -1, severity)
  std::map<std::string, std::map<CellId, std::map<std::string, std::vector<Prediction>>>> groups;

  for (const auto& r : records) {
    if (r.kind.has_value() == (r.severity == 0))
      throw Error(ErrorCode::InvalidArgument, "record for '" + r.video_id + "': severity 0 iff clean");
    if (r.kind && (r.severity < kMinSeverity || r.severity > kMaxSeverity))
      throw Error(ErrorCode::InvalidArgument, "record for '" + r.video_id + "': severity outside 1..5");
    if (const auto [it, inserted] = labels.emplace(r.video_id, r.true_label); !inserted && it->second != r.true_label)
      throw Error(ErrorCode::InconsistentLabels, "video '" + r.video_id + "' has labels " +
                                                     std::to_string(it->second) + " and " + std::to_string(r.true_label));
    if (const auto* v = std::get_if<std::vector<double>>(&r.pred)) {
      if (const auto [it, inserted] = score_len.emplace(r.model, v->size()); !inserted && it->second != v->size())
        throw Error(ErrorCode::InvalidArgument, "model '" + r.model + "' has score vectors of different lengths");
    }
    const CellId cell{r.kind ? static_cast<int>(*r.kind) : -1, r.severity};
    groups[r.model][cell][r.video_id].push_back(r.pred);
  }

  std::map<std::string, AccuracyTable> out;
  for (const auto& [model, cells] : groups) {
    AccuracyTable& table = out[model];
    for (const auto& [cell, videos] : cells) {
      if (videos.empty()) throw Error(ErrorCode::EmptyGroup, "empty group for model '" + model + "'");
      std::size_t correct = 0;
      for (const auto& [video, crops] : videos)
        if (fuse_crops(crops) == labels.at(video)) ++correct;
      const double acc = 100.0 * double(correct) / double(videos.size());
      if (cell.first < 0) table.clean = acc;
      else table.cells[{static_cast<Kind>(cell.first), cell.second}] = acc;
    }
  }
  return out;
}

double gamma_abs(double clean_acc, double perturbed_acc) { return 1.0 - (clean_acc - perturbed_acc) / 100.0; }

double gamma_rel(double clean_acc, double perturbed_acc) {
  if (clean_acc == 0.0) throw Error(ErrorCode::DivisionByZeroClean, "clean accuracy is 0");
  return 1.0 - (clean_acc - perturbed_acc) / clean_acc;
}

double gamma_rel_perturb_trained(double clean_trained_acc, double perturb_trained_acc) {
  if (perturb_trained_acc == 0.0) throw Error(ErrorCode::DivisionByZero, "perturbation-trained accuracy is 0");
  return 1.0 - (clean_trained_acc - perturb_trained_acc) / perturb_trained_acc;
}

namespace {

struct Mean {
  double acc = 0, ga = 0, gr = 0;
  std::size_t n = 0;
  void add(double a, double x, double y) {
    acc += a;
    ga += x;
    gr += y;
    ++n;
  }
  GammaSummary finish() const {
    if (n == 0) return {};
    return {acc / double(n), ga / double(n), gr / double(n), n};
  }
};

}  // namespace

RobustnessScore aggregate(std::span<const GammaCell> cells, const AggregateOptions& options) {
  RobustnessScore score;
  for (const auto& c : cells) {
    if (!score.cells.emplace(CellKey{c.kind, c.severity}, c).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate cell " + std::string(name(c.kind)) + ":" +
                                                  std::to_string(c.severity));
  }
  std::set<Kind> kinds;
  for (const auto& [key, c] : score.cells) kinds.insert(key.first);

  std::vector<CellKey> missing;
  for (Kind k : kinds)
    for (int s : options.severities)
      if (!score.cells.count({k, s})) missing.emplace_back(k, s);
  if (!missing.empty() && !options.allow_partial) {
    std::string list;
    for (const auto& [k, s] : missing) list += (list.empty() ? "" : ", ") + std::string(name(k)) + ":" + std::to_string(s);
    throw Error(ErrorCode::IncompleteGrid, "missing cells: " + list);
  }
  score.missing = std::move(missing);

  std::map<Category, Mean> cat;
  Mean overall;
  for (Kind k : kinds) {
    Mean m;
    for (int s : options.severities)
      if (const auto it = score.cells.find({k, s}); it != score.cells.end())
        m.add(it->second.accuracy, it->second.gamma_abs, it->second.gamma_rel);
    if (m.n == 0) continue;
    const GammaSummary g = m.finish();
    score.per_kind[k] = g;
    cat[category_of(k)].add(g.accuracy, g.gamma_abs, g.gamma_rel);
    overall.add(g.accuracy, g.gamma_abs, g.gamma_rel);
  }
  for (const auto& [c, m] : cat) score.per_category[c] = m.finish();
  score.overall = overall.finish();
  return score;
}

RobustnessScore score_model(const AccuracyTable& table, const AggregateOptions& options) {
  if (!table.clean) throw Error(ErrorCode::InvalidArgument, "no clean accuracy; clean rows are required");
  std::vector<GammaCell> cells;
  for (const auto& [key, acc] : table.cells)
    cells.push_back({key.first, key.second, acc, gamma_abs(*table.clean, acc), gamma_rel(*table.clean, acc)});
  return aggregate(cells, options);
}

}  // namespace vidshift
