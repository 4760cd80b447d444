#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vidshift/metrics.hpp"

namespace vidshift {

/// One line of scores.csv.
///   level: clean | cell | kind | category | overall
struct ScoreRow {
  std::string model;
  std::string level;
  std::string category;  // empty for clean/overall
  std::string kind;      // empty above kind level
  int severity = 0;      // 0 above cell level
  double accuracy = 0.0;
  std::optional<double> gamma_abs;
  std::optional<double> gamma_rel;
};

std::vector<ScoreRow> score_rows(const std::string& model, const AccuracyTable& table,
                                 const RobustnessScore& score);

/// Header: model,level,category,kind,severity,accuracy,gamma_abs,gamma_rel.
void write_scores(std::ostream& out, const std::vector<ScoreRow>& rows);
/// Throws ParseError.
std::vector<ScoreRow> read_scores(std::istream& in);

/// gamma^a / gamma^r per category plus the overall mean, one row per model,
/// values to two decimals.
std::string robustness_markdown(const std::vector<ScoreRow>& rows);

/// model,kind,severity,accuracy; severity 0 holds the clean accuracy.
std::string severity_series_csv(const std::vector<ScoreRow>& rows);

/// model,category,severity,accuracy averaged over the category's kinds.
std::string category_series_csv(const std::vector<ScoreRow>& rows);

}  // namespace vidshift
