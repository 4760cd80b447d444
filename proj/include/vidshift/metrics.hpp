#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vidshift/spec.hpp"

namespace vidshift {

/// Either a per-class score vector or a hard class id.
using Prediction = std::variant<std::vector<double>, int>;

struct PredictionRecord {
  std::string video_id;
  std::string model;
  std::optional<Kind> kind;  // nullopt means the clean run
  int severity = 0;          // 0 iff clean
  int crop_id = 0;
  int true_label = 0;
  Prediction pred;
};

/// Header: video_id,model,perturbation,severity,crop_id,true_label,pred.
/// `pred` is a class id or a '|'-separated score vector. Throws ParseError.
std::vector<PredictionRecord> read_predictions(std::istream& in);
std::vector<PredictionRecord> read_predictions_file(const std::string& path);
void write_predictions(std::ostream& out, std::span<const PredictionRecord> records);

using CellKey = std::pair<Kind, int>;

/// Top-1 accuracies in percent for one model.
struct AccuracyTable {
  std::optional<double> clean;
  std::map<CellKey, double> cells;
};

/// Per-video fusion: argmax of the mean score vector over crops, or majority
/// vote over hard ids with the smallest class winning ties. Mixing both forms
/// within one video is an InvalidArgument.
int fuse_crops(std::span<const Prediction> crops);

/// Accuracy per model. Throws InconsistentLabels when a video carries two
/// labels for one model, InvalidArgument on records violating
/// "severity 0 iff clean" or with ragged score vectors.
std::map<std::string, AccuracyTable> accuracy(std::span<const PredictionRecord> records);

double gamma_abs(double clean_acc, double perturbed_acc);

/// Throws DivisionByZeroClean when clean_acc == 0.
double gamma_rel(double clean_acc, double perturbed_acc);

/// 1 - (A_f_p - A_fp_p) / A_fp_p, scoring a clean-trained model against one
/// trained on perturbations. Throws DivisionByZero when A_fp_p == 0.
double gamma_rel_perturb_trained(double clean_trained_acc, double perturb_trained_acc);

struct GammaCell {
  Kind kind{};
  int severity = 1;
  double accuracy = 0.0;
  double gamma_abs = 0.0;
  double gamma_rel = 0.0;
};

struct GammaSummary {
  double accuracy = 0.0;
  double gamma_abs = 0.0;
  double gamma_rel = 0.0;
  std::size_t count = 0;
};

struct RobustnessScore {
  std::map<CellKey, GammaCell> cells;
  std::map<Kind, GammaSummary> per_kind;          // mean over severities
  std::map<Category, GammaSummary> per_category;  // mean over the category's kinds
  GammaSummary overall;                           // mean over all kinds
  std::vector<CellKey> missing;                   // only filled with allow_partial
};

struct AggregateOptions {
  /// Severities every present kind must cover.
  std::vector<int> severities{1, 2, 3, 4, 5};
  bool allow_partial = false;
};

/// Order-independent. Throws IncompleteGrid (listing the missing cells)
/// unless allow_partial, in which case means run over available cells.
RobustnessScore aggregate(std::span<const GammaCell> cells, const AggregateOptions& options = {});

/// gamma cells for every perturbed accuracy, then `aggregate`. Throws
/// InvalidArgument without a clean accuracy.
RobustnessScore score_model(const AccuracyTable& table, const AggregateOptions& options = {});

}  // namespace vidshift
