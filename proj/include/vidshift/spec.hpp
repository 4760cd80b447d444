#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vidshift {

enum class Category { Noise, Blur, Digital, Temporal, Camera };

enum class Kind {
  // Noise
  Gaussian,
  Shot,
  Impulse,
  Speckle,
  // Blur
  Defocus,
  Motion,
  Zoom,
  // Digital
  Jpeg,
  Mpeg1,
  Mpeg2,
  // Temporal
  Sampling,
  Reversal,
  Jumbling,
  BoxJumbling,
  Freezing,
  // Camera
  StaticRotation,
  RandomRotation,
  Translation,
};

inline constexpr int kMinSeverity = 1;
inline constexpr int kMaxSeverity = 5;

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::Noise, Category::Blur, Category::Digital, Category::Temporal, Category::Camera};

inline constexpr std::array<Kind, 18> kAllKinds = {
    Kind::Gaussian,       Kind::Shot,           Kind::Impulse,     Kind::Speckle,  Kind::Defocus,
    Kind::Motion,         Kind::Zoom,           Kind::Jpeg,        Kind::Mpeg1,    Kind::Mpeg2,
    Kind::Sampling,       Kind::Reversal,       Kind::Jumbling,    Kind::BoxJumbling,
    Kind::Freezing,       Kind::StaticRotation, Kind::RandomRotation, Kind::Translation};

Category category_of(Kind kind);
std::vector<Kind> kinds_in(Category category);

std::string_view name(Kind kind);
std::string_view name(Category category);
std::optional<Kind> parse_kind(std::string_view text);
std::optional<Category> parse_category(std::string_view text);

bool is_temporal(Kind kind);
bool is_mpeg(Kind kind);

struct PerturbationSpec {
  Kind kind{};
  int severity = kMinSeverity;

  Category category() const { return category_of(kind); }
  friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

/// Throws UnsupportedSpec when the severity is outside 1..5.
void validate(const PerturbationSpec& spec);

/// All 90 (kind, severity) pairs, kind-major in declaration order.
std::vector<PerturbationSpec> enumerate_specs();

/// "<kind>:<severity>", e.g. "gaussian:3".
std::string to_string(const PerturbationSpec& spec);
std::optional<PerturbationSpec> parse_spec(std::string_view text);

/// Selects specs by a comma-separated list of category names, kind names or
/// kind:severity tokens. An empty filter selects everything.
std::vector<PerturbationSpec> filter_specs(std::string_view filter);

}  // namespace vidshift
