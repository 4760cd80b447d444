#include "vidshift/spec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "vidshift/error.hpp"

namespace vidshift {

Category category_of(Kind kind) {
  switch (kind) {
    case Kind::Gaussian:
    case Kind::Shot:
    case Kind::Impulse:
    case Kind::Speckle: return Category::Noise;
    case Kind::Defocus:
    case Kind::Motion:
    case Kind::Zoom: return Category::Blur;
    case Kind::Jpeg:
    case Kind::Mpeg1:
    case Kind::Mpeg2: return Category::Digital;
    case Kind::Sampling:
    case Kind::Reversal:
    case Kind::Jumbling:
    case Kind::BoxJumbling:
    case Kind::Freezing: return Category::Temporal;
    case Kind::StaticRotation:
    case Kind::RandomRotation:
    case Kind::Translation: return Category::Camera;
  }
  throw Error(ErrorCode::UnsupportedSpec, "unknown kind");
}

std::vector<Kind> kinds_in(Category category) {
  std::vector<Kind> out;
  for (Kind k : kAllKinds)
    if (category_of(k) == category) out.push_back(k);
  return out;
}

std::string_view name(Kind kind) {
  switch (kind) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Shot: return "shot";
    case Kind::Impulse: return "impulse";
    case Kind::Speckle: return "speckle";
    case Kind::Defocus: return "defocus";
    case Kind::Motion: return "motion";
    case Kind::Zoom: return "zoom";
    case Kind::Jpeg: return "jpeg";
    case Kind::Mpeg1: return "mpeg1";
    case Kind::Mpeg2: return "mpeg2";
    case Kind::Sampling: return "sampling";
    case Kind::Reversal: return "reversal";
    case Kind::Jumbling: return "jumbling";
    case Kind::BoxJumbling: return "box_jumbling";
    case Kind::Freezing: return "freezing";
    case Kind::StaticRotation: return "static_rotation";
    case Kind::RandomRotation: return "random_rotation";
    case Kind::Translation: return "translation";
  }
  return "unknown";
}

std::string_view name(Category category) {
  switch (category) {
    case Category::Noise: return "Noise";
    case Category::Blur: return "Blur";
    case Category::Digital: return "Digital";
    case Category::Temporal: return "Temporal";
    case Category::Camera: return "Camera";
  }
  return "Unknown";
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::optional<Kind> parse_kind(std::string_view text) {
  for (Kind k : kAllKinds)
    if (iequals(name(k), text)) return k;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view text) {
  for (Category c : kAllCategories)
    if (iequals(name(c), text)) return c;
  return std::nullopt;
}

bool is_temporal(Kind kind) { return category_of(kind) == Category::Temporal; }
bool is_mpeg(Kind kind) { return kind == Kind::Mpeg1 || kind == Kind::Mpeg2; }

void validate(const PerturbationSpec& spec) {
  if (spec.severity < kMinSeverity || spec.severity > kMaxSeverity)
    throw Error(ErrorCode::UnsupportedSpec,
                std::string(name(spec.kind)) + " severity " + std::to_string(spec.severity) +
                    " outside 1..5");
  if (std::find(kAllKinds.begin(), kAllKinds.end(), spec.kind) == kAllKinds.end())
    throw Error(ErrorCode::UnsupportedSpec, "unknown kind");
}

std::vector<PerturbationSpec> enumerate_specs() {
  std::vector<PerturbationSpec> out;
  out.reserve(kAllKinds.size() * kMaxSeverity);
  for (Kind k : kAllKinds)
    for (int s = kMinSeverity; s <= kMaxSeverity; ++s) out.push_back({k, s});
  return out;
}

std::string to_string(const PerturbationSpec& spec) {
  return std::string(name(spec.kind)) + ":" + std::to_string(spec.severity);
}

std::optional<PerturbationSpec> parse_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto kind = parse_kind(text.substr(0, colon));
  if (!kind) return std::nullopt;
  const auto digits = text.substr(colon + 1);
  int severity = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), severity);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  if (severity < kMinSeverity || severity > kMaxSeverity) return std::nullopt;
  return PerturbationSpec{*kind, severity};
}

std::vector<PerturbationSpec> filter_specs(std::string_view filter) {
  const auto all = enumerate_specs();
  if (filter.empty()) return all;
  std::vector<bool> keep(all.size(), false);
  std::size_t pos = 0;
  while (pos <= filter.size()) {
    auto comma = filter.find(',', pos);
    if (comma == std::string_view::npos) comma = filter.size();
    const auto token = filter.substr(pos, comma - pos);
    pos = comma + 1;
    if (token.empty()) continue;
    for (std::size_t i = 0; i < all.size(); ++i) {
      bool hit = false;
      if (const auto c = parse_category(token)) hit = all[i].category() == *c;
      else if (const auto k = parse_kind(token)) hit = all[i].kind == *k;
      else if (const auto s = parse_spec(token)) hit = all[i] == *s;
      else throw Error(ErrorCode::UnsupportedSpec, "unknown filter token '" + std::string(token) + "'");
      if (hit) keep[i] = true;
    }
  }
  std::vector<PerturbationSpec> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (keep[i]) out.push_back(all[i]);
  return out;
}

}  // namespace vidshift
