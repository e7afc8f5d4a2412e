#include "bpcr/synthgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bpcr::synth {

namespace {

constexpr Profile kProfiles[] = {Profile::GL, Profile::GM, Profile::GH, Profile::CL, Profile::CM, Profile::CH};

// Open interval (0, 1) from the top 53 bits.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_draw(std::mt19937_64& rng, NoiseModelKind kind) {
  if (kind == NoiseModelKind::Cauchy) return std::tan(kPi * (uniform_open(rng) - 0.5));
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace

std::string to_string(Profile profile) {
  switch (profile) {
    case Profile::GL: return "gl";
    case Profile::GM: return "gm";
    case Profile::GH: return "gh";
    case Profile::CL: return "cl";
    case Profile::CM: return "cm";
    case Profile::CH: return "ch";
  }
  return "?";
}

std::optional<Profile> parse_profile(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Profile p : kProfiles) {
    if (to_string(p) == lower) return p;
  }
  return std::nullopt;
}

std::vector<double> GroundTruth::function() const {
  std::vector<double> f(size());
  for (std::size_t m = 0; m < levels.size(); ++m) {
    std::fill(f.begin() + static_cast<std::ptrdiff_t>(boundaries[m]),
              f.begin() + static_cast<std::ptrdiff_t>(boundaries[m + 1]), levels[m]);
  }
  return f;
}

void GroundTruth::validate() const {
  if (boundaries.size() < 2 || boundaries.front() != 0) throw std::invalid_argument("ground truth: boundaries must start at 0");
  for (std::size_t m = 1; m < boundaries.size(); ++m) {
    if (boundaries[m] <= boundaries[m - 1]) throw std::invalid_argument("ground truth: boundaries must increase strictly");
  }
  if (levels.size() != boundaries.size() - 1) throw std::invalid_argument("ground truth: one level per segment");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) throw std::invalid_argument("ground truth: bad noise scale");
}

std::uint64_t default_seed(Profile profile) noexcept {
  return kDefaultSeedV1 + static_cast<std::uint64_t>(profile);
}

GroundTruth profile_truth(Profile profile, std::uint64_t seed, std::size_t n) {
  if (n < 4) throw std::invalid_argument("benchmark profiles need n >= 4");
  GroundTruth truth;
  truth.levels = {-1.0, 1.0, 0.0};
  truth.boundaries = {0, (n + 2) / 4, (n + 1) / 2, n};
  switch (profile) {
    case Profile::GL: case Profile::CL: truth.noise_scale = 0.1; break;
    case Profile::GM: case Profile::CM: truth.noise_scale = 0.32; break;
    case Profile::GH: case Profile::CH: truth.noise_scale = 1.0; break;
  }
  truth.noise_kind = (profile == Profile::GL || profile == Profile::GM || profile == Profile::GH)
                         ? NoiseModelKind::Gaussian
                         : NoiseModelKind::Cauchy;
  truth.seed = seed;
  return truth;
}

Sample generate(const GroundTruth& truth) {
  truth.validate();
  std::mt19937_64 rng(truth.seed);
  std::vector<double> y = truth.function();
  if (truth.noise_scale > 0.0) {
    for (double& v : y) v += truth.noise_scale * standard_draw(rng, truth.noise_kind);
  }
  return {DataSeries(std::move(y)), truth};
}

Sample generate(Profile profile, std::uint64_t seed, std::size_t n) {
  return generate(profile_truth(profile, seed, n));
}

}  // namespace bpcr::synth
