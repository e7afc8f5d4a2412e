#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpcr/numerics.hpp"
#include "bpcr/series.hpp"

namespace bpcr::synth {

/// Three-segment benchmarks: levels (-1, +1, 0) on the first quarter,
/// second quarter and second half; Gaussian or Cauchy noise at
/// low (0.1), medium (0.32) or high (1.0) scale.
enum class Profile { GL, GM, GH, CL, CM, CH };

std::string to_string(Profile profile);
// Case-insensitive "gl" .. "ch". Returns nullopt for anything else.
std::optional<Profile> parse_profile(std::string_view name);

struct GroundTruth {
  std::vector<double> levels;
  std::vector<std::size_t> boundaries;  // 0 = t_0 < ... < t_k = n
  NoiseModelKind noise_kind = NoiseModelKind::Gaussian;
  double noise_scale = 0.0;             // 0 gives y = f exactly
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return boundaries.empty() ? 0 : boundaries.back(); }
  std::vector<double> function() const;  // f_1..f_n
  // Throws std::invalid_argument on malformed boundaries/levels or negative scale.
  void validate() const;
};

// Versioned default seeds; bump the suffix if the generator ever changes.
inline constexpr std::uint64_t kDefaultSeedV1 = 20051029;
std::uint64_t default_seed(Profile profile) noexcept;

GroundTruth profile_truth(Profile profile, std::uint64_t seed, std::size_t n = 100);

struct Sample {
  DataSeries data;
  GroundTruth truth;
};

/// y_t = f_t + noise_scale * e_t with e_t standard Gaussian (Box-Muller)
/// or standard Cauchy (tan of a uniform), drawn from a 64-bit Mersenne
/// twister seeded with truth.seed. Deterministic across platforms.
Sample generate(const GroundTruth& truth);
Sample generate(Profile profile, std::uint64_t seed, std::size_t n = 100);

}  // namespace bpcr::synth
