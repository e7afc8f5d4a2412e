#include <stdexcept>

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/regression.hpp"

namespace bpcr {

std::vector<ScanPoint> evidence_scan(const DataSeries& y, const Hyperparameters& hp, NoiseModelKind noise,
                                     NoiseModelKind prior, std::span<const double> sigma_grid, std::size_t k_max) {
  if (sigma_grid.empty()) throw std::invalid_argument("evidence_scan: empty sigma grid");
  std::vector<ScanPoint> out;
  out.reserve(sigma_grid.size());
  for (double sigma : sigma_grid) {
    if (!(sigma > 0.0)) throw std::domain_error("evidence_scan: sigma values must be positive");
    Hyperparameters local = hp;
    local.sigma = sigma;
    const MomentTables mt = build_moment_tables(y, local, noise, prior);
    const SegmentCountPosterior post = evidence_and_ck(build_dp(mt, k_max));
    out.push_back({sigma, post.log_evidence, post.k_hat});
  }
  return out;
}

}  // namespace bpcr
