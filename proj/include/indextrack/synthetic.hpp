#pragma once

#include <cstdint>
#include <iosfwd>

#include "indextrack/market_data.hpp"

namespace indextrack {

/// Factor-model generator: r_t = L f_t + eps_t, prices compounded from a flat
/// $100 base. When plant_replicator is set, the loadings of k_true randomly
/// chosen assets are recentered so their equal-weight combination carries
/// exactly the same factor exposure as the uniform benchmark over all assets;
/// with noise_std = 0 that combination replicates the benchmark return series
/// exactly (not just in expectation).
struct SyntheticSpec {
  Eigen::Index n_assets = 50;
  Eigen::Index n_days = 1300;  ///< price rows written; return rows = n_days - 1
  Eigen::Index k_true = 10;
  std::uint64_t seed = 0;
  double noise_std = 0.005;  ///< idiosyncratic daily sigma
  Eigen::Index n_factors = 5;
  double factor_std = 0.01;     ///< factor daily sigma
  double loading_spread = 0.3;  ///< loadings drawn from N(1, spread^2)
  bool plant_replicator = true;
};

struct SyntheticTruth {
  std::vector<Eigen::Index> indices;  ///< planted support, empty when not planted
  Eigen::VectorXd weights;            ///< planted portfolio, length n_assets
};

struct SyntheticData {
  PricePanel panel;
  SyntheticTruth truth;
};

/// Deterministic for a fixed spec (seeded). Throws InputError on an invalid
/// spec (k_true > n_assets, non-positive dimensions, negative noise).
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Serialize a panel back to the `date,TICKER,...` CSV format that
/// load_prices accepts, with round-trip-exact numeric formatting.
void write_prices_csv(const PricePanel& panel, std::ostream& out);

}  // namespace indextrack
