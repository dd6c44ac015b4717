#include "indextrack/synthetic.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "indextrack/errors.hpp"

namespace indextrack {

namespace {

std::string padded_label(const char* prefix, Eigen::Index value, int width) {
  std::ostringstream ss;
  ss << prefix << std::setw(width) << std::setfill('0') << value;
  return ss.str();
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_assets < 1 || spec.n_days < 2 || spec.n_factors < 1)
    throw InputError("synthetic spec needs n_assets >= 1, n_days >= 2, n_factors >= 1");
  if (spec.k_true < 1 || spec.k_true > spec.n_assets)
    throw InputError("synthetic spec k_true " + std::to_string(spec.k_true) +
                     " out of range [1, " + std::to_string(spec.n_assets) + "]");
  if (spec.noise_std < 0.0 || spec.factor_std < 0.0)
    throw InputError("synthetic spec sigmas must be nonnegative");

  const Eigen::Index n = spec.n_assets;
  const Eigen::Index T = spec.n_days - 1;  // return rows
  const Eigen::Index F = spec.n_factors;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  Eigen::MatrixXd loadings(n, F);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index f = 0; f < F; ++f)
      loadings(j, f) = 1.0 + spec.loading_spread * unit(rng);

  // Planted support: k_true distinct indices by partial Fisher-Yates.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < spec.k_true; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<Eigen::Index> planted(order.begin(), order.begin() + spec.k_true);
  std::sort(planted.begin(), planted.end());

  if (spec.plant_replicator && spec.k_true < n) {
    // Recenter the planted rows on the mean loading of the other assets, so
    // mean(planted rows) = mean(all rows) and the equal-weight planted
    // portfolio carries the benchmark's factor exposure exactly.
    std::vector<bool> is_planted(static_cast<std::size_t>(n), false);
    for (const auto j : planted) is_planted[static_cast<std::size_t>(j)] = true;
    Eigen::RowVectorXd rest_mean = Eigen::RowVectorXd::Zero(F);
    for (Eigen::Index j = 0; j < n; ++j)
      if (!is_planted[static_cast<std::size_t>(j)]) rest_mean += loadings.row(j);
    rest_mean /= double(n - spec.k_true);
    Eigen::RowVectorXd planted_mean = Eigen::RowVectorXd::Zero(F);
    for (const auto j : planted) planted_mean += loadings.row(j);
    planted_mean /= double(spec.k_true);
    for (const auto j : planted)
      loadings.row(j) += rest_mean - planted_mean;
  }

  Eigen::MatrixXd returns(T, n);
  Eigen::VectorXd f(F);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index k = 0; k < F; ++k) f(k) = spec.factor_std * unit(rng);
    returns.row(t) = (loadings * f).transpose();
    for (Eigen::Index j = 0; j < n; ++j)
      returns(t, j) += spec.noise_std * unit(rng);
  }
  // Prices must stay positive; daily draws this large do not occur at the
  // intended sigmas, but clamp defensively.
  returns = returns.cwiseMax(-0.99);

  SyntheticData out;
  out.panel.prices.resize(spec.n_days, n);
  out.panel.prices.row(0).setConstant(100.0);
  for (Eigen::Index t = 0; t < T; ++t)
    out.panel.prices.row(t + 1) =
        out.panel.prices.row(t).cwiseProduct(
            (returns.row(t).array() + 1.0).matrix());

  out.panel.dates.reserve(static_cast<std::size_t>(spec.n_days));
  for (Eigen::Index t = 0; t < spec.n_days; ++t)
    out.panel.dates.push_back(padded_label("D", t, 6));
  out.panel.tickers.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    out.panel.tickers.push_back(padded_label("A", j, 4));

  out.truth.indices = planted;
  out.truth.weights = Eigen::VectorXd::Zero(n);
  for (const auto j : planted) out.truth.weights(j) = 1.0 / double(spec.k_true);
  return out;
}

void write_prices_csv(const PricePanel& panel, std::ostream& out) {
  out << "date";
  for (const auto& t : panel.tickers) out << ',' << t;
  out << '\n';
  out << std::setprecision(17);
  for (Eigen::Index t = 0; t < panel.prices.rows(); ++t) {
    out << panel.dates[static_cast<std::size_t>(t)];
    for (Eigen::Index j = 0; j < panel.prices.cols(); ++j)
      out << ',' << panel.prices(t, j);
    out << '\n';
  }
}

}  // namespace indextrack
