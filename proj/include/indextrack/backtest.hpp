#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "indextrack/market_data.hpp"
#include "indextrack/nnomp_pgd.hpp"
#include "indextrack/pds_solver.hpp"

namespace indextrack {

/// Transaction cost per traded asset: max(minimum, rate * |volume|), where the
/// volume unit is shares traded (default) or dollars traded. Assets with a
/// trade of exactly zero incur no fee.
struct CostModel {
  enum class Volume { Shares, Dollars };

  Volume unit = Volume::Shares;
  double rate = 0.005;
  double minimum = 1.0;

  /// Frictionless variant for oracle comparisons.
  static CostModel none() { return CostModel{Volume::Shares, 0.0, 0.0}; }

  double fee(double shares_traded, double price) const;
};

struct TradeRecord {
  std::string ticker;
  double shares = 0.0;         ///< signed shares traded
  double dollar_volume = 0.0;  ///< |shares| * price
  double fee = 0.0;
};

/// One rebalance instant. wealth_after = wealth_before - fees exactly; the
/// trades themselves are wealth-neutral at mark prices.
struct RebalanceEntry {
  int window = 0;  ///< 1-based window index
  double wealth_before = 0.0;
  double fees = 0.0;
  double wealth_after = 0.0;
  std::vector<TradeRecord> trades;  ///< only assets with a nonzero trade
};

/// Solver output for one window, before and after weight repair.
struct WindowResult {
  Eigen::VectorXd raw;
  Eigen::VectorXd repaired;
  long iterations = 0;
  bool converged = true;
  double objective_value = 0.0;
  bool uniform_fallback = false;
};

/// Column t is the portfolio active on stacked test day t; columns are
/// constant within each window.
struct StackedPortfolios {
  Eigen::MatrixXd W;  ///< N x (n_windows * test_len)
};

/// Magnitude of daily tracking error in basis points:
///   (1 / (n*test_len)) * || d - r_b_test ||_2 * 1e4,  d_t = X_test.row(t) . W.col(t).
/// Throws std::invalid_argument on dimension mismatch.
double mdte(const StackedPortfolios& stacked, const Eigen::MatrixXd& X_test,
            const Eigen::VectorXd& r_b_test);

/// Trades from old share holdings to the target weights at the given prices:
/// target shares = weight * capital / price (fractional shares allowed),
/// trade = target - old, fee per traded asset from the cost model, fees
/// deducted from capital after trading. Throws std::invalid_argument on bad
/// inputs and SolverError when fees exceed capital.
RebalanceEntry rebalance_trades(const Eigen::VectorXd& old_shares,
                                const Eigen::VectorXd& new_weights,
                                double capital, const Eigen::VectorXd& prices,
                                const CostModel& cost,
                                const std::vector<std::string>& tickers,
                                int window);

/// Inputs handed to a portfolio designer for one window.
struct DesignContext {
  Eigen::MatrixXd X_train;
  Eigen::VectorXd r_b_train;
  int window = 1;                             ///< 1-based
  const Eigen::VectorXd* previous = nullptr;  ///< prior repaired portfolio
};

struct DesignOutput {
  Eigen::VectorXd raw;       ///< solver iterate, constraints approximate
  Eigen::VectorXd repaired;  ///< tradable weights
  long iterations = 0;
  bool converged = true;
  double objective_value = 0.0;
  bool uniform_fallback = false;
};

using PortfolioDesigner = std::function<DesignOutput(const DesignContext&)>;

enum class SparsityChoice { Portfolio, Turnover };

/// Method selection for the built-in designers.
struct MethodConfig {
  enum class Kind { PdsEte, PdsDr, Nnomp };

  Kind kind = Kind::PdsEte;
  SparsityChoice sparsity = SparsityChoice::Portfolio;
  Eigen::Index k1 = 40;
  Eigen::Index k2 = 20;
  double lower = 0.0;
  std::optional<double> upper;  ///< default 4/k1
  SolverConfig solver;
};

/// Designer implementing MethodConfig. PDS kinds solve the tracking problem
/// per window; in Turnover mode the first window is portfolio-sparse (no
/// reference portfolio exists yet) and later windows constrain changes from
/// the previous repaired portfolio. The baseline kind ignores box bounds and
/// always selects portfolio-sparse supports. Throws std::invalid_argument for
/// Nnomp combined with Turnover sparsity.
PortfolioDesigner make_designer(const MethodConfig& method);

/// Repair a raw portfolio-sparse iterate for trading: rescale the nonzero
/// support to sum to one, then clamp into [l, u]. A nonpositive support sum
/// falls back to uniform weights on the support.
Eigen::VectorXd repair_support(const Eigen::VectorXd& raw, double l, double u);

/// Turnover-mode repair: coordinates equal to w0 (bitwise, as the turnover
/// projection leaves them) stay untouched so the rebalance trades at most k2
/// assets; the changed coordinates are rescaled to absorb the weight deficit,
/// then clamped.
Eigen::VectorXd repair_turnover(const Eigen::VectorXd& raw,
                                const Eigen::VectorXd& w0, double l, double u);

struct BacktestReport {
  double mdte_bps = 0.0;
  double initial_capital = 0.0;
  double final_wealth = 0.0;
  double normalized_return = 0.0;    ///< final_wealth / initial_capital
  std::vector<double> wealth_path;   ///< initial capital, then one entry per test day
  std::vector<double> daily_portfolio_returns;
  std::vector<double> daily_benchmark_returns;
  std::vector<std::string> daily_dates;
  std::vector<WindowResult> windows;
  std::vector<RebalanceEntry> ledger;
  nlohmann::json config_echo;
};

/// Rolling-window simulation. Per window: the designer produces a portfolio
/// from the training rows and the uniform benchmark over the panel's assets,
/// holdings are rebalanced to the repaired weights at the window's first test
/// day, fees are deducted, and wealth accrues through the test rows at
/// constant weights. Mark prices for the rebalances come from mark_prices
/// (one more row than the returns panel; row t is the price level before
/// return row t accrues, so a loaded price panel fits directly); when absent
/// they are reconstructed from the returns with every asset starting at $100.
/// MDTE is computed over the stacked repaired portfolios. Designer failures
/// are rethrown as SolverError naming the window.
BacktestReport run_backtest(const ReturnsPanel& panel, const WindowPlan& plan,
                            const PortfolioDesigner& designer,
                            const CostModel& cost, double initial_capital,
                            const Eigen::MatrixXd* mark_prices = nullptr);

/// Lossless JSON round trip: report_from_json(report_to_json(r)) preserves
/// every field bit for bit.
nlohmann::json report_to_json(const BacktestReport& report);
BacktestReport report_from_json(const nlohmann::json& j);

/// Plot-ready CSV: day,portfolio_return,benchmark_return,wealth.
void write_daily_csv(const BacktestReport& report, std::ostream& out);

}  // namespace indextrack
