#include "indextrack/backtest.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "indextrack/errors.hpp"
#include "indextrack/proximal.hpp"

namespace indextrack {

double CostModel::fee(double shares_traded, double price) const {
  if (shares_traded == 0.0) return 0.0;
  const double volume = unit == Volume::Shares
                            ? std::abs(shares_traded)
                            : std::abs(shares_traded) * price;
  return std::max(minimum, rate * volume);
}

double mdte(const StackedPortfolios& stacked, const Eigen::MatrixXd& X_test,
            const Eigen::VectorXd& r_b_test) {
  const Eigen::Index days = X_test.rows();
  if (stacked.W.cols() != days || r_b_test.size() != days ||
      stacked.W.rows() != X_test.cols())
    throw std::invalid_argument(
        "mdte: dimension mismatch (W " + std::to_string(stacked.W.rows()) +
        "x" + std::to_string(stacked.W.cols()) + ", X_test " +
        std::to_string(X_test.rows()) + "x" + std::to_string(X_test.cols()) +
        ", benchmark " + std::to_string(r_b_test.size()) + ")");

  double sum_sq = 0.0;
  for (Eigen::Index t = 0; t < days; ++t) {
    const double d = X_test.row(t).dot(stacked.W.col(t)) - r_b_test(t);
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq) / double(days) * 1e4;
}

RebalanceEntry rebalance_trades(const Eigen::VectorXd& old_shares,
                                const Eigen::VectorXd& new_weights,
                                double capital, const Eigen::VectorXd& prices,
                                const CostModel& cost,
                                const std::vector<std::string>& tickers,
                                int window) {
  const Eigen::Index n = new_weights.size();
  if (old_shares.size() != n || prices.size() != n ||
      static_cast<Eigen::Index>(tickers.size()) != n)
    throw std::invalid_argument("rebalance_trades: dimension mismatch");
  if (!(capital > 0.0))
    throw std::invalid_argument("rebalance_trades: capital must be positive");
  if ((prices.array() <= 0.0).any())
    throw std::invalid_argument("rebalance_trades: prices must be positive");

  RebalanceEntry entry;
  entry.window = window;
  entry.wealth_before = capital;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double target = new_weights(j) * capital / prices(j);
    const double traded = target - old_shares(j);
    if (traded == 0.0) continue;
    TradeRecord record;
    record.ticker = tickers[static_cast<std::size_t>(j)];
    record.shares = traded;
    record.dollar_volume = std::abs(traded) * prices(j);
    record.fee = cost.fee(traded, prices(j));
    entry.fees += record.fee;
    entry.trades.push_back(std::move(record));
  }
  if (entry.fees > capital)
    throw SolverError("window " + std::to_string(window) + ": fees $" +
                      std::to_string(entry.fees) + " exceed capital $" +
                      std::to_string(capital));
  entry.wealth_after = capital - entry.fees;
  return entry;
}

Eigen::VectorXd repair_support(const Eigen::VectorXd& raw, double l, double u) {
  Eigen::VectorXd repaired = raw;
  double support_sum = 0.0;
  Eigen::Index support_size = 0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (raw(i) != 0.0) {
      support_sum += raw(i);
      ++support_size;
    }
  }
  if (support_size == 0) return repaired;  // all-zero portfolio stays as is

  if (support_sum > 0.0) {
    for (Eigen::Index i = 0; i < raw.size(); ++i)
      if (raw(i) != 0.0) repaired(i) = raw(i) / support_sum;
  } else {
    for (Eigen::Index i = 0; i < raw.size(); ++i)
      if (raw(i) != 0.0) repaired(i) = 1.0 / double(support_size);
  }
  for (Eigen::Index i = 0; i < raw.size(); ++i)
    if (repaired(i) != 0.0) repaired(i) = std::min(std::max(repaired(i), l), u);
  return repaired;
}

Eigen::VectorXd repair_turnover(const Eigen::VectorXd& raw,
                                const Eigen::VectorXd& w0, double l, double u) {
  if (raw.size() != w0.size())
    throw std::invalid_argument("repair_turnover: dimension mismatch");

  // Only the coordinates the solver actually changed may move, so the
  // following rebalance trades no more assets than the turnover constraint
  // allows. The changed coordinates absorb the weight deficit.
  double unchanged_mass = 0.0;
  double changed_mass = 0.0;
  Eigen::Index changed_count = 0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (raw(i) == w0(i)) {
      unchanged_mass += w0(i);
    } else {
      changed_mass += raw(i);
      ++changed_count;
    }
  }
  Eigen::VectorXd repaired = raw;
  if (changed_count == 0) return repaired;  // solver kept w0 entirely

  const double deficit = 1.0 - unchanged_mass;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (raw(i) == w0(i)) continue;
    double v = changed_mass > 0.0 ? raw(i) * (deficit / changed_mass)
                                  : deficit / double(changed_count);
    v = std::min(std::max(v, l), u);
    // Rescaling can land exactly on w0(i); nudging is not worth breaking the
    // value, the trade for that asset is simply zero.
    repaired(i) = v;
  }
  return repaired;
}

PortfolioDesigner make_designer(const MethodConfig& method) {
  if (method.kind == MethodConfig::Kind::Nnomp &&
      method.sparsity == SparsityChoice::Turnover)
    throw std::invalid_argument(
        "method: the baseline has no turnover mode; use portfolio sparsity");

  MethodConfig cfg = method;
  return [cfg](const DesignContext& ctx) -> DesignOutput {
    DesignOutput out;
    if (cfg.kind == MethodConfig::Kind::Nnomp) {
      const SolveResult res = nnomp_pgd(ctx.X_train, ctx.r_b_train, cfg.k1);
      out.raw = res.w;
      out.repaired = res.w;  // already simplex-feasible
      out.iterations = res.iterations;
      out.converged = res.converged;
      out.objective_value = res.objective_value;
      out.uniform_fallback = res.uniform_fallback;
      return out;
    }

    const double upper = cfg.upper.value_or(4.0 / double(cfg.k1));
    const ObjectiveKind kind = cfg.kind == MethodConfig::Kind::PdsEte
                                   ? ObjectiveKind::ETE
                                   : ObjectiveKind::DR;
    const bool turnover_window = cfg.sparsity == SparsityChoice::Turnover &&
                                 ctx.previous != nullptr && ctx.window > 1;
    SparsitySet sparsity =
        turnover_window ? SparsitySet::turnover(cfg.k2, *ctx.previous)
                        : SparsitySet::portfolio(cfg.k1);

    TrackingProblem problem(Objective(kind, ctx.X_train, ctx.r_b_train),
                            std::move(sparsity), BoxSet{cfg.lower, upper});
    const SolveResult res = solve(problem, cfg.solver);
    out.raw = res.w;
    out.repaired = turnover_window
                       ? repair_turnover(res.w, *ctx.previous, cfg.lower, upper)
                       : repair_support(res.w, cfg.lower, upper);
    out.iterations = res.iterations;
    out.converged = res.converged;
    out.objective_value = res.objective_value;
    return out;
  };
}

BacktestReport run_backtest(const ReturnsPanel& panel, const WindowPlan& plan,
                            const PortfolioDesigner& designer,
                            const CostModel& cost, double initial_capital,
                            const Eigen::MatrixXd* mark_prices) {
  const Eigen::Index rows = panel.X.rows();
  const Eigen::Index n = panel.X.cols();
  if (plan.windows.empty()) throw InputError("backtest: empty window plan");
  if (plan.windows.back().test_end > rows)
    throw InputError("backtest: plan needs " +
                     std::to_string(plan.windows.back().test_end) +
                     " return rows, panel has " + std::to_string(rows));
  if (!(initial_capital > 0.0))
    throw InputError("backtest: initial capital must be positive");
  if (mark_prices &&
      (mark_prices->rows() != rows + 1 || mark_prices->cols() != n))
    throw InputError("backtest: mark price matrix must be " +
                     std::to_string(rows + 1) + "x" + std::to_string(n) +
                     ", got " + std::to_string(mark_prices->rows()) + "x" +
                     std::to_string(mark_prices->cols()));

  const Eigen::VectorXd r_b = uniform_benchmark(panel);

  // Mark prices for trade simulation. Row t is the price level before return
  // row t accrues; without supplied prices they are reconstructed from the
  // returns at a flat $100 base.
  Eigen::MatrixXd prices;
  if (mark_prices) {
    prices = *mark_prices;
  } else {
    prices.resize(rows + 1, n);
    prices.row(0).setConstant(100.0);
    for (Eigen::Index t = 0; t < rows; ++t)
      prices.row(t + 1) =
          prices.row(t).cwiseProduct((panel.X.row(t).array() + 1.0).matrix());
  }

  BacktestReport report;
  report.initial_capital = initial_capital;
  report.wealth_path.push_back(initial_capital);

  const Eigen::Index test_days =
      plan.test_len * static_cast<Eigen::Index>(plan.windows.size());
  StackedPortfolios stacked;
  stacked.W.resize(n, test_days);

  double wealth = initial_capital;
  Eigen::VectorXd held_weights = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd previous;  // repaired portfolio of the prior window
  Eigen::Index stack_col = 0;

  for (std::size_t i = 0; i < plan.windows.size(); ++i) {
    const Window& window = plan.windows[i];
    DesignContext ctx;
    ctx.X_train = panel.X.middleRows(window.train_begin,
                                     window.train_end - window.train_begin);
    ctx.r_b_train = r_b.segment(window.train_begin,
                                window.train_end - window.train_begin);
    ctx.window = static_cast<int>(i) + 1;
    ctx.previous = previous.size() > 0 ? &previous : nullptr;

    DesignOutput design;
    try {
      design = designer(ctx);
    } catch (const std::exception& e) {
      throw SolverError("window " + std::to_string(i + 1) +
                        " design failed: " + e.what());
    }
    if (design.repaired.size() != n)
      throw SolverError("window " + std::to_string(i + 1) +
                        " produced a portfolio of wrong length");

    // Rebalance at the window's first test day. Holdings follow the constant
    // held weights, so unchanged weights mean exactly zero trade.
    const Eigen::VectorXd mark = prices.row(window.test_begin).transpose();
    const Eigen::VectorXd old_shares =
        (held_weights * wealth).cwiseQuotient(mark);
    RebalanceEntry entry =
        rebalance_trades(old_shares, design.repaired, wealth, mark, cost,
                         panel.tickers, static_cast<int>(i) + 1);
    wealth = entry.wealth_after;
    report.ledger.push_back(std::move(entry));

    for (Eigen::Index t = window.test_begin; t < window.test_end; ++t) {
      const double r_p = panel.X.row(t).dot(design.repaired);
      wealth *= 1.0 + r_p;
      report.daily_portfolio_returns.push_back(r_p);
      report.daily_benchmark_returns.push_back(r_b(t));
      report.daily_dates.push_back(panel.dates[static_cast<std::size_t>(t)]);
      report.wealth_path.push_back(wealth);
      stacked.W.col(stack_col++) = design.repaired;
    }

    WindowResult wr;
    wr.raw = design.raw;
    wr.repaired = design.repaired;
    wr.iterations = design.iterations;
    wr.converged = design.converged;
    wr.objective_value = design.objective_value;
    wr.uniform_fallback = design.uniform_fallback;
    report.windows.push_back(std::move(wr));

    held_weights = design.repaired;
    previous = design.repaired;
  }

  const Eigen::Index first_test = plan.windows.front().test_begin;
  report.mdte_bps = mdte(stacked, panel.X.middleRows(first_test, test_days),
                         r_b.segment(first_test, test_days));
  report.final_wealth = wealth;
  report.normalized_return = wealth / initial_capital;
  if (!(report.normalized_return > 0.0))
    throw SolverError("backtest: nonpositive final wealth");
  return report;
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) v(i++) = x.get<double>();
  return v;
}

}  // namespace

nlohmann::json report_to_json(const BacktestReport& report) {
  nlohmann::json j;
  j["mdte_bps"] = report.mdte_bps;
  j["initial_capital"] = report.initial_capital;
  j["final_wealth"] = report.final_wealth;
  j["normalized_return"] = report.normalized_return;
  j["wealth_path"] = report.wealth_path;
  j["daily_portfolio_returns"] = report.daily_portfolio_returns;
  j["daily_benchmark_returns"] = report.daily_benchmark_returns;
  j["daily_dates"] = report.daily_dates;

  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : report.windows) {
    nlohmann::json jw;
    jw["raw"] = vector_to_json(w.raw);
    jw["repaired"] = vector_to_json(w.repaired);
    jw["iterations"] = w.iterations;
    jw["converged"] = w.converged;
    jw["objective_value"] = w.objective_value;
    jw["uniform_fallback"] = w.uniform_fallback;
    windows.push_back(std::move(jw));
  }
  j["windows"] = std::move(windows);

  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& entry : report.ledger) {
    nlohmann::json je;
    je["window"] = entry.window;
    je["wealth_before"] = entry.wealth_before;
    je["fees"] = entry.fees;
    je["wealth_after"] = entry.wealth_after;
    nlohmann::json trades = nlohmann::json::array();
    for (const auto& t : entry.trades) {
      nlohmann::json jt;
      jt["ticker"] = t.ticker;
      jt["shares"] = t.shares;
      jt["dollar_volume"] = t.dollar_volume;
      jt["fee"] = t.fee;
      trades.push_back(std::move(jt));
    }
    je["trades"] = std::move(trades);
    ledger.push_back(std::move(je));
  }
  j["ledger"] = std::move(ledger);
  j["config"] = report.config_echo;
  return j;
}

BacktestReport report_from_json(const nlohmann::json& j) {
  BacktestReport report;
  report.mdte_bps = j.at("mdte_bps").get<double>();
  report.initial_capital = j.at("initial_capital").get<double>();
  report.final_wealth = j.at("final_wealth").get<double>();
  report.normalized_return = j.at("normalized_return").get<double>();
  report.wealth_path = j.at("wealth_path").get<std::vector<double>>();
  report.daily_portfolio_returns =
      j.at("daily_portfolio_returns").get<std::vector<double>>();
  report.daily_benchmark_returns =
      j.at("daily_benchmark_returns").get<std::vector<double>>();
  report.daily_dates = j.at("daily_dates").get<std::vector<std::string>>();

  for (const auto& jw : j.at("windows")) {
    WindowResult w;
    w.raw = vector_from_json(jw.at("raw"));
    w.repaired = vector_from_json(jw.at("repaired"));
    w.iterations = jw.at("iterations").get<long>();
    w.converged = jw.at("converged").get<bool>();
    w.objective_value = jw.at("objective_value").get<double>();
    w.uniform_fallback = jw.at("uniform_fallback").get<bool>();
    report.windows.push_back(std::move(w));
  }
  for (const auto& je : j.at("ledger")) {
    RebalanceEntry entry;
    entry.window = je.at("window").get<int>();
    entry.wealth_before = je.at("wealth_before").get<double>();
    entry.fees = je.at("fees").get<double>();
    entry.wealth_after = je.at("wealth_after").get<double>();
    for (const auto& jt : je.at("trades")) {
      TradeRecord t;
      t.ticker = jt.at("ticker").get<std::string>();
      t.shares = jt.at("shares").get<double>();
      t.dollar_volume = jt.at("dollar_volume").get<double>();
      t.fee = jt.at("fee").get<double>();
      entry.trades.push_back(std::move(t));
    }
    report.ledger.push_back(std::move(entry));
  }
  report.config_echo = j.value("config", nlohmann::json());
  return report;
}

void write_daily_csv(const BacktestReport& report, std::ostream& out) {
  out << "day,portfolio_return,benchmark_return,wealth\n";
  out << std::setprecision(17);
  for (std::size_t t = 0; t < report.daily_portfolio_returns.size(); ++t) {
    out << report.daily_dates[t] << ',' << report.daily_portfolio_returns[t]
        << ',' << report.daily_benchmark_returns[t] << ','
        << report.wealth_path[t + 1] << '\n';
  }
}

}  // namespace indextrack
