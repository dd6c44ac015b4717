// Command-line front end: synthetic data generation, single-window tracking,
// and rolling-window backtests over a daily price CSV.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indextrack/backtest.hpp"
#include "indextrack/errors.hpp"
#include "indextrack/market_data.hpp"
#include "indextrack/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw indextrack::InputError("config file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw indextrack::InputError("config file " + path +
                                 " is not valid JSON: " + e.what());
  }
  if (!j.is_object())
    throw indextrack::InputError("config file " + path +
                                 " must hold a JSON object");
  return j;
}

/// Fills option values from a config object. Flags given on the command line
/// win; config fills the rest; library defaults cover whatever remains.
class ConfigMerge {
 public:
  explicit ConfigMerge(const json* cfg) : cfg_(cfg) {}

  template <class T>
  void apply(const CLI::Option* opt, const std::string& key, T& value) {
    known_.insert(key);
    if (!cfg_ || !cfg_->contains(key)) return;
    if (opt && opt->count() > 0) return;
    try {
      value = cfg_->at(key).get<T>();
    } catch (const json::exception&) {
      throw indextrack::InputError("config key '" + key +
                                   "' has the wrong type");
    }
  }

  void warn_unknown() const {
    if (!cfg_) return;
    for (const auto& item : cfg_->items())
      if (!known_.count(item.key()))
        std::cerr << "warning: ignoring unknown config key '" << item.key()
                  << "'\n";
  }

 private:
  const json* cfg_;
  std::set<std::string> known_;
};

indextrack::MethodConfig::Kind parse_method(const std::string& s) {
  if (s == "pds-ete") return indextrack::MethodConfig::Kind::PdsEte;
  if (s == "pds-dr") return indextrack::MethodConfig::Kind::PdsDr;
  if (s == "nnomp-pgd") return indextrack::MethodConfig::Kind::Nnomp;
  throw indextrack::InputError(
      "unknown method '" + s + "' (expected pds-ete, pds-dr, or nnomp-pgd)");
}

indextrack::SparsityChoice parse_sparsity(const std::string& s) {
  if (s == "portfolio") return indextrack::SparsityChoice::Portfolio;
  if (s == "turnover") return indextrack::SparsityChoice::Turnover;
  throw indextrack::InputError("unknown sparsity mode '" + s +
                               "' (expected portfolio or turnover)");
}

indextrack::InitMode parse_init(const std::string& s) {
  if (s == "A") return indextrack::InitMode::A;
  if (s == "B") return indextrack::InitMode::B;
  if (s == "C") return indextrack::InitMode::C;
  throw indextrack::InputError("unknown init mode '" + s +
                               "' (expected A, B, or C)");
}

indextrack::CostModel::Volume parse_fee_unit(const std::string& s) {
  if (s == "shares") return indextrack::CostModel::Volume::Shares;
  if (s == "dollars") return indextrack::CostModel::Volume::Dollars;
  throw indextrack::InputError("unknown fee unit '" + s +
                               "' (expected shares or dollars)");
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw indextrack::InputError("cannot create output directory " + out_dir +
                                 ": " + ec.message());
  return dir;
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw indextrack::InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  out.flush();
  if (!out)
    throw indextrack::InputError("failed while writing " + path.string());
}

void write_weights_csv(const std::vector<std::string>& tickers,
                       const Eigen::VectorXd& w, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw indextrack::InputError("cannot write " + path.string());
  out << "ticker,weight\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) != 0.0)
      out << tickers[static_cast<std::size_t>(i)] << ',' << w(i) << '\n';
  out.flush();
  if (!out)
    throw indextrack::InputError("failed while writing " + path.string());
}

json feasibility_to_json(const indextrack::FeasibilityReport& f) {
  json j;
  j["sum_to_one_residual"] = f.sum_to_one_residual;
  j["box_violation"] = f.box_violation;
  j["sparsity_count"] = static_cast<long long>(f.sparsity_count);
  j["sparsity_ok"] = f.sparsity_ok;
  return j;
}

/// Options shared by `track` and `backtest`.
struct CommonOpts {
  std::string data;
  std::string method = "pds-ete";
  std::string sparsity = "portfolio";
  long long k1 = 40;
  long long k2 = 20;
  double upper = -1.0;  ///< negative means unset, resolved to 4/k1
  std::string init = "A";
  long long seed = -1;  ///< negative means unseeded
  double tol = 1e-5;
  double decay = 0.999;
  long long max_iter = 50000;
  std::string out_dir = ".";
  std::string config_path;

  CLI::Option* o_data = nullptr;
  CLI::Option* o_method = nullptr;
  CLI::Option* o_sparsity = nullptr;
  CLI::Option* o_k1 = nullptr;
  CLI::Option* o_k2 = nullptr;
  CLI::Option* o_upper = nullptr;
  CLI::Option* o_init = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_tol = nullptr;
  CLI::Option* o_decay = nullptr;
  CLI::Option* o_max_iter = nullptr;
  CLI::Option* o_out_dir = nullptr;
};

void add_common_options(CLI::App* sub, CommonOpts& o) {
  o.o_data = sub->add_option("--data", o.data, "Price CSV (date,TICKER,...)");
  o.o_method = sub->add_option(
      "--method", o.method, "pds-ete, pds-dr, or nnomp-pgd [pds-ete]");
  o.o_sparsity = sub->add_option("--sparsity", o.sparsity,
                                 "portfolio or turnover [portfolio]");
  o.o_k1 = sub->add_option("--k1", o.k1, "Max assets held [40]");
  o.o_k2 = sub->add_option(
      "--k2", o.k2, "Max weights changed per rebalance (turnover mode) [20]");
  o.o_upper = sub->add_option("--upper", o.upper,
                              "Upper weight bound [4/k1]");
  o.o_init = sub->add_option("--init", o.init,
                             "Start point: A zeros, B uniform, C random "
                             "support [A]");
  o.o_seed = sub->add_option("--seed", o.seed,
                             "Seed for init C (nonnegative integer)");
  o.o_tol = sub->add_option("--tol", o.tol,
                            "Relative-change stopping tolerance [1e-5]");
  o.o_decay = sub->add_option("--decay", o.decay,
                              "Per-iteration stepsize decay [0.999]");
  o.o_max_iter = sub->add_option("--max-iter", o.max_iter,
                                 "Iteration cap [50000]");
  o.o_out_dir = sub->add_option("--out-dir", o.out_dir,
                                "Output directory [.]");
  sub->add_option("--config", o.config_path,
                  "JSON config file; keys mirror flag names, flags override");
}

void merge_common(ConfigMerge& merge, CommonOpts& o) {
  merge.apply(o.o_data, "data", o.data);
  merge.apply(o.o_method, "method", o.method);
  merge.apply(o.o_sparsity, "sparsity", o.sparsity);
  merge.apply(o.o_k1, "k1", o.k1);
  merge.apply(o.o_k2, "k2", o.k2);
  merge.apply(o.o_upper, "upper", o.upper);
  merge.apply(o.o_init, "init", o.init);
  merge.apply(o.o_seed, "seed", o.seed);
  merge.apply(o.o_tol, "tol", o.tol);
  merge.apply(o.o_decay, "decay", o.decay);
  merge.apply(o.o_max_iter, "max-iter", o.max_iter);
  merge.apply(o.o_out_dir, "out-dir", o.out_dir);
}

/// Checks every value a bad flag or config entry could have set, so problems
/// surface as input errors before any solver runs.
void validate_common(const CommonOpts& o, Eigen::Index n_assets) {
  if (o.data.empty())
    throw indextrack::InputError("no input data: pass --data <prices.csv>");
  if (o.k1 < 1 || o.k1 > n_assets)
    throw indextrack::InputError("k1 = " + std::to_string(o.k1) +
                                 " must be in [1, " +
                                 std::to_string(n_assets) + "]");
  if (o.k2 < 1 || o.k2 > n_assets)
    throw indextrack::InputError("k2 = " + std::to_string(o.k2) +
                                 " must be in [1, " +
                                 std::to_string(n_assets) + "]");
  const double upper = o.upper < 0.0 ? 4.0 / double(o.k1) : o.upper;
  if (!(upper > 0.0) || double(o.k1) * upper < 1.0)
    throw indextrack::InputError(
        "upper bound " + std::to_string(upper) + " leaves k1 = " +
        std::to_string(o.k1) + " weights unable to reach total weight 1");
  if (!(o.tol >= 0.0))
    throw indextrack::InputError("tol must be nonnegative");
  if (!(o.decay > 0.0) || o.decay > 1.0)
    throw indextrack::InputError("decay must lie in (0, 1]");
  if (o.max_iter < 1)
    throw indextrack::InputError("max-iter must be at least 1");
}

indextrack::MethodConfig build_method(const CommonOpts& o) {
  indextrack::MethodConfig mc;
  mc.kind = parse_method(o.method);
  mc.sparsity = parse_sparsity(o.sparsity);
  mc.k1 = static_cast<Eigen::Index>(o.k1);
  mc.k2 = static_cast<Eigen::Index>(o.k2);
  if (o.upper >= 0.0) mc.upper = o.upper;
  mc.solver.stop_tol = o.tol;
  mc.solver.decay = o.decay;
  mc.solver.max_iter = static_cast<long>(o.max_iter);
  mc.solver.init = parse_init(o.init);
  if (o.seed >= 0) mc.solver.seed = static_cast<std::uint64_t>(o.seed);
  return mc;
}

json common_echo(const CommonOpts& o) {
  json j;
  j["data"] = o.data;
  j["method"] = o.method;
  j["sparsity"] = o.sparsity;
  j["k1"] = o.k1;
  j["k2"] = o.k2;
  j["upper"] = o.upper < 0.0 ? 4.0 / double(o.k1) : o.upper;
  j["init"] = o.init;
  j["seed"] = o.seed >= 0 ? json(o.seed) : json(nullptr);
  j["tol"] = o.tol;
  j["decay"] = o.decay;
  j["max-iter"] = o.max_iter;
  return j;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  long long n_assets = 50;
  long long n_days = 1300;
  long long k_true = 10;
  long long seed = 0;
  double noise_std = 0.005;
  long long n_factors = 5;
  double factor_std = 0.01;
  double loading_spread = 0.3;
  bool no_plant = false;
  std::string out_dir = ".";
  std::string config_path;

  CLI::Option *o_n_assets = nullptr, *o_n_days = nullptr, *o_k_true = nullptr,
              *o_seed = nullptr, *o_noise_std = nullptr,
              *o_n_factors = nullptr, *o_factor_std = nullptr,
              *o_loading_spread = nullptr, *o_no_plant = nullptr,
              *o_out_dir = nullptr;
};

int run_synth(const SynthOpts& raw) {
  SynthOpts o = raw;
  json cfg;
  if (!o.config_path.empty()) cfg = load_config_file(o.config_path);
  ConfigMerge merge(o.config_path.empty() ? nullptr : &cfg);
  merge.apply(o.o_n_assets, "n-assets", o.n_assets);
  merge.apply(o.o_n_days, "n-days", o.n_days);
  merge.apply(o.o_k_true, "k-true", o.k_true);
  merge.apply(o.o_seed, "seed", o.seed);
  merge.apply(o.o_noise_std, "noise-std", o.noise_std);
  merge.apply(o.o_n_factors, "n-factors", o.n_factors);
  merge.apply(o.o_factor_std, "factor-std", o.factor_std);
  merge.apply(o.o_loading_spread, "loading-spread", o.loading_spread);
  merge.apply(o.o_no_plant, "no-plant", o.no_plant);
  merge.apply(o.o_out_dir, "out-dir", o.out_dir);
  merge.warn_unknown();

  if (o.seed < 0) throw indextrack::InputError("seed must be nonnegative");

  indextrack::SyntheticSpec spec;
  spec.n_assets = static_cast<Eigen::Index>(o.n_assets);
  spec.n_days = static_cast<Eigen::Index>(o.n_days);
  spec.k_true = static_cast<Eigen::Index>(o.k_true);
  spec.seed = static_cast<std::uint64_t>(o.seed);
  spec.noise_std = o.noise_std;
  spec.n_factors = static_cast<Eigen::Index>(o.n_factors);
  spec.factor_std = o.factor_std;
  spec.loading_spread = o.loading_spread;
  spec.plant_replicator = !o.no_plant;

  const indextrack::SyntheticData data = indextrack::generate_synthetic(spec);
  const fs::path dir = prepare_out_dir(o.out_dir);

  {
    std::ofstream out(dir / "prices.csv");
    if (!out)
      throw indextrack::InputError("cannot write " +
                                   (dir / "prices.csv").string());
    indextrack::write_prices_csv(data.panel, out);
    out.flush();
    if (!out)
      throw indextrack::InputError("failed while writing " +
                                   (dir / "prices.csv").string());
  }

  json truth;
  truth["indices"] = json::array();
  for (Eigen::Index i : data.truth.indices)
    truth["indices"].push_back(static_cast<long long>(i));
  truth["weights"] = json::array();
  for (Eigen::Index i = 0; i < data.truth.weights.size(); ++i)
    truth["weights"].push_back(data.truth.weights(i));
  json spec_echo;
  spec_echo["n-assets"] = o.n_assets;
  spec_echo["n-days"] = o.n_days;
  spec_echo["k-true"] = o.k_true;
  spec_echo["seed"] = o.seed;
  spec_echo["noise-std"] = o.noise_std;
  spec_echo["n-factors"] = o.n_factors;
  spec_echo["factor-std"] = o.factor_std;
  spec_echo["loading-spread"] = o.loading_spread;
  spec_echo["planted"] = !o.no_plant;
  truth["spec"] = std::move(spec_echo);
  write_json_file(truth, dir / "truth.json");

  std::cout << "wrote " << (dir / "prices.csv").string() << " ("
            << data.panel.prices.rows() << " price rows, "
            << data.panel.tickers.size() << " assets) and "
            << (dir / "truth.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// track

int run_track(const CommonOpts& raw) {
  CommonOpts o = raw;
  json cfg;
  if (!o.config_path.empty()) cfg = load_config_file(o.config_path);
  ConfigMerge merge(o.config_path.empty() ? nullptr : &cfg);
  merge_common(merge, o);
  merge.warn_unknown();

  indextrack::LoadReport load_report;
  if (o.data.empty())
    throw indextrack::InputError("no input data: pass --data <prices.csv>");
  const indextrack::PricePanel panel =
      indextrack::load_prices_file(o.data, &load_report);
  const indextrack::ReturnsPanel returns = indextrack::compute_returns(panel);
  validate_common(o, returns.X.cols());

  const indextrack::MethodConfig mc = build_method(o);
  const indextrack::PortfolioDesigner designer = indextrack::make_designer(mc);

  indextrack::DesignContext ctx;
  ctx.X_train = returns.X;
  ctx.r_b_train = indextrack::uniform_benchmark(returns);
  ctx.window = 1;
  const indextrack::DesignOutput out = designer(ctx);

  const fs::path dir = prepare_out_dir(o.out_dir);
  write_weights_csv(returns.tickers, out.repaired, dir / "weights.csv");

  const double upper = o.upper < 0.0 ? 4.0 / double(o.k1) : o.upper;
  json report;
  report["kind"] = "track";
  report["config"] = common_echo(o);
  report["iterations"] = out.iterations;
  report["converged"] = out.converged;
  report["objective_value"] = out.objective_value;
  report["uniform_fallback"] = out.uniform_fallback;
  report["raw_feasibility"] = feasibility_to_json(indextrack::feasibility_report(
      out.raw,
      indextrack::SparsitySet::portfolio(static_cast<Eigen::Index>(o.k1)),
      indextrack::BoxSet{0.0, upper}));
  report["weights"] = json::array();
  for (Eigen::Index i = 0; i < out.repaired.size(); ++i)
    report["weights"].push_back(out.repaired(i));
  report["tickers"] = returns.tickers;
  report["dropped_tickers"] = load_report.dropped;
  write_json_file(report, dir / "report.json");

  std::cout << "wrote " << (dir / "weights.csv").string() << " and "
            << (dir / "report.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// backtest

struct BacktestOpts {
  CommonOpts common;
  long long train_len = 200;
  long long test_len = 100;
  long long n_windows = 10;
  double capital = 10000.0;
  double fee_rate = 0.005;
  double fee_min = 1.0;
  std::string fee_unit = "shares";

  CLI::Option *o_train = nullptr, *o_test = nullptr, *o_windows = nullptr,
              *o_capital = nullptr, *o_fee_rate = nullptr,
              *o_fee_min = nullptr, *o_fee_unit = nullptr;
};

int run_backtest_cmd(const BacktestOpts& raw) {
  BacktestOpts o = raw;
  json cfg;
  if (!o.common.config_path.empty())
    cfg = load_config_file(o.common.config_path);
  ConfigMerge merge(o.common.config_path.empty() ? nullptr : &cfg);
  merge_common(merge, o.common);
  merge.apply(o.o_train, "train-len", o.train_len);
  merge.apply(o.o_test, "test-len", o.test_len);
  merge.apply(o.o_windows, "windows", o.n_windows);
  merge.apply(o.o_capital, "capital", o.capital);
  merge.apply(o.o_fee_rate, "fee-rate", o.fee_rate);
  merge.apply(o.o_fee_min, "fee-min", o.fee_min);
  merge.apply(o.o_fee_unit, "fee-unit", o.fee_unit);
  merge.warn_unknown();

  indextrack::LoadReport load_report;
  if (o.common.data.empty())
    throw indextrack::InputError("no input data: pass --data <prices.csv>");
  const indextrack::PricePanel panel =
      indextrack::load_prices_file(o.common.data, &load_report);
  const indextrack::ReturnsPanel returns = indextrack::compute_returns(panel);
  validate_common(o.common, returns.X.cols());
  if (!(o.capital > 0.0))
    throw indextrack::InputError("capital must be positive");
  if (!(o.fee_rate >= 0.0) || !(o.fee_min >= 0.0))
    throw indextrack::InputError("fee rate and minimum must be nonnegative");

  const indextrack::WindowPlan plan = indextrack::plan_windows(
      returns.X.rows(), static_cast<Eigen::Index>(o.train_len),
      static_cast<Eigen::Index>(o.test_len),
      static_cast<Eigen::Index>(o.n_windows));

  const indextrack::MethodConfig mc = build_method(o.common);
  const indextrack::PortfolioDesigner designer = indextrack::make_designer(mc);

  indextrack::CostModel cost;
  cost.unit = parse_fee_unit(o.fee_unit);
  cost.rate = o.fee_rate;
  cost.minimum = o.fee_min;

  indextrack::BacktestReport report = indextrack::run_backtest(
      returns, plan, designer, cost, o.capital, &panel.prices);

  json echo = common_echo(o.common);
  echo["train-len"] = o.train_len;
  echo["test-len"] = o.test_len;
  echo["windows"] = o.n_windows;
  echo["capital"] = o.capital;
  echo["fee-rate"] = o.fee_rate;
  echo["fee-min"] = o.fee_min;
  echo["fee-unit"] = o.fee_unit;
  report.config_echo = std::move(echo);

  const fs::path dir = prepare_out_dir(o.common.out_dir);
  json j = indextrack::report_to_json(report);
  j["dropped_tickers"] = load_report.dropped;
  write_json_file(j, dir / "report.json");

  {
    std::ofstream daily(dir / "daily.csv");
    if (!daily)
      throw indextrack::InputError("cannot write " +
                                   (dir / "daily.csv").string());
    indextrack::write_daily_csv(report, daily);
    daily.flush();
    if (!daily)
      throw indextrack::InputError("failed while writing " +
                                   (dir / "daily.csv").string());
  }

  write_weights_csv(returns.tickers, report.windows.back().repaired,
                    dir / "weights.csv");

  std::printf("MDTE_bps=%.6f Ret=%.6f\n", report.mdte_bps,
              report.normalized_return);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sparse index tracking: l0-constrained portfolio construction and "
      "rolling-window backtesting"};
  app.require_subcommand(1);

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a factor-model price CSV with a known sparse "
               "tracking portfolio");
  SynthOpts so;
  so.o_n_assets = synth->add_option("--n-assets", so.n_assets,
                                    "Number of assets [50]");
  so.o_n_days = synth->add_option("--n-days", so.n_days,
                                  "Number of price rows [1300]");
  so.o_k_true = synth->add_option("--k-true", so.k_true,
                                  "Planted support size [10]");
  so.o_seed = synth->add_option("--seed", so.seed, "Generator seed [0]");
  so.o_noise_std = synth->add_option("--noise-std", so.noise_std,
                                     "Idiosyncratic daily sigma [0.005]");
  so.o_n_factors = synth->add_option("--n-factors", so.n_factors,
                                     "Number of common factors [5]");
  so.o_factor_std = synth->add_option("--factor-std", so.factor_std,
                                      "Factor daily sigma [0.01]");
  so.o_loading_spread = synth->add_option(
      "--loading-spread", so.loading_spread, "Loading sigma about 1 [0.3]");
  so.o_no_plant = synth->add_flag(
      "--no-plant", so.no_plant,
      "Skip recentering the planted support into an exact replicator");
  so.o_out_dir = synth->add_option("--out-dir", so.out_dir,
                                   "Output directory [.]");
  synth->add_option("--config", so.config_path,
                    "JSON config file; keys mirror flag names");

  CLI::App* track = app.add_subcommand(
      "track", "Solve one sparse tracking portfolio on the full data range");
  CommonOpts to;
  add_common_options(track, to);

  CLI::App* backtest = app.add_subcommand(
      "backtest", "Rolling-window simulation with transaction costs");
  BacktestOpts bo;
  add_common_options(backtest, bo.common);
  bo.o_train = backtest->add_option("--train-len", bo.train_len,
                                    "Training rows per window [200]");
  bo.o_test = backtest->add_option("--test-len", bo.test_len,
                                   "Test rows per window [100]");
  bo.o_windows = backtest->add_option("--windows", bo.n_windows,
                                      "Number of rolling windows [10]");
  bo.o_capital = backtest->add_option("--capital", bo.capital,
                                      "Initial capital in dollars [10000]");
  bo.o_fee_rate = backtest->add_option("--fee-rate", bo.fee_rate,
                                       "Fee per unit volume [0.005]");
  bo.o_fee_min = backtest->add_option("--fee-min", bo.fee_min,
                                      "Minimum fee per traded asset [1.0]");
  bo.o_fee_unit = backtest->add_option("--fee-unit", bo.fee_unit,
                                       "Volume unit: shares or dollars "
                                       "[shares]");

  try {
    app.parse(argc, argv);
    if (synth->parsed()) return run_synth(so);
    if (track->parsed()) return run_track(to);
    if (backtest->parsed()) return run_backtest_cmd(bo);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const indextrack::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const indextrack::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
