#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace indextrack {

/// Daily price table: one row per trading day, one column per asset.
///
/// Invariants: all prices strictly positive, dates strictly increasing
/// (compared as strings, so use a lexicographically sortable format such as
/// ISO dates), tickers unique, no missing cells. Assets with gaps are dropped
/// at load time instead of being imputed.
struct PricePanel {
  std::vector<std::string> dates;    ///< T+1 labels, strictly increasing
  std::vector<std::string> tickers;  ///< N unique symbols
  Eigen::MatrixXd prices;            ///< (T+1) x N, strictly positive
};

/// Assets excluded during ingestion.
struct LoadReport {
  std::vector<std::string> dropped;  ///< tickers removed for missing cells
};

/// Linear daily returns derived from a PricePanel.
struct ReturnsPanel {
  std::vector<std::string> dates;    ///< T labels: the day each return realizes
  std::vector<std::string> tickers;  ///< N symbols
  Eigen::MatrixXd X;                 ///< T x N return matrix
};

/// Half-open row ranges of one rolling window over a ReturnsPanel.
struct Window {
  Eigen::Index train_begin = 0;
  Eigen::Index train_end = 0;
  Eigen::Index test_begin = 0;
  Eigen::Index test_end = 0;
};

struct WindowPlan {
  Eigen::Index train_len = 0;
  Eigen::Index test_len = 0;
  std::vector<Window> windows;
};

/// Parse a `date,TICKER,...` CSV stream. An empty cell marks a missing price;
/// any asset with at least one missing cell is dropped entirely and listed in
/// the report. Throws InputError on malformed rows, unparseable or
/// non-positive prices, duplicate tickers, fewer than 2 data rows,
/// non-increasing dates, or when every asset is dropped.
PricePanel load_prices(std::istream& source, LoadReport* report = nullptr);

/// Convenience wrapper; throws InputError naming the path when unreadable.
PricePanel load_prices_file(const std::string& path, LoadReport* report = nullptr);

/// X[t, j] = (p[t+1, j] - p[t, j]) / p[t, j] for t = 0..T-1.
ReturnsPanel compute_returns(const PricePanel& panel);

/// Benchmark return series from uniform weights b = (1/N) 1: r_b[t] = X.row(t) . b.
Eigen::VectorXd uniform_benchmark(const ReturnsPanel& panel);

/// Rolling layout: window i (0-based) trains on rows
/// [i*test_len, i*test_len + train_len) and tests on the test_len rows
/// immediately following, so each training range is the train_len rows
/// directly preceding its test range and the test ranges tile
/// [train_len, train_len + n_windows*test_len). Throws InputError when
/// total_rows < train_len + n_windows*test_len or any count is < 1.
WindowPlan plan_windows(Eigen::Index total_rows, Eigen::Index train_len,
                        Eigen::Index test_len, Eigen::Index n_windows);

}  // namespace indextrack
