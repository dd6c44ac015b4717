#include "indextrack/market_data.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "indextrack/errors.hpp"

namespace indextrack {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PricePanel load_prices(std::istream& source, LoadReport* report) {
  std::string line;
  if (!std::getline(source, line)) throw InputError("price CSV is empty");

  const auto header = split_csv_line(line);
  if (header.size() < 2 || trim(header[0]) != "date")
    throw InputError("price CSV header must be 'date,TICKER,...'");

  std::vector<std::string> tickers;
  std::set<std::string> seen;
  for (std::size_t j = 1; j < header.size(); ++j) {
    const std::string t = trim(header[j]);
    if (t.empty()) throw InputError("price CSV header has an empty ticker");
    if (!seen.insert(t).second)
      throw InputError("duplicate ticker in price CSV header: " + t);
    tickers.push_back(t);
  }
  const std::size_t n_cols = tickers.size();

  std::vector<std::string> dates;
  std::vector<std::vector<double>> rows;   // parsed prices, NaN = missing
  std::vector<bool> has_gap(n_cols, false);

  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != n_cols + 1)
      throw InputError("price CSV row " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(n_cols + 1));
    const std::string date = trim(cells[0]);
    if (date.empty())
      throw InputError("price CSV row " + std::to_string(line_no) +
                       " has an empty date");
    if (!dates.empty() && !(dates.back() < date))
      throw InputError("price CSV dates not strictly increasing at row " +
                       std::to_string(line_no) + " ('" + date + "' after '" +
                       dates.back() + "')");
    dates.push_back(date);

    std::vector<double> row(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) {
      const std::string cell = trim(cells[j + 1]);
      if (cell.empty()) {
        row[j] = std::numeric_limits<double>::quiet_NaN();
        has_gap[j] = true;
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0' || !std::isfinite(v))
        throw InputError("price CSV row " + std::to_string(line_no) +
                         ", ticker " + tickers[j] + ": unparseable price '" +
                         cell + "'");
      if (v <= 0.0)
        throw InputError("price CSV row " + std::to_string(line_no) +
                         ", ticker " + tickers[j] + ": non-positive price " +
                         cell);
      row[j] = v;
    }
    rows.push_back(std::move(row));
  }

  if (rows.size() < 2)
    throw InputError("price CSV needs at least 2 data rows, found " +
                     std::to_string(rows.size()));

  std::vector<std::size_t> kept;
  LoadReport local;
  for (std::size_t j = 0; j < n_cols; ++j) {
    if (has_gap[j])
      local.dropped.push_back(tickers[j]);
    else
      kept.push_back(j);
  }
  if (kept.empty())
    throw InputError("every asset in the price CSV has missing cells");

  PricePanel panel;
  panel.dates = std::move(dates);
  panel.tickers.reserve(kept.size());
  for (const auto j : kept) panel.tickers.push_back(tickers[j]);
  panel.prices.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(kept.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t j = 0; j < kept.size(); ++j)
      panel.prices(static_cast<Eigen::Index>(t),
                   static_cast<Eigen::Index>(j)) = rows[t][kept[j]];

  if (report) *report = std::move(local);
  return panel;
}

PricePanel load_prices_file(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open price CSV: " + path);
  return load_prices(in, report);
}

ReturnsPanel compute_returns(const PricePanel& panel) {
  const Eigen::Index rows = panel.prices.rows();
  const Eigen::Index n = panel.prices.cols();
  if (rows < 2) throw InputError("price panel needs at least 2 rows");

  ReturnsPanel out;
  out.tickers = panel.tickers;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  out.X.resize(rows - 1, n);
  for (Eigen::Index t = 0; t + 1 < rows; ++t)
    out.X.row(t) = (panel.prices.row(t + 1) - panel.prices.row(t))
                       .cwiseQuotient(panel.prices.row(t));
  return out;
}

Eigen::VectorXd uniform_benchmark(const ReturnsPanel& panel) {
  const Eigen::Index T = panel.X.rows();
  const Eigen::Index n = panel.X.cols();
  if (n < 1) throw InputError("returns panel has no assets");

  // Row-by-row dot products so a portfolio equal to the benchmark weights
  // reproduces this series bit for bit elsewhere in the pipeline.
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, 1.0 / double(n));
  Eigen::VectorXd r_b(T);
  for (Eigen::Index t = 0; t < T; ++t) r_b(t) = panel.X.row(t).dot(b);
  return r_b;
}

WindowPlan plan_windows(Eigen::Index total_rows, Eigen::Index train_len,
                        Eigen::Index test_len, Eigen::Index n_windows) {
  if (train_len < 1 || test_len < 1 || n_windows < 1)
    throw InputError("window plan counts must all be >= 1");
  const Eigen::Index needed = train_len + n_windows * test_len;
  if (total_rows < needed)
    throw InputError("window plan needs " + std::to_string(needed) +
                     " rows (train " + std::to_string(train_len) + " + " +
                     std::to_string(n_windows) + " x test " +
                     std::to_string(test_len) + "), panel has " +
                     std::to_string(total_rows));

  WindowPlan plan;
  plan.train_len = train_len;
  plan.test_len = test_len;
  plan.windows.reserve(static_cast<std::size_t>(n_windows));
  for (Eigen::Index i = 0; i < n_windows; ++i) {
    Window w;
    w.train_begin = i * test_len;
    w.train_end = w.train_begin + train_len;
    w.test_begin = w.train_end;
    w.test_end = w.test_begin + test_len;
    plan.windows.push_back(w);
  }
  return plan;
}

}  // namespace indextrack
