#include "maskclaw/metrics.hpp"

#include <cmath>

#include "json_util.hpp"
#include "maskclaw/errors.hpp"

namespace maskclaw {

std::uint64_t Confusion3::row_total(int r) const {
  return n[r][0] + n[r][1] + n[r][2];
}

std::uint64_t Confusion3::col_total(int c) const {
  return n[0][c] + n[1][c] + n[2][c];
}

std::uint64_t Confusion3::total() const {
  return row_total(0) + row_total(1) + row_total(2);
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : double(num) / double(den);
}

}  // namespace

EvalMetrics evaluate_rows(const std::vector<EvalRow>& rows) {
  EvalMetrics m;
  m.total = rows.size();
  std::map<std::string, std::uint64_t> upload_counts;
  for (const auto& row : rows) {
    Decision pred = row.has_flags ? map_decision(row.flags) : row.predicted;
    m.confusion.n[decision_rank(row.expected)][decision_rank(pred)] += 1;
    if (!row.route.empty()) m.route_counts[row.route] += 1;
    if (!row.upload_mode.empty()) upload_counts[row.upload_mode] += 1;
  }
  const auto& n = m.confusion.n;
  const std::uint64_t allow_row = m.confusion.row_total(0);
  const std::uint64_t mask_row = m.confusion.row_total(1);
  const std::uint64_t ask_row = m.confusion.row_total(2);

  std::uint64_t diag = n[0][0] + n[1][1] + n[2][2];
  m.joint_accuracy = ratio(diag, m.total);
  m.mask_precision = ratio(n[1][1], m.confusion.col_total(1));
  m.mask_recall = ratio(n[1][1], mask_row);
  double p = m.mask_precision, r = m.mask_recall;
  m.mask_f1 = (p + r) == 0.0 ? 0.0 : 2 * p * r / (p + r);
  m.leak_rate = ratio(mask_row - n[1][1], mask_row);
  m.over_protect = ratio(n[0][1], allow_row);
  m.ask_recall = ratio(n[2][2], ask_row);
  m.ask_miss = ratio(ask_row - n[2][2], ask_row);
  for (const auto& [mode, count] : upload_counts)
    m.upload_rates[mode] = ratio(count, m.total);
  return m;
}

int milli(double x) { return int(std::lround(x * 1000.0)); }

std::string metrics_to_json(const EvalMetrics& m) {
  detail::json j;
  j["total"] = m.total;
  auto grid = detail::json::array();
  for (int r = 0; r < 3; ++r) {
    auto row = detail::json::array();
    for (int c = 0; c < 3; ++c) row.push_back(m.confusion.n[r][c]);
    grid.push_back(row);
  }
  j["confusion"] = grid;
  auto put = [&](const char* key, double v) {
    j[key] = v;
    j[std::string(key) + "_milli"] = milli(v);
  };
  put("joint_accuracy", m.joint_accuracy);
  put("mask_precision", m.mask_precision);
  put("mask_recall", m.mask_recall);
  put("mask_f1", m.mask_f1);
  put("leak_rate", m.leak_rate);
  put("over_protect", m.over_protect);
  put("ask_recall", m.ask_recall);
  put("ask_miss", m.ask_miss);
  j["route_counts"] = m.route_counts;
  j["upload_rates"] = m.upload_rates;
  return j.dump(2);
}

StabilitySummary stability(const std::vector<double>& values) {
  if (values.size() < 2)
    throw ConfigError("stability needs at least two values");
  StabilitySummary s;
  for (double v : values) s.mean += v;
  s.mean /= double(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / double(values.size() - 1));
  return s;
}

}  // namespace maskclaw
