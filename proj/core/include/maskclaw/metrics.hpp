#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maskclaw/decision.hpp"

namespace maskclaw {

// Rows are expected, columns predicted, both indexed by decision_rank
// (Allow 0, Mask 1, Ask 2).
struct Confusion3 {
  std::uint64_t n[3][3] = {};
  std::uint64_t row_total(int r) const;
  std::uint64_t col_total(int c) const;
  std::uint64_t total() const;
  bool operator==(const Confusion3&) const = default;
};

struct EvalRow {
  std::string id;
  Decision expected = Decision::Allow;
  Decision predicted = Decision::Allow;
  FlagPair flags;
  bool has_flags = false;  // when set, flags override predicted
  std::string route;
  std::string upload_mode;
};

struct EvalMetrics {
  std::uint64_t total = 0;
  Confusion3 confusion;
  double joint_accuracy = 0.0;
  double mask_precision = 0.0;
  double mask_recall = 0.0;
  double mask_f1 = 0.0;
  double leak_rate = 0.0;     // 1 - mask_recall while expected masks exist
  double over_protect = 0.0;  // expected Allow answered with Mask
  double ask_recall = 0.0;
  double ask_miss = 0.0;
  std::map<std::string, std::uint64_t> route_counts;
  std::map<std::string, double> upload_rates;
};

// Every ratio with a zero denominator is 0.0, leak_rate included.
EvalMetrics evaluate_rows(const std::vector<EvalRow>& rows);

// Fixed-point emission: round(x * 1000) as int.
int milli(double x);

std::string metrics_to_json(const EvalMetrics& m);

struct StabilitySummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample, n - 1
};

// Throws ConfigError with fewer than two values.
StabilitySummary stability(const std::vector<double>& values);

}  // namespace maskclaw
