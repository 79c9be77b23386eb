#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskclaw/instance.hpp"
#include "maskclaw/scene.hpp"

namespace maskclaw {

struct BenchSpec {
  int total = 832;
  int mask = 438;
  int allow = 314;
  int ask = 80;
  std::uint64_t seed = 20260501;
};

// The shipped full-scale mix. Persona, bucket and variant marginals at this
// size are fixed; other totals scale them by largest remainder.
BenchSpec paper_scale_spec(std::uint64_t seed = 20260501);

struct Dataset {
  std::vector<SceneDoc> scenes;  // carry gold audit until written
  std::vector<Instance> instances;
  std::vector<ExpectedLabel> labels;  // one per instance, same order
};

// Deterministic in spec.seed, byte for byte across runs. Throws ConfigError
// when the label counts do not add up to total.
Dataset generate_bench(const BenchSpec& spec);

// Proportional split of total over weights; floors plus largest remainders,
// first-come on ties. Sums to total exactly.
std::vector<int> largest_remainder_split(int total, const std::vector<int>& weights);

}  // namespace maskclaw
