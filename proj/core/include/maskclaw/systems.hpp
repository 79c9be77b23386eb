#pragma once

#include <memory>
#include <string>
#include <vector>

#include "maskclaw/arbiter.hpp"
#include "maskclaw/benchgen.hpp"
#include "maskclaw/metrics.hpp"

namespace maskclaw {

struct SystemDecision {
  Decision decision = Decision::Allow;
  FlagPair flags;
  bool has_flags = false;
  std::string route = "local";             // local, hybrid or cloud
  std::string upload_mode = "local_only";  // local_only, masked or raw_image
  std::string rule_id;
};

class DecisionSystem {
 public:
  virtual ~DecisionSystem() = default;
  virtual std::string name() const = 0;
  // Evidence arrives pre-extracted so every system sees the same (possibly
  // degraded) reading of the screen. Labels and gold audit never enter here.
  virtual SystemDecision decide(const Instance& instance, const SceneDoc& scene,
                                const EvidenceSet& evidence) = 0;
};

// Known names: maskclaw, regex, static_corpus, cloud_minimal, cloud_persona,
// cloud_full, router_mock. maskclaw and static_corpus need the store; the
// rest ignore it. Throws ConfigError on an unknown name.
std::unique_ptr<DecisionSystem> make_system(const std::string& name,
                                            const RuleStore* store);
const std::vector<std::string>& system_names();

struct EvalOptions {
  std::uint64_t noise_seed = 7;  // base for the per-instance hard-bucket lens
  int workers = 1;
};

// Stable across platforms; never based on std::hash.
std::uint64_t instance_noise_seed(std::uint64_t base, const std::string& instance_id);

struct EvalOutput {
  EvalMetrics metrics;
  std::vector<EvalRow> rows;  // instance order
};

// Runs the system over every instance. Hard-bucket (D3) instances are read
// through a seeded degradation lens; everything else reads clean.
EvalOutput evaluate_dataset(const Dataset& ds, DecisionSystem& system,
                            const EvalOptions& opts = {});

}  // namespace maskclaw
