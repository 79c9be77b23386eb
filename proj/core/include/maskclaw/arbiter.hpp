#pragma once

#include <string>
#include <vector>

#include "maskclaw/decision.hpp"
#include "maskclaw/evidence.hpp"
#include "maskclaw/instance.hpp"
#include "maskclaw/rule_store.hpp"

namespace maskclaw {

// Conservative floor used when no rule applies.
//   S: sensitive evidence on screen
//   T: recipient inside the trust boundary (self or trusted_internal)
//   N: the task wording itself names a sensitive field that is on screen
// m = S and not N, u = S and not T and N. Sensitive content headed outside
// the boundary therefore never resolves to Allow.
struct FallbackTrace {
  bool sensitive = false;
  bool trusted = false;
  bool task_needs = false;
  FlagPair flags;
};

FallbackTrace fallback_decide(const Instance& instance,
                              const std::vector<EvidenceItem>& evidence,
                              bool force_sensitive = false);

// Minimum retrieval score a candidate needs before its decision is trusted
// when nothing matched the full (recipient, action, persona) set.
inline constexpr int kSelectScoreFloor = 3;

// First candidate whose matched set covers recipient, action and persona;
// otherwise the first at or above the score floor; otherwise null.
const RankedCandidate* select_rule(const std::vector<RankedCandidate>& ranked);

struct VisualCheck {
  bool ran = false;
  bool consistent = true;
  std::string note;
};

struct ArbitrationResult {
  // Decision, flags and selected_rule_id are locked once the decision stage
  // finishes; the visual stage only ever writes .visual.
  Decision decision = Decision::Allow;
  FlagPair flags;
  std::string selected_rule_id;  // empty when the fallback decided
  bool fallback_used = false;
  std::vector<RankedCandidate> candidates;
  std::vector<std::string> diagnostics;
  VisualCheck visual;
};

class VisualChecker {
 public:
  virtual ~VisualChecker() = default;
  // Sees a copy of the locked result; whatever it does, only the returned
  // VisualCheck lands in the output. Exceptions are caught and logged.
  virtual VisualCheck check(const Instance& instance,
                            const std::vector<EvidenceItem>& evidence,
                            const ArbitrationResult& locked) = 0;
};

class MockVisualChecker : public VisualChecker {
 public:
  VisualCheck check(const Instance& instance,
                    const std::vector<EvidenceItem>& evidence,
                    const ArbitrationResult& locked) override;
};

struct ArbitrateOptions {
  int top_k = kDefaultTopK;
  VisualChecker* checker = nullptr;  // borrowed, may be null
};

ArbitrationResult arbitrate(const Instance& instance, const EvidenceSet& evidence,
                            const RuleStore& store,
                            const ArbitrateOptions& opts = {});

std::string arbitration_to_json(const ArbitrationResult& result);

}  // namespace maskclaw
