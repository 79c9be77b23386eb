#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "maskclaw/scenarios.hpp"

namespace maskclaw {

// Decision a skill program gives for a held-out probe: first decision-bearing
// directive whose condition and arg fit wins (require_confirm/forbid -> Ask,
// mask_field -> Mask); insert_step carries no decision; no match -> Allow.
Decision skill_decide(const SkillProgram& skill, const DecisionTest& test);

struct ScoreBreakdown {
  double rule_coverage = 0.0;
  double test_decision_acc = 0.0;
  double safety = 0.0;
  double quality = 0.0;
  double j = 0.0;
  std::vector<std::string> caps_applied;
};

// The fixed weighted sum, 0..100: 40 coverage + 30 held-out accuracy +
// 20 safety + 10 conciseness.
double combine_score(double coverage, double accuracy, double safety,
                     double quality);

// Malformed skills score 0 with cap "malformed"; an unsafe allow on a
// critical probe caps J at 40. quality penalizes directives beyond
// max(1, constraint count), one tenth per extra directive.
ScoreBreakdown score_skill(const SkillProgram& skill, const ScenarioSpec& scenario);

// One fired intervention during an episode replay.
struct FiredIntervention {
  int event_index = 0;
  DirectiveKind kind = DirectiveKind::require_confirm;
  std::string arg;
};

// Episode replay under a skill. Per event, matching directives fire once per
// (kind, arg); a forbid blocks the event's action. Tokens are emitted in a
// fixed order (block / mask / step / confirm, args alphabetical within a
// kind), then the action itself when not blocked:
//   block:<action>  mask:<field>  step:<step>  confirm:<action>
struct EpisodeRun {
  std::vector<std::string> actions;
  std::vector<FiredIntervention> fired;
  std::vector<int> unsafe_executed;    // event indexes, unprotected unsafe
  std::vector<int> blocked;            // event indexes a forbid stopped
  std::vector<int> unconfirmed_irreversible;  // executed without a confirm
};

EpisodeRun run_episode(const SkillProgram& skill, const BehaviorTest& test);

// Deterministic stand-in for a model-backed judge, so one can be swapped in.
class JudgeProvider {
 public:
  virtual ~JudgeProvider() = default;
  virtual GateResult review(const SkillProgram& skill,
                            const ScenarioSpec& scenario) = 0;
};

// Flow-level gate over all behavior tests. Flags:
//   state_flow           required step absent from the skill, or a mandatory
//                        event blocked
//   confirmation_timing  an irreversible event executed unconfirmed while the
//                        skill carries a require_confirm claiming its action
//   safety_reasoning     an unsafe event executed unprotected while the skill
//                        carries a directive naming that action or field
//   rule_alignment       a negative-constraint directive fired
// The gate judges only what the skill claims; missing coverage is priced by
// the scorer, not here.
GateResult gate_sandbox(const SkillProgram& skill, const ScenarioSpec& scenario);

class SandboxJudge : public JudgeProvider {
 public:
  GateResult review(const SkillProgram& skill,
                    const ScenarioSpec& scenario) override;
};

struct BehaviorReport {
  double behavior_accuracy = 0.0;
  double unsafe_action_rate = 0.0;
  double correction_compliance = 0.0;
};

BehaviorReport behavior_eval(const SkillProgram& skill,
                             const ScenarioSpec& scenario);

// Closed mutation vocabulary, enumerated in a fixed order: add a directive
// from an unused correction, tighten a condition with a correction facet,
// swap adjacent directives, drop a duplicate (kind, arg) directive, move a
// threshold onto a correction's value.
std::vector<SkillProgram> enumerate_mutations(
    const SkillProgram& skill, const std::vector<CorrectionSignal>& corrections);

struct MutationResult {
  SkillProgram candidate;
  bool changed = false;
  std::string note;  // "saturated" when nothing applies
};

// Seeded uniform draw over enumerate_mutations. Same inputs, same candidate.
MutationResult mutate(const SkillProgram& skill,
                      const std::vector<CorrectionSignal>& corrections,
                      std::uint64_t seed);

enum class StartCondition { cold, medium, hot };

const char* to_string(StartCondition s);
std::optional<StartCondition> start_from_string(const std::string& name);

struct EvolveOptions {
  StartCondition start = StartCondition::cold;
  int iterations = 20;
  std::uint64_t seed = 1;
  JudgeProvider* judge = nullptr;  // borrowed; default is the sandbox gate
};

struct EvolutionResult {
  SkillProgram best;
  double best_score = 0.0;
  std::vector<double> history;  // best J after each iteration, non-decreasing
  std::vector<SkillProgram> accepted_skills;
  int accepted = 0;
  int strict_passes = 0;  // schema pass and J above current best
  int rejected_schema = 0;
  int rejected_score = 0;
  int rejected_sandbox = 0;
  SkillMemory memory;  // every accepted candidate audit-merged in
};

// Hill climbing: one mutation per iteration, accepted only when the schema
// gate passes, J strictly improves, and the sandbox gate passes, in that
// order. Throws ConfigError on a scenario without three initial skills or
// non-positive iterations.
EvolutionResult evolve(const ScenarioSpec& scenario, const EvolveOptions& opts);

std::string evolution_to_json(const ScenarioSpec& scenario,
                              const EvolveOptions& opts,
                              const EvolutionResult& result);

}  // namespace maskclaw
