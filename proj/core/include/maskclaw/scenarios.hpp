#pragma once

#include <string>
#include <vector>

#include "maskclaw/skills.hpp"

namespace maskclaw {

// Held-out decision probe: context facets plus the expected call. critical
// marks probes where an unsafe allow caps the score.
struct DecisionTest {
  std::string id;
  std::string app, recipient, action;
  std::vector<std::string> field_types;
  double amount = 0.0;
  Decision expected = Decision::Allow;
  bool critical = false;
};

// One screen/step of a scripted episode. unsafe marks actions that must not
// execute unprotected; irreversible ones additionally demand confirmation
// before they fire; mandatory ones must not be blocked.
struct EpisodeEvent {
  std::string step_id;
  std::string app, recipient, action, field_type;
  double amount = 0.0;
  bool unsafe = false;
  bool irreversible = false;
  bool mandatory = false;
};

struct BehaviorTest {
  std::string id;
  std::vector<EpisodeEvent> events;
  std::vector<std::string> expected;  // full token sequence, see run_episode
};

// A directive the evolved skill is supposed to contain: kind, arg (empty =
// any) and the exact condition facets it must bind.
struct TargetConstraint {
  std::string id;
  DirectiveKind kind = DirectiveKind::require_confirm;
  std::string arg;
  DirectiveCondition when;
};

// A directive shape that must never fire in this scenario (rule-alignment
// sandbox flag when it does).
struct NegativeConstraint {
  DirectiveKind kind = DirectiveKind::forbid_action;
  std::string arg;
};

struct ScenarioSpec {
  std::string scenario_id;
  std::string goal;
  std::vector<SkillProgram> initial_skills;  // [cold, medium, hot]
  std::vector<CorrectionSignal> corrections;
  std::vector<TargetConstraint> constraints;
  std::vector<NegativeConstraint> negative_constraints;
  std::vector<std::string> required_steps;  // insert_step args a skill must carry
  std::vector<DecisionTest> decision_tests;
  std::vector<BehaviorTest> behavior_tests;
};

// True when every facet the constraint binds appears identically in the
// directive and the args agree (empty constraint arg matches any).
bool constraint_matched(const TargetConstraint& constraint, const Directive& d);

// Reference skill: one directive per constraint, in constraint order. The
// behavior tests' expected sequences are authored against it.
SkillProgram make_target_skill(const ScenarioSpec& scenario);

std::string scenario_to_json(const ScenarioSpec& scenario);
ScenarioSpec scenario_from_json(const std::string& text);  // throws DataError
ScenarioSpec load_scenario_file(const std::string& path);

// The five shipped scenario families. Names: icloud_cleanup, app_permission,
// transfer, calendar, driving.
const std::vector<ScenarioSpec>& builtin_scenarios();
const ScenarioSpec& builtin_scenario(const std::string& name);  // ConfigError

}  // namespace maskclaw
