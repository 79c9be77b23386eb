#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maskclaw/decision.hpp"
#include "maskclaw/evidence.hpp"

namespace maskclaw {

// Post-decision feedback vocabulary. Closed: anything else is not a trace.
enum class FeedbackKind { confirm, cancel, edit, reject_action, retry, instruct };

const char* to_string(FeedbackKind k);
std::optional<FeedbackKind> feedback_from_string(const std::string& name);

struct TraceStep {
  std::string app, recipient, action;  // context at the moment of the decision
  std::vector<EvidenceItem> evidence;
  Decision decision = Decision::Allow;
  FeedbackKind feedback = FeedbackKind::confirm;
  // edit: the field_type whose value the user replaced; instruct: the text.
  std::string payload;
};

struct Trace {
  std::vector<TraceStep> steps;
};

enum class CorrectionKind { mask_field, require_confirm, forbid_action, insert_step };

const char* to_string(CorrectionKind k);
std::optional<CorrectionKind> correction_kind_from_string(const std::string& name);

// step_id rides along for insert_step corrections; every other facet mirrors
// the condition grammar below.
struct CorrectionFacets {
  std::string app, recipient, action, field_type, step_id;
  std::optional<double> threshold;
  bool any_bound() const;
  bool operator==(const CorrectionFacets&) const = default;
};

struct CorrectionSignal {
  CorrectionKind kind = CorrectionKind::mask_field;
  CorrectionFacets facets;
  bool operator==(const CorrectionSignal&) const = default;
};

struct ExtractionResult {
  std::vector<CorrectionSignal> signals;
  std::vector<std::string> diagnostics;  // skipped inputs, never guessed
};

// Deterministic trace mining: cancel over sensitive evidence toward an
// untrusted recipient asks for masking, cancel or reject elsewhere asks for
// confirmation, an edit masks the edited field, instruct text is parsed
// against the fixed grammar:
//   mask <field> [for <recipient>]
//   confirm <action> [over <amount>]
//   forbid <action>
//   insert <step> before <action>
ExtractionResult extract_corrections(const Trace& trace);

enum class DirectiveKind { require_confirm, mask_field, forbid_action, insert_step };

const char* to_string(DirectiveKind k);
std::optional<DirectiveKind> directive_kind_from_string(const std::string& name);

// Conjunctive guard. Empty string / nullopt means the facet is free.
struct DirectiveCondition {
  std::string app, recipient, action, field_type;
  std::optional<double> amount_at_least;
  bool any_bound() const;
  bool operator==(const DirectiveCondition&) const = default;
};

// arg: field_type for mask_field, action for forbid_action, step id for
// insert_step; optional action filter for require_confirm.
struct Directive {
  DirectiveKind kind = DirectiveKind::require_confirm;
  std::string arg;
  DirectiveCondition when;
  bool operator==(const Directive&) const = default;
};

struct SkillProgram {
  std::string skill_id;
  DirectiveCondition scope;  // ANDed onto every directive condition
  std::vector<Directive> directives;
  std::string rationale;
  bool operator==(const SkillProgram&) const = default;
};

// The directive a correction asks for, shared by mutation and compliance
// checks so both agree on what "the correction fired" means.
Directive directive_from(const CorrectionSignal& correction);

struct GateResult {
  bool pass = true;
  std::vector<std::string> reasons;
};

// Structural gate: a skill needs an id, at least one directive, an argument
// on arg-carrying kinds, and a bound condition on every directive. A bare
// keyword with a free condition is exactly the rewrite this rejects.
GateResult gate_schema(const SkillProgram& skill);

std::string skill_to_json(const SkillProgram& skill);
SkillProgram skill_from_json(const std::string& text);  // throws DataError

// Versioned store for evolved skills. audit_merge is the only write path.
struct SkillMemory {
  std::vector<SkillProgram> skills;
  int version = 0;
  const SkillProgram* find(const std::string& skill_id) const;
};

// Replaces by skill_id or appends, bumping the version. gated asserts the
// caller ran all three gates; merging an ungated candidate is refused with
// InvariantError.
void audit_merge(SkillMemory& memory, const SkillProgram& candidate, bool gated);

}  // namespace maskclaw
