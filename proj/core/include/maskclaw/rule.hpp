#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maskclaw/decision.hpp"

namespace maskclaw {

inline constexpr const char* kWildcard = "*";

struct RuleScope {
  std::string app = kWildcard;
  std::string persona = kWildcard;
  std::string recipient = kWildcard;
  std::string action = kWildcard;
};

struct RuleTrigger {
  std::vector<std::string> text_patterns;
  std::vector<std::string> field_types;
  std::vector<std::string> semantic_tags;
  bool requires_localizable = false;
};

struct PolicyRule {
  std::string id;
  RuleScope scope;
  RuleTrigger trigger;
  Decision action = Decision::Allow;
  int priority = 0;  // larger wins; ties broken by id, ascending
  std::string rationale;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> reasons;
};

// A rule has to bind to something checkable: a non-wildcard app, recipient or
// action scope facet, or an evidence-typed trigger facet (field type, semantic
// tag, localizability). Text patterns alone do not bind; a rule made only of
// keywords is rejected as unbound.
ValidationReport validate_rule(const PolicyRule& rule);

struct RuleParse {
  std::optional<PolicyRule> rule;  // set only when the report is ok
  ValidationReport report;
};

RuleParse parse_rule_line(const std::string& jsonl_line);
std::string rule_to_json(const PolicyRule& rule);

}  // namespace maskclaw
