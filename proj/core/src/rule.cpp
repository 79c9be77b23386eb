#include "maskclaw/rule.hpp"

#include "json_util.hpp"

namespace maskclaw {

using detail::json;

namespace {

bool is_wildcard(const std::string& v) { return v == kWildcard; }

}  // namespace

ValidationReport validate_rule(const PolicyRule& rule) {
  ValidationReport rep;
  if (rule.id.empty()) rep.reasons.push_back("missing id");
  if (rule.priority < 0) rep.reasons.push_back("negative priority");

  const auto& t = rule.trigger;
  const bool any_trigger = !t.text_patterns.empty() || !t.field_types.empty() ||
                           !t.semantic_tags.empty() || t.requires_localizable;
  if (!any_trigger) rep.reasons.push_back("empty trigger");

  // Keyword-only rules match everywhere and mean nothing enforceable.
  const bool scope_bound = !is_wildcard(rule.scope.app) ||
                           !is_wildcard(rule.scope.recipient) ||
                           !is_wildcard(rule.scope.action);
  const bool evidence_bound = !t.field_types.empty() || !t.semantic_tags.empty() ||
                              t.requires_localizable;
  if (!scope_bound && !evidence_bound) rep.reasons.push_back("unbound rule");

  rep.ok = rep.reasons.empty();
  return rep;
}

std::string rule_to_json(const PolicyRule& rule) {
  json j;
  j["id"] = rule.id;
  j["scope"] = json{{"app", rule.scope.app},
                    {"persona", rule.scope.persona},
                    {"recipient", rule.scope.recipient},
                    {"action", rule.scope.action}};
  j["trigger"] = json{{"text_patterns", rule.trigger.text_patterns},
                      {"field_types", rule.trigger.field_types},
                      {"semantic_tags", rule.trigger.semantic_tags},
                      {"requires_localizable", rule.trigger.requires_localizable}};
  j["action"] = to_string(rule.action);
  j["priority"] = rule.priority;
  j["rationale"] = rule.rationale;
  return j.dump();
}

RuleParse parse_rule_line(const std::string& jsonl_line) {
  RuleParse out;
  json j = json::parse(jsonl_line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    out.report.ok = false;
    out.report.reasons.push_back("not a json object");
    return out;
  }

  PolicyRule r;
  r.id = detail::get_or<std::string>(j, "id", "");
  if (j.contains("scope")) {
    const auto& js = j["scope"];
    r.scope.app = detail::get_or<std::string>(js, "app", kWildcard);
    r.scope.persona = detail::get_or<std::string>(js, "persona", kWildcard);
    r.scope.recipient = detail::get_or<std::string>(js, "recipient", kWildcard);
    r.scope.action = detail::get_or<std::string>(js, "action", kWildcard);
  }
  if (j.contains("trigger")) {
    const auto& jt = j["trigger"];
    r.trigger.text_patterns =
        detail::get_or<std::vector<std::string>>(jt, "text_patterns", {});
    r.trigger.field_types =
        detail::get_or<std::vector<std::string>>(jt, "field_types", {});
    r.trigger.semantic_tags =
        detail::get_or<std::vector<std::string>>(jt, "semantic_tags", {});
    r.trigger.requires_localizable =
        detail::get_or(jt, "requires_localizable", false);
  }
  r.priority = detail::get_or(j, "priority", 0);
  r.rationale = detail::get_or<std::string>(j, "rationale", "");

  const auto action_str = detail::get_or<std::string>(j, "action", "");
  const auto action = decision_from_string(action_str);
  if (!action) {
    out.report.ok = false;
    out.report.reasons.push_back("bad action '" + action_str + "'");
    return out;
  }
  r.action = *action;

  out.report = validate_rule(r);
  if (out.report.ok) out.rule = std::move(r);
  return out;
}

}  // namespace maskclaw
