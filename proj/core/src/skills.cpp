#include "maskclaw/skills.hpp"

#include <sstream>

#include "json_util.hpp"
#include "maskclaw/errors.hpp"
#include "maskclaw/instance.hpp"

namespace maskclaw {

const char* to_string(FeedbackKind k) {
  switch (k) {
    case FeedbackKind::confirm: return "confirm";
    case FeedbackKind::cancel: return "cancel";
    case FeedbackKind::edit: return "edit";
    case FeedbackKind::reject_action: return "reject_action";
    case FeedbackKind::retry: return "retry";
    case FeedbackKind::instruct: return "instruct";
  }
  return "confirm";
}

std::optional<FeedbackKind> feedback_from_string(const std::string& name) {
  for (auto k : {FeedbackKind::confirm, FeedbackKind::cancel, FeedbackKind::edit,
                 FeedbackKind::reject_action, FeedbackKind::retry,
                 FeedbackKind::instruct})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(CorrectionKind k) {
  switch (k) {
    case CorrectionKind::mask_field: return "mask_field";
    case CorrectionKind::require_confirm: return "require_confirm";
    case CorrectionKind::forbid_action: return "forbid_action";
    case CorrectionKind::insert_step: return "insert_step";
  }
  return "mask_field";
}

std::optional<CorrectionKind> correction_kind_from_string(const std::string& name) {
  for (auto k : {CorrectionKind::mask_field, CorrectionKind::require_confirm,
                 CorrectionKind::forbid_action, CorrectionKind::insert_step})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(DirectiveKind k) {
  switch (k) {
    case DirectiveKind::require_confirm: return "require_confirm";
    case DirectiveKind::mask_field: return "mask_field";
    case DirectiveKind::forbid_action: return "forbid_action";
    case DirectiveKind::insert_step: return "insert_step";
  }
  return "require_confirm";
}

std::optional<DirectiveKind> directive_kind_from_string(const std::string& name) {
  for (auto k : {DirectiveKind::require_confirm, DirectiveKind::mask_field,
                 DirectiveKind::forbid_action, DirectiveKind::insert_step})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

bool CorrectionFacets::any_bound() const {
  return !app.empty() || !recipient.empty() || !action.empty() ||
         !field_type.empty() || !step_id.empty() || threshold.has_value();
}

bool DirectiveCondition::any_bound() const {
  return !app.empty() || !recipient.empty() || !action.empty() ||
         !field_type.empty() || amount_at_least.has_value();
}

namespace {

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::optional<CorrectionSignal> parse_instruct(const std::string& text,
                                               std::string& why) {
  auto w = split_words(text);
  CorrectionSignal sig;
  if (w.size() == 2 && w[0] == "mask") {
    sig.kind = CorrectionKind::mask_field;
    sig.facets.field_type = w[1];
    return sig;
  }
  if (w.size() == 4 && w[0] == "mask" && w[2] == "for") {
    sig.kind = CorrectionKind::mask_field;
    sig.facets.field_type = w[1];
    sig.facets.recipient = w[3];
    return sig;
  }
  if (w.size() == 2 && w[0] == "confirm") {
    sig.kind = CorrectionKind::require_confirm;
    sig.facets.action = w[1];
    return sig;
  }
  if (w.size() == 4 && w[0] == "confirm" && w[2] == "over") {
    char* end = nullptr;
    double amount = std::strtod(w[3].c_str(), &end);
    if (!end || *end != '\0') {
      why = "bad amount";
      return std::nullopt;
    }
    sig.kind = CorrectionKind::require_confirm;
    sig.facets.action = w[1];
    sig.facets.threshold = amount;
    return sig;
  }
  if (w.size() == 2 && w[0] == "forbid") {
    sig.kind = CorrectionKind::forbid_action;
    sig.facets.action = w[1];
    return sig;
  }
  if (w.size() == 4 && w[0] == "insert" && w[2] == "before") {
    sig.kind = CorrectionKind::insert_step;
    sig.facets.step_id = w[1];
    sig.facets.action = w[3];
    return sig;
  }
  why = "no grammar rule";
  return std::nullopt;
}

}  // namespace

ExtractionResult extract_corrections(const Trace& trace) {
  ExtractionResult out;
  auto push = [&](CorrectionSignal sig) {
    for (const auto& have : out.signals)
      if (have == sig) return;
    out.signals.push_back(std::move(sig));
  };

  for (const auto& step : trace.steps) {
    switch (step.feedback) {
      case FeedbackKind::confirm:
      case FeedbackKind::retry:
        break;
      case FeedbackKind::cancel: {
        const EvidenceItem* sensitive = nullptr;
        for (const auto& item : step.evidence)
          if (is_sensitive_field_type(item.field_type)) {
            sensitive = &item;
            break;
          }
        CorrectionSignal sig;
        if (sensitive && !recipient_trusted(step.recipient)) {
          sig.kind = CorrectionKind::mask_field;
          sig.facets.field_type = sensitive->field_type;
          sig.facets.recipient = step.recipient;
        } else {
          sig.kind = CorrectionKind::require_confirm;
          sig.facets.action = step.action;
        }
        push(std::move(sig));
        break;
      }
      case FeedbackKind::reject_action: {
        CorrectionSignal sig;
        sig.kind = CorrectionKind::require_confirm;
        sig.facets.action = step.action;
        push(std::move(sig));
        break;
      }
      case FeedbackKind::edit: {
        if (step.payload.empty()) {
          out.diagnostics.push_back("edit_without_field");
          break;
        }
        CorrectionSignal sig;
        sig.kind = CorrectionKind::mask_field;
        sig.facets.field_type = step.payload;
        push(std::move(sig));
        break;
      }
      case FeedbackKind::instruct: {
        std::string why;
        if (auto sig = parse_instruct(step.payload, why)) {
          push(std::move(*sig));
        } else {
          out.diagnostics.push_back("unparseable_instruct: " + step.payload);
        }
        break;
      }
    }
  }
  return out;
}

Directive directive_from(const CorrectionSignal& correction) {
  Directive d;
  d.when.app = correction.facets.app;
  d.when.recipient = correction.facets.recipient;
  d.when.action = correction.facets.action;
  d.when.amount_at_least = correction.facets.threshold;
  switch (correction.kind) {
    case CorrectionKind::mask_field:
      d.kind = DirectiveKind::mask_field;
      d.arg = correction.facets.field_type;
      d.when.field_type = correction.facets.field_type;
      break;
    case CorrectionKind::require_confirm:
      d.kind = DirectiveKind::require_confirm;
      d.arg = correction.facets.action;
      d.when.field_type = correction.facets.field_type;
      break;
    case CorrectionKind::forbid_action:
      d.kind = DirectiveKind::forbid_action;
      d.arg = correction.facets.action;
      d.when.field_type = correction.facets.field_type;
      break;
    case CorrectionKind::insert_step:
      d.kind = DirectiveKind::insert_step;
      d.arg = correction.facets.step_id;
      d.when.field_type = correction.facets.field_type;
      break;
  }
  return d;
}

GateResult gate_schema(const SkillProgram& skill) {
  GateResult r;
  auto fail = [&](std::string reason) {
    r.pass = false;
    r.reasons.push_back(std::move(reason));
  };
  if (skill.skill_id.empty()) fail("missing skill_id");
  if (skill.directives.empty()) fail("no directives");
  for (std::size_t i = 0; i < skill.directives.size(); ++i) {
    const auto& d = skill.directives[i];
    if (!d.when.any_bound())
      fail("unbound condition at directive " + std::to_string(i));
    if (d.kind != DirectiveKind::require_confirm && d.arg.empty())
      fail("missing arg at directive " + std::to_string(i));
  }
  return r;
}

namespace {

detail::json condition_to_json(const DirectiveCondition& c) {
  detail::json j = detail::json::object();
  if (!c.app.empty()) j["app"] = c.app;
  if (!c.recipient.empty()) j["recipient"] = c.recipient;
  if (!c.action.empty()) j["action"] = c.action;
  if (!c.field_type.empty()) j["field_type"] = c.field_type;
  if (c.amount_at_least) j["amount_at_least"] = *c.amount_at_least;
  return j;
}

DirectiveCondition condition_from_json(const detail::json& j) {
  DirectiveCondition c;
  c.app = detail::get_or<std::string>(j, "app", "");
  c.recipient = detail::get_or<std::string>(j, "recipient", "");
  c.action = detail::get_or<std::string>(j, "action", "");
  c.field_type = detail::get_or<std::string>(j, "field_type", "");
  if (j.contains("amount_at_least"))
    c.amount_at_least = j["amount_at_least"].get<double>();
  return c;
}

}  // namespace

std::string skill_to_json(const SkillProgram& skill) {
  detail::json j;
  j["skill_id"] = skill.skill_id;
  j["scope"] = condition_to_json(skill.scope);
  j["rationale"] = skill.rationale;
  auto arr = detail::json::array();
  for (const auto& d : skill.directives)
    arr.push_back({{"kind", to_string(d.kind)},
                   {"arg", d.arg},
                   {"when", condition_to_json(d.when)}});
  j["directives"] = arr;
  return j.dump();
}

SkillProgram skill_from_json(const std::string& text) {
  auto j = detail::parse_json(text, "skill");
  SkillProgram s;
  s.skill_id = detail::get_or<std::string>(j, "skill_id", "");
  if (j.contains("scope")) s.scope = condition_from_json(j["scope"]);
  s.rationale = detail::get_or<std::string>(j, "rationale", "");
  for (const auto& dj : j.value("directives", detail::json::array())) {
    Directive d;
    auto kind = directive_kind_from_string(
        detail::get_or<std::string>(dj, "kind", ""));
    if (!kind) throw DataError("skill " + s.skill_id + ": unknown directive kind");
    d.kind = *kind;
    d.arg = detail::get_or<std::string>(dj, "arg", "");
    if (dj.contains("when")) d.when = condition_from_json(dj["when"]);
    s.directives.push_back(std::move(d));
  }
  return s;
}

const SkillProgram* SkillMemory::find(const std::string& skill_id) const {
  for (const auto& s : skills)
    if (s.skill_id == skill_id) return &s;
  return nullptr;
}

void audit_merge(SkillMemory& memory, const SkillProgram& candidate, bool gated) {
  if (!gated)
    throw InvariantError("audit_merge: candidate did not pass the gates");
  for (auto& s : memory.skills)
    if (s.skill_id == candidate.skill_id) {
      s = candidate;
      ++memory.version;
      return;
    }
  memory.skills.push_back(candidate);
  ++memory.version;
}

}  // namespace maskclaw
