#include "maskclaw/arbiter.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "maskclaw/textnorm.hpp"

namespace maskclaw {

FallbackTrace fallback_decide(const Instance& instance,
                              const std::vector<EvidenceItem>& evidence,
                              bool force_sensitive) {
  FallbackTrace t;
  t.trusted = recipient_trusted(instance.app_context.recipient);

  const auto task_text = normalize_text(instance.task + " " + instance.intent);
  for (const auto& e : evidence) {
    if (!is_sensitive_field_type(e.field_type)) continue;
    t.sensitive = true;
    const auto field = normalize_text(e.field_type);
    if (!field.empty() && task_text.find(field) != std::string::npos)
      t.task_needs = true;
  }
  if (force_sensitive) t.sensitive = true;

  t.flags.m = t.sensitive && !t.task_needs;
  t.flags.u = t.sensitive && !t.trusted && t.task_needs;
  return t;
}

const RankedCandidate* select_rule(const std::vector<RankedCandidate>& ranked) {
  static const std::set<Facet> kFull = {Facet::recipient, Facet::action,
                                        Facet::persona};
  for (const auto& c : ranked)
    if (std::includes(c.matched.begin(), c.matched.end(), kFull.begin(),
                      kFull.end()))
      return &c;
  for (const auto& c : ranked)
    if (c.score >= kSelectScoreFloor) return &c;
  return nullptr;
}

VisualCheck MockVisualChecker::check(const Instance&,
                                     const std::vector<EvidenceItem>&,
                                     const ArbitrationResult& locked) {
  VisualCheck v;
  v.ran = true;
  v.consistent = map_decision(locked.flags) == locked.decision;
  v.note = v.consistent ? "flag mapping agrees with decision"
                        : "flags and decision disagree";
  return v;
}

ArbitrationResult arbitrate(const Instance& instance, const EvidenceSet& evidence,
                            const RuleStore& store, const ArbitrateOptions& opts) {
  ArbitrationResult res;
  res.diagnostics = evidence.diagnostics;

  if (!evidence.diagnostics.empty()) {
    // Evidence cannot be trusted; treat the screen as sensitive and mask.
    auto t = fallback_decide(instance, evidence.items, true);
    res.flags = t.flags;
    res.decision = map_decision(t.flags);
    res.fallback_used = true;
    res.diagnostics.push_back("extraction degraded; conservative fallback engaged");
  } else {
    auto query = build_query(instance, evidence.items);
    res.candidates = retrieve_topk(store, query, opts.top_k);
    if (const auto* sel = select_rule(res.candidates)) {
      res.decision = sel->rule.action;
      res.flags = canonical_flags(res.decision);
      res.selected_rule_id = sel->rule.id;
    } else {
      auto t = fallback_decide(instance, evidence.items);
      res.flags = t.flags;
      res.decision = map_decision(t.flags);
      res.fallback_used = true;
    }
  }

  if (opts.checker) {
    const ArbitrationResult locked_view = res;
    try {
      res.visual = opts.checker->check(instance, evidence.items, locked_view);
    } catch (const std::exception& e) {
      res.visual = {};
      res.diagnostics.push_back(std::string("visual_check_failed: ") + e.what());
    } catch (...) {
      res.visual = {};
      res.diagnostics.push_back("visual_check_failed: unknown error");
    }
  }
  return res;
}

std::string arbitration_to_json(const ArbitrationResult& r) {
  detail::json j;
  j["decision"] = to_string(r.decision);
  j["flags"] = {{"m", r.flags.m}, {"u", r.flags.u}};
  j["selected_rule_id"] = r.selected_rule_id;
  j["fallback_used"] = r.fallback_used;
  auto cands = detail::json::array();
  for (const auto& c : r.candidates) {
    auto matched = detail::json::array();
    for (auto f : c.matched) matched.push_back(to_string(f));
    cands.push_back({{"rule_id", c.rule.id},
                     {"score", c.score},
                     {"matched", matched},
                     {"priority", c.rule.priority},
                     {"action", to_string(c.rule.action)}});
  }
  j["candidates"] = cands;
  j["diagnostics"] = r.diagnostics;
  j["visual"] = {{"ran", r.visual.ran},
                 {"consistent", r.visual.consistent},
                 {"note", r.visual.note}};
  return j.dump();
}

}  // namespace maskclaw
