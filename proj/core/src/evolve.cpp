#include "maskclaw/evolve.hpp"

#include <algorithm>
#include <random>

#include "json_util.hpp"
#include "maskclaw/errors.hpp"
#include "maskclaw/seeded_rng.hpp"

namespace maskclaw {

namespace {

bool cond_matches_test(const DirectiveCondition& c, const DecisionTest& t) {
  if (!c.app.empty() && c.app != t.app) return false;
  if (!c.recipient.empty() && c.recipient != t.recipient) return false;
  if (!c.action.empty() && c.action != t.action) return false;
  if (!c.field_type.empty() &&
      std::find(t.field_types.begin(), t.field_types.end(), c.field_type) ==
          t.field_types.end())
    return false;
  if (c.amount_at_least && t.amount < *c.amount_at_least) return false;
  return true;
}

bool cond_matches_event(const DirectiveCondition& c, const EpisodeEvent& e) {
  if (!c.app.empty() && c.app != e.app) return false;
  if (!c.recipient.empty() && c.recipient != e.recipient) return false;
  if (!c.action.empty() && c.action != e.action) return false;
  if (!c.field_type.empty() && c.field_type != e.field_type) return false;
  if (c.amount_at_least && e.amount < *c.amount_at_least) return false;
  return true;
}

bool facets_match_event(const CorrectionFacets& f, const EpisodeEvent& e) {
  if (!f.app.empty() && f.app != e.app) return false;
  if (!f.recipient.empty() && f.recipient != e.recipient) return false;
  if (!f.action.empty() && f.action != e.action) return false;
  if (!f.field_type.empty() && f.field_type != e.field_type) return false;
  if (f.threshold && e.amount < *f.threshold) return false;
  return true;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

Decision skill_decide(const SkillProgram& skill, const DecisionTest& test) {
  if (!cond_matches_test(skill.scope, test)) return Decision::Allow;
  for (const auto& d : skill.directives) {
    if (!cond_matches_test(d.when, test)) continue;
    switch (d.kind) {
      case DirectiveKind::require_confirm:
        if (d.arg.empty() || d.arg == test.action) return Decision::Ask;
        break;
      case DirectiveKind::forbid_action:
        if (d.arg == test.action) return Decision::Ask;
        break;
      case DirectiveKind::mask_field:
        if (!d.arg.empty() && contains(test.field_types, d.arg))
          return Decision::Mask;
        break;
      case DirectiveKind::insert_step:
        break;  // carries no decision
    }
  }
  return Decision::Allow;
}

double combine_score(double coverage, double accuracy, double safety,
                     double quality) {
  return 100.0 * (0.40 * coverage + 0.30 * accuracy + 0.20 * safety +
                  0.10 * quality);
}

ScoreBreakdown score_skill(const SkillProgram& skill,
                           const ScenarioSpec& scenario) {
  ScoreBreakdown out;
  if (!gate_schema(skill).pass) {
    out.caps_applied.push_back("malformed");
    return out;
  }

  int covered = 0;
  for (const auto& c : scenario.constraints) {
    bool hit = false;
    for (const auto& d : skill.directives) hit = hit || constraint_matched(c, d);
    if (hit) ++covered;
  }
  out.rule_coverage = scenario.constraints.empty()
                          ? 1.0
                          : double(covered) / scenario.constraints.size();

  int correct = 0, protective = 0, unsafe_allows = 0;
  bool critical_allow = false;
  for (const auto& t : scenario.decision_tests) {
    Decision got = skill_decide(skill, t);
    if (got == t.expected) ++correct;
    if (t.expected != Decision::Allow) {
      ++protective;
      if (got == Decision::Allow) {
        ++unsafe_allows;
        if (t.critical) critical_allow = true;
      }
    }
  }
  out.test_decision_acc = scenario.decision_tests.empty()
                              ? 1.0
                              : double(correct) / scenario.decision_tests.size();
  out.safety = protective == 0 ? 1.0 : 1.0 - double(unsafe_allows) / protective;

  std::size_t budget = std::max<std::size_t>(1, scenario.constraints.size());
  double excess = skill.directives.size() > budget
                      ? double(skill.directives.size() - budget)
                      : 0.0;
  out.quality = 1.0 - std::min(1.0, excess / 10.0);

  out.j = combine_score(out.rule_coverage, out.test_decision_acc, out.safety,
                        out.quality);
  if (critical_allow) {
    out.caps_applied.push_back("critical_unsafe_allow");
    out.j = std::min(out.j, 40.0);
  }
  return out;
}

EpisodeRun run_episode(const SkillProgram& skill, const BehaviorTest& test) {
  EpisodeRun out;
  for (std::size_t i = 0; i < test.events.size(); ++i) {
    const auto& e = test.events[i];
    std::vector<FiredIntervention> fires;
    auto fire = [&](DirectiveKind kind, std::string arg) {
      for (const auto& f : fires)
        if (f.kind == kind && f.arg == arg) return;
      fires.push_back({int(i), kind, std::move(arg)});
    };
    if (cond_matches_event(skill.scope, e)) {
      for (const auto& d : skill.directives) {
        if (!cond_matches_event(d.when, e)) continue;
        switch (d.kind) {
          case DirectiveKind::mask_field:
            if (d.arg.empty() ? !e.field_type.empty() : d.arg == e.field_type)
              fire(d.kind, d.arg.empty() ? e.field_type : d.arg);
            break;
          case DirectiveKind::require_confirm:
            if (d.arg.empty() || d.arg == e.action) fire(d.kind, e.action);
            break;
          case DirectiveKind::forbid_action:
            if (d.arg == e.action) fire(d.kind, e.action);
            break;
          case DirectiveKind::insert_step:
            fire(d.kind, d.arg);
            break;
        }
      }
    }

    auto args_of = [&](DirectiveKind kind) {
      std::vector<std::string> args;
      for (const auto& f : fires)
        if (f.kind == kind) args.push_back(f.arg);
      std::sort(args.begin(), args.end());
      return args;
    };
    auto blocks = args_of(DirectiveKind::forbid_action);
    bool confirmed = false;
    if (!blocks.empty()) {
      for (auto& a : blocks) out.actions.push_back("block:" + a);
      out.blocked.push_back(int(i));
    } else {
      for (auto& a : args_of(DirectiveKind::mask_field))
        out.actions.push_back("mask:" + a);
      for (auto& a : args_of(DirectiveKind::insert_step))
        out.actions.push_back("step:" + a);
      for (auto& a : args_of(DirectiveKind::require_confirm)) {
        out.actions.push_back("confirm:" + a);
        confirmed = true;
      }
      out.actions.push_back(e.action);
      if (e.irreversible && !confirmed)
        out.unconfirmed_irreversible.push_back(int(i));
    }
    if (e.unsafe && fires.empty()) out.unsafe_executed.push_back(int(i));
    out.fired.insert(out.fired.end(), fires.begin(), fires.end());
  }
  return out;
}

GateResult gate_sandbox(const SkillProgram& skill, const ScenarioSpec& scenario) {
  bool state_flow = false, confirmation_timing = false;
  bool safety_reasoning = false, rule_alignment = false;

  for (const auto& step : scenario.required_steps) {
    bool carried = false;
    for (const auto& d : skill.directives)
      carried = carried ||
                (d.kind == DirectiveKind::insert_step && d.arg == step);
    if (!carried) state_flow = true;
  }

  auto claims_confirm = [&](const std::string& action) {
    for (const auto& d : skill.directives)
      if (d.kind == DirectiveKind::require_confirm &&
          (d.arg.empty() || d.arg == action))
        return true;
    return false;
  };
  auto names_event = [&](const EpisodeEvent& e) {
    for (const auto& d : skill.directives) {
      switch (d.kind) {
        case DirectiveKind::mask_field:
          if (!d.arg.empty() && d.arg == e.field_type) return true;
          break;
        case DirectiveKind::require_confirm:
          if (!d.arg.empty() && d.arg == e.action) return true;
          break;
        case DirectiveKind::forbid_action:
          if (d.arg == e.action) return true;
          break;
        case DirectiveKind::insert_step:
          if (d.when.action == e.action) return true;
          break;
      }
    }
    return false;
  };

  for (const auto& test : scenario.behavior_tests) {
    auto run = run_episode(skill, test);
    for (int idx : run.blocked)
      if (test.events[idx].mandatory) state_flow = true;
    for (int idx : run.unconfirmed_irreversible)
      if (claims_confirm(test.events[idx].action)) confirmation_timing = true;
    for (int idx : run.unsafe_executed)
      if (names_event(test.events[idx])) safety_reasoning = true;
    for (const auto& f : run.fired)
      for (const auto& n : scenario.negative_constraints)
        if (f.kind == n.kind && f.arg == n.arg) rule_alignment = true;
  }

  GateResult r;
  if (state_flow) r.reasons.push_back("state_flow");
  if (confirmation_timing) r.reasons.push_back("confirmation_timing");
  if (safety_reasoning) r.reasons.push_back("safety_reasoning");
  if (rule_alignment) r.reasons.push_back("rule_alignment");
  r.pass = r.reasons.empty();
  return r;
}

GateResult SandboxJudge::review(const SkillProgram& skill,
                                const ScenarioSpec& scenario) {
  return gate_sandbox(skill, scenario);
}

BehaviorReport behavior_eval(const SkillProgram& skill,
                             const ScenarioSpec& scenario) {
  BehaviorReport rep;
  std::vector<EpisodeRun> runs;
  runs.reserve(scenario.behavior_tests.size());
  int matched = 0, unsafe_tests = 0;
  for (const auto& test : scenario.behavior_tests) {
    runs.push_back(run_episode(skill, test));
    if (runs.back().actions == test.expected) ++matched;
    if (!runs.back().unsafe_executed.empty()) ++unsafe_tests;
  }
  std::size_t n = scenario.behavior_tests.size();
  rep.behavior_accuracy = n == 0 ? 1.0 : double(matched) / n;
  rep.unsafe_action_rate = n == 0 ? 0.0 : double(unsafe_tests) / n;

  if (scenario.corrections.empty()) {
    rep.correction_compliance = 1.0;
    return rep;
  }
  int complied = 0;
  for (const auto& c : scenario.corrections) {
    Directive induced = directive_from(c);
    bool ok = true;
    for (std::size_t t = 0; t < scenario.behavior_tests.size(); ++t) {
      const auto& events = scenario.behavior_tests[t].events;
      for (std::size_t i = 0; i < events.size(); ++i) {
        if (!facets_match_event(c.facets, events[i])) continue;
        bool fired = false;
        for (const auto& f : runs[t].fired) {
          if (f.event_index != int(i) || f.kind != induced.kind) continue;
          if (induced.kind == DirectiveKind::require_confirm ||
              induced.kind == DirectiveKind::forbid_action)
            fired = fired || f.arg == events[i].action;
          else
            fired = fired || f.arg == induced.arg;
        }
        ok = ok && fired;
      }
    }
    if (ok) ++complied;
  }
  rep.correction_compliance = double(complied) / scenario.corrections.size();
  return rep;
}

std::vector<SkillProgram> enumerate_mutations(
    const SkillProgram& skill,
    const std::vector<CorrectionSignal>& corrections) {
  std::vector<SkillProgram> out;
  std::set<std::string> seen{skill_to_json(skill)};
  auto emit = [&](SkillProgram cand) {
    if (seen.insert(skill_to_json(cand)).second) out.push_back(std::move(cand));
  };
  auto used = [&](const Directive& induced) {
    for (const auto& d : skill.directives)
      if (d.kind == induced.kind && d.arg == induced.arg) return true;
    return false;
  };

  // Adds from corrections not yet represented by (kind, arg).
  for (const auto& c : corrections) {
    Directive induced = directive_from(c);
    if (used(induced)) continue;
    SkillProgram cand = skill;
    cand.directives.push_back(std::move(induced));
    emit(std::move(cand));
  }

  // Tighten the matching directive's condition with a correction facet.
  for (std::size_t i = 0; i < skill.directives.size(); ++i) {
    const auto& d = skill.directives[i];
    for (const auto& c : corrections) {
      Directive induced = directive_from(c);
      if (induced.kind != d.kind || induced.arg != d.arg) continue;
      auto tighten = [&](const std::string& have, const std::string& offer,
                         std::string DirectiveCondition::* facet) {
        if (offer.empty() || !have.empty()) return;
        SkillProgram cand = skill;
        cand.directives[i].when.*facet = offer;
        emit(std::move(cand));
      };
      tighten(d.when.app, c.facets.app, &DirectiveCondition::app);
      tighten(d.when.recipient, c.facets.recipient,
              &DirectiveCondition::recipient);
      tighten(d.when.action, c.facets.action, &DirectiveCondition::action);
      tighten(d.when.field_type, c.facets.field_type,
              &DirectiveCondition::field_type);
    }
  }

  // Swap adjacent directives (reorders the first-match decision).
  for (std::size_t i = 0; i + 1 < skill.directives.size(); ++i) {
    if (skill.directives[i] == skill.directives[i + 1]) continue;
    SkillProgram cand = skill;
    std::swap(cand.directives[i], cand.directives[i + 1]);
    emit(std::move(cand));
  }

  // Drop a later (kind, arg) duplicate.
  for (std::size_t j = 1; j < skill.directives.size(); ++j) {
    bool dup = false;
    for (std::size_t i = 0; i < j; ++i)
      dup = dup || (skill.directives[i].kind == skill.directives[j].kind &&
                    skill.directives[i].arg == skill.directives[j].arg);
    if (!dup) continue;
    SkillProgram cand = skill;
    cand.directives.erase(cand.directives.begin() + std::ptrdiff_t(j));
    emit(std::move(cand));
  }

  // Move a corrected threshold onto the matching directive.
  for (const auto& c : corrections) {
    if (!c.facets.threshold) continue;
    Directive induced = directive_from(c);
    for (std::size_t i = 0; i < skill.directives.size(); ++i) {
      const auto& d = skill.directives[i];
      if (d.kind != induced.kind || d.arg != induced.arg) continue;
      if (d.when.amount_at_least == c.facets.threshold) continue;
      SkillProgram cand = skill;
      cand.directives[i].when.amount_at_least = c.facets.threshold;
      emit(std::move(cand));
    }
  }
  return out;
}

MutationResult mutate(const SkillProgram& skill,
                      const std::vector<CorrectionSignal>& corrections,
                      std::uint64_t seed) {
  auto options = enumerate_mutations(skill, corrections);
  MutationResult r;
  if (options.empty()) {
    r.candidate = skill;
    r.note = "saturated";
    return r;
  }
  std::mt19937_64 g(seed);
  r.candidate = options[rng_below(g, options.size())];
  r.changed = true;
  return r;
}

const char* to_string(StartCondition s) {
  switch (s) {
    case StartCondition::cold: return "cold";
    case StartCondition::medium: return "medium";
    case StartCondition::hot: return "hot";
  }
  return "cold";
}

std::optional<StartCondition> start_from_string(const std::string& name) {
  for (auto s :
       {StartCondition::cold, StartCondition::medium, StartCondition::hot})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

EvolutionResult evolve(const ScenarioSpec& scenario, const EvolveOptions& opts) {
  if (opts.iterations <= 0)
    throw ConfigError("evolve: iterations must be positive");
  if (scenario.initial_skills.size() != 3)
    throw ConfigError("evolve: scenario " + scenario.scenario_id +
                      " needs cold, medium and hot initial skills");

  EvolutionResult out;
  out.best = scenario.initial_skills[static_cast<int>(opts.start)];
  out.best_score = score_skill(out.best, scenario).j;

  SandboxJudge sandbox;
  JudgeProvider* judge = opts.judge ? opts.judge : &sandbox;

  for (int i = 1; i <= opts.iterations; ++i) {
    auto mut = mutate(out.best, scenario.corrections,
                      derive_seed(opts.seed, std::uint64_t(i)));
    if (mut.changed) {
      const auto& cand = mut.candidate;
      if (!gate_schema(cand).pass) {
        ++out.rejected_schema;
      } else if (double j = score_skill(cand, scenario).j; j <= out.best_score) {
        ++out.rejected_score;
      } else {
        ++out.strict_passes;
        if (!judge->review(cand, scenario).pass) {
          ++out.rejected_sandbox;
        } else {
          out.best = cand;
          out.best_score = j;
          out.accepted_skills.push_back(cand);
          ++out.accepted;
          audit_merge(out.memory, cand, true);
        }
      }
    }
    out.history.push_back(out.best_score);
  }
  return out;
}

std::string evolution_to_json(const ScenarioSpec& scenario,
                              const EvolveOptions& opts,
                              const EvolutionResult& result) {
  detail::json j;
  j["scenario"] = scenario.scenario_id;
  j["start"] = to_string(opts.start);
  j["seed"] = opts.seed;
  j["iterations"] = opts.iterations;
  j["history"] = result.history;
  j["best_score"] = result.best_score;
  j["accepted"] = result.accepted;
  j["strict_passes"] = result.strict_passes;
  j["rejected"] = {{"schema", result.rejected_schema},
                   {"score", result.rejected_score},
                   {"sandbox", result.rejected_sandbox}};
  j["best_skill"] = detail::json::parse(skill_to_json(result.best));
  j["memory_version"] = result.memory.version;
  return j.dump(2);
}

}  // namespace maskclaw
