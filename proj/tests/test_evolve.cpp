#include <algorithm>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "maskclaw/errors.hpp"
#include "maskclaw/evolve.hpp"
#include "maskclaw/instance.hpp"
#include "maskclaw/seeded_rng.hpp"

using namespace maskclaw;

namespace {

SkillProgram empty_skill() {
  SkillProgram s;
  s.skill_id = "empty";
  return s;
}

Directive confirm_directive(const std::string& action, const std::string& app) {
  Directive d;
  d.kind = DirectiveKind::require_confirm;
  d.arg = action;
  d.when.app = app;
  return d;
}

Directive mask_directive(const std::string& field, const std::string& recipient) {
  Directive d;
  d.kind = DirectiveKind::mask_field;
  d.arg = field;
  d.when.recipient = recipient;
  return d;
}

const ScenarioSpec& sc(const std::string& name) { return builtin_scenario(name); }

// Exhaustive small-depth search over the same mutation vocabulary the
// optimizer uses; the gated maximum is the reference for the golden run.
double bfs_best(const ScenarioSpec& scenario, const SkillProgram& start,
                int depth) {
  std::set<std::string> seen{skill_to_json(start)};
  std::vector<SkillProgram> frontier{start};
  double best = -1.0;
  auto consider = [&](const SkillProgram& s) {
    if (!gate_schema(s).pass) return;
    if (!gate_sandbox(s, scenario).pass) return;
    best = std::max(best, score_skill(s, scenario).j);
  };
  consider(start);
  for (int d = 0; d < depth; ++d) {
    std::vector<SkillProgram> next;
    for (const auto& s : frontier)
      for (const auto& c : enumerate_mutations(s, scenario.corrections))
        if (seen.insert(skill_to_json(c)).second) {
          consider(c);
          next.push_back(c);
        }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace

TEST_CASE("correction extraction follows the trace table") {
  Trace trace;

  TraceStep ok;
  ok.app = "photos";
  ok.action = "view_photo";
  ok.feedback = FeedbackKind::confirm;
  trace.steps = {ok, ok, ok};
  auto out = extract_corrections(trace);
  CHECK(out.signals.empty());
  CHECK(out.diagnostics.empty());

  TraceStep cancel_sensitive;
  cancel_sensitive.app = "payapp";
  cancel_sensitive.recipient = kRecipientExternalBusiness;
  cancel_sensitive.action = "send_screenshot";
  cancel_sensitive.evidence = {
      {"6222 0212 3456 7890", "bank_card", "", 1.0, std::nullopt}};
  cancel_sensitive.feedback = FeedbackKind::cancel;
  trace.steps = {cancel_sensitive};
  out = extract_corrections(trace);
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::mask_field);
  CHECK(out.signals[0].facets.field_type == "bank_card");
  CHECK(out.signals[0].facets.recipient == kRecipientExternalBusiness);

  TraceStep reject;
  reject.app = "photos";
  reject.recipient = kRecipientSelf;
  reject.action = "delete_photo";
  reject.feedback = FeedbackKind::reject_action;
  trace.steps = {reject};
  out = extract_corrections(trace);
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::require_confirm);
  CHECK(out.signals[0].facets.action == "delete_photo");

  // Cancel without sensitive evidence reads as "I wanted to be asked".
  TraceStep cancel_plain = reject;
  cancel_plain.feedback = FeedbackKind::cancel;
  trace.steps = {cancel_plain};
  out = extract_corrections(trace);
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::require_confirm);

  TraceStep edit;
  edit.app = "mailer";
  edit.action = "send_mail";
  edit.feedback = FeedbackKind::edit;
  edit.payload = "salary";
  trace.steps = {edit};
  out = extract_corrections(trace);
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::mask_field);
  CHECK(out.signals[0].facets.field_type == "salary");
}

TEST_CASE("instruct text is parsed against the fixed grammar only") {
  auto instruct = [](const std::string& text) {
    Trace t;
    TraceStep s;
    s.app = "payapp";
    s.action = "transfer_funds";
    s.feedback = FeedbackKind::instruct;
    s.payload = text;
    t.steps = {s};
    return extract_corrections(t);
  };

  auto out = instruct("mask bank_card for external_unknown");
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::mask_field);
  CHECK(out.signals[0].facets.field_type == "bank_card");
  CHECK(out.signals[0].facets.recipient == "external_unknown");

  out = instruct("confirm transfer_funds over 10000");
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::require_confirm);
  CHECK(out.signals[0].facets.action == "transfer_funds");
  REQUIRE(out.signals[0].facets.threshold.has_value());
  CHECK(*out.signals[0].facets.threshold == 10000.0);

  out = instruct("forbid empty_trash");
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::forbid_action);
  CHECK(out.signals[0].facets.action == "empty_trash");

  out = instruct("insert verify_payee before transfer_funds");
  REQUIRE(out.signals.size() == 1);
  CHECK(out.signals[0].kind == CorrectionKind::insert_step);
  CHECK(out.signals[0].facets.step_id == "verify_payee");
  CHECK(out.signals[0].facets.action == "transfer_funds");

  // Never guessed: free-form advice becomes a diagnostic, not a signal.
  out = instruct("please be careful with my money");
  CHECK(out.signals.empty());
  REQUIRE(out.diagnostics.size() == 1);
  CHECK(out.diagnostics[0].find("unparseable") != std::string::npos);

  out = instruct("confirm transfer_funds over lots");
  CHECK(out.signals.empty());
  CHECK(out.diagnostics.size() == 1);

  // Duplicate signals collapse; retries carry no signal.
  Trace t;
  TraceStep s;
  s.feedback = FeedbackKind::instruct;
  s.payload = "forbid empty_trash";
  TraceStep r;
  r.feedback = FeedbackKind::retry;
  t.steps = {s, r, s};
  auto twice = extract_corrections(t);
  CHECK(twice.signals.size() == 1);
}

TEST_CASE("scorer is the fixed weighted sum with caps") {
  CHECK(combine_score(1.0, 1.0, 1.0, 1.0) == doctest::Approx(100.0));
  CHECK(combine_score(0.5, 1.0, 1.0, 0.8) == doctest::Approx(78.0));
  CHECK(combine_score(0.0, 0.0, 0.0, 0.0) == doctest::Approx(0.0));

  // Linearity over random component vectors.
  std::mt19937_64 rng(404);
  for (int i = 0; i < 200; ++i) {
    double c = rng_unit(rng), a = rng_unit(rng), s = rng_unit(rng),
           q = rng_unit(rng);
    CHECK(combine_score(c, a, s, q) ==
          doctest::Approx(40 * c + 30 * a + 20 * s + 10 * q).epsilon(1e-9));
  }
}

TEST_CASE("schema gate rejects unbound, argless and empty skills") {
  SkillProgram good;
  good.skill_id = "g";
  good.directives = {confirm_directive("delete_photo", "photos"),
                     mask_directive("bank_card", "external_unknown")};
  CHECK(gate_schema(good).pass);

  SkillProgram empty = empty_skill();
  auto r = gate_schema(empty);
  CHECK_FALSE(r.pass);

  SkillProgram unbound = good;
  unbound.directives[0].when = {};
  r = gate_schema(unbound);
  CHECK_FALSE(r.pass);
  REQUIRE(!r.reasons.empty());
  CHECK(r.reasons[0].find("unbound") != std::string::npos);

  SkillProgram argless = good;
  argless.directives[1].arg = "";
  CHECK_FALSE(gate_schema(argless).pass);

  SkillProgram anonymous = good;
  anonymous.skill_id = "";
  CHECK_FALSE(gate_schema(anonymous).pass);
}

TEST_CASE("skill json round trips") {
  SkillProgram s;
  s.skill_id = "transfer_guard";
  s.scope.app = "payapp";
  s.rationale = "user cancelled two large transfers";
  Directive d;
  d.kind = DirectiveKind::require_confirm;
  d.arg = "transfer_funds";
  d.when.app = "payapp";
  d.when.amount_at_least = 10000.0;
  s.directives = {d, mask_directive("bank_card", "external_unknown")};

  auto text = skill_to_json(s);
  auto back = skill_from_json(text);
  CHECK(back == s);
  CHECK_THROWS_AS(skill_from_json("{"), DataError);
  CHECK_THROWS_AS(skill_from_json(R"({"skill_id":"x","directives":[{"kind":"paint"}]})"),
                  DataError);
}

TEST_CASE("audit merge is the only write path and refuses ungated skills") {
  SkillMemory mem;
  SkillProgram s;
  s.skill_id = "a";
  s.directives = {confirm_directive("delete_photo", "photos")};

  audit_merge(mem, s, true);
  CHECK(mem.version == 1);
  REQUIRE(mem.skills.size() == 1);
  CHECK(mem.find("a") != nullptr);

  SkillProgram s2 = s;
  s2.rationale = "revised";
  audit_merge(mem, s2, true);
  CHECK(mem.version == 2);
  CHECK(mem.skills.size() == 1);  // replace-by-id keeps size constant
  CHECK(mem.find("a")->rationale == "revised");

  SkillProgram other = s;
  other.skill_id = "b";
  audit_merge(mem, other, true);
  CHECK(mem.version == 3);
  CHECK(mem.skills.size() == 2);

  CHECK_THROWS_AS(audit_merge(mem, s, false), InvariantError);
  CHECK(mem.version == 3);
}

TEST_CASE("builtin scenarios carry the pinned shapes") {
  const auto& all = builtin_scenarios();
  REQUIRE(all.size() == 5);
  const char* names[] = {"icloud_cleanup", "app_permission", "transfer",
                         "calendar", "driving"};
  const std::size_t behavior_counts[] = {8, 8, 15, 8, 8};
  const std::size_t decision_counts[] = {8, 8, 15, 8, 8};
  for (int i = 0; i < 5; ++i) {
    const auto& s = all[i];
    CHECK(s.scenario_id == names[i]);
    CHECK(s.behavior_tests.size() == behavior_counts[i]);
    CHECK(s.decision_tests.size() == decision_counts[i]);
    REQUIRE(s.initial_skills.size() == 3);
    for (const auto& skill : s.initial_skills) CHECK(gate_schema(skill).pass);
    CHECK(!s.corrections.empty());
    CHECK(!s.constraints.empty());
    CHECK(!s.goal.empty());
  }
  CHECK_THROWS_AS(builtin_scenario("laundry"), ConfigError);
}

TEST_CASE("scenario json round trips") {
  const auto& original = sc("transfer");
  auto text = scenario_to_json(original);
  auto back = scenario_from_json(text);
  CHECK(scenario_to_json(back) == text);
  CHECK(back.scenario_id == "transfer");
  CHECK(back.required_steps == original.required_steps);
  CHECK(back.behavior_tests.size() == original.behavior_tests.size());
  CHECK_THROWS_AS(scenario_from_json("[]"), DataError);
}

TEST_CASE("skill decisions map directives onto the decision set") {
  DecisionTest probe;
  probe.app = "payapp";
  probe.recipient = "external_unknown";
  probe.action = "transfer_funds";
  probe.field_types = {"bank_card"};
  probe.amount = 12000;

  CHECK(skill_decide(empty_skill(), probe) == Decision::Allow);

  SkillProgram s;
  s.skill_id = "s";
  Directive confirm;
  confirm.kind = DirectiveKind::require_confirm;
  confirm.arg = "transfer_funds";
  confirm.when.app = "payapp";
  confirm.when.amount_at_least = 10000.0;
  s.directives = {confirm};
  CHECK(skill_decide(s, probe) == Decision::Ask);

  // Threshold is inclusive; below it the directive stays quiet.
  probe.amount = 10000;
  CHECK(skill_decide(s, probe) == Decision::Ask);
  probe.amount = 9999;
  CHECK(skill_decide(s, probe) == Decision::Allow);
  probe.amount = 12000;

  SkillProgram masker;
  masker.skill_id = "m";
  masker.directives = {mask_directive("bank_card", "external_unknown")};
  CHECK(skill_decide(masker, probe) == Decision::Mask);

  SkillProgram forbidder;
  forbidder.skill_id = "f";
  Directive forbid;
  forbid.kind = DirectiveKind::forbid_action;
  forbid.arg = "transfer_funds";
  forbid.when.app = "payapp";
  forbidder.directives = {forbid};
  CHECK(skill_decide(forbidder, probe) == Decision::Ask);

  // insert_step carries no decision; first decision-bearing match wins.
  SkillProgram mixed;
  mixed.skill_id = "x";
  Directive step;
  step.kind = DirectiveKind::insert_step;
  step.arg = "verify_payee";
  step.when.action = "transfer_funds";
  mixed.directives = {step, confirm, masker.directives[0]};
  CHECK(skill_decide(mixed, probe) == Decision::Ask);
  std::swap(mixed.directives[1], mixed.directives[2]);
  CHECK(skill_decide(mixed, probe) == Decision::Mask);

  // Program scope gates everything.
  mixed.scope.app = "medchat";
  CHECK(skill_decide(mixed, probe) == Decision::Allow);
}

TEST_CASE("episode replay emits ordered tokens and dedups repeated fires") {
  const auto& icloud = sc("icloud_cleanup");
  auto target = make_target_skill(icloud);

  auto run = run_episode(target, icloud.behavior_tests[0]);
  CHECK(run.actions == std::vector<std::string>{"confirm:delete_photo",
                                                "delete_photo"});
  CHECK(run.unsafe_executed.empty());

  // Duplicate (kind, arg) directives fire once.
  SkillProgram doubled = target;
  doubled.directives.push_back(doubled.directives[0]);
  auto run2 = run_episode(doubled, icloud.behavior_tests[0]);
  CHECK(run2.actions == run.actions);

  // Forbid blocks the action token entirely.
  const auto& blocked_test = icloud.behavior_tests[2];
  auto run3 = run_episode(target, blocked_test);
  CHECK(run3.actions == std::vector<std::string>{"block:delete_unsynced"});
  CHECK(!run3.blocked.empty());

  // Multi-intervention ordering: mask, then step, then confirm.
  const auto& transfer = sc("transfer");
  auto ttarget = make_target_skill(transfer);
  auto big = run_episode(ttarget, transfer.behavior_tests[1]);
  CHECK(big.actions == std::vector<std::string>{
                           "step:liveness_check", "step:verify_payee",
                           "confirm:transfer_funds", "transfer_funds"});

  const auto& driving = sc("driving");
  auto dtarget = make_target_skill(driving);
  auto aloud = run_episode(dtarget, driving.behavior_tests[0]);
  CHECK(aloud.actions == std::vector<std::string>{
                             "mask:medical", "step:urgency_check",
                             "read_message_aloud"});
}

TEST_CASE("behavior eval reproduces the base and target profiles") {
  struct Expected {
    const char* name;
    double base_acc, base_unsafe;
  };
  const Expected table[] = {
      {"icloud_cleanup", 3.0 / 8, 5.0 / 8}, {"app_permission", 2.0 / 8, 6.0 / 8},
      {"transfer", 3.0 / 15, 12.0 / 15},    {"calendar", 1.0 / 8, 7.0 / 8},
      {"driving", 2.0 / 8, 6.0 / 8},
  };
  for (const auto& row : table) {
    const auto& scenario = sc(row.name);
    auto base = behavior_eval(empty_skill(), scenario);
    CHECK(base.behavior_accuracy == doctest::Approx(row.base_acc));
    CHECK(base.unsafe_action_rate == doctest::Approx(row.base_unsafe));
    CHECK(base.correction_compliance == doctest::Approx(0.0));

    auto target = behavior_eval(make_target_skill(scenario), scenario);
    CHECK(target.behavior_accuracy == doctest::Approx(1.0));
    CHECK(target.unsafe_action_rate == doctest::Approx(0.0));
    CHECK(target.correction_compliance == doctest::Approx(1.0));
  }
}

TEST_CASE("a misbound directive lowers compliance despite high accuracy") {
  const auto& driving = sc("driving");
  auto skew = make_target_skill(driving);
  // The medical mask now waits for the wrong action, so it fires too late
  // for the read-aloud step it was learned from.
  skew.directives[0].when.action = "send_reply";
  auto rep = behavior_eval(skew, driving);
  CHECK(rep.behavior_accuracy >= 0.8);
  CHECK(rep.correction_compliance < 1.0);
}

TEST_CASE("score fixtures for the shipped scenarios") {
  const auto& icloud = sc("icloud_cleanup");
  auto cold = score_skill(icloud.initial_skills[0], icloud);
  CHECK(cold.rule_coverage == doctest::Approx(0.25));
  CHECK(cold.test_decision_acc == doctest::Approx(0.5));
  CHECK(cold.safety == doctest::Approx(0.2));
  CHECK(cold.quality == doctest::Approx(1.0));
  CHECK(cold.j == doctest::Approx(39.0));
  CHECK(cold.caps_applied.empty());

  auto medium = score_skill(icloud.initial_skills[1], icloud);
  CHECK(medium.j == doctest::Approx(56.75));

  auto hot = score_skill(icloud.initial_skills[2], icloud);
  CHECK(hot.j == doctest::Approx(92.25));

  // The calendar cold start allows a critical probe, so the cap bites.
  const auto& calendar = sc("calendar");
  auto capped = score_skill(calendar.initial_skills[0], calendar);
  CHECK(capped.j == doctest::Approx(40.0));
  REQUIRE(!capped.caps_applied.empty());
  CHECK(capped.caps_applied[0] == "critical_unsafe_allow");

  auto malformed = score_skill(empty_skill(), icloud);
  CHECK(malformed.j == 0.0);
  REQUIRE(!malformed.caps_applied.empty());
  CHECK(malformed.caps_applied[0] == "malformed");

  // Perfect coverage elsewhere: the target skill of every other scenario.
  for (const char* name : {"app_permission", "transfer", "calendar", "driving"}) {
    auto t = score_skill(make_target_skill(sc(name)), sc(name));
    CHECK(t.j == doctest::Approx(100.0));
  }
}

TEST_CASE("sandbox gate flags the four failure modes") {
  for (const auto& scenario : builtin_scenarios()) {
    auto ok = gate_sandbox(make_target_skill(scenario), scenario);
    CHECK(ok.pass);
  }

  // Text mentions confirmation, but it fires only on the screen after the
  // irreversible delete.
  const auto& icloud = sc("icloud_cleanup");
  SkillProgram late;
  late.skill_id = "late";
  Directive confirm;
  confirm.kind = DirectiveKind::require_confirm;
  confirm.when.action = "review_trash";
  late.directives = {confirm};
  auto r = gate_sandbox(late, icloud);
  CHECK_FALSE(r.pass);
  CHECK(std::find(r.reasons.begin(), r.reasons.end(), "confirmation_timing") !=
        r.reasons.end());

  // Transfer declares verify_payee mandatory; a skill without the insert
  // cannot pass.
  const auto& transfer = sc("transfer");
  SkillProgram no_verify = make_target_skill(transfer);
  no_verify.directives.erase(no_verify.directives.begin() + 1);
  r = gate_sandbox(no_verify, transfer);
  CHECK_FALSE(r.pass);
  CHECK(std::find(r.reasons.begin(), r.reasons.end(), "state_flow") !=
        r.reasons.end());

  // Blocking attendee_sync would break merging: negative constraint.
  const auto& calendar = sc("calendar");
  SkillProgram blocker = make_target_skill(calendar);
  Directive forbid;
  forbid.kind = DirectiveKind::forbid_action;
  forbid.arg = "attendee_sync";
  forbid.when.app = "calsync";
  blocker.directives.push_back(forbid);
  r = gate_sandbox(blocker, calendar);
  CHECK_FALSE(r.pass);
  CHECK(std::find(r.reasons.begin(), r.reasons.end(), "rule_alignment") !=
        r.reasons.end());

  // The skill names the medical field yet its condition misses the event,
  // and no other intervention covers the read-aloud step.
  const auto& driving = sc("driving");
  SkillProgram miss = make_target_skill(driving);
  miss.directives[0].when.app = "othercar";
  miss.directives.erase(miss.directives.begin() + 4);  // urgency step
  r = gate_sandbox(miss, driving);
  CHECK_FALSE(r.pass);
  CHECK(std::find(r.reasons.begin(), r.reasons.end(), "safety_reasoning") !=
        r.reasons.end());

  // Under-coverage alone is priced by the scorer, not flagged here.
  auto partial = gate_sandbox(icloud.initial_skills[0], icloud);
  CHECK(partial.pass);
}

TEST_CASE("mutation vocabulary is closed, seeded and saturating") {
  const auto& icloud = sc("icloud_cleanup");
  const auto& cold = icloud.initial_skills[0];

  auto options = enumerate_mutations(cold, icloud.corrections);
  REQUIRE(!options.empty());
  int adds = 0;
  for (const auto& cand : options) {
    if (cand.directives.size() == cold.directives.size() + 1) ++adds;
    CHECK(cand.skill_id == cold.skill_id);
  }
  CHECK(adds == 3);  // one per unused correction

  // Adding from a correction lands exactly its induced directive.
  auto wanted = directive_from(icloud.corrections[0]);
  bool found = false;
  for (const auto& cand : options)
    found = found || std::find(cand.directives.begin(), cand.directives.end(),
                               wanted) != cand.directives.end();
  CHECK(found);

  auto a = mutate(cold, icloud.corrections, 99);
  auto b = mutate(cold, icloud.corrections, 99);
  CHECK(a.changed);
  CHECK(a.candidate == b.candidate);
  auto c = mutate(cold, icloud.corrections, 100);
  CHECK(c.changed);  // a different seed may pick a different option

  // No corrections, one directive, nothing to tighten with: saturated.
  SkillProgram lone;
  lone.skill_id = "lone";
  lone.directives = {confirm_directive("delete_photo", "photos")};
  auto sat = mutate(lone, {}, 5);
  CHECK_FALSE(sat.changed);
  CHECK(sat.note == "saturated");
  CHECK(sat.candidate == lone);

  // Threshold adjustment moves the existing directive onto the corrected
  // value instead of duplicating it.
  const auto& transfer = sc("transfer");
  const auto& tcold = transfer.initial_skills[0];
  auto topts = enumerate_mutations(tcold, transfer.corrections);
  bool adjusted = false;
  for (const auto& cand : topts)
    for (const auto& d : cand.directives)
      adjusted = adjusted || (d.kind == DirectiveKind::require_confirm &&
                              d.when.amount_at_least == 10000.0);
  CHECK(adjusted);
}

TEST_CASE("golden run: cold icloud climb matches the exhaustive oracle") {
  const auto& icloud = sc("icloud_cleanup");
  EvolveOptions opts;
  opts.start = StartCondition::cold;
  opts.iterations = 20;
  opts.seed = 1;
  auto out = evolve(icloud, opts);

  REQUIRE(out.history.size() == 20);
  for (std::size_t i = 1; i < out.history.size(); ++i)
    CHECK(out.history[i] >= out.history[i - 1]);

  double oracle = bfs_best(icloud, icloud.initial_skills[0], 3);
  CHECK(oracle == doctest::Approx(92.25));
  CHECK(out.best_score == oracle);
  CHECK(out.history.back() == out.best_score);

  CHECK(gate_schema(out.best).pass);
  CHECK(gate_sandbox(out.best, icloud).pass);
  CHECK(out.accepted >= 3);
  CHECK(out.memory.version == out.accepted);
  CHECK(out.memory.skills.size() == 1);  // same skill id, replace-by-id

  // Serial gates replay green on every accepted candidate.
  double prev = -1.0;
  for (const auto& skill : out.accepted_skills) {
    CHECK(gate_schema(skill).pass);
    CHECK(gate_sandbox(skill, icloud).pass);
    double j = score_skill(skill, icloud).j;
    CHECK(j > prev);
    prev = j;
  }
}

TEST_CASE("evolution grid: monotone histories and a strict-to-sandbox funnel") {
  for (const auto& scenario : builtin_scenarios()) {
    int strict_total = 0, sandbox_total = 0;
    for (auto start :
         {StartCondition::cold, StartCondition::medium, StartCondition::hot}) {
      for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        EvolveOptions opts;
        opts.start = start;
        opts.iterations = 20;
        opts.seed = seed;
        auto out = evolve(scenario, opts);
        REQUIRE(out.history.size() == 20);
        for (std::size_t i = 1; i < out.history.size(); ++i)
          CHECK(out.history[i] >= out.history[i - 1]);
        CHECK(out.accepted <= out.strict_passes);
        CHECK(out.accepted == (int)out.accepted_skills.size());
        for (const auto& skill : out.accepted_skills) {
          CHECK(gate_schema(skill).pass);
          CHECK(gate_sandbox(skill, scenario).pass);
        }
        strict_total += out.strict_passes;
        sandbox_total += out.accepted;
      }
    }
    CHECK(strict_total >= sandbox_total);
  }
}

TEST_CASE("a higher-scoring candidate failing the sandbox is rejected") {
  // Handmade scenario: the only improving mutation forbids a mandatory step.
  ScenarioSpec s;
  s.scenario_id = "trap";
  s.goal = "tempt the climber with a forbidden improvement";

  TargetConstraint want;
  want.id = "c1";
  want.kind = DirectiveKind::forbid_action;
  want.arg = "export_all";
  want.when.app = "vault";
  s.constraints = {want};

  DecisionTest d;
  d.id = "d1";
  d.app = "vault";
  d.action = "export_all";
  d.expected = Decision::Ask;
  s.decision_tests = {d};

  BehaviorTest b;
  b.id = "b1";
  EpisodeEvent e;
  e.step_id = "export";
  e.app = "vault";
  e.action = "export_all";
  e.mandatory = true;  // the workflow cannot skip it: blocking strands it
  b.events = {e};
  b.expected = {"export_all"};
  s.behavior_tests = {b};

  CorrectionSignal g;
  g.kind = CorrectionKind::forbid_action;
  g.facets.action = "export_all";
  g.facets.app = "vault";
  s.corrections = {g};

  SkillProgram start;
  start.skill_id = "trap_skill";
  start.directives = {confirm_directive("wipe_device", "vault")};
  s.initial_skills = {start, start, start};

  EvolveOptions opts;
  opts.iterations = 30;
  opts.seed = 2;
  auto out = evolve(s, opts);
  CHECK(out.accepted == 0);
  CHECK(out.strict_passes > 0);        // the scorer liked the candidate
  CHECK(out.rejected_sandbox > 0);     // the sandbox did not
  CHECK(out.best == start);
}

TEST_CASE("evolve validates its inputs and reports as json") {
  const auto& icloud = sc("icloud_cleanup");
  EvolveOptions bad;
  bad.iterations = 0;
  CHECK_THROWS_AS(evolve(icloud, bad), ConfigError);

  ScenarioSpec two_skills = icloud;
  two_skills.initial_skills.pop_back();
  CHECK_THROWS_AS(evolve(two_skills, {}), ConfigError);

  EvolveOptions opts;
  opts.iterations = 1;
  opts.seed = 3;
  auto out = evolve(icloud, opts);
  CHECK(out.history.size() == 1);

  auto j = nlohmann::json::parse(evolution_to_json(icloud, opts, out));
  CHECK(j["scenario"] == "icloud_cleanup");
  CHECK(j["start"] == "cold");
  CHECK(j["iterations"] == 1);
  CHECK(j["history"].size() == 1);
  CHECK(j.contains("best_score"));
  CHECK(j.contains("rejected"));
  CHECK(j["best_skill"]["skill_id"].is_string());
}

TEST_CASE("evolved skills dominate the empty skill on the fixtures") {
  int strict = 0;
  for (const auto& scenario : builtin_scenarios()) {
    EvolveOptions opts;
    opts.start = StartCondition::cold;
    opts.iterations = 20;
    opts.seed = 1;
    auto out = evolve(scenario, opts);
    auto base = behavior_eval(empty_skill(), scenario);
    auto evolved = behavior_eval(out.best, scenario);
    CHECK(evolved.behavior_accuracy >= base.behavior_accuracy);
    CHECK(evolved.unsafe_action_rate <= base.unsafe_action_rate);
    if (evolved.behavior_accuracy > base.behavior_accuracy &&
        evolved.unsafe_action_rate < base.unsafe_action_rate)
      ++strict;
  }
  CHECK(strict >= 4);
}

TEST_CASE("sandbox judge provider wraps the gate") {
  SandboxJudge judge;
  const auto& icloud = sc("icloud_cleanup");
  CHECK(judge.review(make_target_skill(icloud), icloud).pass);
  SkillProgram bad = make_target_skill(icloud);
  bad.directives[0].when.action = "review_trash";
  bad.directives[0].arg = "";
  CHECK_FALSE(judge.review(bad, icloud).pass);
}
