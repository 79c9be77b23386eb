#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "maskclaw/errors.hpp"
#include "maskclaw/rule_store.hpp"
#include "maskclaw/seeded_rng.hpp"

using namespace maskclaw;

namespace {

RetrievalQuery card_query() {
  RetrievalQuery q;
  q.app = "shopchat";
  q.persona = "b";
  q.recipient = "externalunknown";
  q.action = "sendscreenshot";
  q.evidence_texts = {"cardno62220212345678", "askselleraboutshipping"};
  q.evidence_field_types = {"bankcard", "freetext"};
  q.evidence_tags = {"orderpage"};
  return q;
}

PolicyRule scoped_card_rule() {
  PolicyRule r;
  r.id = "r_scoped";
  r.scope.recipient = "external_unknown";
  r.scope.action = "send_screenshot";
  r.trigger.field_types = {"bank_card"};
  r.action = Decision::Mask;
  r.priority = 5;
  return r;
}

}  // namespace

TEST_CASE("scoped rule scores the hand-computed facet sum") {
  // recipient 4 + action 4 + field_type 1 = 9
  auto res = score_rule(card_query(), scoped_card_rule());
  CHECK(res.score == 9);
  CHECK(res.matched == std::set<Facet>{Facet::recipient, Facet::action, Facet::field_type});
}

TEST_CASE("wildcard scope contributes nothing; lone trigger facet scores 1") {
  PolicyRule r;
  r.id = "r_generic";
  r.trigger.field_types = {"bank_card"};
  r.action = Decision::Mask;
  auto res = score_rule(card_query(), r);
  CHECK(res.score == 1);
  CHECK(res.matched == std::set<Facet>{Facet::field_type});
}

TEST_CASE("mismatched non-wildcard scope excludes the rule") {
  auto r = scoped_card_rule();
  r.scope.recipient = "self";  // query says external_unknown
  auto res = score_rule(card_query(), r);
  CHECK(res.score == 0);
  CHECK(res.matched.empty());
}

TEST_CASE("full facet house sums to sixteen") {
  PolicyRule r;
  r.id = "r_full";
  r.scope.app = "shopchat";
  r.scope.persona = "B";
  r.scope.recipient = "external_unknown";
  r.scope.action = "send_screenshot";
  r.trigger.field_types = {"bank_card"};
  r.trigger.text_patterns = {"6222"};
  r.trigger.semantic_tags = {"order_page"};
  r.action = Decision::Mask;
  auto res = score_rule(card_query(), r);
  CHECK(res.score == 16);
  CHECK(res.matched.size() == 7);
}

TEST_CASE("score always equals the weight sum of matched facets") {
  std::mt19937_64 g(3);
  for (int i = 0; i < 500; ++i) {
    PolicyRule r;
    r.id = "r";
    if (rng_chance(g, 0.5)) r.scope.app = rng_chance(g, 0.5) ? "shopchat" : "medchat";
    if (rng_chance(g, 0.5)) r.scope.persona = rng_chance(g, 0.5) ? "B" : "A";
    if (rng_chance(g, 0.5))
      r.scope.recipient = rng_chance(g, 0.5) ? "external_unknown" : "self";
    if (rng_chance(g, 0.5))
      r.scope.action = rng_chance(g, 0.5) ? "send_screenshot" : "sync_cloud";
    if (rng_chance(g, 0.5)) r.trigger.field_types = {"bank_card"};
    if (rng_chance(g, 0.5)) r.trigger.text_patterns = {"6222"};
    if (rng_chance(g, 0.5)) r.trigger.semantic_tags = {"order_page"};
    auto res = score_rule(card_query(), r);
    int sum = 0;
    for (auto f : res.matched) sum += facet_weight(f);
    CHECK(res.score == sum);
  }
}

TEST_CASE("query building normalizes every facet") {
  Instance ins;
  ins.id = "i1";
  ins.app_context.app = "ShopChat";
  ins.app_context.recipient = "external_unknown";
  ins.persona.persona_id = "B";
  ins.intent = "Send_Screenshot";
  std::vector<EvidenceItem> ev;
  ev.push_back({"Card NO: 6222", "Bank_Card", "Order Page", 1.0, std::nullopt});
  auto q = build_query(ins, ev);
  CHECK(q.app == "shopchat");
  CHECK(q.persona == "b");
  CHECK(q.recipient == "externalunknown");
  CHECK(q.action == "sendscreenshot");
  REQUIRE(q.evidence_texts.size() == 1);
  CHECK(q.evidence_texts[0] == "cardno6222");
  CHECK(q.evidence_field_types == std::vector<std::string>{"bankcard"});
  CHECK(q.evidence_tags == std::vector<std::string>{"orderpage"});
}

TEST_CASE("ranking orders by score, then priority, then id") {
  RuleStore store;
  auto a = scoped_card_rule();  // score 9
  a.id = "r_mid";
  a.priority = 5;
  auto b = scoped_card_rule();  // same score, higher priority
  b.id = "r_strong";
  b.priority = 9;
  auto c = scoped_card_rule();  // same score and priority as a, smaller id
  c.id = "r_alpha";
  c.priority = 5;
  PolicyRule weak;  // score 1
  weak.id = "r_weak";
  weak.trigger.field_types = {"bank_card"};
  weak.action = Decision::Mask;
  PolicyRule never;  // excluded
  never.id = "r_never";
  never.scope.recipient = "self";
  never.trigger.field_types = {"bank_card"};
  never.action = Decision::Allow;
  store.rules = {a, b, c, weak, never};
  store.version = 1;

  auto ranked = retrieve_topk(store, card_query(), 10);
  REQUIRE(ranked.size() == 4);  // r_never is inapplicable
  CHECK(ranked[0].rule.id == "r_strong");
  CHECK(ranked[1].rule.id == "r_alpha");
  CHECK(ranked[2].rule.id == "r_mid");
  CHECK(ranked[3].rule.id == "r_weak");

  SUBCASE("k truncates") {
    auto top2 = retrieve_topk(store, card_query(), 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].rule.id == "r_strong");
    CHECK(top2[1].rule.id == "r_alpha");
  }

  SUBCASE("store order is irrelevant") {
    std::mt19937_64 g(17);
    for (int round = 0; round < 20; ++round) {
      rng_shuffle(g, store.rules);
      auto again = retrieve_topk(store, card_query(), 10);
      REQUIRE(again.size() == 4);
      for (std::size_t i = 0; i < 4; ++i) CHECK(again[i].rule.id == ranked[i].rule.id);
    }
  }
}

TEST_CASE("loading keeps good lines and reports bad ones") {
  std::string text;
  text += rule_to_json(scoped_card_rule()) + "\n";
  text += "\n";  // blank lines are skipped silently
  text += R"({"id":"r_unbound","action":"Mask","trigger":{"text_patterns":["x"]}})" "\n";
  PolicyRule other = scoped_card_rule();
  other.id = "r_other";
  text += rule_to_json(other) + "\n";
  text += rule_to_json(other) + "\n";  // duplicate id

  auto res = load_rules_text(text);
  CHECK(res.store.version == 1);
  REQUIRE(res.store.rules.size() == 2);
  CHECK(res.store.find("r_scoped") != nullptr);
  CHECK(res.store.find("r_other") != nullptr);
  REQUIRE(res.rejected.size() == 2);
  CHECK(res.rejected[0].line_no == 3);
  CHECK(res.rejected[0].id == "r_unbound");
  CHECK(res.rejected[1].line_no == 5);
  REQUIRE_FALSE(res.rejected[1].reasons.empty());
  CHECK(res.rejected[1].reasons[0].find("duplicate") != std::string::npos);
}

TEST_CASE("missing rule file raises a data error") {
  CHECK_THROWS_AS(load_rules_file("/nonexistent/rules.jsonl"), DataError);
}

TEST_CASE("shipped corpus loads clean with the stock action split") {
  auto res = load_default_rules();
  CHECK(res.rejected.empty());
  CHECK(res.store.rules.size() == 40);
  int ask = 0, allow = 0, mask = 0;
  for (const auto& r : res.store.rules) {
    switch (r.action) {
      case Decision::Ask: ++ask; break;
      case Decision::Allow: ++allow; break;
      case Decision::Mask: ++mask; break;
    }
    CHECK(validate_rule(r).ok);
  }
  CHECK(ask == 12);
  CHECK(allow == 11);
  CHECK(mask == 17);
}
