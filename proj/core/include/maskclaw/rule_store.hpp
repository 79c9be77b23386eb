#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "maskclaw/evidence.hpp"
#include "maskclaw/instance.hpp"
#include "maskclaw/rule.hpp"

namespace maskclaw {

struct RuleStore {
  std::vector<PolicyRule> rules;  // every rule valid, ids unique
  std::uint64_t version = 0;
  const PolicyRule* find(const std::string& id) const;
};

struct RejectedLine {
  std::size_t line_no = 0;  // 1-based
  std::string id;           // empty when the line had none
  std::vector<std::string> reasons;
};

// Partial loads are normal: bad lines are reported, good ones keep going.
struct LoadResult {
  RuleStore store;
  std::vector<RejectedLine> rejected;
};

LoadResult load_rules(std::istream& in);
LoadResult load_rules_file(const std::string& path);  // throws DataError on I/O
LoadResult load_rules_text(const std::string& jsonl);

// Shipped policy corpus: 40 rules spanning the stock personas and apps.
const std::string& default_rules_text();
LoadResult load_default_rules();

struct RetrievalQuery {
  std::string app, persona, recipient, action;    // normalized
  std::vector<std::string> evidence_texts;        // normalized
  std::vector<std::string> evidence_field_types;  // normalized
  std::vector<std::string> evidence_tags;         // normalized
};

RetrievalQuery build_query(const Instance& instance,
                           const std::vector<EvidenceItem>& evidence);

// Specificity weights. Who receives and what happens dominate; persona and
// app narrow the boundary; evidence facets only nudge.
enum class Facet : std::uint8_t {
  recipient,
  action,
  persona,
  app,
  field_type,
  trigger_text,
  semantic_tag,
};
int facet_weight(Facet f);
const char* to_string(Facet f);

struct ScoreResult {
  int score = 0;
  std::set<Facet> matched;  // score is always the weight sum of this set
};

// Score 0 means inapplicable. A non-wildcard scope facet that differs from
// the query excludes the rule outright; scope is a precondition, not a hint.
ScoreResult score_rule(const RetrievalQuery& query, const PolicyRule& rule);

struct RankedCandidate {
  PolicyRule rule;
  int score = 0;
  std::set<Facet> matched;
};

inline constexpr int kDefaultTopK = 5;

// Sorted by (score desc, priority desc, id asc); only positive scores.
std::vector<RankedCandidate> retrieve_topk(const RuleStore& store,
                                           const RetrievalQuery& query,
                                           int k = kDefaultTopK);

}  // namespace maskclaw
