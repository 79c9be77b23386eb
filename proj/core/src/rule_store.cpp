#include "maskclaw/rule_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json_util.hpp"
#include "maskclaw/errors.hpp"
#include "maskclaw/textnorm.hpp"

namespace maskclaw {

const PolicyRule* RuleStore::find(const std::string& id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

// Best-effort id for diagnostics on lines that failed to parse as rules.
std::string sniff_id(const std::string& line) {
  auto j = detail::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return "";
  return detail::get_or<std::string>(j, "id", "");
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

LoadResult load_rules(std::istream& in) {
  LoadResult out;
  out.store.version = 1;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto parsed = parse_rule_line(line);
    if (!parsed.rule) {
      out.rejected.push_back({line_no, sniff_id(line), parsed.report.reasons});
      continue;
    }
    if (!seen.insert(parsed.rule->id).second) {
      out.rejected.push_back(
          {line_no, parsed.rule->id, {"duplicate id '" + parsed.rule->id + "'"}});
      continue;
    }
    out.store.rules.push_back(std::move(*parsed.rule));
  }
  return out;
}

LoadResult load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rule file: " + path);
  return load_rules(in);
}

LoadResult load_rules_text(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return load_rules(in);
}

LoadResult load_default_rules() { return load_rules_text(default_rules_text()); }

RetrievalQuery build_query(const Instance& instance,
                           const std::vector<EvidenceItem>& evidence) {
  RetrievalQuery q;
  q.app = normalize_text(instance.app_context.app);
  q.persona = normalize_text(instance.persona.persona_id);
  q.recipient = normalize_text(instance.app_context.recipient);
  q.action = normalize_text(instance.intent);
  for (const auto& e : evidence) {
    if (auto t = normalize_text(e.text); !t.empty()) q.evidence_texts.push_back(t);
    if (auto f = normalize_text(e.field_type); !f.empty())
      q.evidence_field_types.push_back(f);
    if (auto s = normalize_text(e.semantic_tag); !s.empty())
      q.evidence_tags.push_back(s);
  }
  return q;
}

int facet_weight(Facet f) {
  switch (f) {
    case Facet::recipient: return 4;
    case Facet::action: return 4;
    case Facet::persona: return 3;
    case Facet::app: return 2;
    case Facet::field_type: return 1;
    case Facet::trigger_text: return 1;
    case Facet::semantic_tag: return 1;
  }
  return 0;
}

const char* to_string(Facet f) {
  switch (f) {
    case Facet::recipient: return "recipient";
    case Facet::action: return "action";
    case Facet::persona: return "persona";
    case Facet::app: return "app";
    case Facet::field_type: return "field_type";
    case Facet::trigger_text: return "trigger_text";
    case Facet::semantic_tag: return "semantic_tag";
  }
  return "?";
}

namespace {

bool contains(const std::vector<std::string>& haystack, const std::string& needle) {
  return std::find(haystack.begin(), haystack.end(), needle) != haystack.end();
}

// Returns false only on a hard mismatch; wildcard passes without matching.
bool scope_facet(const std::string& rule_value, const std::string& query_value,
                 Facet facet, ScoreResult& res) {
  if (rule_value == kWildcard) return true;
  if (normalize_text(rule_value) != query_value) return false;
  res.matched.insert(facet);
  return true;
}

}  // namespace

ScoreResult score_rule(const RetrievalQuery& query, const PolicyRule& rule) {
  ScoreResult res;
  if (!scope_facet(rule.scope.recipient, query.recipient, Facet::recipient, res) ||
      !scope_facet(rule.scope.action, query.action, Facet::action, res) ||
      !scope_facet(rule.scope.persona, query.persona, Facet::persona, res) ||
      !scope_facet(rule.scope.app, query.app, Facet::app, res))
    return {};

  for (const auto& ft : rule.trigger.field_types) {
    if (contains(query.evidence_field_types, normalize_text(ft))) {
      res.matched.insert(Facet::field_type);
      break;
    }
  }
  for (const auto& pat : rule.trigger.text_patterns) {
    auto p = normalize_text(pat);
    if (p.empty()) continue;
    bool hit = std::any_of(query.evidence_texts.begin(), query.evidence_texts.end(),
                           [&](const std::string& t) {
                             return t.find(p) != std::string::npos;
                           });
    if (hit) {
      res.matched.insert(Facet::trigger_text);
      break;
    }
  }
  for (const auto& tag : rule.trigger.semantic_tags) {
    if (contains(query.evidence_tags, normalize_text(tag))) {
      res.matched.insert(Facet::semantic_tag);
      break;
    }
  }
  // requires_localizable narrows redaction, not retrieval.

  for (auto f : res.matched) res.score += facet_weight(f);
  return res;
}

std::vector<RankedCandidate> retrieve_topk(const RuleStore& store,
                                           const RetrievalQuery& query, int k) {
  std::vector<RankedCandidate> out;
  for (const auto& r : store.rules) {
    auto s = score_rule(query, r);
    if (s.score <= 0) continue;
    out.push_back({r, s.score, std::move(s.matched)});
  }
  std::sort(out.begin(), out.end(),
            [](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.rule.priority != b.rule.priority)
                return a.rule.priority > b.rule.priority;
              return a.rule.id < b.rule.id;
            });
  if (k >= 0 && out.size() > static_cast<std::size_t>(k))
    out.resize(static_cast<std::size_t>(k));
  return out;
}

}  // namespace maskclaw
