#include "maskclaw/benchgen.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "maskclaw/errors.hpp"
#include "maskclaw/seeded_rng.hpp"

namespace maskclaw {

BenchSpec paper_scale_spec(std::uint64_t seed) {
  BenchSpec s;
  s.seed = seed;
  return s;
}

std::vector<int> largest_remainder_split(int total,
                                         const std::vector<int>& weights) {
  const long long wsum = std::accumulate(weights.begin(), weights.end(), 0ll);
  if (total < 0 || wsum <= 0) throw ConfigError("bad split arguments");
  std::vector<int> out(weights.size(), 0);
  std::vector<std::pair<long long, std::size_t>> rema;  // remainder desc, index asc
  int given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const long long num = 1ll * total * weights[i];
    out[i] = int(num / wsum);
    given += out[i];
    rema.push_back({num % wsum, i});
  }
  std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int i = 0; i < total - given; ++i) ++out[rema[std::size_t(i)].second];
  return out;
}

namespace {

// Pinned full-scale marginals; smaller totals are split proportionally.
const std::vector<int> kPersonaWeights = {234, 246, 352};   // A, B, C
const std::vector<int> kBucketWeights = {174, 546, 112};    // D1, D2, D3
const std::vector<int> kVariantWeights = {250, 201, 208, 173};  // base, ss, vs, ls

struct SensField {
  const char* field;
  const char* text;
};

// One concrete situation per row; two rows per (persona, label) pair. Task
// wording is load-bearing: it decides whether the sensitive field counts as
// task-necessary for the fallback route, and the shipped rule corpus was
// written to agree with that.
struct ArchetypeDef {
  const char* code;
  const char* persona;
  Decision label;
  const char* app;
  const char* recipient;
  const char* intent;
  const char* task;
  const char* context_text;  // benign anchor line
  const char* key_tag;       // semantic tag on the anchor, may be empty
  std::vector<SensField> sensitive;
};

const std::vector<ArchetypeDef>& archetypes() {
  static const std::vector<ArchetypeDef> defs = {
      {"a_mask_1", "A", Decision::Mask, "medchat", kRecipientExternalUnknown,
       "send_screenshot", "ask the support volunteer about visiting hours",
       "When are visiting hours on weekends?", "",
       {{"medical", "Diagnosis: type 2 diabetes"},
        {"id_number", "110101199003074258"}}},
      {"a_mask_2", "A", Decision::Mask, "hospital_oa", kRecipientExternalUnknown,
       "send_screenshot", "ask about the shift swap",
       "Can anyone cover Tuesday night?", "",
       {{"id_number", "Staff ID 37255219"}}},
      {"a_allow_1", "A", Decision::Allow, "medchat", kRecipientSelf,
       "save_local", "save my medical report for my own records",
       "Follow up in 2 weeks", "",
       {{"medical", "Blood pressure 142/95"}}},
      {"a_allow_2", "A", Decision::Allow, "hospital_oa",
       kRecipientTrustedInternal, "sync_cloud", "sync the ward schedule board",
       "Ward 3 schedule: early shift 7:00", "schedule_page", {}},
      {"a_ask_1", "A", Decision::Ask, "medchat", kRecipientExternalBusiness,
       "send_screenshot", "send my medical report to the insurance clerk",
       "Claim window closes Friday", "",
       {{"medical", "Diagnosis: mild hypertension"}}},
      {"a_ask_2", "A", Decision::Ask, "insure_app", kRecipientExternalBusiness,
       "send_screenshot", "send the medical invoice for my claim",
       "Claim 8841 pending review", "",
       {{"medical", "Invoice: cardiology consult 680.00"}}},

      {"b_mask_1", "B", Decision::Mask, "shopchat", kRecipientExternalUnknown,
       "send_screenshot", "ask seller about shipping fee",
       "Does this ship before Friday?", "",
       {{"address", "Room 4B, Oak St. Building 7"},
        {"phone", "138 1234 5678"}}},
      {"b_mask_2", "B", Decision::Mask, "payapp", kRecipientExternalUnknown,
       "send_screenshot", "show the seller my payment went through",
       "Transfer completed 14:02", "",
       {{"bank_card", "6222 0212 3456 7890"},
        {"account", "acct 88201-334"}}},
      {"b_allow_1", "B", Decision::Allow, "payapp", kRecipientSelf,
       "save_local", "save my bank card receipt for bookkeeping",
       "Receipt no. 5521", "",
       {{"bank_card", "Paid with card 6222 0212 3456 7890"}}},
      {"b_allow_2", "B", Decision::Allow, "livehub", kRecipientSelf,
       "save_local", "save the replay stats", "Peak viewers 1204, gifts 88",
       "stream_stats", {}},
      {"b_ask_1", "B", Decision::Ask, "shopchat", kRecipientExternalBusiness,
       "send_screenshot", "send my bank card statement to the refund desk",
       "Refund request 7 of 7 steps", "",
       {{"bank_card", "Statement: card 6222 0212 3456 7890"}}},
      {"b_ask_2", "B", Decision::Ask, "payapp", kRecipientExternalBusiness,
       "send_screenshot",
       "send my bank card transaction record to the dispute agent",
       "Dispute case open", "",
       {{"bank_card", "Txn 3321: 6222 0212 3456 7890 paid 240.00"}}},

      {"c_mask_1", "C", Decision::Mask, "workim", kRecipientExternalUnknown,
       "send_screenshot", "ask the forum helper why login fails",
       "Error 401 after update", "",
       {{"credential", "token: ghp_x91kQ3vTi8mW"}}},
      {"c_mask_2", "C", Decision::Mask, "oa_portal", kRecipientExternalUnknown,
       "send_screenshot", "ask about the template layout",
       "Roster template v3", "",
       {{"phone", "139 8877 2211"},
        {"id_number", "emp 110108199112049923"}}},
      {"c_allow_1", "C", Decision::Allow, "workim", kRecipientTrustedInternal,
       "send_screenshot", "share the sprint board with the team",
       "Sprint 14: 6 open, 2 review", "task_board", {}},
      {"c_allow_2", "C", Decision::Allow, "oa_portal",
       kRecipientTrustedInternal, "sync_cloud", "sync the notice board",
       "Office closed Friday for maintenance", "announcement", {}},
      {"c_ask_1", "C", Decision::Ask, "workim", kRecipientExternalBusiness,
       "send_screenshot",
       "send the login credential panel to the vendor engineer",
       "Vendor ticket 2210", "",
       {{"credential", "session key: sk-9921-aa73-bb20"}}},
      {"c_ask_2", "C", Decision::Ask, "mailer", kRecipientExternalBusiness,
       "send_screenshot", "send my salary certificate to the bank officer",
       "Certificate request, mortgage", "",
       {{"salary", "Monthly salary: 18,500"},
        {"account", "payroll acct 6012-9981"}}},
  };
  return defs;
}

const ArchetypeDef& pick_archetype(const std::string& persona, Decision label,
                                   int toggle) {
  const ArchetypeDef* found[2] = {nullptr, nullptr};
  int n = 0;
  for (const auto& a : archetypes())
    if (persona == a.persona && label == a.label && n < 2) found[n++] = &a;
  if (n != 2) throw InvariantError("archetype table hole for " + persona);
  return *found[toggle % 2];
}

std::string index_id(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%05d", prefix, index);
  return buf;
}

const char* relationship_for(const std::string& recipient) {
  if (recipient == kRecipientSelf) return "self";
  if (recipient == kRecipientTrustedInternal) return "colleague";
  if (recipient == kRecipientExternalBusiness) return "agent";
  return "stranger";
}

struct Row {
  std::string text;
  std::string field;
  std::string tag;
  bool sensitive = false;
};

SceneDoc build_scene(const ArchetypeDef& a, Variant v, Bucket b, int index) {
  SceneDoc s;
  s.scene_id = index_id("scn", index);
  const bool small = v == Variant::ss;
  s.width = small ? 320 : 360;
  s.height = v == Variant::ls ? 1280 : (small ? 480 : 640);
  s.theme = v == Variant::vs ? "dark" : "light";

  std::vector<Row> rows;
  if (v == Variant::ls) {
    rows.push_back({"Earlier messages", "free_text", "", false});
    rows.push_back({"Loading history", "free_text", "", false});
  }
  const std::size_t scroll_rows = rows.size();
  rows.push_back({std::string(a.app) + " session " + std::to_string(index),
                  "free_text", "", false});
  for (const auto& f : a.sensitive)
    rows.push_back({f.text, f.field, "", true});
  rows.push_back({a.context_text, "free_text", a.key_tag, false});
  if (b != Bucket::D1) {
    rows.push_back({"Today 14:32", "free_text", "", false});
    rows.push_back({"Battery 82%", "free_text", "", false});
  }

  SceneAudit audit;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Scroll filler sits at the top; real content starts lower down.
    int y = 10 + 30 * int(i);
    if (v == Variant::ls && i >= scroll_rows) y += 300;
    Box box{10, y, 340, 24};
    if (small) box = {8, y * 4 / 5, 272, 19};
    SceneElement e;
    e.element_id = "e" + std::to_string(i + 1);
    e.text = rows[i].text;
    e.box = box;
    e.field_type = rows[i].field;
    e.semantic_tag = rows[i].tag;
    s.elements.push_back(e);
    if (rows[i].sensitive) {
      audit.sensitive_tokens.push_back({rows[i].text, e.element_id, rows[i].field});
      audit.expected_mask_regions.push_back(box);
    }
  }
  s.audit = audit;
  return s;
}

}  // namespace

Dataset generate_bench(const BenchSpec& spec) {
  if (spec.total <= 0 || spec.mask < 0 || spec.allow < 0 || spec.ask < 0 ||
      spec.mask + spec.allow + spec.ask != spec.total)
    throw ConfigError("label counts must be non-negative and sum to total");

  std::vector<Decision> labels;
  labels.insert(labels.end(), std::size_t(spec.mask), Decision::Mask);
  labels.insert(labels.end(), std::size_t(spec.allow), Decision::Allow);
  labels.insert(labels.end(), std::size_t(spec.ask), Decision::Ask);

  const auto persona_counts = largest_remainder_split(spec.total, kPersonaWeights);
  std::vector<std::string> personas;
  const char* persona_names[] = {"A", "B", "C"};
  for (int p = 0; p < 3; ++p)
    personas.insert(personas.end(), std::size_t(persona_counts[std::size_t(p)]),
                    persona_names[p]);

  const auto bucket_counts = largest_remainder_split(spec.total, kBucketWeights);
  std::vector<Bucket> buckets;
  const Bucket bucket_names[] = {Bucket::D1, Bucket::D2, Bucket::D3};
  for (int p = 0; p < 3; ++p)
    buckets.insert(buckets.end(), std::size_t(bucket_counts[std::size_t(p)]),
                   bucket_names[p]);

  const auto variant_counts = largest_remainder_split(spec.total, kVariantWeights);
  std::vector<Variant> variants;
  const Variant variant_names[] = {Variant::base, Variant::ss, Variant::vs,
                                   Variant::ls};
  for (int p = 0; p < 4; ++p)
    variants.insert(variants.end(), std::size_t(variant_counts[std::size_t(p)]),
                    variant_names[p]);

  // Independent shuffles keep every marginal exact while the joint mix varies
  // with the seed.
  std::mt19937_64 g1(derive_seed(spec.seed, 1));
  rng_shuffle(g1, labels);
  std::mt19937_64 g2(derive_seed(spec.seed, 2));
  rng_shuffle(g2, personas);
  std::mt19937_64 g3(derive_seed(spec.seed, 3));
  rng_shuffle(g3, buckets);
  std::mt19937_64 g4(derive_seed(spec.seed, 4));
  rng_shuffle(g4, variants);

  Dataset ds;
  std::map<std::pair<std::string, Decision>, int> toggles;
  for (int i = 0; i < spec.total; ++i) {
    const std::size_t idx = std::size_t(i);
    const auto& persona = personas[idx];
    const auto label = labels[idx];
    const auto& arch =
        pick_archetype(persona, label, toggles[{persona, label}]++);

    ds.scenes.push_back(build_scene(arch, variants[idx], buckets[idx], i));

    Instance ins;
    ins.id = index_id("ins", i);
    ins.scene_id = ds.scenes.back().scene_id;
    ins.task = arch.task;
    ins.intent = arch.intent;
    ins.app_context.app = arch.app;
    ins.app_context.recipient = arch.recipient;
    ins.app_context.relationship = relationship_for(arch.recipient);
    ins.persona.persona_id = persona;
    ins.persona.role_tags = {persona == "A"   ? "patient"
                             : persona == "B" ? "shopper"
                                              : "employee"};
    ins.bucket = buckets[idx];
    ins.variant = variants[idx];
    ds.instances.push_back(ins);

    ExpectedLabel lab;
    lab.id = ins.id;
    lab.decision = label;
    lab.pii_type = arch.sensitive.empty() ? "" : arch.sensitive[0].field;
    for (const auto& f : arch.sensitive) lab.risk_tags.push_back(f.field);
    lab.audit_notes = arch.code;
    ds.labels.push_back(lab);
  }
  return ds;
}

}  // namespace maskclaw
