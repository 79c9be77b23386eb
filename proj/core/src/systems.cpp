#include "maskclaw/systems.hpp"

#include <map>
#include <thread>

#include "maskclaw/errors.hpp"
#include "maskclaw/evidence.hpp"
#include "maskclaw/redaction.hpp"

namespace maskclaw {

namespace {

SystemDecision with_flags(SystemDecision d) {
  d.flags = canonical_flags(d.decision);
  d.has_flags = true;
  return d;
}

bool any_pii_hit(const EvidenceSet& evidence) {
  for (const auto& item : evidence.items)
    if (match_pii(item.text)) return true;
  return false;
}

bool any_sensitive(const EvidenceSet& evidence) {
  for (const auto& item : evidence.items)
    if (is_sensitive_field_type(item.field_type)) return true;
  return false;
}

class ArbiterSystem : public DecisionSystem {
 public:
  explicit ArbiterSystem(const RuleStore* store) : store_(store) {}
  std::string name() const override { return "maskclaw"; }
  SystemDecision decide(const Instance& ins, const SceneDoc&,
                        const EvidenceSet& ev) override {
    auto res = arbitrate(ins, ev, *store_);
    SystemDecision d;
    d.decision = res.decision;
    d.rule_id = res.selected_rule_id;
    return with_flags(d);
  }

 private:
  const RuleStore* store_;
};

// Pure pattern matcher: masks whatever looks like PII, no notion of
// recipient or task, so it can never choose Ask.
class RegexSystem : public DecisionSystem {
 public:
  std::string name() const override { return "regex"; }
  SystemDecision decide(const Instance&, const SceneDoc&,
                        const EvidenceSet& ev) override {
    SystemDecision d;
    d.decision = any_pii_hit(ev) ? Decision::Mask : Decision::Allow;
    return with_flags(d);
  }
};

// Retrieval over the same corpus but blind to the screen: the query is built
// from context alone, so on-screen evidence cannot move the answer.
class StaticCorpusSystem : public DecisionSystem {
 public:
  explicit StaticCorpusSystem(const RuleStore* store) : store_(store) {}
  std::string name() const override { return "static_corpus"; }
  SystemDecision decide(const Instance& ins, const SceneDoc&,
                        const EvidenceSet&) override {
    auto ranked = retrieve_topk(*store_, build_query(ins, {}), kDefaultTopK);
    const auto* pick = select_rule(ranked);
    SystemDecision d;
    if (pick) {
      d.decision = pick->rule.action;
      d.rule_id = pick->rule.id;
    } else {
      d.decision = map_decision(fallback_decide(ins, {}).flags);
    }
    return with_flags(d);
  }

 private:
  const RuleStore* store_;
};

class CloudMinimalSystem : public DecisionSystem {
 public:
  std::string name() const override { return "cloud_minimal"; }
  SystemDecision decide(const Instance&, const SceneDoc&,
                        const EvidenceSet& ev) override {
    SystemDecision d;
    d.decision = any_pii_hit(ev) ? Decision::Mask : Decision::Allow;
    d.route = "cloud";
    d.upload_mode = "raw_image";
    return with_flags(d);
  }
};

// Knows who is on the other end but not what the task needs, so sensitive
// content toward strangers is always masked, never escalated to Ask.
class CloudPersonaSystem : public DecisionSystem {
 public:
  std::string name() const override { return "cloud_persona"; }
  SystemDecision decide(const Instance& ins, const SceneDoc&,
                        const EvidenceSet& ev) override {
    SystemDecision d;
    bool s = any_sensitive(ev) || !ev.diagnostics.empty();
    bool t = recipient_trusted(ins.app_context.recipient);
    d.decision = (s && !t) ? Decision::Mask : Decision::Allow;
    d.route = "cloud";
    d.upload_mode = "raw_image";
    return with_flags(d);
  }
};

// Same decision procedure as the on-device fallback, run where the raw
// screenshot already left the device. Decision quality matches; privacy
// exposure does not.
class CloudFullSystem : public DecisionSystem {
 public:
  std::string name() const override { return "cloud_full"; }
  SystemDecision decide(const Instance& ins, const SceneDoc&,
                        const EvidenceSet& ev) override {
    auto trace = fallback_decide(ins, ev.items, !ev.diagnostics.empty());
    SystemDecision d;
    d.decision = map_decision(trace.flags);
    d.route = "cloud";
    d.upload_mode = "raw_image";
    return with_flags(d);
  }
};

// Decides like the fallback, then routes by outcome: benign frames go to the
// cloud raw, maskable frames go up redacted, Ask stays on the device.
class RouterMockSystem : public DecisionSystem {
 public:
  std::string name() const override { return "router_mock"; }
  SystemDecision decide(const Instance& ins, const SceneDoc&,
                        const EvidenceSet& ev) override {
    auto trace = fallback_decide(ins, ev.items, !ev.diagnostics.empty());
    SystemDecision d;
    d.decision = map_decision(trace.flags);
    switch (d.decision) {
      case Decision::Allow:
        d.route = "cloud";
        d.upload_mode = "raw_image";
        break;
      case Decision::Mask:
        d.route = "hybrid";
        d.upload_mode = "masked";
        break;
      case Decision::Ask:
        d.route = "local";
        d.upload_mode = "local_only";
        break;
    }
    return with_flags(d);
  }
};

}  // namespace

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names = {
      "maskclaw",      "regex",      "static_corpus", "cloud_minimal",
      "cloud_persona", "cloud_full", "router_mock"};
  return names;
}

std::unique_ptr<DecisionSystem> make_system(const std::string& name,
                                            const RuleStore* store) {
  if (name == "maskclaw" || name == "static_corpus") {
    if (!store) throw ConfigError(name + " needs a rule store");
    if (name == "maskclaw") return std::make_unique<ArbiterSystem>(store);
    return std::make_unique<StaticCorpusSystem>(store);
  }
  if (name == "regex") return std::make_unique<RegexSystem>();
  if (name == "cloud_minimal") return std::make_unique<CloudMinimalSystem>();
  if (name == "cloud_persona") return std::make_unique<CloudPersonaSystem>();
  if (name == "cloud_full") return std::make_unique<CloudFullSystem>();
  if (name == "router_mock") return std::make_unique<RouterMockSystem>();
  throw ConfigError("unknown system: " + name);
}

std::uint64_t instance_noise_seed(std::uint64_t base, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < 8; ++i) {
    h ^= (base >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

EvalOutput evaluate_dataset(const Dataset& ds, DecisionSystem& system,
                            const EvalOptions& opts) {
  if (ds.instances.size() != ds.labels.size() ||
      ds.instances.size() != ds.scenes.size())
    throw InvariantError("dataset arrays out of step");
  std::map<std::string, const SceneDoc*> scenes;
  for (const auto& s : ds.scenes) scenes[s.scene_id] = &s;

  EvalOutput out;
  out.rows.resize(ds.instances.size());
  auto run_one = [&](std::size_t i) {
    const auto& ins = ds.instances[i];
    auto it = scenes.find(ins.scene_id);
    if (it == scenes.end()) throw DataError("no scene " + ins.scene_id);
    EvidenceSet ev;
    if (ins.bucket == Bucket::D3) {
      MockOcrProvider noisy(hard_bucket_noise_preset(
          instance_noise_seed(opts.noise_seed, ins.id)));
      ev = extract_evidence(*it->second, noisy);
    } else {
      MockOcrProvider clean;
      ev = extract_evidence(*it->second, clean);
    }
    auto d = system.decide(ins, *it->second, ev);
    EvalRow& r = out.rows[i];
    r.id = ins.id;
    r.expected = ds.labels[i].decision;
    r.predicted = d.decision;
    r.flags = d.flags;
    r.has_flags = d.has_flags;
    r.route = d.route;
    r.upload_mode = d.upload_mode;
  };

  int workers = opts.workers < 1 ? 1 : opts.workers;
  if (workers == 1 || ds.instances.size() < 2) {
    for (std::size_t i = 0; i < ds.instances.size(); ++i) run_one(i);
  } else {
    // Systems are stateless, so splitting the index range is safe.
    std::vector<std::thread> pool;
    std::size_t n = ds.instances.size();
    std::size_t per = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t lo = std::size_t(w) * per;
      std::size_t hi = std::min(n, lo + per);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  out.metrics = evaluate_rows(out.rows);
  return out;
}

}  // namespace maskclaw
