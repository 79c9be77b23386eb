// maskclaw command line. Subcommands: genbench, eval, arbitrate (single
// sample), redact (single scene), evolve, report. Every command with an
// output directory echoes its config there so a run is reproducible from
// the directory alone. Exit codes: 0 ok, 2 config, 3 data, 4 invariant.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maskclaw/arbiter.hpp"
#include "maskclaw/benchgen.hpp"
#include "maskclaw/dataset_io.hpp"
#include "maskclaw/errors.hpp"
#include "maskclaw/evidence.hpp"
#include "maskclaw/evolve.hpp"
#include "maskclaw/metrics.hpp"
#include "maskclaw/redaction.hpp"
#include "maskclaw/rule_store.hpp"
#include "maskclaw/scenarios.hpp"
#include "maskclaw/scene.hpp"
#include "maskclaw/systems.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::json;
using namespace maskclaw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spill(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

njson parse_doc(const std::string& text, const std::string& what) {
  try {
    return njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw DataError(what + ": " + e.what());
  }
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> parts;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split_csv(csv)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw ConfigError("bad seed: " + part);
    seeds.push_back(v);
  }
  if (seeds.empty()) throw ConfigError("seed list is empty");
  return seeds;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw DataError("cannot create " + dir + ": " + ec.message());
  return p;
}

void echo_config(const fs::path& out_dir, const njson& cfg) {
  spill(out_dir / "config.json", cfg.dump(2) + "\n");
}

int pick_workers(int flag) {
  if (flag > 0) return flag;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// One number, fraction or the 10^-3 integer convention.
std::string fmt_metric(double v, bool paper_scale) {
  char buf[32];
  if (paper_scale)
    std::snprintf(buf, sizeof buf, "%d", milli(v));
  else
    std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void print_metrics_table(const njson& m, bool paper_scale) {
  static const char* kKeys[] = {"joint_accuracy", "mask_precision", "mask_recall",
                                "mask_f1",        "leak_rate",      "over_protect",
                                "ask_recall",     "ask_miss"};
  std::cout << "samples: " << m.at("total").get<std::uint64_t>() << "\n";
  for (const char* key : kKeys)
    std::printf("%-16s %s\n", key, fmt_metric(m.at(key).get<double>(), paper_scale).c_str());
  if (m.contains("confusion")) {
    static const char* kRows[] = {"allow", "mask", "ask"};
    std::cout << "confusion (rows expected, cols predicted allow/mask/ask):\n";
    for (int r = 0; r < 3; ++r) {
      std::printf("  %-6s", kRows[r]);
      for (int c = 0; c < 3; ++c)
        std::printf(" %6llu",
                    (unsigned long long)m.at("confusion")[r][c].get<std::uint64_t>());
      std::printf("\n");
    }
  }
  if (m.contains("route_counts")) {
    std::cout << "route:";
    for (auto& [name, count] : m.at("route_counts").items())
      std::cout << " " << name << " " << count.get<std::uint64_t>();
    std::cout << "\n";
  }
  if (m.contains("upload_rates")) {
    std::cout << "upload:";
    for (auto& [name, rate] : m.at("upload_rates").items())
      std::cout << " " << name << " " << fmt_metric(rate.get<double>(), paper_scale);
    std::cout << "\n";
  }
}

void print_stability(const njson& stab, bool paper_scale) {
  std::cout << "stability (mean +/- sample std):\n";
  for (auto& [key, s] : stab.items())
    std::printf("  %-16s %s +/- %s\n", key.c_str(),
                fmt_metric(s.at("mean").get<double>(), paper_scale).c_str(),
                fmt_metric(s.at("stddev").get<double>(), paper_scale).c_str());
}

// genbench

struct GenbenchArgs {
  std::string out;
  int total = 832, mask = 438, allow = 314, ask = 80;
  std::uint64_t seed = 20260501;
  bool paper_scale = false;
};

int run_genbench(const GenbenchArgs& a) {
  if (a.total <= 0) throw ConfigError("genbench: total must be positive");
  BenchSpec spec;
  if (a.paper_scale) {
    spec = paper_scale_spec(a.seed);
  } else {
    spec.total = a.total;
    spec.mask = a.mask;
    spec.allow = a.allow;
    spec.ask = a.ask;
    spec.seed = a.seed;
  }
  Dataset ds = generate_bench(spec);
  fs::path out = prepare_out(a.out);
  write_dataset(ds, out.string());
  std::string digest = dataset_digest(out.string());
  echo_config(out, njson{{"command", "genbench"},
                         {"out", a.out},
                         {"total", spec.total},
                         {"mask", spec.mask},
                         {"allow", spec.allow},
                         {"ask", spec.ask},
                         {"seed", spec.seed},
                         {"paper_scale", a.paper_scale}});

  int mask_n = 0, allow_n = 0, ask_n = 0;
  for (const auto& label : ds.labels) {
    if (label.decision == Decision::Mask) ++mask_n;
    else if (label.decision == Decision::Allow) ++allow_n;
    else ++ask_n;
  }
  std::map<std::string, int> personas, buckets, variants;
  for (const auto& inst : ds.instances) {
    ++personas[inst.persona.persona_id];
    ++buckets[to_string(inst.bucket)];
    ++variants[to_string(inst.variant)];
  }
  std::cout << "samples: " << ds.instances.size() << "\n";
  std::cout << "decision: mask " << mask_n << "  allow " << allow_n << "  ask " << ask_n
            << "\n";
  std::cout << "persona:";
  for (auto& [id, n] : personas) std::cout << " " << id << " " << n;
  std::cout << "\nbucket:";
  for (const char* b : {"D1", "D2", "D3"}) std::cout << " " << b << " " << buckets[b];
  std::cout << "\nvariant:";
  for (const char* v : {"base", "ss", "vs", "ls"}) std::cout << " " << v << " " << variants[v];
  std::cout << "\ndigest: " << digest << "\n";
  std::cout << "out: " << out.string() << "\n";
  return 0;
}

// eval

struct EvalArgs {
  std::string dataset, system, rules, out;
  std::string seeds = "7";
  std::uint64_t noise_seed = 7;
  int workers = 0;
  bool paper_scale = false;
};

int run_eval(const EvalArgs& a) {
  auto seeds = parse_seeds(a.seeds);
  Dataset ds = load_dataset(a.dataset, /*keep_audit=*/false);
  LoadResult rules = a.rules.empty() ? load_default_rules() : load_rules_file(a.rules);
  if (!rules.rejected.empty())
    std::cout << "rejected rules: " << rules.rejected.size() << "\n";

  EvalOptions opts;
  opts.noise_seed = a.noise_seed;  // the degradation lens belongs to the dataset,
                                   // not the stability protocol
  opts.workers = pick_workers(a.workers);

  // Per-seed reruns measure system variance. Shipped systems are
  // deterministic mocks, so their bands come out +/- 0.
  std::vector<EvalOutput> runs;
  runs.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto system = make_system(a.system, &rules.store);
    runs.push_back(evaluate_dataset(ds, *system, opts));
  }

  const EvalOutput& first = runs.front();
  njson metrics = parse_doc(metrics_to_json(first.metrics), "metrics");
  njson report{{"command", "eval"},
               {"dataset", a.dataset},
               {"system", a.system},
               {"rules", a.rules.empty() ? "default" : a.rules},
               {"noise_seed", a.noise_seed},
               {"seeds", seeds},
               {"metrics", metrics}};

  if (seeds.size() >= 2) {
    njson stab = njson::object();
    auto add = [&](const char* key, double (*pick)(const EvalMetrics&)) {
      std::vector<double> values;
      values.reserve(runs.size());
      for (const auto& run : runs) values.push_back(pick(run.metrics));
      StabilitySummary s = stability(values);
      stab[key] = njson{{"mean", s.mean}, {"stddev", s.stddev}};
    };
    add("joint_accuracy", [](const EvalMetrics& m) { return m.joint_accuracy; });
    add("mask_f1", [](const EvalMetrics& m) { return m.mask_f1; });
    add("leak_rate", [](const EvalMetrics& m) { return m.leak_rate; });
    add("ask_recall", [](const EvalMetrics& m) { return m.ask_recall; });
    add("over_protect", [](const EvalMetrics& m) { return m.over_protect; });
    report["stability"] = stab;
  }

  std::cout << "system: " << a.system << "\n";
  print_metrics_table(metrics, a.paper_scale);
  if (report.contains("stability")) print_stability(report["stability"], a.paper_scale);

  if (!a.out.empty()) {
    fs::path out = prepare_out(a.out);
    echo_config(out, njson{{"command", "eval"},
                           {"dataset", a.dataset},
                           {"system", a.system},
                           {"rules", a.rules.empty() ? "default" : a.rules},
                           {"out", a.out},
                           {"seeds", a.seeds},
                           {"noise_seed", a.noise_seed},
                           {"workers", a.workers},
                           {"paper_scale", a.paper_scale}});
    spill(out / "report.json", report.dump(2) + "\n");
    std::ostringstream rows;
    for (const auto& row : first.rows) {
      njson j{{"id", row.id},
              {"expected", to_string(row.expected)},
              {"predicted", to_string(row.predicted)},
              {"route", row.route},
              {"upload_mode", row.upload_mode}};
      if (row.has_flags) j["flags"] = njson{{"m", row.flags.m}, {"u", row.flags.u}};
      rows << j.dump() << "\n";
    }
    spill(out / "predictions.jsonl", rows.str());
    std::cout << "out: " << out.string() << "\n";
  }
  return 0;
}

// arbitrate

struct ArbitrateArgs {
  std::string scene, instance, rules, out;
  int top_k = kDefaultTopK;
  bool visual = false;
};

int run_arbitrate(const ArbitrateArgs& a) {
  SceneDoc scene = load_scene_file(a.scene, /*keep_audit=*/false);
  Instance inst = instance_from_json(slurp(a.instance));
  LoadResult rules = a.rules.empty() ? load_default_rules() : load_rules_file(a.rules);
  MockOcrProvider ocr;
  EvidenceSet evidence = extract_evidence(scene, ocr);
  MockVisualChecker checker;
  ArbitrateOptions opts;
  opts.top_k = a.top_k;
  if (a.visual) opts.checker = &checker;
  ArbitrationResult result = arbitrate(inst, evidence, rules.store, opts);
  std::string json = arbitration_to_json(result);
  std::cout << json << "\n";
  if (!a.out.empty()) {
    fs::path out = prepare_out(a.out);
    spill(out / "arbitration.json", json + "\n");
    echo_config(out, njson{{"command", "arbitrate"},
                           {"scene", a.scene},
                           {"instance", a.instance},
                           {"rules", a.rules.empty() ? "default" : a.rules},
                           {"top_k", a.top_k},
                           {"visual_check", a.visual},
                           {"out", a.out}});
  }
  return 0;
}

// redact

struct RedactArgs {
  std::string scene, out, types;
  std::string mode = "strict";
  std::string style = "fill";
};

int run_redact(const RedactArgs& a) {
  // Gold audit stays on board here: apply_redaction grades itself against it.
  SceneDoc scene = load_scene_file(a.scene, /*keep_audit=*/true);
  RedactionRequest req;
  req.target_field_types =
      a.types.empty() ? default_sensitive_field_types() : split_csv(a.types);
  auto mode = redaction_mode_from_string(a.mode);
  if (!mode) throw ConfigError("unknown mode: " + a.mode);
  auto style = mask_style_from_string(a.style);
  if (!style) throw ConfigError("unknown style: " + a.style);
  req.mode = *mode;
  req.style = *style;

  RedactionPlan plan = select_regions(scene, req);
  RedactionResult result = apply_redaction(scene, plan);

  fs::path out = prepare_out(a.out);
  echo_config(out, njson{{"command", "redact"},
                         {"scene", a.scene},
                         {"types", req.target_field_types},
                         {"mode", a.mode},
                         {"style", a.style},
                         {"out", a.out}});
  spill(out / "redaction.json", redaction_to_json(result) + "\n");
  spill(out / "scene.json", scene_to_json(result.scene, /*include_audit=*/false) + "\n");
  save_ppm(result.image, (out / "redacted.ppm").string());

  std::cout << "regions: " << result.plan.regions.size() << "\n";
  std::cout << "mask_generated: " << (result.mask_generated ? "true" : "false") << "\n";
  std::cout << "flags:";
  for (const auto& flag : result.audit_flags) std::cout << " " << flag;
  std::cout << "\nout: " << out.string() << "\n";
  return 0;
}

// evolve

struct EvolveArgs {
  std::string scenario, out;
  std::string start = "all";
  std::string seeds = "1,2,3";
  int iters = 20;
  int workers = 0;
};

ScenarioSpec resolve_scenario(const std::string& ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) return builtin_scenario(ref.substr(prefix.size()));
  return load_scenario_file(ref);
}

int run_evolve(const EvolveArgs& a) {
  ScenarioSpec spec = resolve_scenario(a.scenario);
  auto seeds = parse_seeds(a.seeds);
  std::vector<StartCondition> starts;
  if (a.start == "all") {
    starts = {StartCondition::cold, StartCondition::medium, StartCondition::hot};
  } else {
    auto s = start_from_string(a.start);
    if (!s) throw ConfigError("unknown start: " + a.start);
    starts = {*s};
  }

  fs::path out = prepare_out(a.out);
  echo_config(out, njson{{"command", "evolve"},
                         {"scenario", a.scenario},
                         {"start", a.start},
                         {"seeds", a.seeds},
                         {"iters", a.iters},
                         {"out", a.out}});

  struct Cell {
    EvolveOptions opts;
    EvolutionResult result;
  };
  std::vector<Cell> cells;
  for (auto start : starts)
    for (auto seed : seeds) {
      Cell c;
      c.opts.start = start;
      c.opts.iterations = a.iters;
      c.opts.seed = seed;
      cells.push_back(std::move(c));
    }

  // Runs are independent; fan out unless pinned to one worker.
  if (pick_workers(a.workers) > 1 && cells.size() > 1) {
    std::vector<std::future<EvolutionResult>> futures;
    futures.reserve(cells.size());
    for (const auto& cell : cells)
      futures.push_back(std::async(std::launch::async,
                                   [&spec, opts = cell.opts] { return evolve(spec, opts); }));
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].result = futures[i].get();
  } else {
    for (auto& cell : cells) cell.result = evolve(spec, cell.opts);
  }

  int proposals = 0, schema_rejects = 0, score_rejects = 0, strict = 0, sandbox_rejects = 0,
      accepted = 0;
  std::cout << "scenario: " << spec.scenario_id << "\n";
  for (const auto& cell : cells) {
    const EvolutionResult& r = cell.result;
    std::string name = spec.scenario_id + "_" + to_string(cell.opts.start) + "_seed" +
                       std::to_string(cell.opts.seed) + ".json";
    spill(out / name, evolution_to_json(spec, cell.opts, r) + "\n");
    BehaviorReport behavior = behavior_eval(r.best, spec);
    std::printf(
        "run start=%s seed=%llu  best %.2f  accepted %d  strict %d  sandbox_rejects %d  "
        "behavior_acc %.3f  unsafe %.3f\n",
        to_string(cell.opts.start), (unsigned long long)cell.opts.seed, r.best_score,
        r.accepted, r.strict_passes, r.rejected_sandbox, behavior.behavior_accuracy,
        behavior.unsafe_action_rate);
    schema_rejects += r.rejected_schema;
    score_rejects += r.rejected_score;
    strict += r.strict_passes;
    sandbox_rejects += r.rejected_sandbox;
    accepted += r.accepted;
    proposals += r.rejected_schema + r.rejected_score + r.strict_passes;
  }
  std::cout << "funnel: proposals " << proposals << "  schema_rejects " << schema_rejects
            << "  score_rejects " << score_rejects << "  strict_passes " << strict
            << "  sandbox_rejects " << sandbox_rejects << "  accepted " << accepted << "\n";
  std::cout << "result files: " << cells.size() << "  out: " << out.string() << "\n";
  return 0;
}

// report

struct ReportArgs {
  std::string in;
  bool paper_scale = false;
};

int run_report(const ReportArgs& a) {
  njson doc = parse_doc(slurp(a.in), a.in);
  if (!doc.is_object()) throw DataError(a.in + ": expected a JSON object");
  if (doc.contains("system")) std::cout << "system: " << doc["system"].get<std::string>() << "\n";
  if (doc.contains("dataset"))
    std::cout << "dataset: " << doc["dataset"].get<std::string>() << "\n";
  const njson& metrics = doc.contains("metrics") ? doc["metrics"] : doc;
  if (!metrics.contains("total")) throw DataError(a.in + ": no metrics found");
  print_metrics_table(metrics, a.paper_scale);
  if (doc.contains("stability")) print_stability(doc["stability"], a.paper_scale);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GUI screenshot privacy arbitration toolkit"};
  app.require_subcommand(1);

  GenbenchArgs gen;
  auto* sub_gen = app.add_subcommand("genbench", "generate a benchmark dataset");
  sub_gen->add_option("--out", gen.out, "output directory")->required();
  sub_gen->add_option("--total", gen.total, "sample count");
  sub_gen->add_option("--mask", gen.mask, "mask label count");
  sub_gen->add_option("--allow", gen.allow, "allow label count");
  sub_gen->add_option("--ask", gen.ask, "ask label count");
  sub_gen->add_option("--seed", gen.seed, "generator seed");
  sub_gen->add_flag("--paper-scale", gen.paper_scale, "use the full-scale 832 mix");

  EvalArgs ev;
  auto* sub_eval = app.add_subcommand("eval", "evaluate a system over a dataset");
  sub_eval->add_option("--dataset", ev.dataset, "dataset directory")->required();
  sub_eval->add_option("--system", ev.system, "system name")->required();
  sub_eval->add_option("--rules", ev.rules, "rule corpus (jsonl); default: shipped corpus");
  sub_eval->add_option("--out", ev.out, "output directory");
  sub_eval->add_option("--seeds", ev.seeds, "comma list of run seeds for stability");
  sub_eval->add_option("--noise-seed", ev.noise_seed, "base seed of the hard-bucket lens");
  sub_eval->add_option("--workers", ev.workers, "worker threads; 0 = all cores");
  sub_eval->add_flag("--paper-scale", ev.paper_scale, "print metrics as 10^-3 integers");

  ArbitrateArgs arb;
  auto* sub_arb = app.add_subcommand("arbitrate", "arbitrate one instance against one scene");
  sub_arb->add_option("--scene", arb.scene, "scene json file")->required();
  sub_arb->add_option("--instance", arb.instance, "instance json file")->required();
  sub_arb->add_option("--rules", arb.rules, "rule corpus (jsonl); default: shipped corpus");
  sub_arb->add_option("--top-k", arb.top_k, "retrieval depth");
  sub_arb->add_flag("--visual-check", arb.visual, "attach the mock visual checker");
  sub_arb->add_option("--out", arb.out, "output directory");

  RedactArgs red;
  auto* sub_red = app.add_subcommand("redact", "redact one scene");
  sub_red->add_option("--scene", red.scene, "scene json file")->required();
  sub_red->add_option("--out", red.out, "output directory")->required();
  sub_red->add_option("--types", red.types, "comma list of field types; default: sensitive set");
  sub_red->add_option("--mode", red.mode, "strict or recall_first");
  sub_red->add_option("--style", red.style, "fill, placeholder or blur_stub");

  EvolveArgs evo;
  auto* sub_evo = app.add_subcommand("evolve", "hill-climb a skill over a scenario");
  sub_evo->add_option("--scenario", evo.scenario, "builtin:<name> or a scenario json file")
      ->required();
  sub_evo->add_option("--out", evo.out, "output directory")->required();
  sub_evo->add_option("--start", evo.start, "cold, medium, hot or all");
  sub_evo->add_option("--seeds", evo.seeds, "comma list of mutation seeds");
  sub_evo->add_option("--iters", evo.iters, "iterations per run");
  sub_evo->add_option("--workers", evo.workers, "worker threads; 0 = all cores");

  ReportArgs rep;
  auto* sub_rep = app.add_subcommand("report", "re-render a report.json table");
  sub_rep->add_option("--in", rep.in, "report.json from eval")->required();
  sub_rep->add_flag("--paper-scale", rep.paper_scale, "print metrics as 10^-3 integers");

  int rc = 0;
  sub_gen->callback([&] { rc = run_genbench(gen); });
  sub_eval->callback([&] { rc = run_eval(ev); });
  sub_arb->callback([&] { rc = run_arbitrate(arb); });
  sub_red->callback([&] { rc = run_redact(red); });
  sub_evo->callback([&] { rc = run_evolve(evo); });
  sub_rep->callback([&] { rc = run_report(rep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
