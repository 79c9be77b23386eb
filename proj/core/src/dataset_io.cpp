#include "maskclaw/dataset_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "json_util.hpp"
#include "maskclaw/errors.hpp"

namespace fs = std::filesystem;

namespace maskclaw {

std::string instance_to_json(const Instance& ins) {
  detail::json j;
  j["id"] = ins.id;
  j["scene_id"] = ins.scene_id;
  j["task"] = ins.task;
  j["intent"] = ins.intent;
  j["app_context"] = {{"app", ins.app_context.app},
                      {"recipient", ins.app_context.recipient},
                      {"relationship", ins.app_context.relationship}};
  j["persona"] = {{"persona_id", ins.persona.persona_id},
                  {"role_tags", ins.persona.role_tags},
                  {"policy_tags", ins.persona.policy_tags}};
  j["bucket"] = to_string(ins.bucket);
  j["variant"] = to_string(ins.variant);
  return j.dump();
}

Instance instance_from_json(const std::string& text) {
  auto j = detail::parse_json(text, "instance");
  Instance ins;
  ins.id = detail::get_or<std::string>(j, "id", "");
  ins.scene_id = detail::get_or<std::string>(j, "scene_id", "");
  ins.task = detail::get_or<std::string>(j, "task", "");
  ins.intent = detail::get_or<std::string>(j, "intent", "");
  if (j.contains("app_context")) {
    const auto& a = j["app_context"];
    ins.app_context.app = detail::get_or<std::string>(a, "app", "");
    ins.app_context.recipient = detail::get_or<std::string>(a, "recipient", "");
    ins.app_context.relationship =
        detail::get_or<std::string>(a, "relationship", "");
  }
  if (j.contains("persona")) {
    const auto& p = j["persona"];
    ins.persona.persona_id = detail::get_or<std::string>(p, "persona_id", "");
    ins.persona.role_tags =
        detail::get_or<std::vector<std::string>>(p, "role_tags", {});
    ins.persona.policy_tags =
        detail::get_or<std::vector<std::string>>(p, "policy_tags", {});
  }
  auto b = bucket_from_string(detail::get_or<std::string>(j, "bucket", ""));
  auto v = variant_from_string(detail::get_or<std::string>(j, "variant", ""));
  if (!b || !v) throw DataError("instance " + ins.id + ": bad bucket or variant");
  ins.bucket = *b;
  ins.variant = *v;
  return ins;
}

std::string label_to_json(const ExpectedLabel& lab) {
  detail::json j;
  j["id"] = lab.id;
  j["decision"] = to_string(lab.decision);
  j["pii_type"] = lab.pii_type;
  j["risk_tags"] = lab.risk_tags;
  j["audit_notes"] = lab.audit_notes;
  return j.dump();
}

ExpectedLabel label_from_json(const std::string& text) {
  auto j = detail::parse_json(text, "label");
  ExpectedLabel lab;
  lab.id = detail::get_or<std::string>(j, "id", "");
  auto d = decision_from_string(detail::get_or<std::string>(j, "decision", ""));
  if (!d) throw DataError("label " + lab.id + ": bad decision");
  lab.decision = *d;
  lab.pii_type = detail::get_or<std::string>(j, "pii_type", "");
  lab.risk_tags = detail::get_or<std::vector<std::string>>(j, "risk_tags", {});
  lab.audit_notes = detail::get_or<std::string>(j, "audit_notes", "");
  return lab;
}

namespace {

std::uint64_t fnv1a_mix(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= 0xff;  // separator so path/content boundaries cannot alias
  h *= 1099511628211ull;
  return h;
}

std::vector<std::string> digest_files(const std::string& dir) {
  std::vector<std::string> rel;
  rel.push_back("instances.jsonl");
  rel.push_back("labels.jsonl");
  const auto scene_dir = fs::path(dir) / "scenes";
  if (fs::is_directory(scene_dir))
    for (const auto& entry : fs::directory_iterator(scene_dir))
      if (entry.is_regular_file())
        rel.push_back("scenes/" + entry.path().filename().string());
  std::sort(rel.begin(), rel.end());
  return rel;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& l : lines) out << l << "\n";
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

void write_dataset(const Dataset& ds, const std::string& dir) {
  if (ds.instances.size() != ds.labels.size() ||
      ds.instances.size() != ds.scenes.size())
    throw InvariantError("dataset arrays out of step");
  fs::create_directories(fs::path(dir) / "scenes");

  for (const auto& s : ds.scenes) {
    std::ofstream out(fs::path(dir) / "scenes" / (s.scene_id + ".json"),
                      std::ios::binary);
    if (!out) throw DataError("cannot write scene " + s.scene_id);
    out << scene_to_json(s, true) << "\n";
  }
  std::vector<std::string> ins_lines, lab_lines;
  std::map<Decision, int> counts;
  for (const auto& i : ds.instances) ins_lines.push_back(instance_to_json(i));
  for (const auto& l : ds.labels) {
    lab_lines.push_back(label_to_json(l));
    ++counts[l.decision];
  }
  write_lines(fs::path(dir) / "instances.jsonl", ins_lines);
  write_lines(fs::path(dir) / "labels.jsonl", lab_lines);

  detail::json manifest;
  manifest["total"] = ds.instances.size();
  manifest["counts"] = {{"Allow", counts[Decision::Allow]},
                        {"Mask", counts[Decision::Mask]},
                        {"Ask", counts[Decision::Ask]}};
  manifest["digest"] = dataset_digest(dir);
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
}

Dataset load_dataset(const std::string& dir, bool keep_audit) {
  Dataset ds;
  for (const auto& line : read_lines(fs::path(dir) / "instances.jsonl"))
    ds.instances.push_back(instance_from_json(line));
  for (const auto& line : read_lines(fs::path(dir) / "labels.jsonl"))
    ds.labels.push_back(label_from_json(line));
  if (ds.instances.size() != ds.labels.size())
    throw DataError("instances and labels disagree in " + dir);
  for (std::size_t i = 0; i < ds.instances.size(); ++i)
    if (ds.instances[i].id != ds.labels[i].id)
      throw DataError("label order broken at " + ds.instances[i].id);
  for (const auto& ins : ds.instances) {
    const auto path = fs::path(dir) / "scenes" / (ins.scene_id + ".json");
    ds.scenes.push_back(load_scene_file(path.string(), keep_audit));
  }
  return ds;
}

std::string dataset_digest(const std::string& dir) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& rel : digest_files(dir)) {
    h = fnv1a_mix(h, rel);
    h = fnv1a_mix(h, detail::read_file((fs::path(dir) / rel).string()));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace maskclaw
