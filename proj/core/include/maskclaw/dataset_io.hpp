#pragma once

#include <string>

#include "maskclaw/benchgen.hpp"

namespace maskclaw {

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
std::string label_to_json(const ExpectedLabel& label);
ExpectedLabel label_from_json(const std::string& text);

// Layout under dir:
//   scenes/<scene_id>.json   one scene per file, gold audit included
//   instances.jsonl
//   labels.jsonl
//   manifest.json            counts plus the content digest
void write_dataset(const Dataset& ds, const std::string& dir);

// keep_audit=false strips gold from the scenes, the shape eval code sees.
Dataset load_dataset(const std::string& dir, bool keep_audit);

// FNV-1a over sorted relative paths and file bytes of scenes/, instances.jsonl
// and labels.jsonl. The manifest itself is excluded so it can record the
// digest. Equal digests mean byte-identical datasets.
std::string dataset_digest(const std::string& dir);

}  // namespace maskclaw
