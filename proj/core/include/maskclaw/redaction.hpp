#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "maskclaw/instance.hpp"
#include "maskclaw/raster.hpp"
#include "maskclaw/scene.hpp"

namespace maskclaw {

enum class MaskStyle { fill, placeholder, blur_stub };
enum class RedactionMode { strict, recall_first };

const char* to_string(MaskStyle s);
const char* to_string(RedactionMode m);
std::optional<MaskStyle> mask_style_from_string(const std::string& s);
std::optional<RedactionMode> redaction_mode_from_string(const std::string& s);

struct PiiPattern {
  std::string pii_type;
  std::string raw;  // kept for reports; re is compiled from it
  std::regex re;
};

// Structured PII shapes for the recall-first sweep and the pattern baseline.
const std::vector<PiiPattern>& pii_pattern_library();

// First library pattern matching the text, or nullopt.
std::optional<std::string> match_pii(const std::string& text);

struct MaskRegion {
  std::string element_id;
  Box box;
  std::string field_type;
  std::string source;  // "target", "sensitive_set" or "pattern:<pii_type>"
};

struct RedactionRequest {
  std::vector<std::string> target_field_types;
  RedactionMode mode = RedactionMode::strict;
  MaskStyle style = MaskStyle::fill;
  std::vector<std::string> sensitive_types = default_sensitive_field_types();
};

struct RedactionPlan {
  RedactionMode mode = RedactionMode::strict;
  MaskStyle style = MaskStyle::fill;
  std::vector<std::string> requested_types;
  std::vector<MaskRegion> regions;
};

// Strict masks only the requested field types. Recall-first additionally
// sweeps the global sensitive set and the PII pattern library over element
// text, trading overmasking for fewer leaks.
RedactionPlan select_regions(const SceneDoc& scene, const RedactionRequest& req);

struct RedactionResult {
  SceneDoc scene;  // audit stripped, element text rewritten per style
  Raster image;
  bool mask_generated = false;
  std::vector<std::string> audit_flags;
  RedactionPlan plan;
};

// Flags are advisory, computed against the input scene's audit when present:
//   missed_sensitive_token:<pii_type>  a gold token is still readable
//   no_ocr_match:<field_type>          a requested type had nothing to mask
//   overmask_suspect                   area > 1/2 image or count > 3x gold
RedactionResult apply_redaction(const SceneDoc& scene, const RedactionPlan& plan);

std::string redaction_to_json(const RedactionResult& result);

}  // namespace maskclaw
