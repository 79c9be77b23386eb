#pragma once

#include <optional>
#include <string>
#include <vector>

namespace maskclaw {

struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool operator==(const Box&) const = default;
};

bool box_inside(const Box& inner, const Box& outer);
bool box_contains_point(const Box& b, int px, int py);
long long box_area(const Box& b);

struct SceneElement {
  std::string element_id;
  std::string text;
  Box box;
  std::string field_type;    // "free_text" or a typed field like "bank_card"
  std::string semantic_tag;  // empty means none
};

// Ground truth attached to a scene. Systems under test never see this;
// loaders strip it from the runner-visible view.
struct AuditToken {
  std::string text;
  std::string element_id;
  std::string pii_type;
};

struct SceneAudit {
  std::vector<AuditToken> sensitive_tokens;
  std::vector<Box> expected_mask_regions;
};

struct SceneDoc {
  std::string scene_id;
  int width = 0;
  int height = 0;
  std::string theme = "light";
  std::vector<SceneElement> elements;
  std::vector<Box> occlusions;  // opaque overlays, e.g. injected noise
  std::optional<SceneAudit> audit;
};

struct SceneCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Element ids unique, every box non-empty and inside the canvas.
SceneCheck check_scene(const SceneDoc& scene);

const SceneElement* find_element(const SceneDoc& scene, const std::string& element_id);

std::string scene_to_json(const SceneDoc& scene, bool include_audit);
SceneDoc scene_from_json(const std::string& text);  // throws DataError
SceneDoc load_scene_file(const std::string& path, bool keep_audit);

}  // namespace maskclaw
