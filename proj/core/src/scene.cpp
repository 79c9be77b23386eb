#include "maskclaw/scene.hpp"

#include <set>

#include "json_util.hpp"

namespace maskclaw {

using detail::json;

bool box_inside(const Box& inner, const Box& outer) {
  return inner.x >= outer.x && inner.y >= outer.y &&
         inner.x + inner.w <= outer.x + outer.w &&
         inner.y + inner.h <= outer.y + outer.h;
}

bool box_contains_point(const Box& b, int px, int py) {
  return px >= b.x && px < b.x + b.w && py >= b.y && py < b.y + b.h;
}

long long box_area(const Box& b) {
  if (b.w <= 0 || b.h <= 0) return 0;
  return static_cast<long long>(b.w) * b.h;
}

SceneCheck check_scene(const SceneDoc& scene) {
  SceneCheck out;
  const Box canvas{0, 0, scene.width, scene.height};
  if (scene.scene_id.empty()) out.problems.push_back("missing scene_id");
  if (scene.width <= 0 || scene.height <= 0) out.problems.push_back("empty canvas");
  std::set<std::string> seen;
  for (const auto& e : scene.elements) {
    if (e.element_id.empty()) out.problems.push_back("element without id");
    if (!seen.insert(e.element_id).second)
      out.problems.push_back("duplicate element id " + e.element_id);
    if (e.box.w <= 0 || e.box.h <= 0)
      out.problems.push_back("degenerate box on " + e.element_id);
    else if (!box_inside(e.box, canvas))
      out.problems.push_back("box outside canvas on " + e.element_id);
  }
  for (const auto& o : scene.occlusions) {
    if (o.w <= 0 || o.h <= 0 || !box_inside(o, canvas))
      out.problems.push_back("bad occlusion box");
  }
  if (scene.audit) {
    for (const auto& t : scene.audit->sensitive_tokens) {
      if (!find_element(scene, t.element_id))
        out.problems.push_back("audit token points at missing element " + t.element_id);
    }
  }
  out.ok = out.problems.empty();
  return out;
}

const SceneElement* find_element(const SceneDoc& scene, const std::string& element_id) {
  for (const auto& e : scene.elements)
    if (e.element_id == element_id) return &e;
  return nullptr;
}

namespace {

json box_to_json(const Box& b) {
  return json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

Box box_from_json(const json& j) {
  Box b;
  b.x = detail::get_or(j, "x", 0);
  b.y = detail::get_or(j, "y", 0);
  b.w = detail::get_or(j, "w", 0);
  b.h = detail::get_or(j, "h", 0);
  return b;
}

}  // namespace

std::string scene_to_json(const SceneDoc& scene, bool include_audit) {
  json j;
  j["scene_id"] = scene.scene_id;
  j["width"] = scene.width;
  j["height"] = scene.height;
  j["theme"] = scene.theme;
  j["elements"] = json::array();
  for (const auto& e : scene.elements) {
    j["elements"].push_back(json{{"element_id", e.element_id},
                                 {"text", e.text},
                                 {"box", box_to_json(e.box)},
                                 {"field_type", e.field_type},
                                 {"semantic_tag", e.semantic_tag}});
  }
  j["occlusions"] = json::array();
  for (const auto& o : scene.occlusions) j["occlusions"].push_back(box_to_json(o));
  if (include_audit && scene.audit) {
    json a;
    a["sensitive_tokens"] = json::array();
    for (const auto& t : scene.audit->sensitive_tokens) {
      a["sensitive_tokens"].push_back(json{
          {"text", t.text}, {"element_id", t.element_id}, {"pii_type", t.pii_type}});
    }
    a["expected_mask_regions"] = json::array();
    for (const auto& r : scene.audit->expected_mask_regions)
      a["expected_mask_regions"].push_back(box_to_json(r));
    j["audit"] = a;
  }
  return j.dump();
}

SceneDoc scene_from_json(const std::string& text) {
  const json j = detail::parse_json(text, "scene");
  SceneDoc s;
  s.scene_id = detail::get_or<std::string>(j, "scene_id", "");
  s.width = detail::get_or(j, "width", 0);
  s.height = detail::get_or(j, "height", 0);
  s.theme = detail::get_or<std::string>(j, "theme", "light");
  if (j.contains("elements")) {
    for (const auto& je : j["elements"]) {
      SceneElement e;
      e.element_id = detail::get_or<std::string>(je, "element_id", "");
      e.text = detail::get_or<std::string>(je, "text", "");
      if (je.contains("box")) e.box = box_from_json(je["box"]);
      e.field_type = detail::get_or<std::string>(je, "field_type", "free_text");
      e.semantic_tag = detail::get_or<std::string>(je, "semantic_tag", "");
      s.elements.push_back(std::move(e));
    }
  }
  if (j.contains("occlusions"))
    for (const auto& jo : j["occlusions"]) s.occlusions.push_back(box_from_json(jo));
  if (j.contains("audit") && j["audit"].is_object()) {
    SceneAudit a;
    const auto& ja = j["audit"];
    if (ja.contains("sensitive_tokens")) {
      for (const auto& jt : ja["sensitive_tokens"]) {
        AuditToken t;
        t.text = detail::get_or<std::string>(jt, "text", "");
        t.element_id = detail::get_or<std::string>(jt, "element_id", "");
        t.pii_type = detail::get_or<std::string>(jt, "pii_type", "");
        a.sensitive_tokens.push_back(std::move(t));
      }
    }
    if (ja.contains("expected_mask_regions"))
      for (const auto& jr : ja["expected_mask_regions"])
        a.expected_mask_regions.push_back(box_from_json(jr));
    s.audit = std::move(a);
  }
  return s;
}

SceneDoc load_scene_file(const std::string& path, bool keep_audit) {
  auto scene = scene_from_json(detail::read_file(path));
  if (!keep_audit) scene.audit.reset();
  return scene;
}

}  // namespace maskclaw
