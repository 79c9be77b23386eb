#include "maskclaw/redaction.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "maskclaw/textnorm.hpp"

namespace maskclaw {

const char* to_string(MaskStyle s) {
  switch (s) {
    case MaskStyle::fill: return "fill";
    case MaskStyle::placeholder: return "placeholder";
    case MaskStyle::blur_stub: return "blur_stub";
  }
  return "fill";
}

const char* to_string(RedactionMode m) {
  return m == RedactionMode::recall_first ? "recall_first" : "strict";
}

std::optional<MaskStyle> mask_style_from_string(const std::string& s) {
  if (s == "fill") return MaskStyle::fill;
  if (s == "placeholder") return MaskStyle::placeholder;
  if (s == "blur_stub") return MaskStyle::blur_stub;
  return std::nullopt;
}

std::optional<RedactionMode> redaction_mode_from_string(const std::string& s) {
  if (s == "strict") return RedactionMode::strict;
  if (s == "recall_first") return RedactionMode::recall_first;
  return std::nullopt;
}

const std::vector<PiiPattern>& pii_pattern_library() {
  static const std::vector<PiiPattern> lib = [] {
    std::vector<PiiPattern> v;
    auto add = [&](const char* type, const char* raw) {
      v.push_back({type, raw, std::regex(raw)});
    };
    // Longer digit shapes first so an 18-digit id is not read as a card.
    add("id_number", R"(\d{17}[0-9Xx])");
    add("bank_card", R"(\d{4}[ -]?\d{4}[ -]?\d{4}[ -]?\d{2,4})");
    add("phone", R"(1[3-9]\d{9})");
    add("email", R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})");
    return v;
  }();
  return lib;
}

std::optional<std::string> match_pii(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (const auto& p : pii_pattern_library())
    if (std::regex_search(text, p.re)) return p.pii_type;
  return std::nullopt;
}

RedactionPlan select_regions(const SceneDoc& scene, const RedactionRequest& req) {
  RedactionPlan plan;
  plan.mode = req.mode;
  plan.style = req.style;
  plan.requested_types = req.target_field_types;

  auto targeted = [&](const std::string& ft) {
    return std::find(req.target_field_types.begin(), req.target_field_types.end(),
                     ft) != req.target_field_types.end();
  };

  for (const auto& e : scene.elements) {
    std::string source;
    if (targeted(e.field_type)) {
      source = "target";
    } else if (req.mode == RedactionMode::recall_first) {
      if (is_sensitive_field_type(e.field_type, req.sensitive_types))
        source = "sensitive_set";
      else if (auto hit = match_pii(e.text))
        source = "pattern:" + *hit;
    }
    if (!source.empty())
      plan.regions.push_back({e.element_id, e.box, e.field_type, source});
  }
  return plan;
}

namespace {

std::size_t codepoints(const std::string& utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string repeat(const char* glyph, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += glyph;
  return out;
}

std::string masked_text(const SceneElement& e, MaskStyle style) {
  const auto n = codepoints(normalize_text(e.text));
  switch (style) {
    case MaskStyle::fill: return repeat("█", n);
    case MaskStyle::placeholder: return "[MASKED:" + e.field_type + "]";
    case MaskStyle::blur_stub: return repeat("~", n);
  }
  return {};
}

}  // namespace

RedactionResult apply_redaction(const SceneDoc& scene, const RedactionPlan& plan) {
  RedactionResult res;
  res.plan = plan;
  res.scene = scene;
  res.scene.audit.reset();
  res.image = render_scene(scene);
  res.mask_generated = !plan.regions.empty();

  const Rgb paint = plan.style == MaskStyle::blur_stub ? kBlurFill : kMaskFill;
  for (const auto& region : plan.regions) {
    fill_box(res.image, region.box, paint);
    for (auto& e : res.scene.elements)
      if (e.element_id == region.element_id) e.text = masked_text(e, plan.style);
  }

  // Verify stage. Gold tokens come from the input scene; they never ship.
  if (scene.audit) {
    std::string haystack;
    for (const auto& e : res.scene.elements) haystack += normalize_text(e.text);
    for (const auto& tok : scene.audit->sensitive_tokens) {
      const auto t = normalize_text(tok.text);
      if (!t.empty() && haystack.find(t) != std::string::npos)
        res.audit_flags.push_back("missed_sensitive_token:" + tok.pii_type);
    }
  }
  for (const auto& want : plan.requested_types) {
    const bool covered =
        std::any_of(plan.regions.begin(), plan.regions.end(),
                    [&](const MaskRegion& r) { return r.field_type == want; });
    if (!covered) res.audit_flags.push_back("no_ocr_match:" + want);
  }
  double masked_area = 0;
  for (const auto& r : plan.regions) masked_area += double(r.box.w) * r.box.h;
  const bool over_area = scene.width > 0 && scene.height > 0 &&
                         masked_area > 0.5 * scene.width * scene.height;
  const bool over_count =
      scene.audit &&
      plan.regions.size() > 3 * scene.audit->sensitive_tokens.size();
  if (over_area || over_count) res.audit_flags.push_back("overmask_suspect");
  return res;
}

std::string redaction_to_json(const RedactionResult& r) {
  detail::json j;
  j["mask_generated"] = r.mask_generated;
  j["audit_flags"] = r.audit_flags;
  j["plan"]["mode"] = to_string(r.plan.mode);
  j["plan"]["style"] = to_string(r.plan.style);
  j["plan"]["requested_types"] = r.plan.requested_types;
  auto regions = detail::json::array();
  for (const auto& reg : r.plan.regions) {
    regions.push_back({{"element_id", reg.element_id},
                       {"box", {{"x", reg.box.x},
                                {"y", reg.box.y},
                                {"w", reg.box.w},
                                {"h", reg.box.h}}},
                       {"field_type", reg.field_type},
                       {"source", reg.source}});
  }
  j["plan"]["regions"] = regions;
  return j.dump();
}

}  // namespace maskclaw
