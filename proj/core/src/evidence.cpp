#include "maskclaw/evidence.hpp"

#include <algorithm>

#include "maskclaw/seeded_rng.hpp"
#include "maskclaw/textnorm.hpp"

namespace maskclaw {

namespace {

bool center_occluded(const SceneDoc& scene, const Box& b) {
  const int cx = b.x + b.w / 2;
  const int cy = b.y + b.h / 2;
  return std::any_of(scene.occlusions.begin(), scene.occlusions.end(),
                     [&](const Box& o) { return box_contains_point(o, cx, cy); });
}

char flip_char(std::mt19937_64& g, char c) {
  if (c >= '0' && c <= '9') {
    char r = static_cast<char>('0' + rng_below(g, 9));
    return r >= c ? static_cast<char>(r + 1) : r;  // always a different digit
  }
  if (c >= 'a' && c <= 'z') {
    char r = static_cast<char>('a' + rng_below(g, 25));
    return r >= c ? static_cast<char>(r + 1) : r;
  }
  if (c >= 'A' && c <= 'Z') {
    char r = static_cast<char>('A' + rng_below(g, 25));
    return r >= c ? static_cast<char>(r + 1) : r;
  }
  return c;
}

int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

SceneDoc inject_noise(const SceneDoc& scene, const NoiseConfig& cfg) {
  if (cfg.is_zero()) return scene;
  SceneDoc out = scene;
  std::mt19937_64 g(cfg.seed);

  // Fixed pass order keeps the draw sequence stable: drop, flip, jitter,
  // occlude. Multibyte characters are left alone so text stays valid UTF-8.
  if (cfg.drop_rate > 0.0) {
    std::vector<SceneElement> kept;
    kept.reserve(out.elements.size());
    for (auto& e : out.elements)
      if (!rng_chance(g, cfg.drop_rate)) kept.push_back(std::move(e));
    out.elements = std::move(kept);
  }

  if (cfg.char_flip_rate > 0.0) {
    for (auto& e : out.elements) {
      for (auto& c : e.text) {
        const auto uc = static_cast<unsigned char>(c);
        if (uc < 0x80 && std::isalnum(uc) && rng_chance(g, cfg.char_flip_rate))
          c = flip_char(g, c);
      }
    }
  }

  if (cfg.box_jitter_px > 0) {
    for (auto& e : out.elements) {
      const int dx = rng_range(g, -cfg.box_jitter_px, cfg.box_jitter_px);
      const int dy = rng_range(g, -cfg.box_jitter_px, cfg.box_jitter_px);
      e.box.x = clamp_int(e.box.x + dx, 0, std::max(0, out.width - e.box.w));
      e.box.y = clamp_int(e.box.y + dy, 0, std::max(0, out.height - e.box.h));
    }
  }

  for (int i = 0; i < cfg.occlusion_count; ++i) {
    Box o;
    o.w = rng_range(g, out.width / 8, out.width / 4);
    o.h = rng_range(g, out.height / 16, out.height / 8);
    o.w = std::max(1, std::min(o.w, out.width));
    o.h = std::max(1, std::min(o.h, out.height));
    o.x = rng_range(g, 0, out.width - o.w);
    o.y = rng_range(g, 0, out.height - o.h);
    out.occlusions.push_back(o);
  }

  return out;
}

NoiseConfig hard_bucket_noise_preset(std::uint64_t seed) {
  NoiseConfig cfg;
  cfg.char_flip_rate = 0.01;
  cfg.drop_rate = 0.03;
  cfg.box_jitter_px = 2;
  cfg.occlusion_count = 1;
  cfg.seed = seed;
  return cfg;
}

std::vector<EvidenceItem> MockOcrProvider::read(const SceneDoc& scene) {
  const SceneDoc* view = &scene;
  SceneDoc noisy;
  if (noise_ && !noise_->is_zero()) {
    noisy = inject_noise(scene, *noise_);
    view = &noisy;
  }
  std::vector<EvidenceItem> items;
  items.reserve(view->elements.size());
  for (const auto& e : view->elements) {
    EvidenceItem it;
    it.text = center_occluded(*view, e.box) ? std::string{} : e.text;
    it.field_type = e.field_type;
    it.semantic_tag = e.semantic_tag;
    it.confidence = 1.0;
    it.box = e.box;
    items.push_back(std::move(it));
  }
  return items;
}

EvidenceSet extract_evidence(const SceneDoc& scene, EvidenceProvider& provider) {
  EvidenceSet out;
  SceneDoc visible = scene;
  visible.audit.reset();  // providers only ever see runner-visible fields
  try {
    out.items = provider.read(visible);
  } catch (const std::exception& e) {
    out.items.clear();
    out.diagnostics.push_back(std::string("extraction_failed: ") + e.what());
  }
  return out;
}

CoverageResult ocr_coverage(const std::vector<std::string>& gold_tokens,
                            const std::vector<EvidenceItem>& evidence) {
  CoverageResult r;
  if (gold_tokens.empty()) {
    r.value = 1.0;
    r.vacuous = true;
    return r;
  }
  std::string haystack;
  for (const auto& item : evidence) haystack += normalize_text(item.text);
  std::size_t found = 0;
  for (const auto& tok : gold_tokens) {
    if (haystack.find(normalize_text(tok)) != std::string::npos) ++found;
  }
  r.value = static_cast<double>(found) / static_cast<double>(gold_tokens.size());
  r.vacuous = false;
  return r;
}

}  // namespace maskclaw
