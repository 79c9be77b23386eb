#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskclaw/scene.hpp"

namespace maskclaw {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// Colors reserved for redaction output. The scene renderer never emits
// either, so a masked pixel is distinguishable from every painted one.
inline constexpr Rgb kMaskFill{0, 0, 0};
inline constexpr Rgb kBlurFill{90, 90, 90};

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<Rgb> px;

  Raster() = default;
  Raster(int w, int h, Rgb fill) : width(w), height(h), px(std::size_t(w) * h, fill) {}
  Rgb& at(int x, int y) { return px[std::size_t(y) * width + x]; }
  const Rgb& at(int x, int y) const { return px[std::size_t(y) * width + x]; }
  bool operator==(const Raster&) const = default;
};

// Deterministic flat rendering: themed background, one palette block per
// element keyed by field type, occlusions on top. No text glyphs.
Raster render_scene(const SceneDoc& scene);

void fill_box(Raster& image, const Box& box, Rgb color);

// Binary P6, maxval 255.
std::string ppm_bytes(const Raster& image);
void save_ppm(const Raster& image, const std::string& path);

}  // namespace maskclaw
