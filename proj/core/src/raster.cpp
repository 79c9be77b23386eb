#include "maskclaw/raster.hpp"

#include <algorithm>
#include <fstream>

#include "maskclaw/errors.hpp"

namespace maskclaw {

namespace {

constexpr Rgb kLightBg{245, 245, 240};
constexpr Rgb kDarkBg{24, 28, 32};
constexpr Rgb kOcclusion{128, 128, 128};

// Flat block palette. Every entry and its border shade stays away from
// kMaskFill and kBlurFill so masked pixels are unambiguous.
constexpr Rgb kPalette[] = {
    {201, 224, 247}, {247, 214, 214}, {214, 247, 221}, {247, 240, 204},
    {228, 214, 247}, {247, 225, 205}, {205, 240, 247}, {236, 236, 236},
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rgb darker(Rgb c) {
  auto d = [](std::uint8_t v) { return std::uint8_t(v > 60 ? v - 60 : 40); };
  return {d(c.r), d(c.g), d(c.b)};
}

void outline_box(Raster& img, const Box& box, Rgb color) {
  const int x0 = std::max(box.x, 0), y0 = std::max(box.y, 0);
  const int x1 = std::min(box.x + box.w, img.width);
  const int y1 = std::min(box.y + box.h, img.height);
  if (x0 >= x1 || y0 >= y1) return;
  for (int x = x0; x < x1; ++x) {
    img.at(x, y0) = color;
    img.at(x, y1 - 1) = color;
  }
  for (int y = y0; y < y1; ++y) {
    img.at(x0, y) = color;
    img.at(x1 - 1, y) = color;
  }
}

}  // namespace

void fill_box(Raster& img, const Box& box, Rgb color) {
  const int x0 = std::max(box.x, 0), y0 = std::max(box.y, 0);
  const int x1 = std::min(box.x + box.w, img.width);
  const int y1 = std::min(box.y + box.h, img.height);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) img.at(x, y) = color;
}

Raster render_scene(const SceneDoc& scene) {
  Raster img(scene.width, scene.height,
             scene.theme == "dark" ? kDarkBg : kLightBg);
  for (const auto& e : scene.elements) {
    const Rgb fill = kPalette[fnv1a(e.field_type) % std::size(kPalette)];
    fill_box(img, e.box, fill);
    outline_box(img, e.box, darker(fill));
  }
  for (const auto& o : scene.occlusions) fill_box(img, o, kOcclusion);
  return img;
}

std::string ppm_bytes(const Raster& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.reserve(out.size() + img.px.size() * 3);
  for (const auto& p : img.px) {
    out.push_back(char(p.r));
    out.push_back(char(p.g));
    out.push_back(char(p.b));
  }
  return out;
}

void save_ppm(const Raster& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image: " + path);
  const auto bytes = ppm_bytes(img);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw DataError("short write: " + path);
}

}  // namespace maskclaw
