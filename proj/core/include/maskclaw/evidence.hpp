#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskclaw/scene.hpp"

namespace maskclaw {

struct EvidenceItem {
  std::string text;
  std::string field_type;
  std::string semantic_tag;  // empty means none
  double confidence = 1.0;   // [0,1]
  std::optional<Box> box;    // localizable iff present
};

struct EvidenceSet {
  std::vector<EvidenceItem> items;
  // Non-empty means extraction trouble; the arbiter treats that as
  // sensitive-until-proven-otherwise.
  std::vector<std::string> diagnostics;
};

class EvidenceProvider {
 public:
  virtual ~EvidenceProvider() = default;
  // May throw; extract_evidence converts failures into diagnostics.
  virtual std::vector<EvidenceItem> read(const SceneDoc& scene) = 0;
};

struct NoiseConfig {
  double char_flip_rate = 0.0;  // per alphanumeric character
  double drop_rate = 0.0;       // per element
  int box_jitter_px = 0;
  int occlusion_count = 0;
  std::uint64_t seed = 0;
  bool is_zero() const {
    return char_flip_rate == 0.0 && drop_rate == 0.0 && box_jitter_px == 0 &&
           occlusion_count == 0;
  }
};

// Perturbs the visible scene only; the audit block is carried over untouched
// so gold tokens keep their original text.
SceneDoc inject_noise(const SceneDoc& scene, const NoiseConfig& cfg);

NoiseConfig hard_bucket_noise_preset(std::uint64_t seed);

// Identity OCR stand-in: one item per element, confidence 1.0, box equal to
// the element box. Elements whose center sits under an occlusion read as
// empty text. An optional NoiseConfig lens perturbs the scene before reading.
class MockOcrProvider : public EvidenceProvider {
 public:
  MockOcrProvider() = default;
  explicit MockOcrProvider(NoiseConfig noise) : noise_(noise) {}
  std::vector<EvidenceItem> read(const SceneDoc& scene) override;

 private:
  std::optional<NoiseConfig> noise_;
};

// Never reads the audit block: providers get handed a scene with audit
// stripped no matter what the caller loaded.
EvidenceSet extract_evidence(const SceneDoc& scene, EvidenceProvider& provider);

struct CoverageResult {
  double value = 1.0;
  bool vacuous = false;  // no gold tokens to look for
};

// Fraction of gold tokens whose normalized form appears as a substring of the
// concatenated normalized evidence text. Monotone under appending evidence.
CoverageResult ocr_coverage(const std::vector<std::string>& gold_tokens,
                            const std::vector<EvidenceItem>& evidence);

}  // namespace maskclaw
