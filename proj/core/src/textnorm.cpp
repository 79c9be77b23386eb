#include "maskclaw/textnorm.hpp"

#include <cctype>
#include <cstdint>

namespace maskclaw {

namespace {

// Returns the codepoint length at i, or 0 when the bytes are not valid UTF-8.
int decode_utf8(const std::string& s, std::size_t i, std::uint32_t* cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  int len = 0;
  std::uint32_t v = 0;
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    v = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    v = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    v = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    v = (v << 6) | (b & 0x3F);
  }
  *cp = v;
  return len;
}

bool unicode_space(std::uint32_t cp) {
  return cp == 0x00A0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200D) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000 || cp == 0xFEFF;
}

// Common punctuation blocks; not exhaustive unicode coverage, but stable and
// wide enough for GUI text.
bool unicode_punct(std::uint32_t cp) {
  return (cp >= 0x00A1 && cp <= 0x00BF) || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205E) || (cp >= 0x2E00 && cp <= 0x2E7F) ||
         (cp >= 0x3001 && cp <= 0x303F) || (cp >= 0xFE50 && cp <= 0xFE6F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

}  // namespace

std::string normalize_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      if (std::isspace(c) || std::ispunct(c)) {
        ++i;
        continue;
      }
      out.push_back(static_cast<char>(std::tolower(c)));
      ++i;
      continue;
    }
    std::uint32_t cp = 0;
    const int len = decode_utf8(s, i, &cp);
    if (len == 0) {  // stray byte: keep it so the pass stays idempotent
      out.push_back(s[i]);
      ++i;
      continue;
    }
    if (unicode_space(cp) || unicode_punct(cp)) {
      i += static_cast<std::size_t>(len);
      continue;
    }
    if (cp >= 0xFF10 && cp <= 0xFF19) {  // full-width digit
      out.push_back(static_cast<char>('0' + (cp - 0xFF10)));
      i += static_cast<std::size_t>(len);
      continue;
    }
    out.append(s, i, static_cast<std::size_t>(len));
    i += static_cast<std::size_t>(len);
  }
  return out;
}

}  // namespace maskclaw
