#pragma once

#include <string>

namespace maskclaw {

// Canonical form used for all text matching: ASCII lowercased, every
// whitespace run removed, ASCII and common unicode punctuation stripped,
// full-width digits folded to ASCII. Idempotent.
std::string normalize_text(const std::string& s);

}  // namespace maskclaw
