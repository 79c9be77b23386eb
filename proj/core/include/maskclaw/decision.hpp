#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace maskclaw {

enum class Decision : std::uint8_t { Allow = 0, Mask = 1, Ask = 2 };

// m: redact before anything leaves the device. u: a human has to approve.
// Ask wins over Mask when both flags are up.
struct FlagPair {
  bool m = false;
  bool u = false;
  bool operator==(const FlagPair&) const = default;
};

Decision map_decision(FlagPair flags);

// Canonical preimage of map_decision: Allow {0,0}, Mask {1,0}, Ask {0,1}.
FlagPair canonical_flags(Decision d);

// Ask > Mask > Allow whenever decisions need ranking or merging.
int decision_rank(Decision d);

const char* to_string(Decision d);
std::optional<Decision> decision_from_string(const std::string& s);

}  // namespace maskclaw
