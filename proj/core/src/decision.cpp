#include "maskclaw/decision.hpp"

namespace maskclaw {

Decision map_decision(FlagPair flags) {
  if (flags.u) return Decision::Ask;
  if (flags.m) return Decision::Mask;
  return Decision::Allow;
}

FlagPair canonical_flags(Decision d) {
  switch (d) {
    case Decision::Allow: return {false, false};
    case Decision::Mask: return {true, false};
    case Decision::Ask: return {false, true};
  }
  return {false, false};
}

int decision_rank(Decision d) {
  return static_cast<int>(d);
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Allow: return "Allow";
    case Decision::Mask: return "Mask";
    case Decision::Ask: return "Ask";
  }
  return "Allow";
}

std::optional<Decision> decision_from_string(const std::string& s) {
  if (s == "Allow" || s == "allow") return Decision::Allow;
  if (s == "Mask" || s == "mask") return Decision::Mask;
  if (s == "Ask" || s == "ask") return Decision::Ask;
  return std::nullopt;
}

}  // namespace maskclaw
