#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskclaw/decision.hpp"

namespace maskclaw {

// Closed recipient taxonomy. Callers map whatever their channel knows onto
// one of these four before building an Instance.
inline constexpr const char* kRecipientSelf = "self";
inline constexpr const char* kRecipientTrustedInternal = "trusted_internal";
inline constexpr const char* kRecipientExternalBusiness = "external_business";
inline constexpr const char* kRecipientExternalUnknown = "external_unknown";

bool recipient_class_valid(const std::string& r);
bool recipient_trusted(const std::string& r);

struct AppContext {
  std::string app;
  std::string recipient;     // one of the recipient classes
  std::string relationship;  // free-form tag, e.g. "stranger_buyer"
};

struct PersonaContext {
  std::string persona_id;
  std::vector<std::string> role_tags;
  std::vector<std::string> policy_tags;
};

enum class Bucket : std::uint8_t { D1, D2, D3 };
enum class Variant : std::uint8_t { base, ss, vs, ls };

struct Instance {
  std::string id;
  std::string scene_id;
  std::string task;    // what the user is in the middle of
  std::string intent;  // candidate next action, e.g. "send_screenshot"
  AppContext app_context;
  PersonaContext persona;
  Bucket bucket = Bucket::D1;
  Variant variant = Variant::base;
};

struct ExpectedLabel {
  std::string id;  // matches Instance.id
  Decision decision = Decision::Allow;
  std::string pii_type;  // primary sensitive field type, may be empty
  std::vector<std::string> risk_tags;
  std::string audit_notes;
};

const char* to_string(Bucket b);
const char* to_string(Variant v);
std::optional<Bucket> bucket_from_string(const std::string& s);
std::optional<Variant> variant_from_string(const std::string& s);

// Field types the fallback arbiter and the recall-first masker treat as
// sensitive. Callers may substitute their own list; this is the shipped one.
const std::vector<std::string>& default_sensitive_field_types();
bool is_sensitive_field_type(
    const std::string& field_type,
    const std::vector<std::string>& sensitive_types = default_sensitive_field_types());

}  // namespace maskclaw
