#include "maskclaw/instance.hpp"

#include <algorithm>

namespace maskclaw {

bool recipient_class_valid(const std::string& r) {
  return r == kRecipientSelf || r == kRecipientTrustedInternal ||
         r == kRecipientExternalBusiness || r == kRecipientExternalUnknown;
}

bool recipient_trusted(const std::string& r) {
  return r == kRecipientSelf || r == kRecipientTrustedInternal;
}

const char* to_string(Bucket b) {
  switch (b) {
    case Bucket::D1: return "D1";
    case Bucket::D2: return "D2";
    case Bucket::D3: return "D3";
  }
  return "D1";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::base: return "base";
    case Variant::ss: return "ss";
    case Variant::vs: return "vs";
    case Variant::ls: return "ls";
  }
  return "base";
}

std::optional<Bucket> bucket_from_string(const std::string& s) {
  if (s == "D1") return Bucket::D1;
  if (s == "D2") return Bucket::D2;
  if (s == "D3") return Bucket::D3;
  return std::nullopt;
}

std::optional<Variant> variant_from_string(const std::string& s) {
  if (s == "base") return Variant::base;
  if (s == "ss") return Variant::ss;
  if (s == "vs") return Variant::vs;
  if (s == "ls") return Variant::ls;
  return std::nullopt;
}

const std::vector<std::string>& default_sensitive_field_types() {
  static const std::vector<std::string> kTypes = {
      "bank_card", "id_number", "medical", "credential",
      "salary",    "phone",     "address", "account",
  };
  return kTypes;
}

bool is_sensitive_field_type(const std::string& field_type,
                             const std::vector<std::string>& sensitive_types) {
  return std::find(sensitive_types.begin(), sensitive_types.end(), field_type) !=
         sensitive_types.end();
}

}  // namespace maskclaw
