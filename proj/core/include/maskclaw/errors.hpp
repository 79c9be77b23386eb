#pragma once

#include <stdexcept>

namespace maskclaw {

// Bad flags, bad spec values, anything the operator typed wrong.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed inputs: files, datasets, dangling ids.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contract the code itself promised got broken.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace maskclaw
