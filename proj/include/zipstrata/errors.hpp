#pragma once

#include <stdexcept>
#include <string>

namespace zipstrata {

/// Invalid Cartan datum, unsupported family/rank, malformed subset or map.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller mixed objects that do not belong together (e.g. elements of two
/// different root systems).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A combinatorial invariant that must hold failed. Never repaired silently;
/// the message carries a diagnostic dump.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zipstrata
