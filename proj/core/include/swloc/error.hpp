#pragma once

#include <stdexcept>
#include <string>

namespace swloc {

/// Invalid arguments to a constructor or operation (bad sizes, out-of-range
/// probabilities, impossible graph parameters).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed serialized data: filters, gossip payloads, edge lists.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two filters that cannot be combined (different m, k or seeds).
class IncompatibleFilterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A metric that has no value for the given graph (e.g. path length of a
/// component with fewer than two nodes).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Overlay construction could not satisfy its connectivity requirement.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration file key or value that could not be interpreted.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace swloc
