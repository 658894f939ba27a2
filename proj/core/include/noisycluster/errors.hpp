#pragma once

#include <stdexcept>
#include <string>

namespace noisycluster {

// Base class for all library errors. CLI maps subclasses to exit codes:
// invalid-input family -> 2, instance-too-large family -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

struct InvalidErrorRate : InvalidInput {
  explicit InvalidErrorRate(const std::string& what) : InvalidInput(what) {}
};

struct SelfQuery : InvalidInput {
  explicit SelfQuery(const std::string& what) : InvalidInput(what) {}
};

struct IncompleteGraph : InvalidInput {
  explicit IncompleteGraph(const std::string& what) : InvalidInput(what) {}
};

struct InstanceTooLarge : Error {
  explicit InstanceTooLarge(const std::string& what) : Error(what) {}
};

struct ResidualTooLarge : InstanceTooLarge {
  explicit ResidualTooLarge(const std::string& what) : InstanceTooLarge(what) {}
};

}  // namespace noisycluster
