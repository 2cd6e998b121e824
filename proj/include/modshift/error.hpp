#pragma once

#include <stdexcept>
#include <string>

namespace modshift {

/// Invalid or inconsistent run configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (embedding files, lexical resources, artifacts).
/// Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fit or numerical routine could not produce a defined answer
/// (rank deficiency, too few observations, constant response).
/// Maps to CLI exit code 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modshift
