#pragma once

#include <stdexcept>
#include <string>

namespace hyperconv {

/// Shape or channel-layout mismatch between tensors, filters, or layers.
class DimensionError : public std::runtime_error {
  public:
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unusable configuration or input (bad fraction, empty dataset,
/// single-class training set, unknown algebra name, ...).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File reading, decoding or parsing failure.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyperconv
