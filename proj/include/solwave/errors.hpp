#pragma once

#include <stdexcept>
#include <string>

namespace solwave {

/// Invalid configuration or violated precondition. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numerical failure (non-finite symbol value, blow-up, ...). CLI exit code 1.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace solwave
