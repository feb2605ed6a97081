#pragma once

#include <stdexcept>
#include <string>

namespace byzstab {

/// Malformed or inconsistent input (graph/metric files, bad parameters). CLI exit 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A construction the theory rules out for the given metric/parameters. CLI exit 3.
struct inapplicable_error : std::runtime_error {
  explicit inapplicable_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured step/enumeration budget was exceeded. CLI exit 4.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace byzstab
