#pragma once

#include <stdexcept>
#include <string>

namespace pxgt {

// An operation needed to enumerate more elements (or vertices) than its
// configured budget allows. Never a silent truncation.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string &what) : std::runtime_error(what) {}
};

class degree_mismatch : public std::invalid_argument {
public:
  explicit degree_mismatch(const std::string &what)
      : std::invalid_argument(what)
  {
  }
};

} // namespace pxgt
