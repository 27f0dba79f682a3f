#pragma once

#include <stdexcept>
#include <string>

namespace qf {

/// Domain error thrown by all library operations (bad input, failed
/// precondition, resource bound exceeded).
class error : public std::runtime_error {
public:
  explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

}  // namespace qf
