#pragma once

#include <stdexcept>
#include <string>

namespace ff {

// Bad input: malformed notation, degree mismatches, failed asset gates.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A bounded computation hit its budget. The result is indeterminate, not false.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ff
