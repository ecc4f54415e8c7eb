#ifndef MQL_ERROR_HPP
#define MQL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mql {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input does not satisfy the quad relation (or another defining relation).
class InvalidQuad : public Error {
 public:
  using Error::Error;
};

// A documented precondition does not hold: branch cuts, parabolic classes,
// BQ violations, zero denominators.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A cell or step budget ran out before the computation finished.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mql

#endif  // MQL_ERROR_HPP
