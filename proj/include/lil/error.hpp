#ifndef LIL_ERROR_HPP
#define LIL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lil {

// Status values mirror the C API codes in lil.h; keep the two in sync.
enum class Status {
  Ok = 0,
  Parse = 1,
  Pattern = 2,
  Dimension = 3,
  Support = 4,
  Singular = 5,
  NotLieIdeal = 6,
  NotInAlgebra = 7,
  TooLarge = 8,
  Assertion = 9,
  BadArgument = 10,
};

class Error : public std::runtime_error {
public:
  Error(Status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}

  Status status() const noexcept { return status_; }

private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& message) {
  throw Error(status, message);
}

} // namespace lil

#endif
