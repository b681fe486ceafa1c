#include "lil/rational.hpp"

#include "lil/error.hpp"

#include <cctype>

namespace lil {

namespace {

bool valid_integer(const std::string& s, std::size_t begin, std::size_t end) {
  if (begin >= end) return false;
  std::size_t i = begin;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i >= end) return false;
  for (; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

} // namespace

Rational rational_from_string(const std::string& text) {
  const std::size_t slash = text.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = valid_integer(text, 0, text.size());
  } else {
    ok = valid_integer(text, 0, slash) &&
         valid_integer(text, slash + 1, text.size());
  }
  if (!ok) fail(Status::Parse, "malformed rational '" + text + "'");

  Rational value;
  if (mpq_set_str(value.get_mpq_t(), text.c_str(), 10) != 0) {
    fail(Status::Parse, "malformed rational '" + text + "'");
  }
  if (sgn(value.get_den()) == 0) {
    fail(Status::Parse, "zero denominator in rational '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

} // namespace lil
