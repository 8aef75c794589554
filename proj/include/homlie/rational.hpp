#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace homlie {

/// Exact rational scalar. Always kept in lowest terms with positive
/// denominator (mpq_class canonical form).
using Scalar = mpq_class;

using Vec = std::vector<Scalar>;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct dim_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

inline bool is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!is_zero(s)) return false;
  return true;
}

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Scalar& s) { return s.get_str(); }

/// Strict "p" / "p/q" parser: optional leading '-', decimal digits,
/// optional '/<positive digits>'. Anything else (e.g. "0.5") is rejected.
inline Scalar parse_rational(const std::string& text) {
  auto fail = [&] { throw parse_error("invalid rational: '" + text + "'"); };
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
  if (digits == 0) fail();
  if (pos < text.size()) {
    if (text[pos] != '/') fail();
    ++pos;
    digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
    if (digits == 0 || pos != text.size()) fail();
  }
  Scalar s;
  if (s.set_str(text, 10) != 0) fail();
  if (sgn(s.get_den()) <= 0) fail();  // "p/0"
  s.canonicalize();
  return s;
}

}  // namespace homlie
