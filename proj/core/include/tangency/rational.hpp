#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tangency {

// Exact rational number. mpq_class keeps numerator/denominator in canonical
// form (gcd 1, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" and "-p/q". Throws std::invalid_argument on anything
// else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Always "p/q", also for integers ("3/1"), so serialized files have a single
// textual form per value.
std::string to_string(const Rational& value);

// num/den in canonical form (den != 0).
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& value) { return sgn(value); }

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

double to_double(const Rational& value);

// 2^e for e >= 0.
Rational pow2(unsigned e);

// True iff value is 2^e for some integer e >= 0.
bool is_power_of_two(const Rational& value);

}  // namespace tangency
