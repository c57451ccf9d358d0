#ifndef ATOMLIGHT_WIGNER_HPP
#define ATOMLIGHT_WIGNER_HPP

#include "atomlight/half_integer.hpp"

namespace atomlight {

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} via the Racah single-sum
/// formula with precomputed log-factorials. Returns exactly 0 when any
/// of the four triads violates the triangle rule or has a non-integer
/// sum; this is a value, not an error.
double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                HalfInteger j4, HalfInteger j5, HalfInteger j6);

/// True iff (a, b, c) couple: |a-b| <= c <= a+b and a+b+c integral.
bool triangle_ok(HalfInteger a, HalfInteger b, HalfInteger c);

} // namespace atomlight

#endif
