#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace digitlab {

// Arbitrary-precision signed integer: the coefficient ring for all exact work.
using Integer = boost::multiprecision::cpp_int;

// Same representation, used where values are nonnegative by contract
// (operands, digits, carries, digit sums, correction terms).
using Natural = Integer;

// b^e for machine-sized nonnegative exponents.
inline Integer ipow(Integer b, unsigned long long e) {
  Integer r = 1;
  while (e != 0) {
    if (e & 1u) r *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return r;
}

}  // namespace digitlab
