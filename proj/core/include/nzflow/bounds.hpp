#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nzflow {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent num/den with den > 0, kept unreduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  std::string str() const;
};

/// Smallest r >= 0 with r^degree >= value.
BigInt ceil_root(const BigInt& value, unsigned degree);

/// ceil(base^(e.num / e.den)); 1 whenever the exponent is not positive.
BigInt ceil_power(unsigned base, Rational e);

/// ceil(2^twos * 3^(threes_halves / 2)), both non-negative.
BigInt ceil_pow2_pow3_half(long long twos, long long threes_halves);

enum class BoundVariant {
  kZ6ThreeEdgeConnected,  // 2^(n/7)
  kZ6TwoEdgeConnected,    // 2^(2(m-n)/9)
  kZ6Dense,               // 2^(m - 3n/2)
  kZ6Cubic,               // 2^(n/5)
  kZ4,                    // 2^(n/250)
  kZ4Dense,               // 3^(m - 2n + 2)
  kTreePairs,             // 2^(n/12)
  kZ3,                    // 2^((n-2)/12)
};

/// Base and exponent of the guaranteed count for a variant.
struct BoundFormula {
  unsigned base;
  Rational exponent;
};
BoundFormula bound_formula(BoundVariant variant, int n, int m = 0);

/// Exact ceiling of the guaranteed count. The z3 variant needs n >= 2.
BigInt guaranteed_bound(BoundVariant variant, int n, int m = 0);

std::string to_string(BoundVariant variant);

}  // namespace nzflow
