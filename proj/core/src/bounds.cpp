#include "nzflow/bounds.hpp"

#include "nzflow/errors.hpp"

namespace nzflow {

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

BigInt ceil_root(const BigInt& value, unsigned degree) {
  if (degree == 0) throw PreconditionError("root degree must be positive");
  if (value <= 1) return value < 0 ? BigInt(0) : value;
  // Binary search on [1, 2^(bits/degree + 1)].
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
  BigInt lo = 1;
  BigInt hi = BigInt(1) << (bits / degree + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, degree) >= value) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BigInt ceil_power(unsigned base, Rational e) {
  if (e.den <= 0) throw PreconditionError("exponent denominator must be positive");
  if (e.num <= 0) return 1;
  const BigInt value = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e.num));
  return ceil_root(value, static_cast<unsigned>(e.den));
}

BigInt ceil_pow2_pow3_half(long long twos, long long threes_halves) {
  if (twos < 0 || threes_halves < 0) throw PreconditionError("exponents must be non-negative");
  const BigInt value = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(twos)) *
                       boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(threes_halves));
  return ceil_root(value, 2);
}

BoundFormula bound_formula(BoundVariant variant, int n, int m) {
  switch (variant) {
    case BoundVariant::kZ6ThreeEdgeConnected:
      return {2, {n, 7}};
    case BoundVariant::kZ6TwoEdgeConnected:
      return {2, {2LL * (m - n), 9}};
    case BoundVariant::kZ6Dense:
      return {2, {2LL * m - 3LL * n, 2}};
    case BoundVariant::kZ6Cubic:
      return {2, {n, 5}};
    case BoundVariant::kZ4:
      return {2, {n, 250}};
    case BoundVariant::kZ4Dense:
      return {3, {static_cast<long long>(m) - 2LL * n + 2, 1}};
    case BoundVariant::kTreePairs:
      return {2, {n, 12}};
    case BoundVariant::kZ3:
      if (n < 2) throw PreconditionError("the z3 bound needs n >= 2");
      return {2, {n - 2, 12}};
  }
  throw PreconditionError("unknown bound variant");
}

BigInt guaranteed_bound(BoundVariant variant, int n, int m) {
  const BoundFormula f = bound_formula(variant, n, m);
  return ceil_power(f.base, f.exponent);
}

std::string to_string(BoundVariant variant) {
  switch (variant) {
    case BoundVariant::kZ6ThreeEdgeConnected:
      return "z6-3ec";
    case BoundVariant::kZ6TwoEdgeConnected:
      return "z6-2ec";
    case BoundVariant::kZ6Dense:
      return "z6-dense";
    case BoundVariant::kZ6Cubic:
      return "z6-cubic";
    case BoundVariant::kZ4:
      return "z4";
    case BoundVariant::kZ4Dense:
      return "z4-dense";
    case BoundVariant::kTreePairs:
      return "tree-pairs";
    case BoundVariant::kZ3:
      return "z3";
  }
  return "?";
}

}  // namespace nzflow
