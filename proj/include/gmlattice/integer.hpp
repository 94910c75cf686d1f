#pragma once

// Exact scalar types used throughout the library, and the Eigen glue that
// lets them live inside dense matrices.

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

// Eigen expressions expose `const_iterator = void`, which breaks boost's
// byte-container probe during overload resolution.
namespace boost::multiprecision::detail {
template <class C>
  requires requires { typename C::StorageKind; typename C::StorageIndex; }
struct is_byte_container<C> : public boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace gmlat {

// Expression templates are disabled: Eigen's own expression machinery does
// not compose with boost's.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Integer coordinates relative to a lattice basis.
using LatticeVector = IntVector;

namespace detail {
template <typename T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}
}  // namespace detail

/// Nonnegative gcd. gcd(0, 0) = 0.
template <typename T>
T gcd(T a, T b) {
  a = detail::abs_value(a);
  b = detail::abs_value(b);
  while (b != T(0)) {
    T r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
template <typename T>
struct Bezout {
  T g, s, t;
};

template <typename T>
Bezout<T> extended_gcd(const T& a, const T& b) {
  T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != T(0)) {
    T q = old_r / r;
    T tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < T(0)) return {T(-old_r), T(-old_s), T(-old_t)};
  return {old_r, old_s, old_t};
}

/// Floor division for signed integers.
template <typename T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  T r = a % b;
  if (r != T(0) && ((r < T(0)) != (b < T(0)))) q -= 1;
  return q;
}

/// Least nonnegative residue.
template <typename T>
T mod_floor(const T& a, const T& m) {
  T r = a % m;
  if (r < T(0)) r += detail::abs_value(m);
  return r;
}

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

/// sqrt(n) if n is a perfect square, otherwise nothing.
std::optional<Integer> exact_sqrt(const Integer& n);

/// ceil(sqrt(n)) for n >= 0.
Integer isqrt_ceil(const Integer& n);

bool is_square(const Integer& n);

/// Reduce a rational into [0, modulus).
Rational reduce_mod(const Rational& x, const Integer& modulus);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Parses a decimal integer with optional sign; nothing on malformed input.
std::optional<Integer> parse_integer(const std::string& text);

/// Parses "p/q" or "p".
std::optional<Rational> parse_rational(const std::string& text);

Integer numerator_of(const Rational& x);
Integer denominator_of(const Rational& x);

}  // namespace gmlat

namespace Eigen {

template <>
struct NumTraits<gmlat::Integer> : GenericNumTraits<gmlat::Integer> {
  using Real = gmlat::Integer;
  using NonInteger = gmlat::Rational;
  using Literal = gmlat::Integer;
  using Nested = gmlat::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<gmlat::Rational> : GenericNumTraits<gmlat::Rational> {
  using Real = gmlat::Rational;
  using NonInteger = gmlat::Rational;
  using Literal = gmlat::Rational;
  using Nested = gmlat::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
