#pragma once

// Binary quadratic forms and Pell-type equations.

#include "gmlattice/integer.hpp"
#include "gmlattice/lattice.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gmlat {

/// a x^2 + b x y + c y^2.
struct BinaryForm {
  Integer a = 0;
  Integer b = 0;
  Integer c = 0;

  Integer discriminant() const { return b * b - 4 * a * c; }
  bool is_positive_definite() const { return discriminant() < 0 && a > 0; }
  /// |b| <= a <= c, and b >= 0 when |b| = a or a = c.
  bool is_reduced() const;
  Integer content() const { return gcd(gcd(a, b), c); }
  Integer operator()(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

std::string to_string(const BinaryForm& f);

/// Gram matrix [[2a, b], [b, 2c]] of the even lattice attached to f.
IntMatrix gram_of(const BinaryForm& f);

/// n^2 - m a^2 = c.
struct PellSolution {
  Integer n;
  Integer a;
  Integer m;
  Integer c;

  bool holds() const { return n * n - m * a * a == c; }
  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

struct ContinuedFraction {
  Integer a0;
  std::vector<Integer> period;
};

/// sqrt(m) = [a0; period, period, ...] with minimal period. Throws
/// square-input for perfect squares.
ContinuedFraction cf_sqrt(const Integer& m);

/// Fundamental solution of n^2 - m a^2 = -1, if solvable.
std::optional<PellSolution> negative_pell(const Integer& m);

/// Fundamental solution of n^2 - m a^2 = 1 for non-square m >= 2.
PellSolution pell_fundamental(const Integer& m);

/// One representative (n, a >= 0, smallest n in its class) of every class of
/// solutions of n^2 - m a^2 = c, sorted by n. Empty means unsolvable.
/// Perfect-square m is solved by factoring. Throws search-cap when |c|
/// exceeds `cap` or the solution space is out of reach.
std::vector<PellSolution> pell_general(const Integer& m, const Integer& c, const Integer& cap = 1000000);

struct FormReduction {
  BinaryForm form;
  /// g(x, y) = f(T (x, y)), det T = 1.
  IntMatrix transform;
};

/// Gauss reduction of a positive definite form. Throws unsupported-form
/// otherwise.
FormReduction reduce_form(const BinaryForm& f);

/// Some (x, y) with f(x, y) = value, searching x = 0, 1, 2, ... and
/// y = 0, 1, -1, 2, -2, ...; exhaustive, so nothing means not represented.
std::optional<std::pair<Integer, Integer>> represents(const BinaryForm& f, const Integer& value);

/// Sorted distinct values f(x, y) <= limit over (x, y) != (0, 0).
std::vector<Integer> represented_values(const BinaryForm& f, const Integer& limit);

struct PrimeRepresentation {
  Integer p;
  Integer x;
  Integer y;
};

struct PrimeSearch {
  SearchStatus status = SearchStatus::NotFoundWithinBound;
  std::optional<PrimeRepresentation> result;
  Integer cap;
};

/// Smallest prime p = 1 mod 4 represented by f, with p <= cap.
/// Throws imprimitive-form when gcd(a, b, c) > 1.
PrimeSearch find_prime_1mod4(const BinaryForm& f, const Integer& cap = 1000000);

bool is_prime(const Integer& n);

/// Prime factorization of |n|, n != 0, primes ascending.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

}  // namespace gmlat
