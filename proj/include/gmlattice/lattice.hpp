#pragma once

// Integral lattices given by Gram matrices: construction, invariants,
// sublattice operations and bounded vector search.

#include "gmlattice/dense.hpp"
#include "gmlattice/integer.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gmlat {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long long>> rows);
LatticeVector int_vector(std::initializer_list<long long> coords);

/// Free Z-module with a symmetric integral bilinear form. Immutable.
class GramLattice {
 public:
  GramLattice() = default;
  explicit GramLattice(IntMatrix gram, std::string name = {});

  Eigen::Index rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  const Integer& determinant() const { return determinant_; }
  bool is_degenerate() const { return determinant_ == 0; }
  /// Diagonal entries all even.
  bool is_even() const;

  Integer pairing(const LatticeVector& u, const LatticeVector& v) const;
  Integer norm(const LatticeVector& v) const { return pairing(v, v); }
  /// Coordinates of G v, i.e. the pairings of v with the basis.
  LatticeVector pairings_with_basis(const LatticeVector& v) const;

  friend bool operator==(const GramLattice& a, const GramLattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_ = IntMatrix(0, 0);
  std::string name_;
  Integer determinant_ = 1;
};

GramLattice twist(const GramLattice& lattice, const Integer& factor);
GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice direct_sum(const std::vector<GramLattice>& parts);

enum class StandardName { U, E8, I, Lambda, LambdaTilde, LambdaTildeReversed };

/// Named lattices, with the form multiplied by `factor`:
///   U                    hyperbolic plane [[0,1],[1,0]]
///   E8                   positive definite, even, unimodular
///   I                    diag(1^positive, (-1)^negative)
///   Lambda               E8 + E8 + U + U + I(2,0)(2), rank 22
///   LambdaTilde          U^4 + E8(-1)^2, rank 24
///   LambdaTildeReversed  U^4 + E8^2, the previous one with reversed sign up to isometry
/// In LambdaTildeReversed, coordinates 2i and 2i+1 are the standard basis u_i, v_i
/// of the i-th copy of U.
GramLattice standard_lattice(StandardName name, const Integer& factor = 1, int positive = 0,
                             int negative = 0);

struct Signature {
  Eigen::Index positive = 0;
  Eigen::Index negative = 0;
  Eigen::Index null = 0;
  auto operator<=>(const Signature&) const = default;
};

Signature operator+(const Signature& a, const Signature& b);

/// Inertia from Descartes' rule on the exact characteristic polynomial.
Signature signature(const IntMatrix& symmetric);
inline Signature signature(const GramLattice& lattice) { return signature(lattice.gram()); }

inline const Integer& determinant(const GramLattice& lattice) { return lattice.determinant(); }

/// Z-span of independent vectors of an ambient lattice. Basis vectors are
/// the columns of `basis`, in ambient coordinates.
class Sublattice {
 public:
  Sublattice(GramLattice ambient, IntMatrix basis);
  static Sublattice from_vectors(GramLattice ambient, const std::vector<LatticeVector>& vectors);

  const GramLattice& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  Eigen::Index rank() const { return basis_.cols(); }
  LatticeVector vector(Eigen::Index i) const { return basis_.col(i); }

  /// B^T G B.
  IntMatrix induced_gram() const;
  GramLattice lattice(std::string name = {}) const { return GramLattice(induced_gram(), std::move(name)); }
  /// All invariant factors of the coordinate matrix equal 1.
  bool is_primitive() const;

 private:
  GramLattice ambient_;
  IntMatrix basis_;
};

/// {x in L : x . s = 0 for s in S}, returned with a Hermite-reduced basis.
/// The result is always primitive. For an isotropic S it contains S.
Sublattice orthogonal_complement(const Sublattice& sub);
Sublattice orthogonal_complement(const GramLattice& lattice, const Sublattice& sub);

struct Saturation {
  Sublattice lattice;
  /// [saturation : S]; det(S) = index^2 det(saturation).
  Integer index;
};

/// Primitive closure (Q-span intersected with the ambient lattice).
Saturation saturate(const Sublattice& sub);
Saturation saturate(const GramLattice& lattice, const Sublattice& sub);

/// All x with |x_i| <= bound and x^T G x = target, in lexicographic order.
std::vector<LatticeVector> enumerate_vectors(const GramLattice& lattice, const Integer& target,
                                             std::int64_t bound);

/// Same, with one bound per coordinate.
std::vector<LatticeVector> enumerate_vectors(const GramLattice& lattice, const Integer& target,
                                             const std::vector<std::int64_t>& bounds);

/// Search order used by the witness searches: by sup-norm shell, then
/// reverse-lexicographic inside a shell.
bool shell_order_less(const LatticeVector& a, const LatticeVector& b);

enum class SearchStatus { Found, NotFoundWithinBound, ProvenAbsent };
const char* to_string(SearchStatus status);

struct HyperbolicPlane {
  LatticeVector v;
  LatticeVector w;
};

struct HyperbolicSearch {
  SearchStatus status = SearchStatus::NotFoundWithinBound;
  std::optional<HyperbolicPlane> plane;
  std::int64_t bound = 0;
  /// Why the plane cannot exist, when status is ProvenAbsent.
  std::string certificate;
};

/// Looks for v, w with v^2 = w^2 = 0 and v . w = 1. The isotropic vector v
/// lies in the box; w is either an isotropic partner from the box or
/// u - (u^2/2) v for a box vector u with v . u = 1.
HyperbolicSearch find_hyperbolic_plane(const GramLattice& lattice, std::int64_t bound);

/// Exhaustive check for a primitive isotropic vector modulo small prime
/// powers. Returns a certificate string when none exists, which proves the
/// lattice has no nonzero isotropic vector.
std::optional<std::string> anisotropy_certificate(const GramLattice& lattice,
                                                  std::int64_t residue_budget = 200000);

enum class IsometryStatus { Found, ProvenNone, Inconclusive };
const char* to_string(IsometryStatus status);

struct IsometrySearch {
  IsometryStatus status = IsometryStatus::Inconclusive;
  /// T with T^T G1 T = G2.
  std::optional<IntMatrix> transform;
  std::string reason;
};

struct IsometryOptions {
  int rank_cap = 6;
  /// Box bound for indefinite forms; definite forms use exact bounds.
  std::int64_t indefinite_bound = 8;
  /// Refuse indefinite searches with |det| above this.
  Integer determinant_cap = 1000000;
};

/// Backtracking search for an isometry between small lattices. Exhaustive
/// for definite forms; bounded (and possibly inconclusive) otherwise.
IsometrySearch is_isometric_small(const GramLattice& first, const GramLattice& second,
                                  const IsometryOptions& options = {});

}  // namespace gmlat
