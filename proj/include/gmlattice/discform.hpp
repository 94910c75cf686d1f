#pragma once

// Discriminant groups L*/L of even lattices, their finite quadratic forms,
// and overlattices obtained by gluing along isotropic subgroups.

#include "gmlattice/lattice.hpp"

#include <utility>
#include <vector>

namespace gmlat {

/// L*/L as a product of cyclic groups Z/d_i (d_i > 1, d_1 | d_2 | ...).
/// Generator i is represented by a lift in L* (rational coordinates with
/// denominators dividing d_i).
struct DiscriminantData {
  IntMatrix gram;
  std::vector<Integer> invariant_factors;
  std::vector<RatVector> generators;
  /// q(g_i) in [0, 2).
  std::vector<Rational> qvalues;
  /// b(g_i, g_j) in [0, 1).
  RatMatrix bmatrix;

  Integer order() const;
  bool is_trivial() const { return invariant_factors.empty(); }
};

DiscriminantData discriminant_group(const GramLattice& lattice);

/// Orthogonal sum of two discriminant forms; lifts are concatenated.
DiscriminantData direct_sum(const DiscriminantData& a, const DiscriminantData& b);

/// q(x) = x^T G x mod 2 and b(x, y) = x^T G y mod 1 for dual elements.
Rational q_value(const IntMatrix& gram, const RatVector& x);
Rational b_value(const IntMatrix& gram, const RatVector& x, const RatVector& y);

/// True when G x is integral, i.e. x lies in the dual lattice.
bool in_dual(const IntMatrix& gram, const RatVector& x);

/// sum_i c_i g_i.
RatVector element(const DiscriminantData& form, const std::vector<Integer>& coefficients);

struct GlueData {
  GramLattice left;
  GramLattice right;
  /// Elements of d(left) + d(right), as pairs of dual lifts.
  std::vector<std::pair<RatVector, RatVector>> subgroup_gens;
};

/// Every generator has q = 0 mod 2 and every pair has b = 0 mod 1.
/// Throws invalid-element when a lift is not in the dual lattice.
bool check_isotropic(const GlueData& glue);

struct GlueResult {
  GramLattice lattice;
  /// Basis of the overlattice in rational coordinates of left + right.
  RatMatrix basis;
  /// [overlattice : left + right] = |H|.
  Integer index;
};

/// Overlattice of left + right generated by the glue lifts. Throws
/// glue-obstruction when the subgroup is not isotropic.
GlueResult glue(const GlueData& glue);

struct GlueExtensionReport {
  /// H = L / (S + K), as a subgroup of d(S) + d(K).
  GlueData glue;
  std::vector<Integer> glue_invariants;
  Integer glue_order;
  bool isotropic = false;
  Integer disc_order_s;
  Integer disc_order_k;
  Integer disc_order_l;
  /// |H^perp| counted inside d(S) + d(K).
  Integer perp_order;
  /// |d(L)| = |H^perp / H|.
  bool quotient_identity = false;
};

/// S and K are orthogonal sublattices of the same even lattice L with
/// S + K of finite index. Throws not-orthogonal when S . K != 0.
GlueExtensionReport glue_extension_check(const Sublattice& s, const Sublattice& k);

struct IsotropicSubgroup {
  /// Coefficients on the generators of the form, each 0 or d_i / 2.
  std::vector<Integer> coefficients;
  RatVector lift;
  /// |H^perp / H|.
  Integer quotient_order;
};

/// All isotropic subgroups of order 2, optionally keeping only those whose
/// quotient H^perp / H has the requested order.
std::vector<IsotropicSubgroup> isotropic_order_two_subgroups(const DiscriminantData& form,
                                                            const Integer& quotient_order = 0);

}  // namespace gmlat
