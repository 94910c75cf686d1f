#pragma once

// Arithmetic criteria on discriminants d of lattices carrying two orthogonal
// (-2)-classes, and the lattice witnesses behind each criterion.

#include "gmlattice/discform.hpp"
#include "gmlattice/lattice.hpp"
#include "gmlattice/pell_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmlat {

enum class DivisorLabel { Dd, DprimeUnion, Inadmissible };
const char* to_string(DivisorLabel label);
std::optional<DivisorLabel> parse_divisor_label(const std::string& text);

struct Admissibility {
  bool admissible = false;
  DivisorLabel label = DivisorLabel::Inadmissible;
};

/// d > 0 and d = 0, 2, 4 mod 8. d = 0 mod 4 gives D_d, d = 2 mod 8 the union
/// D_d' + D_d''.
Admissibility admissible(const Integer& d);

/// 8 does not divide d and every odd prime factor is 1 mod 4.
bool cond_star2(const Integer& d);

/// Every prime 3 mod 4 divides d to an even power.
bool cond_star2_twisted(const Integer& d);

/// Fundamental solution of n^2 - (d/2) a^2 = -1; then a^2 d = 2 n^2 + 2.
std::optional<PellSolution> cond_star3(const Integer& d);

struct TwistedWitness {
  Integer x;
  Integer y;
  Integer i;
};

/// 2 x^2 + 2 y^2 = i^2 d with 1 <= i <= bound minimal and 0 <= x <= y.
std::optional<TwistedWitness> twisted_witness(const Integer& d, const Integer& bound = 20);

enum class NormalFormKind {
  /// [[-2,0,1],[0,-2,0],[1,0,2k]], d = 2 + 8k
  FirstTwoModEight,
  /// [[-2,0,0],[0,-2,1],[0,1,2k]], d = 2 + 8k
  SecondTwoModEight,
  /// [[-2,0,1],[0,-2,1],[1,1,2k]], d = 4 + 8k
  FourModEight,
};

const char* to_string(NormalFormKind kind);

/// Gram matrix of the normal form of the given kind.
GramLattice normal_form_lattice(NormalFormKind kind, const Integer& k);

/// Normal-form lattice for an admissible d = 2 or 4 mod 8.
GramLattice normal_form_for(const Integer& d, NormalFormKind two_mod_eight = NormalFormKind::FirstTwoModEight);

struct NormalForm {
  /// Columns: lambda1, lambda2, tau~ in the input basis.
  IntMatrix transform;
  GramLattice standard;
  NormalFormKind kind = NormalFormKind::FirstTwoModEight;
  Integer k;
};

/// Input Gram [[-2,0,a],[0,-2,b],[a,b,c]] with c even and det = 2 or 4 mod 8.
/// Throws out-of-scope when det = 0 mod 8.
NormalForm labelling_normal_form(const IntMatrix& gram);

/// A lattice with two orthogonal classes lambda1, lambda2 of square -2
/// spanning a primitive sublattice. The reversed convention (squares +2)
/// is accepted and flagged.
class NeronSeveriModel {
 public:
  NeronSeveriModel(GramLattice lattice, LatticeVector lambda1, LatticeVector lambda2);
  /// lambda1 = e1, lambda2 = e2.
  static NeronSeveriModel standard(GramLattice lattice);

  const GramLattice& lattice() const { return lattice_; }
  const LatticeVector& lambda1() const { return lambda1_; }
  const LatticeVector& lambda2() const { return lambda2_; }
  bool reversed() const { return reversed_; }

 private:
  GramLattice lattice_;
  LatticeVector lambda1_;
  LatticeVector lambda2_;
  bool reversed_ = false;
};

struct Hilb2Witness {
  GramLattice lattice;
  NormalFormKind kind = NormalFormKind::FirstTwoModEight;
  PellSolution pell;
  /// Coordinates in the basis lambda1, lambda2, tau.
  LatticeVector w;
};

/// Isotropic w meeting lambda1 (or lambda2) with pairing 1, built from the
/// negative Pell solution for d / 2. Throws domain for inadmissible d.
std::optional<Hilb2Witness> hilb2_witness(const Integer& d,
                                          NormalFormKind two_mod_eight = NormalFormKind::FirstTwoModEight);

enum class MarkmanEmbedding { Lambda1, Lambda2 };

struct Hilb2Check {
  bool holds = false;
  Integer norm;
  Integer pairing1;
  Integer pairing2;
  /// det <lambda1, lambda2, w>
  Integer determinant;
};

/// w^2 = 0 and |lambda . w| = 1 for the lambda picked by the embedding.
Hilb2Check hilb2_criterion(const NeronSeveriModel& model, const LatticeVector& w,
                           MarkmanEmbedding embedding = MarkmanEmbedding::Lambda1);

struct QFormAnalysis {
  Integer k, l, m, n;
  Integer A, B, C;
  Integer h;
  BinaryForm q;

  /// Q(x, y) = A x^2 + B x y + C y^2.
  Integer Q(const Integer& x, const Integer& y) const { return A * x * x + B * x * y + C * y * y; }
};

/// Rank-4 lattice [[-2,0,k,m],[0,-2,l,n],[k,l,0,1],[m,n,1,0]].
IntMatrix rank4_gram(const Integer& k, const Integer& l, const Integer& m, const Integer& n);

/// det of <lambda1, lambda2, x kappa1 + y kappa2> computed from the 3x3 Gram.
Integer labelling_determinant(const Integer& k, const Integer& l, const Integer& m, const Integer& n,
                              const Integer& x, const Integer& y);

/// Throws std::logic_error if the identity Q = h q fails to match the
/// direct determinant.
QFormAnalysis qform_rank4(const Integer& k, const Integer& l, const Integer& m, const Integer& n);

enum class CheckStatus { Pass, Fail, HypothesisNotMet, NotPositiveDefinite, BoundExhausted };
const char* to_string(CheckStatus status);

struct LemmaReport {
  bool all_even = false;
  /// Odd primes dividing h are 1 mod 4.
  CheckStatus h_odd_primes = CheckStatus::Fail;
  /// 8 does not divide h.
  CheckStatus h_not_div_8 = CheckStatus::Fail;
  /// a, c != 3 mod 4.
  CheckStatus ac_not_3_mod_4 = CheckStatus::Fail;
  CheckStatus b_even = CheckStatus::Fail;
  CheckStatus prime_1_mod_4 = CheckStatus::Fail;
  std::optional<PrimeRepresentation> prime;
  Integer prime_cap;
};

LemmaReport lemma_checks(const QFormAnalysis& qa, const Integer& prime_cap = 1000000);

struct K3Witness {
  SearchStatus status = SearchStatus::NotFoundWithinBound;
  std::int64_t bound = 0;
  std::string certificate;
  /// Rank 3: the hyperbolic plane and the generator of its complement.
  std::optional<HyperbolicPlane> plane;
  std::optional<LatticeVector> complement_gen;
  Integer complement_norm;
  /// Rank 4: the form analysis and a labelling with (**).
  std::optional<QFormAnalysis> qform;
  std::optional<LemmaReport> lemmas;
  std::optional<std::pair<Integer, Integer>> labelling;
  Integer labelling_disc;
  Integer labelling_index;
};

/// Rank 3: hyperbolic plane search. Rank 4 (basis lambda1, lambda2, kappa1,
/// kappa2 with <kappa1, kappa2> = U): search of a saturated labelling
/// <lambda1, lambda2, x kappa1 + y kappa2> whose discriminant satisfies (**).
K3Witness k3_witness(const NeronSeveriModel& model, std::int64_t bound = 20);

struct CounterexampleReport {
  Integer n;
  GramLattice lattice;
  LatticeVector kappa1;
  LatticeVector kappa2;
  bool spans_u = false;
  /// -Q / 8
  BinaryForm form;
  bool identity_holds = false;
  FormReduction reduction;
  std::optional<std::pair<Integer, Integer>> represents_one;
  std::optional<std::pair<Integer, Integer>> represents_one_in_scan;
  std::int64_t bound = 0;
  Integer min_abs_disc;
  bool all_discs_0_mod_8 = false;
  bool in_d8 = false;
};

CounterexampleReport counterexample_family(const Integer& n, std::int64_t bound = 30);

struct GeneralCounterexampleReport {
  Integer k, l, m, n;
  GramLattice lattice;
  LatticeVector kappa1;
  LatticeVector kappa2;
  bool spans_u = false;
  IntMatrix kappa_basis_gram;
  bool basis_gram_matches = false;
  bool pairings_even = false;
  std::int64_t bound = 0;
  std::int64_t scanned = 0;
  bool all_discs_0_mod_8 = false;
  std::optional<std::pair<Integer, Integer>> violation;
};

/// Throws hypothesis for (k, l) in {(1, 0), (0, 1)}.
GeneralCounterexampleReport counterexample_general(const Integer& k, const Integer& l, const Integer& m,
                                                   const Integer& n, std::int64_t bound = 20);

struct DMCheck {
  Integer d;
  std::optional<PellSolution> negative;
  std::vector<PellSolution> five;
  std::optional<bool> isomorphic;
};

/// nothing when n^2 - (d/2) a^2 = -1 is unsolvable, otherwise whether
/// n^2 - 2d a^2 = 5 is unsolvable.
DMCheck dm_isomorphism_check(const Integer& d);

struct MukaiModel {
  GramLattice ambient;
  Sublattice lambda;
  Sublattice complement;
};

/// lambda1 = u1 - v1, lambda2 = u2 - v2 in U^4 + E8^2 and their complement.
MukaiModel mukai_model();

struct Hilb2Record {
  IntMatrix gram;
  LatticeVector w;
};

struct K3Record {
  LatticeVector v;
  LatticeVector w;
  LatticeVector complement_gen;
};

struct DivisorReport {
  Integer d;
  bool admissible = false;
  DivisorLabel divisor = DivisorLabel::Inadmissible;
  bool star2 = false;
  bool star2_twisted = false;
  std::optional<PellSolution> star3;
  std::optional<bool> dm_isomorphic;
  std::optional<TwistedWitness> twisted;
  std::optional<Hilb2Record> hilb2;
  std::optional<K3Record> k3;
  /// Set when the k3 search ran.
  std::optional<SearchStatus> k3_status;
  std::int64_t bound = 20;

  friend bool operator==(const DivisorReport&, const DivisorReport&);
};

struct ClassifyOptions {
  std::int64_t bound = 20;
  /// Run the hyperbolic-plane search on the normal-form labelling.
  bool k3 = false;
};

DivisorReport classify(const Integer& d, const ClassifyOptions& options = {});

}  // namespace gmlat
