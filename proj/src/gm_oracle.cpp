#include "gmlattice/gm_oracle.hpp"

#include "gmlattice/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmlat {

const char* to_string(DivisorLabel label) {
  switch (label) {
    case DivisorLabel::Dd: return "D_d";
    case DivisorLabel::DprimeUnion: return "Dprime_union";
    case DivisorLabel::Inadmissible: return "inadmissible";
  }
  return "unknown";
}

std::optional<DivisorLabel> parse_divisor_label(const std::string& text) {
  for (auto label : {DivisorLabel::Dd, DivisorLabel::DprimeUnion, DivisorLabel::Inadmissible}) {
    if (text == to_string(label)) return label;
  }
  return std::nullopt;
}

Admissibility admissible(const Integer& d) {
  if (d <= 0) return {};
  const Integer r = d % 8;
  if (r == 0 || r == 4) return {true, DivisorLabel::Dd};
  if (r == 2) return {true, DivisorLabel::DprimeUnion};
  return {};
}

bool cond_star2(const Integer& d) {
  if (d <= 0) throw LatticeError(ErrorKind::Domain, "condition (**) needs d > 0");
  if (d % 8 == 0) return false;
  for (const auto& [p, e] : factorize(d)) {
    if (p != 2 && p % 4 != 1) return false;
  }
  return true;
}

bool cond_star2_twisted(const Integer& d) {
  if (d <= 0) throw LatticeError(ErrorKind::Domain, "condition (**') needs d > 0");
  for (const auto& [p, e] : factorize(d)) {
    if (p % 4 == 3 && e % 2 == 1) return false;
  }
  return true;
}

std::optional<PellSolution> cond_star3(const Integer& d) {
  if (d <= 0 || d % 2 != 0) throw LatticeError(ErrorKind::Domain, "condition (***) needs an even d > 0");
  auto sol = negative_pell(d / 2);
  if (sol && sol->a * sol->a * d != 2 * sol->n * sol->n + 2) {
    throw std::logic_error("negative Pell solution does not satisfy a^2 d = 2 n^2 + 2");
  }
  return sol;
}

std::optional<TwistedWitness> twisted_witness(const Integer& d, const Integer& bound) {
  if (d <= 0) return std::nullopt;
  for (Integer i = 1; i <= bound; ++i) {
    const Integer total = i * i * d;
    if (total % 2 != 0) continue;
    const Integer half = total / 2;
    for (Integer x = 0; 2 * x * x <= half; ++x) {
      if (auto y = exact_sqrt(half - x * x)) return TwistedWitness{x, *y, i};
    }
  }
  return std::nullopt;
}

const char* to_string(NormalFormKind kind) {
  switch (kind) {
    case NormalFormKind::FirstTwoModEight: return "2-mod-8-first";
    case NormalFormKind::SecondTwoModEight: return "2-mod-8-second";
    case NormalFormKind::FourModEight: return "4-mod-8";
  }
  return "unknown";
}

GramLattice normal_form_lattice(NormalFormKind kind, const Integer& k) {
  IntMatrix g = IntMatrix::Zero(3, 3);
  g(0, 0) = -2;
  g(1, 1) = -2;
  g(2, 2) = 2 * k;
  if (kind != NormalFormKind::SecondTwoModEight) g(0, 2) = g(2, 0) = 1;
  if (kind != NormalFormKind::FirstTwoModEight) g(1, 2) = g(2, 1) = 1;
  return GramLattice(std::move(g));
}

GramLattice normal_form_for(const Integer& d, NormalFormKind two_mod_eight) {
  if (d <= 0) throw LatticeError(ErrorKind::Domain, "normal forms need d > 0");
  if (d % 8 == 2) {
    if (two_mod_eight == NormalFormKind::FourModEight) {
      throw LatticeError(ErrorKind::InvalidInput, "d = 2 mod 8 needs a 2-mod-8 normal form");
    }
    return normal_form_lattice(two_mod_eight, (d - 2) / 8);
  }
  if (d % 8 == 4) return normal_form_lattice(NormalFormKind::FourModEight, (d - 4) / 8);
  throw LatticeError(ErrorKind::OutOfScope, "normal forms exist for d = 2 or 4 mod 8 only");
}

NormalForm labelling_normal_form(const IntMatrix& gram) {
  if (gram.rows() != 3 || gram.cols() != 3 || gram(0, 0) != -2 || gram(1, 1) != -2 || gram(0, 1) != 0 ||
      gram(1, 0) != 0) {
    throw LatticeError(ErrorKind::InvalidInput, "expected a Gram [[-2,0,a],[0,-2,b],[a,b,c]]");
  }
  const GramLattice input(gram);
  const Integer a = gram(0, 2);
  const Integer b = gram(1, 2);
  if (gram(2, 2) % 2 != 0) throw LatticeError(ErrorKind::InvalidInput, "c must be even");
  const Integer d = input.determinant();
  const Integer r = mod_floor(d, Integer(8));
  if (r == 0) throw LatticeError(ErrorKind::OutOfScope, "det = 0 mod 8 is outside the normal-form lemma");
  if (r != 2 && r != 4) throw LatticeError(ErrorKind::InvalidInput, "det must be 2 or 4 mod 8");

  // tau~ = t1 lambda1 + t2 lambda2 + sign tau
  Integer t1 = 0, t2 = 0, sign = 1;
  auto split = [](const Integer& x, Integer& hat) {
    // x = 4 hat + e with e = +-1
    const Integer e = mod_floor(x, Integer(4)) == 1 ? Integer(1) : Integer(-1);
    hat = (x - e) / 4;
    return e;
  };
  NormalForm out;
  if (r == 2) {
    const bool first = a % 2 != 0;
    const Integer& odd = first ? a : b;
    const Integer& even = first ? b : a;
    Integer hat;
    const Integer e = split(odd, hat);
    Integer& t_even = first ? t2 : t1;
    Integer& t_odd = first ? t1 : t2;
    t_even = even / 2;
    t_odd = 2 * hat;
    if (e == -1) {
      sign = -1;
      t1 = -t1;
      t2 = -t2;
    }
    out.kind = first ? NormalFormKind::FirstTwoModEight : NormalFormKind::SecondTwoModEight;
  } else {
    Integer hat1, hat2;
    const Integer e1 = split(a, hat1);
    Integer e2 = split(b, hat2);
    t1 = 2 * hat1;
    t2 = 2 * hat2;
    if (e1 == -1) {
      sign = -1;
      t1 = -t1;
      t2 = -t2;
      e2 = -e2;
    }
    // A remaining pairing -1 with lambda2 is fixed by subtracting lambda2.
    if (e2 == -1) t2 -= 1;
    out.kind = NormalFormKind::FourModEight;
  }
  out.transform = IntMatrix::Identity(3, 3);
  out.transform(0, 2) = t1;
  out.transform(1, 2) = t2;
  out.transform(2, 2) = sign;
  IntMatrix standard = out.transform.transpose() * gram * out.transform;
  out.k = standard(2, 2) / 2;
  out.standard = GramLattice(std::move(standard));
  if (!(out.standard == normal_form_lattice(out.kind, out.k)) || out.standard.determinant() != d) {
    throw std::logic_error("normal form reduction produced an unexpected Gram matrix");
  }
  return out;
}

NeronSeveriModel::NeronSeveriModel(GramLattice lattice, LatticeVector lambda1, LatticeVector lambda2)
    : lattice_(std::move(lattice)), lambda1_(std::move(lambda1)), lambda2_(std::move(lambda2)) {
  if (lattice_.rank() < 2 || lattice_.rank() > 4) {
    throw LatticeError(ErrorKind::UnsupportedRank, "models have rank 2 to 4");
  }
  if (!lattice_.is_even()) throw LatticeError(ErrorKind::InvalidInput, "model lattice must be even");
  if (lambda1_.size() != lattice_.rank() || lambda2_.size() != lattice_.rank()) {
    throw LatticeError(ErrorKind::InvalidInput, "lambda vectors do not match the lattice rank");
  }
  const Integer n1 = lattice_.norm(lambda1_);
  const Integer n2 = lattice_.norm(lambda2_);
  if (lattice_.pairing(lambda1_, lambda2_) != 0 || n1 != n2 || (n1 != -2 && n1 != 2)) {
    throw LatticeError(ErrorKind::InvalidInput, "lambda1, lambda2 must have Gram diag(-2,-2)");
  }
  reversed_ = n1 == 2;
  if (!Sublattice::from_vectors(lattice_, {lambda1_, lambda2_}).is_primitive()) {
    throw LatticeError(ErrorKind::InvalidInput, "<lambda1, lambda2> must be primitive");
  }
}

NeronSeveriModel NeronSeveriModel::standard(GramLattice lattice) {
  const Eigen::Index n = lattice.rank();
  LatticeVector e1 = LatticeVector::Zero(n);
  LatticeVector e2 = LatticeVector::Zero(n);
  if (n >= 2) {
    e1(0) = 1;
    e2(1) = 1;
  }
  return NeronSeveriModel(std::move(lattice), std::move(e1), std::move(e2));
}

std::optional<Hilb2Witness> hilb2_witness(const Integer& d, NormalFormKind two_mod_eight) {
  if (!admissible(d).admissible) throw LatticeError(ErrorKind::Domain, "d is not admissible");
  auto pell = cond_star3(d);
  if (!pell) return std::nullopt;
  if (d % 8 == 0) throw std::logic_error("(***) cannot hold for d = 0 mod 8");
  const Integer& n = pell->n;
  const Integer& a = pell->a;
  Hilb2Witness out;
  out.pell = *pell;
  LatticeVector w(3);
  if (d % 8 == 2) {
    out.kind = two_mod_eight == NormalFormKind::SecondTwoModEight ? two_mod_eight
                                                                   : NormalFormKind::FirstTwoModEight;
    if (out.kind == NormalFormKind::FirstTwoModEight) {
      w << (a - 1) / 2, n / 2, a;
    } else {
      w << n / 2, (a - 1) / 2, a;
    }
  } else {
    out.kind = NormalFormKind::FourModEight;
    w << (a - 1) / 2, (a - n) / 2, a;
  }
  out.lattice = normal_form_for(d, out.kind);
  out.w = std::move(w);
  return out;
}

Hilb2Check hilb2_criterion(const NeronSeveriModel& model, const LatticeVector& w, MarkmanEmbedding embedding) {
  const GramLattice& lattice = model.lattice();
  if (w.size() != lattice.rank()) throw LatticeError(ErrorKind::InvalidInput, "w does not match the lattice rank");
  Hilb2Check out;
  out.norm = lattice.norm(w);
  out.pairing1 = lattice.pairing(model.lambda1(), w);
  out.pairing2 = lattice.pairing(model.lambda2(), w);
  const Integer& chosen = embedding == MarkmanEmbedding::Lambda1 ? out.pairing1 : out.pairing2;
  out.holds = out.norm == 0 && detail::abs_value(chosen) == 1;
  IntMatrix k(3, 3);
  k << lattice.norm(model.lambda1()), 0, out.pairing1, 0, lattice.norm(model.lambda2()), out.pairing2, out.pairing1,
      out.pairing2, out.norm;
  out.determinant = determinant(k);
  return out;
}

IntMatrix rank4_gram(const Integer& k, const Integer& l, const Integer& m, const Integer& n) {
  IntMatrix g(4, 4);
  g << -2, 0, k, m, 0, -2, l, n, k, l, 0, 1, m, n, 1, 0;
  return g;
}

Integer labelling_determinant(const Integer& k, const Integer& l, const Integer& m, const Integer& n,
                              const Integer& x, const Integer& y) {
  const GramLattice lattice(rank4_gram(k, l, m, n));
  // Columns e1, e2, x kappa1 + y kappa2; dependent at (0, 0), so no Sublattice.
  IntMatrix basis = IntMatrix::Zero(4, 3);
  basis(0, 0) = 1;
  basis(1, 1) = 1;
  basis(2, 2) = x;
  basis(3, 2) = y;
  return determinant(IntMatrix(basis.transpose() * lattice.gram() * basis));
}

QFormAnalysis qform_rank4(const Integer& k, const Integer& l, const Integer& m, const Integer& n) {
  QFormAnalysis qa{k, l, m, n, 0, 0, 0, 0, {}};
  qa.A = 2 * k * k + 2 * l * l;
  qa.B = 8 + 4 * k * m + 4 * l * n;
  qa.C = 2 * m * m + 2 * n * n;
  qa.h = gcd(gcd(qa.A, qa.B), qa.C);
  qa.q = {qa.A / qa.h, qa.B / qa.h, qa.C / qa.h};
  // A quadratic form is fixed by its values at (1,0), (0,1), (1,1).
  for (const auto& [x, y] : {std::pair<int, int>{1, 0}, {0, 1}, {1, 1}}) {
    if (qa.h * qa.q(x, y) != labelling_determinant(k, l, m, n, x, y)) {
      throw std::logic_error("Q(x, y) disagrees with the labelling determinant");
    }
  }
  return qa;
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::HypothesisNotMet: return "hypothesis-not-met";
    case CheckStatus::NotPositiveDefinite: return "not-positive-definite";
    case CheckStatus::BoundExhausted: return "bound-exhausted";
  }
  return "unknown";
}

LemmaReport lemma_checks(const QFormAnalysis& qa, const Integer& prime_cap) {
  LemmaReport out;
  out.prime_cap = prime_cap;
  out.all_even = qa.k % 2 == 0 && qa.l % 2 == 0 && qa.m % 2 == 0 && qa.n % 2 == 0;
  auto pass_if = [](bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; };

  bool odd_ok = true;
  for (const auto& [p, e] : factorize(qa.h)) {
    if (p != 2 && p % 4 != 1) odd_ok = false;
  }
  out.h_odd_primes = pass_if(odd_ok);
  const Integer a4 = mod_floor(qa.q.a, Integer(4));
  const Integer c4 = mod_floor(qa.q.c, Integer(4));
  out.ac_not_3_mod_4 = pass_if(a4 != 3 && c4 != 3);
  if (out.all_even) {
    out.h_not_div_8 = CheckStatus::HypothesisNotMet;
    out.b_even = CheckStatus::HypothesisNotMet;
    out.prime_1_mod_4 = CheckStatus::HypothesisNotMet;
    return out;
  }
  out.h_not_div_8 = pass_if(qa.h % 8 != 0);
  out.b_even = pass_if(qa.q.b % 2 == 0);
  if (!qa.q.is_positive_definite()) {
    out.prime_1_mod_4 = CheckStatus::NotPositiveDefinite;
    return out;
  }
  const PrimeSearch search = find_prime_1mod4(qa.q, prime_cap);
  if (search.result) {
    out.prime_1_mod_4 = CheckStatus::Pass;
    out.prime = search.result;
  } else {
    out.prime_1_mod_4 = CheckStatus::BoundExhausted;
  }
  return out;
}

namespace {

LatticeVector unit_vector(Eigen::Index n, Eigen::Index i) {
  LatticeVector e = LatticeVector::Zero(n);
  e(i) = 1;
  return e;
}

// Nonzero (x, y) in the box, one of each +- pair, in search order.
std::vector<LatticeVector> plane_candidates(std::int64_t bound) {
  std::vector<LatticeVector> out;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    for (std::int64_t y = -bound; y <= bound; ++y) {
      if (x > 0 || (x == 0 && y > 0)) {
        LatticeVector v(2);
        v << x, y;
        out.push_back(std::move(v));
      }
    }
  }
  std::sort(out.begin(), out.end(), shell_order_less);
  return out;
}

}  // namespace

K3Witness k3_witness(const NeronSeveriModel& model, std::int64_t bound) {
  const GramLattice& lattice = model.lattice();
  const Eigen::Index rank = lattice.rank();
  if (rank != 3 && rank != 4) throw LatticeError(ErrorKind::UnsupportedRank, "k3 witness needs rank 3 or 4");
  K3Witness out;
  out.bound = bound;
  if (rank == 3) {
    const HyperbolicSearch search = find_hyperbolic_plane(lattice, bound);
    out.status = search.status;
    out.certificate = search.certificate;
    if (search.plane) {
      out.plane = search.plane;
      const Sublattice u = Sublattice::from_vectors(lattice, {search.plane->v, search.plane->w});
      const Sublattice perp = orthogonal_complement(u);
      out.complement_gen = perp.vector(0);
      out.complement_norm = lattice.norm(*out.complement_gen);
    }
    return out;
  }

  const IntMatrix& g = lattice.gram();
  const bool shaped = g(0, 0) == -2 && g(1, 1) == -2 && g(0, 1) == 0 && g(2, 2) == 0 && g(3, 3) == 0 &&
                      g(2, 3) == 1 && model.lambda1() == unit_vector(4, 0) && model.lambda2() == unit_vector(4, 1);
  if (!shaped) {
    throw LatticeError(ErrorKind::InvalidInput,
                       "rank-4 models must use the basis lambda1, lambda2, kappa1, kappa2 with <kappa1, kappa2> = U");
  }
  out.qform = qform_rank4(g(0, 2), g(1, 2), g(0, 3), g(1, 3));
  out.lemmas = lemma_checks(*out.qform);
  for (const auto& xy : plane_candidates(bound)) {
    LatticeVector tau = LatticeVector::Zero(4);
    tau(2) = xy(0);
    tau(3) = xy(1);
    const Sublattice labelling = Sublattice::from_vectors(lattice, {unit_vector(4, 0), unit_vector(4, 1), tau});
    const Saturation sat = saturate(labelling);
    const Integer disc = sat.lattice.lattice().determinant();
    if (disc <= 0 || !admissible(disc).admissible || !cond_star2(disc)) continue;
    out.status = SearchStatus::Found;
    out.labelling = std::make_pair(Integer(xy(0)), Integer(xy(1)));
    out.labelling_disc = disc;
    out.labelling_index = sat.index;
    return out;
  }
  out.status = SearchStatus::NotFoundWithinBound;
  return out;
}

CounterexampleReport counterexample_family(const Integer& n, std::int64_t bound) {
  if (n < 0) throw LatticeError(ErrorKind::Domain, "the family is indexed by n >= 0");
  CounterexampleReport out;
  out.n = n;
  out.bound = bound;
  IntMatrix g(4, 4);
  g << 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, -4, -1 - 2 * n, 0, 0, -1 - 2 * n, -2 * (1 + n * n);
  out.lattice = GramLattice(std::move(g));
  out.kappa1 = LatticeVector(4);
  out.kappa1 << 1, 1, 1, 0;
  out.kappa2 = LatticeVector(4);
  out.kappa2 << 1, n, 0, 1;
  const GramLattice& lattice = out.lattice;
  out.spans_u = lattice.norm(out.kappa1) == 0 && lattice.norm(out.kappa2) == 0 &&
                lattice.pairing(out.kappa1, out.kappa2) == 1;
  out.form = {2, Integer(1 + 2 * n), Integer(1 + n * n)};
  out.reduction = reduce_form(out.form);
  out.represents_one = represents(out.form, 1);

  out.identity_holds = true;
  out.all_discs_0_mod_8 = true;
  bool have_min = false;
  const LatticeVector e1 = unit_vector(4, 0), e2 = unit_vector(4, 1);
  for (const auto& xy : plane_candidates(bound)) {
    const Integer x = xy(0), y = xy(1);
    const LatticeVector tau = x * out.kappa1 + y * out.kappa2;
    const Integer det = determinant(Sublattice::from_vectors(lattice, {e1, e2, tau}).induced_gram());
    if (det != -8 * out.form(x, y)) out.identity_holds = false;
    if (out.form(x, y) == 1 && !out.represents_one_in_scan) out.represents_one_in_scan = std::make_pair(x, y);
    if (gcd(x, y) != 1) continue;
    // For primitive (x, y) the labelling is already saturated.
    const Integer disc = detail::abs_value(det);
    if (disc % 8 != 0) out.all_discs_0_mod_8 = false;
    if (!have_min || disc < out.min_abs_disc) {
      out.min_abs_disc = disc;
      have_min = true;
    }
  }
  out.in_d8 = n == 0 || n == 1;
  return out;
}

GeneralCounterexampleReport counterexample_general(const Integer& k, const Integer& l, const Integer& m,
                                                   const Integer& n, std::int64_t bound) {
  if ((k == 1 && l == 0) || (k == 0 && l == 1)) {
    throw LatticeError(ErrorKind::Hypothesis, "(k, l) must not be (1, 0) or (0, 1)");
  }
  GeneralCounterexampleReport out;
  out.k = k;
  out.l = l;
  out.m = m;
  out.n = n;
  out.bound = bound;
  const Integer off = 1 - 2 * k * m - 2 * l * n;
  IntMatrix g(4, 4);
  g << 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, -2 * (k * k + l * l), off, 0, 0, off, -2 * (m * m + n * n);
  out.lattice = GramLattice(std::move(g));
  out.kappa1 = LatticeVector(4);
  out.kappa1 << k, l, 1, 0;
  out.kappa2 = LatticeVector(4);
  out.kappa2 << m, n, 0, 1;
  const GramLattice& lattice = out.lattice;
  out.spans_u = lattice.norm(out.kappa1) == 0 && lattice.norm(out.kappa2) == 0 &&
                lattice.pairing(out.kappa1, out.kappa2) == 1;
  const LatticeVector e1 = unit_vector(4, 0), e2 = unit_vector(4, 1);
  const Sublattice kappa_basis = Sublattice::from_vectors(lattice, {e1, e2, out.kappa1, out.kappa2});
  out.kappa_basis_gram = kappa_basis.induced_gram();
  IntMatrix expected(4, 4);
  expected << 2, 0, 2 * k, 2 * m, 0, 2, 2 * l, 2 * n, 2 * k, 2 * l, 0, 1, 2 * m, 2 * n, 1, 0;
  out.basis_gram_matches = out.kappa_basis_gram == expected;
  out.pairings_even = true;
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 2; j < 4; ++j) {
      if (out.kappa_basis_gram(i, j) % 2 != 0) out.pairings_even = false;
    }
  }

  out.all_discs_0_mod_8 = true;
  for (const auto& ab : plane_candidates(bound)) {
    const Integer a = ab(0), b = ab(1);
    if (gcd(a, b) != 1) continue;
    const LatticeVector tau = a * out.kappa1 + b * out.kappa2;
    const Integer det = determinant(Sublattice::from_vectors(lattice, {e1, e2, tau}).induced_gram());
    ++out.scanned;
    if (det % 8 != 0) {
      out.all_discs_0_mod_8 = false;
      if (!out.violation) out.violation = std::make_pair(a, b);
    }
  }
  return out;
}

DMCheck dm_isomorphism_check(const Integer& d) {
  if (d <= 0 || d % 2 != 0) throw LatticeError(ErrorKind::Domain, "the isomorphism criterion needs an even d > 0");
  DMCheck out;
  out.d = d;
  out.negative = negative_pell(d / 2);
  out.five = pell_general(2 * d, 5);
  if (out.negative) out.isomorphic = out.five.empty();
  return out;
}

MukaiModel mukai_model() {
  const GramLattice ambient = standard_lattice(StandardName::LambdaTildeReversed);
  LatticeVector l1 = LatticeVector::Zero(24), l2 = LatticeVector::Zero(24);
  l1(0) = 1;
  l1(1) = -1;
  l2(2) = 1;
  l2(3) = -1;
  Sublattice lambda = Sublattice::from_vectors(ambient, {l1, l2});
  Sublattice complement = orthogonal_complement(lambda);
  return {ambient, std::move(lambda), std::move(complement)};
}

namespace {

bool same(const std::optional<TwistedWitness>& a, const std::optional<TwistedWitness>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->x == b->x && a->y == b->y && a->i == b->i);
}

bool same(const std::optional<Hilb2Record>& a, const std::optional<Hilb2Record>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->gram == b->gram && a->w == b->w);
}

bool same(const std::optional<K3Record>& a, const std::optional<K3Record>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->v == b->v && a->w == b->w && a->complement_gen == b->complement_gen);
}

}  // namespace

bool operator==(const DivisorReport& a, const DivisorReport& b) {
  return a.d == b.d && a.admissible == b.admissible && a.divisor == b.divisor && a.star2 == b.star2 &&
         a.star2_twisted == b.star2_twisted && a.star3 == b.star3 && a.dm_isomorphic == b.dm_isomorphic &&
         same(a.twisted, b.twisted) && same(a.hilb2, b.hilb2) && same(a.k3, b.k3) && a.k3_status == b.k3_status &&
         a.bound == b.bound;
}

DivisorReport classify(const Integer& d, const ClassifyOptions& options) {
  DivisorReport r;
  r.d = d;
  r.bound = options.bound;
  const Admissibility adm = admissible(d);
  r.admissible = adm.admissible;
  r.divisor = adm.label;
  if (d <= 0) return r;
  r.star2 = cond_star2(d);
  r.star2_twisted = cond_star2_twisted(d);
  r.twisted = twisted_witness(d);
  if (d % 2 == 0) {
    r.star3 = cond_star3(d);
    r.dm_isomorphic = dm_isomorphism_check(d).isomorphic;
  }
  if ((r.star3 && !r.star2) || (r.star2 && !r.star2_twisted)) {
    throw std::logic_error("implication chain (***) => (**) => (**') violated at d = " + to_string(d));
  }
  if (!r.admissible) return r;
  if (auto h = hilb2_witness(d)) r.hilb2 = Hilb2Record{h->lattice.gram(), h->w};
  if (options.k3 && d % 8 != 0) {
    const HyperbolicSearch search = find_hyperbolic_plane(normal_form_for(d), options.bound);
    r.k3_status = search.status;
    if (search.plane) {
      const GramLattice lattice = normal_form_for(d);
      const Sublattice perp =
          orthogonal_complement(Sublattice::from_vectors(lattice, {search.plane->v, search.plane->w}));
      r.k3 = K3Record{search.plane->v, search.plane->w, perp.vector(0)};
    }
  }
  return r;
}

}  // namespace gmlat
