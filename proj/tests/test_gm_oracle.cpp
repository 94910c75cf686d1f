#include "doctest.h"
#include "oracles.hpp"

#include "gmlattice/error.hpp"
#include "gmlattice/gm_oracle.hpp"

#include <random>

using namespace gmlat;

namespace {

bool star2_oracle(std::int64_t d) {
  if (d % 8 == 0) return false;
  for (auto [p, e] : oracle::trial_factor(d))
    if (p != 2 && p % 4 != 1) return false;
  return true;
}

}  // namespace

TEST_SUITE("gm-oracle") {
  TEST_CASE("admissibility") {
    CHECK(admissible(10).label == DivisorLabel::DprimeUnion);
    CHECK(admissible(12).label == DivisorLabel::Dd);
    CHECK_FALSE(admissible(6).admissible);
    CHECK(admissible(6).label == DivisorLabel::Inadmissible);
    CHECK_FALSE(admissible(0).admissible);
    CHECK_FALSE(admissible(-8).admissible);
    for (auto label : {DivisorLabel::Dd, DivisorLabel::DprimeUnion, DivisorLabel::Inadmissible})
      CHECK(parse_divisor_label(to_string(label)) == label);
  }

  TEST_CASE("conditions on d") {
    CHECK(cond_star2(50));
    CHECK_FALSE(cond_star2(12));
    CHECK_FALSE(cond_star2(16));
    CHECK(cond_star2_twisted(16));
    CHECK_FALSE(cond_star2_twisted(12));
    CHECK(cond_star2_twisted(50));
    CHECK_THROWS_AS(cond_star2(0), LatticeError);
    CHECK_THROWS_AS(cond_star2_twisted(-4), LatticeError);
    CHECK(cond_star3(2) == PellSolution{0, 1, 1, -1});
    CHECK(cond_star3(10) == PellSolution{2, 1, 5, -1});
    CHECK_FALSE(cond_star3(50));
    CHECK_THROWS_AS(cond_star3(7), LatticeError);
  }

  TEST_CASE("conditions agree with factorisation and sum-of-squares oracles") {
    for (std::int64_t d = 1; d <= 5000; ++d) {
      CHECK(cond_star2(d) == star2_oracle(d));
      CHECK(cond_star2_twisted(d) == oracle::is_sum_of_two_squares(d));
    }
  }

  TEST_CASE("implication chain and parity") {
    for (std::int64_t d = 2; d <= 10000; d += 2) {
      const bool s3 = cond_star3(d).has_value();
      if (s3) {
        CHECK(cond_star2(d));
        CHECK(d % 8 != 0);
        const auto p = *cond_star3(d);
        CHECK(p.a * p.a * d == 2 * p.n * p.n + 2);
      }
      if (cond_star2(d)) CHECK(cond_star2_twisted(d));
    }
  }

  TEST_CASE("twisted witness") {
    const auto a = twisted_witness(16);
    REQUIRE(a);
    CHECK(a->x == 2);
    CHECK(a->y == 2);
    CHECK(a->i == 1);
    const auto b = twisted_witness(10);
    REQUIRE(b);
    CHECK(b->x == 1);
    CHECK(b->y == 2);
    CHECK_FALSE(twisted_witness(12));
    for (std::int64_t d = 2; d <= 1000; d += 2) {
      const auto w = twisted_witness(d);
      if (w) CHECK(2 * w->x * w->x + 2 * w->y * w->y == w->i * w->i * d);
      if (w) CHECK(determinant(int_matrix({{-2, 0, w->x.convert_to<long long>()},
                                           {0, -2, w->y.convert_to<long long>()},
                                           {w->x.convert_to<long long>(), w->y.convert_to<long long>(), 0}})) ==
                   w->i * w->i * d);
      if (!cond_star2_twisted(d)) CHECK_FALSE(w);
    }
  }

  TEST_CASE("labelling normal forms") {
    const NormalForm a = labelling_normal_form(int_matrix({{-2, 0, 3}, {0, -2, 2}, {3, 2, 4}}));
    CHECK(a.standard.gram() == int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 10}}));
    CHECK(a.k == 5);
    CHECK(a.standard.determinant() == 42);
    const NormalForm b = labelling_normal_form(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 0}}));
    CHECK(b.k == 0);
    CHECK(b.standard.gram() == int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 0}}));
    const NormalForm c = labelling_normal_form(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 0}}));
    CHECK(c.kind == NormalFormKind::FourModEight);
    CHECK(c.standard.gram() == int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 0}}));
    CHECK_THROWS_AS(labelling_normal_form(int_matrix({{-2, 0, 2}, {0, -2, 0}, {2, 0, 0}})), LatticeError);
  }

  TEST_CASE("normal form transforms preserve the Gram and fix lambda") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> dist(-40, 40);
    int tested = 0;
    while (tested < 300) {
      const int a = dist(rng), b = dist(rng), c = 2 * dist(rng);
      const IntMatrix g = int_matrix({{-2, 0, a}, {0, -2, b}, {a, b, c}});
      const Integer det = determinant(g);
      const Integer r = mod_floor(det, Integer(8));
      if (r != 2 && r != 4) continue;
      ++tested;
      const NormalForm nf = labelling_normal_form(g);
      CHECK(IntMatrix(nf.transform.transpose() * g * nf.transform) == nf.standard.gram());
      CHECK(abs(determinant(nf.transform)) == 1);
      CHECK(nf.standard.determinant() == det);
      CHECK(nf.transform.col(0) == int_vector({1, 0, 0}));
      CHECK(nf.transform.col(1) == int_vector({0, 1, 0}));
    }
  }

  TEST_CASE("Hilbert-square witnesses") {
    const auto two = hilb2_witness(2);
    REQUIRE(two);
    CHECK(two->w == int_vector({0, 0, 1}));
    CHECK(two->lattice.gram() == int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 0}}));
    const auto ten = hilb2_witness(10);
    REQUIRE(ten);
    CHECK(ten->w == int_vector({0, 1, 1}));
    CHECK(ten->lattice.gram() == int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}}));
    CHECK_FALSE(hilb2_witness(50));
    CHECK_THROWS_AS(hilb2_witness(6), LatticeError);

    const Hilb2Check c = hilb2_criterion(NeronSeveriModel::standard(ten->lattice), ten->w);
    CHECK(c.holds);
    CHECK(c.norm == 0);
    CHECK(c.pairing1 == 1);
    CHECK(c.pairing2 == -2);
    // w = lambda2 + tau, so <lambda1, lambda2, w> is the whole lattice.
    CHECK(c.determinant == oracle::leibniz_det(int_matrix({{-2, 0, 1}, {0, -2, -2}, {1, -2, 0}})));
    CHECK(c.determinant == 10);
    CHECK_FALSE(hilb2_criterion(NeronSeveriModel::standard(ten->lattice), int_vector({1, 0, 0})).holds);

    for (std::int64_t d = 2; d <= 2000; ++d) {
      if (!admissible(d).admissible) continue;
      for (auto kind : {NormalFormKind::FirstTwoModEight, NormalFormKind::SecondTwoModEight}) {
        const auto w = hilb2_witness(d, kind);
        CHECK(w.has_value() == cond_star3(d).has_value());
        if (!w) continue;
        const GramLattice& l = w->lattice;
        const LatticeVector e1 = int_vector({1, 0, 0}), e2 = int_vector({0, 1, 0});
        CHECK(l.norm(w->w) == 0);
        CHECK((l.pairing(e1, w->w) == 1 || l.pairing(e2, w->w) == 1));
        CHECK(l.determinant() == d);
      }
    }
  }

  TEST_CASE("generic criterion determinant") {
    for (int n = -20; n <= 20; ++n) {
      const GramLattice l(int_matrix({{-2, 0, 1}, {0, -2, n}, {1, n, 0}}));
      const Hilb2Check c = hilb2_criterion(NeronSeveriModel::standard(l), int_vector({0, 0, 1}));
      CHECK(c.holds);
      CHECK(c.determinant == 2 * n * n + 2);
    }
  }

  TEST_CASE("rank-4 form analysis") {
    const QFormAnalysis a = qform_rank4(2, 1, -1, 1);
    CHECK(a.A == 10);
    CHECK(a.B == 4);
    CHECK(a.C == 4);
    CHECK(a.h == 2);
    CHECK(a.q == BinaryForm{5, 2, 2});
    const QFormAnalysis z = qform_rank4(0, 0, 0, 0);
    CHECK(z.A == 0);
    CHECK(z.B == 8);
    CHECK(z.C == 0);
    CHECK(z.h == 8);
    CHECK(z.q == BinaryForm{0, 1, 0});
    CHECK(lemma_checks(z).prime_1_mod_4 == CheckStatus::HypothesisNotMet);

    const LemmaReport r = lemma_checks(a);
    CHECK(r.h_odd_primes == CheckStatus::Pass);
    CHECK(r.h_not_div_8 == CheckStatus::Pass);
    CHECK(r.ac_not_3_mod_4 == CheckStatus::Pass);
    CHECK(r.b_even == CheckStatus::Pass);
    REQUIRE(r.prime);
    CHECK(r.prime->p == 5);
    CHECK(r.prime->x == 1);
    CHECK(r.prime->y == 0);
  }

  TEST_CASE("Q-identity against the direct determinant") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (int t = 0; t < 1000; ++t) {
      const int k = dist(rng), l = dist(rng), m = dist(rng), n = dist(rng), x = dist(rng), y = dist(rng);
      const QFormAnalysis qa = qform_rank4(k, l, m, n);
      const long long p = k * x + m * y, q = l * x + n * y;
      const Integer det = oracle::leibniz_det(int_matrix({{-2, 0, p}, {0, -2, q}, {p, q, 2LL * x * y}}));
      CHECK(qa.Q(x, y) == det);
      CHECK(qa.h * qa.q(x, y) == det);
      CHECK(labelling_determinant(k, l, m, n, x, y) == det);
      CHECK(qa.A == 2 * k * k + 2 * l * l);
      CHECK(qa.B == 8 + 4 * k * m + 4 * l * n);
      CHECK(qa.C == 2 * m * m + 2 * n * n);
    }
  }

  TEST_CASE("lemma conclusions on not-all-even samples") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> dist(-50, 50);
    int tested = 0;
    while (tested < 300) {
      const int k = dist(rng), l = dist(rng), m = dist(rng), n = dist(rng);
      if (k % 2 == 0 && l % 2 == 0 && m % 2 == 0 && n % 2 == 0) continue;
      ++tested;
      const QFormAnalysis qa = qform_rank4(k, l, m, n);
      CHECK(qa.h % 8 != 0);
      for (auto [p, e] : factorize(qa.h))
        if (p != 2) CHECK(p % 4 == 1);
      CHECK(mod_floor(qa.q.a, Integer(4)) != 3);
      CHECK(mod_floor(qa.q.c, Integer(4)) != 3);
      CHECK(qa.q.b % 2 == 0);
      const LemmaReport r = lemma_checks(qa);
      if (r.prime) {
        CHECK(r.prime_1_mod_4 == CheckStatus::Pass);
        CHECK(qa.q(r.prime->x, r.prime->y) == r.prime->p);
        CHECK(r.prime->p % 4 == 1);
        CHECK(is_prime(r.prime->p));
      } else {
        CHECK(r.prime_1_mod_4 == CheckStatus::NotPositiveDefinite);
      }
    }
  }

  TEST_CASE("K3 witnesses in rank 3") {
    const GramLattice m10(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}}));
    const K3Witness w = k3_witness(NeronSeveriModel::standard(m10), 20);
    REQUIRE(w.plane);
    CHECK(w.plane->v == int_vector({1, 1, 1}));
    CHECK(w.plane->w == int_vector({0, 1, 1}));
    REQUIRE(w.complement_gen);
    CHECK(m10.norm(*w.complement_gen) == -10);
    CHECK(w.complement_norm == -10);

    const GramLattice m12(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2}}));
    CHECK(k3_witness(NeronSeveriModel::standard(m12), 30).status == SearchStatus::ProvenAbsent);
    // Exhaustive scan: the only isotropic vector with coordinates up to 30 is zero.
    CHECK(oracle::box_vectors(m12.gram(), 0, 30).size() == 1);

    CHECK_THROWS_AS(k3_witness(NeronSeveriModel::standard(GramLattice(int_matrix({{-2, 0}, {0, -2}}))), 5),
                    LatticeError);
  }

  TEST_CASE("K3 witnesses in rank 4") {
    const GramLattice n(rank4_gram(2, 1, -1, 1));
    const K3Witness w = k3_witness(NeronSeveriModel::standard(n), 20);
    CHECK(w.status == SearchStatus::Found);
    REQUIRE(w.labelling);
    CHECK(*w.labelling == std::make_pair(Integer(1), Integer(0)));
    CHECK(w.labelling_disc == 10);
    CHECK(cond_star2(w.labelling_disc));
  }

  TEST_CASE("counterexample family") {
    const auto two = counterexample_family(2);
    CHECK(two.spans_u);
    CHECK(two.identity_holds);
    CHECK(two.reduction.form == BinaryForm{2, 1, 2});
    CHECK_FALSE(two.represents_one);
    CHECK(two.all_discs_0_mod_8);
    CHECK_FALSE(two.in_d8);

    const auto zero = counterexample_family(0);
    REQUIRE(zero.represents_one);
    CHECK(*zero.represents_one == std::make_pair(Integer(0), Integer(1)));
    const auto one = counterexample_family(1);
    REQUIRE(one.represents_one);
    CHECK(one.form(1, -1) == 1);

    for (int n = 0; n <= 20; ++n) {
      const auto r = counterexample_family(n, 30);
      const GramLattice& l = r.lattice;
      CHECK(l.norm(r.kappa1) == 0);
      CHECK(l.norm(r.kappa2) == 0);
      CHECK(l.pairing(r.kappa1, r.kappa2) == 1);
      CHECK(r.form == BinaryForm{2, 1 + 2 * n, 1 + n * n});
      // Independent scan of -Q/8 for the value 1.
      bool rep = false;
      for (int x = -30; x <= 30; ++x)
        for (int y = -30; y <= 30; ++y) rep = rep || 2 * x * x + (1 + 2 * n) * x * y + (1 + n * n) * y * y == 1;
      CHECK(rep == (n == 0 || n == 1));
      CHECK(r.represents_one.has_value() == rep);
      CHECK(r.all_discs_0_mod_8);
    }
  }

  TEST_CASE("general counterexample lattices") {
    for (int n = 0; n <= 4; ++n) {
      const auto g = counterexample_general(1, 1, 1, n, 8);
      CHECK(g.lattice == counterexample_family(n).lattice);
      CHECK(g.spans_u);
      CHECK(g.basis_gram_matches);
      CHECK(g.pairings_even);
      CHECK(g.all_discs_0_mod_8);
      CHECK_FALSE(g.violation);
    }
    const auto other = counterexample_general(2, 3, -1, 4, 6);
    CHECK(other.spans_u);
    CHECK(other.basis_gram_matches);
    CHECK(other.kappa_basis_gram == int_matrix({{2, 0, 4, -2}, {0, 2, 6, 8}, {4, 6, 0, 1}, {-2, 8, 1, 0}}));
    CHECK(other.all_discs_0_mod_8);
    CHECK_THROWS_AS(counterexample_general(1, 0, 3, 3), LatticeError);
    CHECK_THROWS_AS(counterexample_general(0, 1, 3, 3), LatticeError);
  }

  TEST_CASE("Debarre-Macri checks") {
    const DMCheck a = dm_isomorphism_check(2);
    CHECK(a.isomorphic == false);
    CHECK(std::any_of(a.five.begin(), a.five.end(), [](const PellSolution& s) { return s.n == 3 && s.a == 1; }));
    const DMCheck b = dm_isomorphism_check(10);
    CHECK(b.isomorphic == false);
    CHECK(std::any_of(b.five.begin(), b.five.end(), [](const PellSolution& s) { return s.n == 5 && s.a == 1; }));
    const DMCheck c = dm_isomorphism_check(26);
    CHECK(c.isomorphic == true);
    CHECK(c.negative == PellSolution{18, 5, 13, -1});
    CHECK(c.five.empty());
    CHECK_FALSE(dm_isomorphism_check(50).isomorphic.has_value());
    CHECK_THROWS_AS(dm_isomorphism_check(9), LatticeError);
  }

  TEST_CASE("Mukai model") {
    const MukaiModel m = mukai_model();
    CHECK(m.ambient == standard_lattice(StandardName::LambdaTildeReversed));
    const GramLattice perp = m.complement.lattice();
    CHECK(perp.rank() == 22);
    CHECK(perp.determinant() == 4);
    CHECK(perp.is_even());
    CHECK(signature(perp) == Signature{20, 2, 0});
    CHECK(discriminant_group(perp).invariant_factors == std::vector<Integer>{2, 2});
    CHECK(m.complement.is_primitive());
  }

  TEST_CASE("classification") {
    const DivisorReport a = classify(50);
    CHECK(a.divisor == DivisorLabel::DprimeUnion);
    CHECK(a.star2);
    CHECK(a.star2_twisted);
    CHECK_FALSE(a.star3);
    const DivisorReport b = classify(16);
    CHECK(b.divisor == DivisorLabel::Dd);
    CHECK_FALSE(b.star2);
    CHECK(b.star2_twisted);
    REQUIRE(b.twisted);
    CHECK(b.twisted->x == 2);
    CHECK(b.twisted->y == 2);
    CHECK(b.twisted->i == 1);
    CHECK_FALSE(b.star3);
    const DivisorReport c = classify(10);
    REQUIRE(c.star3);
    CHECK(c.star3->n == 2);
    CHECK(c.star3->a == 1);
    CHECK(c.hilb2);
    const DivisorReport d = classify(10, {20, true});
    CHECK(d.k3_status == SearchStatus::Found);
    REQUIRE(d.k3);
    CHECK(d.k3->complement_gen == int_vector({2, 5, 4}));
    const DivisorReport bad = classify(6);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.divisor == DivisorLabel::Inadmissible);
  }
}
