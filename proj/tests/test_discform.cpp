#include "doctest.h"

#include "gmlattice/discform.hpp"
#include "gmlattice/error.hpp"
#include "gmlattice/gm_oracle.hpp"

#include <Eigen/LU>

#include <random>

using namespace gmlat;

namespace {

RatVector rv(std::initializer_list<Rational> values) {
  RatVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

const Rational half(1, 2);

}  // namespace

TEST_SUITE("discform") {
  TEST_CASE("discriminant group examples") {
    const DiscriminantData d = discriminant_group(GramLattice(int_matrix({{-2, 0}, {0, -2}})));
    CHECK(d.invariant_factors == std::vector<Integer>{2, 2});
    CHECK(d.qvalues == std::vector<Rational>{Rational(3, 2), Rational(3, 2)});
    CHECK(d.order() == 4);

    CHECK(discriminant_group(standard_lattice(StandardName::U)).is_trivial());

    const DiscriminantData two = discriminant_group(GramLattice(int_matrix({{2}})));
    CHECK(two.invariant_factors == std::vector<Integer>{2});
    CHECK(two.qvalues == std::vector<Rational>{half});

    CHECK_THROWS_AS(discriminant_group(GramLattice(int_matrix({{0, 0}, {0, 2}}))), LatticeError);
    CHECK_THROWS_AS(discriminant_group(GramLattice(int_matrix({{1}}))), LatticeError);
  }

  TEST_CASE("discriminant data invariants on random even lattices") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> dist(-4, 4);
    int tested = 0;
    for (int t = 0; t < 120; ++t) {
      const int n = 1 + t % 4;
      IntMatrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const int v = i == j ? 2 * dist(rng) : dist(rng);
          g(i, j) = v;
          g(j, i) = v;
        }
      const GramLattice l(g);
      if (l.is_degenerate()) continue;
      ++tested;
      const DiscriminantData d = discriminant_group(l);
      CHECK(d.order() == abs(l.determinant()));
      for (std::size_t i = 0; i < d.generators.size(); ++i) {
        CHECK(d.invariant_factors[i] > 1);
        CHECK(in_dual(g, d.generators[i]));
        // Denominators divide the invariant factor.
        for (Eigen::Index k = 0; k < d.generators[i].size(); ++k)
          CHECK(d.invariant_factors[i] % denominator_of(d.generators[i](k)) == 0);
        CHECK(d.qvalues[i] >= 0);
        CHECK(d.qvalues[i] < 2);
        CHECK(reduce_mod(d.qvalues[i], 1) == d.bmatrix(i, i));
      }
      // q-values flip sign under twisting by -1.
      const DiscriminantData m = discriminant_group(twist(l, -1));
      REQUIRE(m.invariant_factors == d.invariant_factors);
      for (std::size_t i = 0; i < d.generators.size(); ++i) CHECK(m.qvalues[i] == reduce_mod(-d.qvalues[i], 2));
    }
    CHECK(tested > 60);
  }

  TEST_CASE("isotropy of glue groups") {
    const GramLattice s(int_matrix({{-2, 0}, {0, -2}}));
    const GramLattice k(int_matrix({{2}}));
    CHECK_FALSE(check_isotropic({s, k, {{rv({half, half}), rv({half})}}}));
    CHECK(q_value(direct_sum(s, k).gram(), rv({half, half, half})) == reduce_mod(Rational(-1, 2), 2));

    const GramLattice p(int_matrix({{2}}));
    const GramLattice n(int_matrix({{-2}}));
    CHECK(check_isotropic({p, n, {{rv({half}), rv({half})}}}));
    CHECK(check_isotropic({p, n, {}}));
    CHECK_THROWS_AS(check_isotropic({p, n, {{rv({Rational(1, 3)}), rv({half})}}}), LatticeError);
  }

  TEST_CASE("the two isotropic order-two subgroups") {
    const DiscriminantData sum = direct_sum(discriminant_group(GramLattice(int_matrix({{-2, 0}, {0, -2}}))),
                                            discriminant_group(GramLattice(int_matrix({{2}}))));
    const auto subs = isotropic_order_two_subgroups(sum);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].coefficients == std::vector<Integer>{0, 1, 1});
    CHECK(subs[1].coefficients == std::vector<Integer>{1, 0, 1});
    CHECK(isotropic_order_two_subgroups(sum, 3).empty());
  }

  TEST_CASE("gluing <2> + <-2> gives U") {
    const GramLattice p(int_matrix({{2}}));
    const GramLattice n(int_matrix({{-2}}));
    const GlueResult g = glue({p, n, {{rv({half}), rv({half})}}});
    CHECK(g.index == 2);
    CHECK(g.lattice.determinant() == p.determinant() * n.determinant() / 4);
    CHECK(g.lattice.is_even());
    // Oracle: the basis {(e+f)/2, e} by direct rational Gram computation.
    RatMatrix b(2, 2);
    b << half, 1, half, 0;
    const RatMatrix gram = b.transpose() * direct_sum(p, n).gram().cast<Rational>() * b;
    CHECK(gram == int_matrix({{0, 1}, {1, 2}}).cast<Rational>());
    CHECK(is_isometric_small(g.lattice, standard_lattice(StandardName::U)).status == IsometryStatus::Found);

    const GlueResult trivial = glue({p, n, {}});
    CHECK(trivial.index == 1);
    CHECK(trivial.lattice.determinant() == -4);

    CHECK_THROWS_AS(glue({GramLattice(int_matrix({{-2, 0}, {0, -2}})), GramLattice(int_matrix({{2}})),
                          {{rv({half, half}), rv({half})}}}),
                    LatticeError);
  }

  TEST_CASE("glue determinant law on random diagonal instances") {
    std::mt19937 rng(22);
    std::uniform_int_distribution<int> dist(1, 6);
    int glued = 0;
    for (int t = 0; t < 200; ++t) {
      const int a = 2 * dist(rng), b = 2 * dist(rng);
      const GramLattice s(int_matrix({{a}}));
      const GramLattice k(int_matrix({{-b}}));
      // h = (x/a, y/b) with q = x^2/a - y^2/b; search a nonzero isotropic element.
      for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) {
          if (x == 0 && y == 0) continue;
          const GlueData g{s, k, {{rv({Rational(x, a)}), rv({Rational(y, b)})}}};
          if (!check_isotropic(g)) continue;
          const GlueResult r = glue(g);
          CHECK(r.lattice.determinant() * r.index * r.index == s.determinant() * k.determinant());
          ++glued;
        }
    }
    CHECK(glued > 20);
  }

  TEST_CASE("glue extension check") {
    const GramLattice u = standard_lattice(StandardName::U);
    const Sublattice s = Sublattice::from_vectors(u, {int_vector({1, 1})});
    const Sublattice k = Sublattice::from_vectors(u, {int_vector({1, -1})});
    const GlueExtensionReport r = glue_extension_check(s, k);
    CHECK(r.glue_order == 2);
    CHECK(r.isotropic);
    CHECK(r.disc_order_l == 1);
    CHECK(r.quotient_identity);

    const GramLattice sk(int_matrix({{2, 0}, {0, -2}}));
    const GlueExtensionReport split = glue_extension_check(Sublattice::from_vectors(sk, {int_vector({1, 0})}),
                                                           Sublattice::from_vectors(sk, {int_vector({0, 1})}));
    CHECK(split.glue_order == 1);

    CHECK_THROWS_AS(glue_extension_check(Sublattice::from_vectors(u, {int_vector({1, 0})}),
                                         Sublattice::from_vectors(u, {int_vector({0, 1})})),
                    LatticeError);

    const MukaiModel m = mukai_model();
    const GlueExtensionReport big = glue_extension_check(m.complement, m.lambda);
    CHECK(big.glue_order == 4);
    CHECK(big.disc_order_l == 1);
    CHECK(big.quotient_identity);
  }

  TEST_CASE("gluing round-trips through the extension check") {
    const GramLattice p(int_matrix({{2}}));
    const GramLattice n(int_matrix({{-2}}));
    const GlueResult g = glue({p, n, {{rv({half}), rv({half})}}});
    // The images of e and f in the glued basis.
    const RatMatrix inv = g.basis.inverse();
    auto coords = [&](int i) {
      RatVector e = RatVector::Zero(2);
      e(i) = 1;
      const RatVector c = inv * e;
      LatticeVector out(2);
      for (int j = 0; j < 2; ++j) out(j) = numerator_of(c(j));
      return out;
    };
    const GlueExtensionReport r =
        glue_extension_check(Sublattice::from_vectors(g.lattice, {coords(0)}), Sublattice::from_vectors(g.lattice, {coords(1)}));
    CHECK(r.glue_order == 2);
    CHECK(r.glue_invariants == std::vector<Integer>{2});
    CHECK(r.isotropic);
  }
}
