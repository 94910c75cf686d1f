#include "doctest.h"
#include "oracles.hpp"

#include "gmlattice/error.hpp"
#include "gmlattice/lattice.hpp"

#include <random>
#include <set>

using namespace gmlat;

namespace {

IntMatrix random_symmetric(std::mt19937& rng, int n, int range, bool even) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int v = dist(rng);
      if (i == j && even) v *= 2;
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

std::vector<std::int64_t> coords(const LatticeVector& v) {
  std::vector<std::int64_t> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<std::int64_t>());
  return out;
}

IntMatrix unimodular(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  IntMatrix t = IntMatrix::Identity(n, n);
  for (int s = 0; s < 6; ++s) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    t.row(i) += Integer(coef(rng)) * t.row(j);
  }
  return t;
}

}  // namespace

TEST_SUITE("integer") {
  TEST_CASE("gcd, floor division and square roots") {
    CHECK(gcd(Integer(12), Integer(-18)) == 6);
    CHECK(floor_div(Integer(-7), Integer(2)) == -4);
    CHECK(mod_floor(Integer(-7), Integer(8)) == 1);
    CHECK(isqrt(Integer(99)) == 9);
    CHECK(isqrt(Integer(100)) == 10);
    CHECK(exact_sqrt(Integer(144)) == Integer(12));
    CHECK_FALSE(exact_sqrt(Integer(145)).has_value());
    const Integer big = Integer(1) << 200;
    CHECK(isqrt(big * big) == big);
    CHECK(isqrt(big * big - 1) == big - 1);
  }

  TEST_CASE("parsing") {
    CHECK(parse_integer("-123") == Integer(-123));
    CHECK(parse_integer("+7") == Integer(7));
    CHECK_FALSE(parse_integer("").has_value());
    CHECK_FALSE(parse_integer("12a").has_value());
    CHECK_FALSE(parse_integer("-").has_value());
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK_FALSE(parse_rational("1/0").has_value());
    CHECK(to_string(reduce_mod(Rational(-1, 2), 2)) == "3/2");
  }
}

TEST_SUITE("dense") {
  TEST_CASE("determinant matches the Leibniz expansion") {
    std::mt19937 rng(1);
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + t % 5;
      std::uniform_int_distribution<int> dist(-9, 9);
      IntMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
      CHECK(determinant(m) == oracle::leibniz_det(m));
    }
    CHECK(determinant(IntMatrix(0, 0)) == 1);
  }

  TEST_CASE("Smith normal form examples") {
    CHECK(smith_normal_form(int_matrix({{2, 0}, {0, 2}})).diagonal() == std::vector<Integer>{2, 2});
    CHECK(smith_normal_form(int_matrix({{0, 1}, {1, 0}})).diagonal() == std::vector<Integer>{1, 1});
    CHECK(smith_normal_form(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}})).diagonal() ==
          std::vector<Integer>{1, 1, 10});
  }

  TEST_CASE("Smith normal form is a unimodular diagonalisation with a divisor chain") {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> dist(-6, 6);
    for (int t = 0; t < 100; ++t) {
      const int r = 1 + t % 4, c = 1 + (t / 4) % 4;
      IntMatrix m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = dist(rng);
      const auto s = smith_normal_form(m);
      CHECK(IntMatrix(s.U * m * s.V) == s.D);
      CHECK(abs(determinant(s.U)) == 1);
      CHECK(abs(determinant(s.V)) == 1);
      const auto d = s.diagonal();
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
          if (i != j) CHECK(s.D(i, j) == 0);
      for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        else CHECK(d[i + 1] == 0);
      }
      if (r == c) {
        Integer prod = 1;
        for (const auto& x : d) prod *= x;
        CHECK(prod == abs(determinant(m)));
      }
    }
  }

  TEST_CASE("Hermite form and integer kernel") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int t = 0; t < 60; ++t) {
      IntMatrix m(2, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = dist(rng);
      const auto h = hermite_normal_form(m);
      CHECK(IntMatrix(h.U * m) == h.H);
      CHECK(abs(determinant(h.U)) == 1);
      const IntMatrix k = integer_kernel(m);
      CHECK(k.cols() == 4 - h.rank);
      CHECK((m * k).isZero());
      if (k.cols() > 0) CHECK(invariant_factors(k) == std::vector<Integer>(k.cols(), 1));
    }
  }

  TEST_CASE("characteristic polynomial of a companion-like example") {
    // x^2 - 5x + 6 for diag(2, 3)
    CHECK(characteristic_polynomial(int_matrix({{2, 0}, {0, 3}})) == std::vector<Integer>{1, -5, 6});
  }
}

TEST_SUITE("lattice") {
  TEST_CASE("GramLattice invariants") {
    CHECK_THROWS_AS(GramLattice(int_matrix({{1, 2}, {3, 4}})), LatticeError);
    const GramLattice u = standard_lattice(StandardName::U);
    CHECK(u.gram() == int_matrix({{0, 1}, {1, 0}}));
    CHECK(u.determinant() == -1);
    CHECK(u.is_even());
    CHECK_FALSE(GramLattice(int_matrix({{1, 0}, {0, 2}})).is_even());
    CHECK(GramLattice(int_matrix({{2, 1}, {1, 2}})).norm(int_vector({1, -1})) == 2);
    CHECK(GramLattice(int_matrix({{0, 0}, {0, 2}})).is_degenerate());
  }

  TEST_CASE("standard lattices") {
    CHECK(standard_lattice(StandardName::I, 2, 2, 0).gram() == int_matrix({{2, 0}, {0, 2}}));
    const GramLattice e8 = standard_lattice(StandardName::E8);
    CHECK(e8.determinant() == 1);
    CHECK(e8.is_even());
    CHECK(signature(e8) == Signature{8, 0, 0});
    const GramLattice lambda = standard_lattice(StandardName::Lambda);
    CHECK(lambda.rank() == 22);
    CHECK(lambda.determinant() == 4);
    CHECK(lambda.is_even());
    const GramLattice mukai = standard_lattice(StandardName::LambdaTilde);
    CHECK(mukai.rank() == 24);
    CHECK(mukai.determinant() == 1);
    CHECK(signature(mukai) == Signature{4, 20, 0});
    const GramLattice reversed = standard_lattice(StandardName::LambdaTildeReversed);
    CHECK(signature(twist(mukai, -1)) == signature(reversed));
    CHECK(reversed.determinant() == 1);
    CHECK(reversed.is_even());
    CHECK_THROWS_AS(standard_lattice(StandardName::U, 0), LatticeError);
  }

  TEST_CASE("determinant identities") {
    for (int k = -10; k <= 10; ++k) {
      CHECK(GramLattice(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2 * k}})).determinant() == 2 + 8 * k);
      CHECK(GramLattice(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2 * k}})).determinant() == 4 + 8 * k);
    }
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> dist(-1000, 1000);
    for (int t = 0; t < 200; ++t) {
      const int x = dist(rng), y = dist(rng);
      const IntMatrix g = int_matrix({{-2, 0, x}, {0, -2, y}, {x, y, 0}});
      CHECK(determinant(g) == 2 * Integer(x) * x + 2 * Integer(y) * y);
    }
  }

  TEST_CASE("signature examples and float inertia oracle") {
    CHECK(signature(standard_lattice(StandardName::U)) == Signature{1, 1, 0});
    CHECK(signature(int_matrix({{-2, 0}, {0, -2}})) == Signature{0, 2, 0});
    CHECK(signature(int_matrix({{0, 0}, {0, 0}})) == Signature{0, 0, 2});
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
      const IntMatrix g = random_symmetric(rng, 1 + t % 5, 4, false);
      const Signature s = signature(g);
      const auto in = oracle::float_inertia(g);
      CHECK(s.positive == in.pos);
      CHECK(s.negative == in.neg);
      CHECK(s.null == in.zero);
    }
  }

  TEST_CASE("twist scales the determinant by m^rank") {
    std::mt19937 rng(6);
    for (int t = 0; t < 50; ++t) {
      const int n = 1 + t % 4;
      const GramLattice l(random_symmetric(rng, n, 5, false));
      for (int m : {-3, -1, 2, 5}) CHECK(twist(l, m).determinant() == pow(Integer(m), n) * l.determinant());
    }
  }

  TEST_CASE("signature is additive on direct sums") {
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
      const GramLattice a(random_symmetric(rng, 1 + t % 3, 4, false));
      const GramLattice b(random_symmetric(rng, 1 + (t / 3) % 3, 4, false));
      CHECK(signature(direct_sum(a, b)) == signature(a) + signature(b));
    }
  }

  TEST_CASE("orthogonal complement examples") {
    const GramLattice m(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}}));
    const Sublattice u = Sublattice::from_vectors(m, {int_vector({1, 1, 1}), int_vector({0, 1, 1})});
    const Sublattice perp = orthogonal_complement(u);
    REQUIRE(perp.rank() == 1);
    LatticeVector g = perp.vector(0);
    if (g(0) < 0) g = -g;
    CHECK(g == int_vector({2, 5, 4}));
    CHECK(m.norm(g) == -10);
    // Oracle: primitive vectors orthogonal to both, by scanning.
    std::set<std::vector<std::int64_t>> found;
    for (int x = -10; x <= 10; ++x)
      for (int y = -10; y <= 10; ++y)
        for (int z = -10; z <= 10; ++z) {
          const LatticeVector v = int_vector({x, y, z});
          if (m.pairing(v, u.vector(0)) == 0 && m.pairing(v, u.vector(1)) == 0) found.insert(coords(v));
        }
    CHECK(found == std::set<std::vector<std::int64_t>>{{-4, -10, -8}, {-2, -5, -4}, {0, 0, 0}, {2, 5, 4}, {4, 10, 8}});

    const GramLattice hyp = standard_lattice(StandardName::U);
    const Sublattice line = Sublattice::from_vectors(hyp, {int_vector({1, 0})});
    const Sublattice lp = orthogonal_complement(line);
    REQUIRE(lp.rank() == 1);
    CHECK((lp.vector(0) == int_vector({1, 0}) || lp.vector(0) == int_vector({-1, 0})));
  }

  TEST_CASE("det(S) det(S^perp) = det(L) [L : S + S^perp]^2") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> dist(-3, 3);
    int tested = 0;
    for (int t = 0; t < 200 && tested < 60; ++t) {
      const int n = 3 + t % 2;
      const GramLattice l(random_symmetric(rng, n, 4, t % 2 == 0));
      if (l.is_degenerate()) continue;
      const LatticeVector v = [&] {
        LatticeVector x(n);
        for (int i = 0; i < n; ++i) x(i) = dist(rng);
        return x;
      }();
      if (v.isZero()) continue;
      const Sublattice s = saturate(Sublattice(l, v)).lattice;
      if (s.lattice().is_degenerate()) continue;
      const Sublattice perp = orthogonal_complement(s);
      if (perp.lattice().is_degenerate()) continue;
      IntMatrix joint(n, n);
      joint << s.basis(), perp.basis();
      const Integer index = abs(determinant(joint));
      CHECK(s.lattice().determinant() * perp.lattice().determinant() == l.determinant() * index * index);
      ++tested;
    }
    CHECK(tested >= 30);
  }

  TEST_CASE("saturation") {
    const GramLattice i2 = standard_lattice(StandardName::I, 1, 2, 0);
    const Saturation s = saturate(Sublattice::from_vectors(i2, {int_vector({2, 0}), int_vector({0, 1})}));
    CHECK(s.index == 2);
    CHECK(abs(determinant(s.lattice.basis())) == 1);
    const Sublattice prim = Sublattice::from_vectors(i2, {int_vector({1, 1})});
    const Saturation same = saturate(prim);
    CHECK(same.index == 1);
    CHECK(same.lattice.basis() == prim.basis());

    std::mt19937 rng(9);
    std::uniform_int_distribution<int> dist(-6, 6);
    const GramLattice l4 = standard_lattice(StandardName::I, 1, 4, 0);
    for (int t = 0; t < 80; ++t) {
      IntMatrix b(4, 2);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) b(i, j) = dist(rng);
      if (rank(b) < 2) continue;
      const Saturation first = saturate(Sublattice(l4, b));
      CHECK(first.lattice.is_primitive());
      const Saturation second = saturate(first.lattice);
      CHECK(second.index == 1);
      CHECK(second.lattice.basis() == first.lattice.basis());
      // Old basis lies in the saturation with the right index.
      Integer prod = 1;
      for (const auto& d : invariant_factors(b)) prod *= d;
      CHECK(first.index == prod);
    }
  }

  TEST_CASE("enumerate_vectors examples") {
    const auto iso = enumerate_vectors(standard_lattice(StandardName::U), 0, 1);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& v : iso) got.insert(coords(v));
    for (auto v : std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}}) CHECK(got.count(v));
    const auto none = enumerate_vectors(GramLattice(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2}})), 0, 30);
    REQUIRE(none.size() == 1);
    CHECK(none[0].isZero());
    const auto ten = enumerate_vectors(GramLattice(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}})), 0, 2);
    CHECK(std::find(ten.begin(), ten.end(), int_vector({1, 1, 1})) != ten.end());
  }

  TEST_CASE("enumerate_vectors agrees with a nested-loop oracle") {
    std::mt19937 rng(10);
    std::uniform_int_distribution<int> target(-6, 6);
    for (int t = 0; t < 50; ++t) {
      const int n = 1 + t % 4;
      const std::int64_t bound = 1 + t % 6;
      const IntMatrix g = random_symmetric(rng, n, 3, false);
      const int tv = target(rng);
      const auto lib = enumerate_vectors(GramLattice(g), tv, bound);
      std::vector<std::vector<std::int64_t>> mine;
      for (const auto& v : lib) mine.push_back(coords(v));
      CHECK(mine == oracle::box_vectors(g, tv, bound));
    }
  }

  TEST_CASE("hyperbolic plane search") {
    const auto u = find_hyperbolic_plane(standard_lattice(StandardName::U), 1);
    REQUIRE(u.plane);
    CHECK(u.plane->v == int_vector({1, 0}));
    CHECK(u.plane->w == int_vector({0, 1}));

    const GramLattice m10(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2}}));
    const auto h = find_hyperbolic_plane(m10, 5);
    REQUIRE(h.plane);
    CHECK(h.plane->v == int_vector({1, 1, 1}));
    CHECK(h.plane->w == int_vector({0, 1, 1}));

    const auto absent = find_hyperbolic_plane(GramLattice(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2}})), 30);
    CHECK(absent.status == SearchStatus::ProvenAbsent);
    CHECK_FALSE(absent.plane);

    CHECK_THROWS_AS(find_hyperbolic_plane(GramLattice(int_matrix({{1, 0}, {0, -1}})), 3), LatticeError);
  }

  TEST_CASE("hyperbolic plane output is always exact") {
    std::mt19937 rng(11);
    int found = 0;
    for (int t = 0; t < 80; ++t) {
      const GramLattice l(random_symmetric(rng, 2 + t % 3, 3, true));
      if (l.is_degenerate()) continue;
      const auto h = find_hyperbolic_plane(l, 4);
      if (!h.plane) continue;
      ++found;
      CHECK(l.norm(h.plane->v) == 0);
      CHECK(l.norm(h.plane->w) == 0);
      CHECK(l.pairing(h.plane->v, h.plane->w) == 1);
    }
    CHECK(found > 5);
  }

  TEST_CASE("anisotropy certificates are sound") {
    const GramLattice l(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2}}));
    CHECK(anisotropy_certificate(l).has_value());
    CHECK_FALSE(anisotropy_certificate(standard_lattice(StandardName::U)).has_value());
    std::mt19937 rng(12);
    for (int t = 0; t < 60; ++t) {
      const GramLattice g(random_symmetric(rng, 2 + t % 2, 3, true));
      if (g.is_degenerate()) continue;
      if (!anisotropy_certificate(g)) continue;
      const auto zero = enumerate_vectors(g, 0, 6);
      CHECK(zero.size() == 1);
    }
  }

  TEST_CASE("isometry search") {
    const auto found = is_isometric_small(GramLattice(int_matrix({{4, 5}, {5, 10}})),
                                          GramLattice(int_matrix({{4, 1}, {1, 4}})));
    REQUIRE(found.status == IsometryStatus::Found);
    const IntMatrix& t = *found.transform;
    CHECK(IntMatrix(t.transpose() * int_matrix({{4, 5}, {5, 10}}) * t) == int_matrix({{4, 1}, {1, 4}}));
    CHECK(abs(determinant(t)) == 1);

    CHECK(is_isometric_small(GramLattice(int_matrix({{2, 1}, {1, 2}})), GramLattice(int_matrix({{2, 0}, {0, 2}})))
              .status == IsometryStatus::ProvenNone);

    const auto u = is_isometric_small(GramLattice(int_matrix({{0, 1}, {1, 2}})), standard_lattice(StandardName::U));
    CHECK(u.status == IsometryStatus::Found);

    CHECK_THROWS_AS(is_isometric_small(standard_lattice(StandardName::E8), standard_lattice(StandardName::E8)),
                    LatticeError);

    std::mt19937 rng(13);
    for (int t = 0; t < 30; ++t) {
      IntMatrix g = random_symmetric(rng, 3, 2, false);
      g += IntMatrix::Identity(3, 3) * Integer(8);
      const IntMatrix p = unimodular(rng, 3);
      const IntMatrix h = p.transpose() * g * p;
      const auto r = is_isometric_small(GramLattice(g), GramLattice(h));
      REQUIRE(r.status == IsometryStatus::Found);
      CHECK(IntMatrix(r.transform->transpose() * g * *r.transform) == h);
    }
  }
}
