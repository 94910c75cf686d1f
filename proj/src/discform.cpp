#include "gmlattice/discform.hpp"

#include "gmlattice/error.hpp"

#include <algorithm>

namespace gmlat {

namespace {

RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

Integer lcm_of(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return detail::abs_value(Integer(a / gcd(a, b) * b));
}

Integer common_denominator(const RatVector& x) {
  Integer den = 1;
  for (Eigen::Index i = 0; i < x.size(); ++i) den = lcm_of(den, denominator_of(x(i)));
  return den;
}

RatVector concat(const RatVector& a, const RatVector& b) {
  RatVector out(a.size() + b.size());
  out << a, b;
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix g = IntMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  g.topLeftCorner(a.rows(), a.cols()) = a;
  g.bottomRightCorner(b.rows(), b.cols()) = b;
  return g;
}

Rational bilinear(const IntMatrix& gram, const RatVector& x, const RatVector& y) {
  Rational total = 0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    if (x(i) == 0) continue;
    Rational row = 0;
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (y(j) != 0 && gram(i, j) != 0) row += Rational(gram(i, j)) * y(j);
    }
    total += x(i) * row;
  }
  return total;
}

}  // namespace

Integer DiscriminantData::order() const {
  Integer n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

Rational q_value(const IntMatrix& gram, const RatVector& x) { return reduce_mod(bilinear(gram, x, x), 2); }

Rational b_value(const IntMatrix& gram, const RatVector& x, const RatVector& y) {
  return reduce_mod(bilinear(gram, x, y), 1);
}

bool in_dual(const IntMatrix& gram, const RatVector& x) {
  if (x.size() != gram.rows()) return false;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    Rational s = 0;
    for (Eigen::Index j = 0; j < gram.cols(); ++j) s += Rational(gram(i, j)) * x(j);
    if (denominator_of(s) != 1) return false;
  }
  return true;
}

DiscriminantData discriminant_group(const GramLattice& lattice) {
  if (lattice.is_degenerate()) {
    throw LatticeError(ErrorKind::DegenerateLattice, "discriminant group of a degenerate lattice");
  }
  if (!lattice.is_even()) {
    throw LatticeError(ErrorKind::InvalidInput, "discriminant form needs an even lattice");
  }
  DiscriminantData out;
  out.gram = lattice.gram();
  // U G V = D, so the dual lattice G^-1 Z^n is spanned by the columns of V D^-1.
  const auto snf = smith_normal_form(lattice.gram());
  for (Eigen::Index i = 0; i < snf.D.rows(); ++i) {
    const Integer& d = snf.D(i, i);
    if (d == 1) continue;
    out.invariant_factors.push_back(d);
    RatVector lift = to_rational(snf.V.col(i));
    lift /= Rational(d);
    out.generators.push_back(std::move(lift));
  }
  const auto k = static_cast<Eigen::Index>(out.generators.size());
  out.bmatrix = RatMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.qvalues.push_back(q_value(out.gram, out.generators[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < k; ++j) {
      out.bmatrix(i, j) = b_value(out.gram, out.generators[static_cast<std::size_t>(i)],
                                  out.generators[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

DiscriminantData direct_sum(const DiscriminantData& a, const DiscriminantData& b) {
  DiscriminantData out;
  out.gram = block_diagonal(a.gram, b.gram);
  const RatVector zero_a = RatVector::Zero(a.gram.rows());
  const RatVector zero_b = RatVector::Zero(b.gram.rows());
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    out.invariant_factors.push_back(a.invariant_factors[i]);
    out.generators.push_back(concat(a.generators[i], zero_b));
    out.qvalues.push_back(a.qvalues[i]);
  }
  for (std::size_t i = 0; i < b.generators.size(); ++i) {
    out.invariant_factors.push_back(b.invariant_factors[i]);
    out.generators.push_back(concat(zero_a, b.generators[i]));
    out.qvalues.push_back(b.qvalues[i]);
  }
  const auto ka = a.bmatrix.rows();
  const auto kb = b.bmatrix.rows();
  out.bmatrix = RatMatrix::Zero(ka + kb, ka + kb);
  out.bmatrix.topLeftCorner(ka, ka) = a.bmatrix;
  out.bmatrix.bottomRightCorner(kb, kb) = b.bmatrix;
  return out;
}

RatVector element(const DiscriminantData& form, const std::vector<Integer>& coefficients) {
  if (coefficients.size() != form.generators.size()) {
    throw LatticeError(ErrorKind::InvalidElement, "one coefficient per generator required");
  }
  RatVector x = RatVector::Zero(form.gram.rows());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] != 0) x += Rational(coefficients[i]) * form.generators[i];
  }
  return x;
}

namespace {

struct GlueVectors {
  IntMatrix gram;
  std::vector<RatVector> lifts;
};

GlueVectors glue_vectors(const GlueData& glue) {
  GlueVectors out;
  out.gram = block_diagonal(glue.left.gram(), glue.right.gram());
  for (const auto& [x, y] : glue.subgroup_gens) {
    if (!in_dual(glue.left.gram(), x) || !in_dual(glue.right.gram(), y)) {
      throw LatticeError(ErrorKind::InvalidElement, "glue generator is not a dual lattice element");
    }
    out.lifts.push_back(concat(x, y));
  }
  return out;
}

}  // namespace

bool check_isotropic(const GlueData& glue) {
  const GlueVectors gv = glue_vectors(glue);
  for (std::size_t i = 0; i < gv.lifts.size(); ++i) {
    if (q_value(gv.gram, gv.lifts[i]) != 0) return false;
    for (std::size_t j = i + 1; j < gv.lifts.size(); ++j) {
      if (b_value(gv.gram, gv.lifts[i], gv.lifts[j]) != 0) return false;
    }
  }
  return true;
}

GlueResult glue(const GlueData& data) {
  if (!check_isotropic(data)) {
    throw LatticeError(ErrorKind::GlueObstruction, "glue subgroup is not isotropic");
  }
  const GlueVectors gv = glue_vectors(data);
  const Eigen::Index n = gv.gram.rows();
  Integer den = 1;
  for (const auto& h : gv.lifts) den = lcm_of(den, common_denominator(h));

  IntMatrix scaled(n, n + static_cast<Eigen::Index>(gv.lifts.size()));
  scaled.leftCols(n) = den * IntMatrix::Identity(n, n);
  for (std::size_t k = 0; k < gv.lifts.size(); ++k) {
    const RatVector h = gv.lifts[k] * Rational(den);
    for (Eigen::Index i = 0; i < n; ++i) scaled(i, n + static_cast<Eigen::Index>(k)) = numerator_of(h(i));
  }
  const IntMatrix basis = column_basis(scaled);
  const IntMatrix product = basis.transpose() * gv.gram * basis;
  const Integer den2 = den * den;
  IntMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (product(i, j) % den2 != 0) {
        throw LatticeError(ErrorKind::GlueObstruction, "glued form is not integral");
      }
      gram(i, j) = product(i, j) / den2;
    }
  }
  GlueResult out;
  Integer volume = 1;
  for (Eigen::Index i = 0; i < n; ++i) volume *= den;
  out.index = volume / detail::abs_value(determinant(basis));
  out.basis = to_rational(basis) / Rational(den);
  out.lattice = GramLattice(std::move(gram));
  return out;
}

GlueExtensionReport glue_extension_check(const Sublattice& s, const Sublattice& k) {
  if (!(s.ambient() == k.ambient())) {
    throw LatticeError(ErrorKind::InvalidInput, "sublattices live in different lattices");
  }
  const GramLattice& ambient = s.ambient();
  const IntMatrix cross = s.basis().transpose() * ambient.gram() * k.basis();
  if (!cross.isZero()) {
    throw LatticeError(ErrorKind::NotOrthogonal, "sublattices are not orthogonal");
  }
  const Eigen::Index n = ambient.rank();
  if (s.rank() + k.rank() != n) {
    throw LatticeError(ErrorKind::InvalidInput, "S + K must have full rank");
  }
  IntMatrix joint(n, n);
  joint << s.basis(), k.basis();
  if (determinant(joint) == 0) {
    throw LatticeError(ErrorKind::InvalidInput, "S + K must have full rank");
  }

  GlueExtensionReport out;
  const GramLattice ls = s.lattice();
  const GramLattice lk = k.lattice();
  out.glue.left = ls;
  out.glue.right = lk;
  // L / (S + K) = Z^n / C Z^n; with U C V = D its generators have
  // coordinates V_i / d_i in the basis of S + K.
  const auto snf = smith_normal_form(joint);
  out.glue_order = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Integer& d = snf.D(i, i);
    out.glue_order *= d;
    if (d == 1) continue;
    out.glue_invariants.push_back(d);
    const RatVector coords = to_rational(snf.V.col(i)) / Rational(d);
    out.glue.subgroup_gens.emplace_back(coords.head(s.rank()), coords.tail(k.rank()));
  }
  out.isotropic = check_isotropic(out.glue);

  const DiscriminantData ds = discriminant_group(ls);
  const DiscriminantData dk = discriminant_group(lk);
  const DiscriminantData dsum = direct_sum(ds, dk);
  out.disc_order_s = ds.order();
  out.disc_order_k = dk.order();
  out.disc_order_l = detail::abs_value(ambient.determinant());

  std::vector<RatVector> h_lifts;
  for (const auto& [x, y] : out.glue.subgroup_gens) h_lifts.push_back(concat(x, y));
  const Integer total = dsum.order();
  if (total <= 1000000) {
    // Explicit count of H^perp inside d(S) + d(K).
    std::vector<Integer> c(dsum.generators.size(), 0);
    Integer count = 0;
    while (true) {
      const RatVector a = element(dsum, c);
      bool orthogonal = true;
      for (const auto& h : h_lifts) {
        if (b_value(dsum.gram, a, h) != 0) {
          orthogonal = false;
          break;
        }
      }
      if (orthogonal) ++count;
      std::size_t i = c.size();
      while (i > 0) {
        if (++c[i - 1] < dsum.invariant_factors[i - 1]) break;
        c[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
    out.perp_order = count;
  } else {
    out.perp_order = total / out.glue_order;
  }
  out.quotient_identity = out.glue_order * out.disc_order_l == out.perp_order;
  return out;
}

std::vector<IsotropicSubgroup> isotropic_order_two_subgroups(const DiscriminantData& form,
                                                            const Integer& quotient_order) {
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < form.invariant_factors.size(); ++i) {
    if (form.invariant_factors[i] % 2 == 0) even.push_back(i);
  }
  std::vector<IsotropicSubgroup> out;
  if (even.empty() || even.size() > 20) return out;
  const Integer quotient = form.order() / 4;
  if (quotient_order != 0 && quotient != quotient_order) return out;
  const std::uint64_t masks = std::uint64_t(1) << even.size();
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    std::vector<Integer> c(form.generators.size(), 0);
    for (std::size_t b = 0; b < even.size(); ++b) {
      if (mask & (std::uint64_t(1) << b)) c[even[b]] = form.invariant_factors[even[b]] / 2;
    }
    RatVector lift = element(form, c);
    if (q_value(form.gram, lift) != 0) continue;
    out.push_back({std::move(c), std::move(lift), quotient});
  }
  std::sort(out.begin(), out.end(),
            [](const IsotropicSubgroup& a, const IsotropicSubgroup& b) { return a.coefficients < b.coefficients; });
  return out;
}

}  // namespace gmlat
