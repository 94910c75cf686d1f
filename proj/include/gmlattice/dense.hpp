#pragma once

// Exact dense kernels over a Euclidean scalar (Integer, or a built-in
// integer type when entries are known to stay small). Everything here is
// fraction-free: no division that is not exact.

#include "gmlattice/integer.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace gmlat {

/// Determinant by Bareiss elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(input.rows() == input.cols());
  Matrix<Scalar> a = input;
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar previous(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == Scalar(0)) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (a(i, k) != Scalar(0)) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return Scalar(0);
      a.row(k).swap(a.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Coefficients of det(x I - M) in decreasing degree; c[0] = 1.
/// Berkowitz's algorithm, division-free.
template <typename Derived>
std::vector<typename Derived::Scalar> characteristic_polynomial(
    const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(input.rows() == input.cols());
  const Eigen::Index n = input.rows();
  std::vector<Scalar> poly{Scalar(1)};
  if (n == 0) return poly;
  poly.push_back(-Scalar(input(0, 0)));
  for (Eigen::Index r = 1; r < n; ++r) {
    const Matrix<Scalar> lead = input.topLeftCorner(r, r);
    const Matrix<Scalar> row = input.block(r, 0, 1, r);
    Vector<Scalar> column = input.block(0, r, r, 1);
    // Toeplitz column: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S
    std::vector<Scalar> toeplitz;
    toeplitz.reserve(static_cast<std::size_t>(r) + 2);
    toeplitz.push_back(Scalar(1));
    toeplitz.push_back(-Scalar(input(r, r)));
    for (Eigen::Index k = 0; k < r; ++k) {
      Scalar value(0);
      for (Eigen::Index i = 0; i < r; ++i) value += row(0, i) * column(i);
      toeplitz.push_back(-value);
      if (k + 1 < r) column = (lead * column).eval();
    }
    std::vector<Scalar> next(poly.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < next.size(); ++i) {
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) {
        if (i - j < toeplitz.size()) next[i] += toeplitz[i - j] * poly[j];
      }
    }
    poly = std::move(next);
  }
  return poly;
}

namespace detail {

// Replace rows (i, j) of m by [s t; u v] * [row_i; row_j].
template <typename Scalar>
void combine_rows(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& s,
                  const Scalar& t, const Scalar& u, const Scalar& v) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Scalar x = m(i, c);
    const Scalar y = m(j, c);
    m(i, c) = s * x + t * y;
    m(j, c) = u * x + v * y;
  }
}

template <typename Scalar>
void combine_cols(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& s,
                  const Scalar& t, const Scalar& u, const Scalar& v) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Scalar x = m(r, i);
    const Scalar y = m(r, j);
    m(r, i) = s * x + t * y;
    m(r, j) = u * x + v * y;
  }
}

}  // namespace detail

/// U * M = H with U unimodular and H in row echelon form: positive pivots,
/// entries above each pivot reduced into [0, pivot).
template <typename Scalar>
struct HermiteDecomposition {
  Matrix<Scalar> H;
  Matrix<Scalar> U;
  Eigen::Index rank = 0;
};

template <typename Derived>
HermiteDecomposition<typename Derived::Scalar> hermite_normal_form(
    const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  HermiteDecomposition<Scalar> out;
  out.H = input;
  out.U = Matrix<Scalar>::Identity(input.rows(), input.rows());
  Matrix<Scalar>& h = out.H;
  Matrix<Scalar>& u = out.U;
  const Eigen::Index m = h.rows();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < h.cols() && row < m; ++col) {
    for (Eigen::Index i = row + 1; i < m; ++i) {
      if (h(i, col) == Scalar(0)) continue;
      const Scalar a = h(row, col);
      const Scalar b = h(i, col);
      const auto bz = extended_gcd(a, b);
      const Scalar u21 = -(b / bz.g);
      const Scalar u22 = a / bz.g;
      detail::combine_rows(h, row, i, bz.s, bz.t, u21, u22);
      detail::combine_rows(u, row, i, bz.s, bz.t, u21, u22);
    }
    if (h(row, col) == Scalar(0)) continue;
    if (h(row, col) < Scalar(0)) {
      h.row(row) = -h.row(row);
      u.row(row) = -u.row(row);
    }
    for (Eigen::Index i = 0; i < row; ++i) {
      const Scalar q = floor_div(Scalar(h(i, col)), Scalar(h(row, col)));
      if (q == Scalar(0)) continue;
      h.row(i) -= q * h.row(row);
      u.row(i) -= q * u.row(row);
    }
    ++row;
  }
  out.rank = row;
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return hermite_normal_form(m).rank;
}

/// U * M * V = D with D diagonal, nonnegative, d_1 | d_2 | ..., and U, V
/// unimodular.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> D;
  Matrix<Scalar> U;
  Matrix<Scalar> V;

  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> out;
    for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
  }
};

template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  SmithDecomposition<Scalar> out;
  out.D = input;
  out.U = Matrix<Scalar>::Identity(input.rows(), input.rows());
  out.V = Matrix<Scalar>::Identity(input.cols(), input.cols());
  Matrix<Scalar>& d = out.D;
  const Eigen::Index m = d.rows();
  const Eigen::Index n = d.cols();
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      Eigen::Index pi = -1, pj = -1;
      Scalar best(0);
      for (Eigen::Index i = t; i < m; ++i) {
        for (Eigen::Index j = t; j < n; ++j) {
          if (d(i, j) == Scalar(0)) continue;
          const Scalar a = detail::abs_value(Scalar(d(i, j)));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) return out;
      if (pi != t) {
        d.row(t).swap(d.row(pi));
        out.U.row(t).swap(out.U.row(pi));
      }
      if (pj != t) {
        d.col(t).swap(d.col(pj));
        out.V.col(t).swap(out.V.col(pj));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        const Scalar q = floor_div(Scalar(d(i, t)), Scalar(d(t, t)));
        if (q != Scalar(0)) {
          d.row(i) -= q * d.row(t);
          out.U.row(i) -= q * out.U.row(t);
        }
        if (d(i, t) != Scalar(0)) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        const Scalar q = floor_div(Scalar(d(t, j)), Scalar(d(t, t)));
        if (q != Scalar(0)) {
          d.col(j) -= q * d.col(t);
          out.V.col(j) -= q * out.V.col(t);
        }
        if (d(t, j) != Scalar(0)) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < m && bad_row < 0; ++i) {
        for (Eigen::Index j = t + 1; j < n; ++j) {
          if (d(i, j) % d(t, t) != Scalar(0)) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      d.row(t) += d.row(bad_row);
      out.U.row(t) += out.U.row(bad_row);
    }
    if (d(t, t) < Scalar(0)) {
      d.row(t) = -d.row(t);
      out.U.row(t) = -out.U.row(t);
    }
  }
  return out;
}

/// Nonzero diagonal entries of the Smith form.
template <typename Derived>
std::vector<typename Derived::Scalar> invariant_factors(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> out;
  for (const auto& x : smith_normal_form(m).diagonal()) {
    if (x != Scalar(0)) out.push_back(x);
  }
  return out;
}

/// Rows of a matrix reduced to Hermite form, zero rows dropped.
template <typename Derived>
Matrix<typename Derived::Scalar> hermite_rows(const Eigen::MatrixBase<Derived>& rows) {
  auto hnf = hermite_normal_form(rows);
  return hnf.H.topRows(hnf.rank);
}

/// Columns form a basis of {x in Z^n : M x = 0}, in Hermite-reduced form.
/// The returned basis is primitive.
template <typename Derived>
Matrix<typename Derived::Scalar> integer_kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> transposed = m.transpose();
  auto hnf = hermite_normal_form(transposed);
  const Eigen::Index n = m.cols();
  const Eigen::Index nullity = n - hnf.rank;
  if (nullity == 0) return Matrix<Scalar>(n, 0);
  const Matrix<Scalar> kernel_rows = hnf.U.bottomRows(nullity);
  return hermite_rows(kernel_rows).transpose();
}

/// Columns form a basis of the Z-span of the columns of m.
template <typename Derived>
Matrix<typename Derived::Scalar> column_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> transposed = m.transpose();
  return hermite_rows(transposed).transpose();
}

}  // namespace gmlat
