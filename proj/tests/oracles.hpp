#pragma once

// Independent reference implementations used only by the tests. Each one
// takes the slow, obvious route so that it shares no code with the library.

#include "gmlattice/integer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using gmlat::Integer;
using gmlat::IntMatrix;

/// Leibniz expansion over all permutations.
inline Integer leibniz_det(const IntMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Integer term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Counts of positive, negative and zero eigenvalues in floating point.
/// Only for small, well-conditioned test matrices.
struct Inertia {
  long pos = 0, neg = 0, zero = 0;
};

inline Inertia float_inertia(const IntMatrix& m) {
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).convert_to<double>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  Inertia out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e > 1e-7) ++out.pos;
    else if (e < -1e-7) ++out.neg;
    else ++out.zero;
  }
  return out;
}

inline std::vector<std::pair<std::int64_t, int>> trial_factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline bool is_sum_of_two_squares(std::int64_t n) {
  for (std::int64_t x = 0; x * x <= n; ++x) {
    const std::int64_t r = n - x * x;
    const auto y = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(r))));
    for (std::int64_t t = std::max<std::int64_t>(0, y - 1); t <= y + 1; ++t)
      if (t * t == r) return true;
  }
  return false;
}

/// Smallest n >= 0 with n^2 - m a^2 = c over 0 <= n, a <= limit.
inline std::optional<std::pair<std::int64_t, std::int64_t>> brute_pell(std::int64_t m, std::int64_t c,
                                                                      std::int64_t limit) {
  std::optional<std::pair<std::int64_t, std::int64_t>> best;
  for (std::int64_t a = 0; a <= limit; ++a) {
    const Integer target = Integer(m) * a * a + c;
    if (target < 0) continue;
    const Integer n = gmlat::isqrt(target);
    if (n * n != target || n > limit) continue;
    const auto nn = n.convert_to<std::int64_t>();
    if (!best || nn < best->first) best = std::make_pair(nn, a);
  }
  return best;
}

/// f(x, y) over the box, in row-major order.
inline std::vector<std::int64_t> form_values(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t bound,
                                             std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = -bound; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y) {
      if (x == 0 && y == 0) continue;
      const std::int64_t v = a * x * x + b * x * y + c * y * y;
      if (v <= limit) out.push_back(v);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Every x in [-bound, bound]^n with x^T G x = target, by plain nested counting.
inline std::vector<std::vector<std::int64_t>> box_vectors(const IntMatrix& g, std::int64_t target,
                                                          std::int64_t bound) {
  const auto n = static_cast<std::size_t>(g.rows());
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(n, -bound);
  while (true) {
    std::int64_t q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        q += x[i] * g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).convert_to<std::int64_t>() * x[j];
    if (q == target) out.push_back(x);
    std::size_t k = n;
    while (k > 0 && x[k - 1] == bound) x[--k] = -bound;
    if (k == 0) break;
    ++x[k - 1];
  }
  return out;
}

}  // namespace oracle
