#include "gmlattice/lattice.hpp"

#include "gmlattice/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gmlat {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw LatticeError(ErrorKind::InvalidInput, "ragged matrix literal");
    }
    Eigen::Index j = 0;
    for (long long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

LatticeVector int_vector(std::initializer_list<long long> coords) {
  LatticeVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (long long x : coords) v(i++) = x;
  return v;
}

GramLattice::GramLattice(IntMatrix gram, std::string name)
    : gram_(std::move(gram)), name_(std::move(name)) {
  if (gram_.rows() != gram_.cols()) {
    throw LatticeError(ErrorKind::NotSymmetric, "Gram matrix is not square");
  }
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < gram_.cols(); ++j) {
      if (gram_(i, j) != gram_(j, i)) {
        std::ostringstream msg;
        msg << "Gram matrix is not symmetric at (" << i << "," << j << ")";
        throw LatticeError(ErrorKind::NotSymmetric, msg.str());
      }
    }
  }
  determinant_ = gmlat::determinant(gram_);
}

bool GramLattice::is_even() const {
  for (Eigen::Index i = 0; i < rank(); ++i) {
    if (gram_(i, i) % 2 != 0) return false;
  }
  return true;
}

Integer GramLattice::pairing(const LatticeVector& u, const LatticeVector& v) const {
  Integer total = 0;
  for (Eigen::Index i = 0; i < rank(); ++i) {
    if (u(i) == 0) continue;
    Integer row = 0;
    for (Eigen::Index j = 0; j < rank(); ++j) {
      if (v(j) != 0) row += gram_(i, j) * v(j);
    }
    total += u(i) * row;
  }
  return total;
}

LatticeVector GramLattice::pairings_with_basis(const LatticeVector& v) const {
  LatticeVector out(rank());
  for (Eigen::Index i = 0; i < rank(); ++i) {
    Integer s = 0;
    for (Eigen::Index j = 0; j < rank(); ++j) s += gram_(i, j) * v(j);
    out(i) = s;
  }
  return out;
}

GramLattice twist(const GramLattice& lattice, const Integer& factor) {
  if (factor == 0) throw LatticeError(ErrorKind::InvalidTwist, "twist factor must be nonzero");
  IntMatrix g = lattice.gram();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) *= factor;
  }
  std::string name = lattice.name().empty() ? std::string() : lattice.name() + "(" + to_string(factor) + ")";
  return GramLattice(std::move(g), std::move(name));
}

GramLattice direct_sum(const std::vector<GramLattice>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g = IntMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  std::string name;
  for (const auto& p : parts) {
    g.block(offset, offset, p.rank(), p.rank()) = p.gram();
    offset += p.rank();
    if (!name.empty()) name += " + ";
    name += p.name().empty() ? "?" : p.name();
  }
  return GramLattice(std::move(g), std::move(name));
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) { return direct_sum({a, b}); }

namespace {

GramLattice e8_lattice() {
  // Cartan matrix, Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 on node 4.
  IntMatrix g = IntMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = 2;
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (const auto& e : edges) {
    g(e[0], e[1]) = -1;
    g(e[1], e[0]) = -1;
  }
  return GramLattice(std::move(g), "E8");
}

GramLattice unit_diagonal(int positive, int negative) {
  if (positive < 0 || negative < 0) {
    throw LatticeError(ErrorKind::InvalidInput, "I(r,s) needs r, s >= 0");
  }
  IntMatrix g = IntMatrix::Zero(positive + negative, positive + negative);
  for (int i = 0; i < positive; ++i) g(i, i) = 1;
  for (int i = 0; i < negative; ++i) g(positive + i, positive + i) = -1;
  return GramLattice(std::move(g),
                     "I(" + std::to_string(positive) + "," + std::to_string(negative) + ")");
}

}  // namespace

GramLattice standard_lattice(StandardName name, const Integer& factor, int positive, int negative) {
  if (factor == 0) throw LatticeError(ErrorKind::InvalidTwist, "twist factor must be nonzero");
  const GramLattice u(int_matrix({{0, 1}, {1, 0}}), "U");
  GramLattice base;
  switch (name) {
    case StandardName::U:
      base = u;
      break;
    case StandardName::E8:
      base = e8_lattice();
      break;
    case StandardName::I:
      base = unit_diagonal(positive, negative);
      break;
    case StandardName::Lambda: {
      const GramLattice e8 = e8_lattice();
      base = GramLattice(direct_sum({e8, e8, u, u, twist(unit_diagonal(2, 0), 2)}).gram(), "Lambda");
      break;
    }
    case StandardName::LambdaTilde: {
      const GramLattice e8m = twist(e8_lattice(), -1);
      base = GramLattice(direct_sum({u, u, u, u, e8m, e8m}).gram(), "LambdaTilde");
      break;
    }
    case StandardName::LambdaTildeReversed: {
      const GramLattice e8 = e8_lattice();
      base = GramLattice(direct_sum({u, u, u, u, e8, e8}).gram(), "LambdaTilde(-1)");
      break;
    }
  }
  if (factor == 1) return base;
  return twist(base, factor);
}

Signature operator+(const Signature& a, const Signature& b) {
  return {a.positive + b.positive, a.negative + b.negative, a.null + b.null};
}

namespace {

Eigen::Index sign_variations(const std::vector<Integer>& coeffs) {
  Eigen::Index changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Signature signature(const IntMatrix& symmetric) {
  std::vector<Integer> poly = characteristic_polynomial(symmetric);
  const auto n = static_cast<Eigen::Index>(poly.size()) - 1;
  Signature sig;
  // Root 0 with multiplicity = number of trailing zero coefficients.
  while (poly.size() > 1 && poly.back() == 0) {
    poly.pop_back();
    ++sig.null;
  }
  // All roots are real, so Descartes' count is exact.
  sig.positive = sign_variations(poly);
  std::vector<Integer> reflected = poly;
  const auto degree = static_cast<Eigen::Index>(poly.size()) - 1;
  for (Eigen::Index i = 0; i <= degree; ++i) {
    if ((degree - i) % 2 == 1) reflected[static_cast<std::size_t>(i)] = -reflected[static_cast<std::size_t>(i)];
  }
  sig.negative = sign_variations(reflected);
  eigen_assert(sig.positive + sig.negative + sig.null == n);
  (void)n;
  return sig;
}

Sublattice::Sublattice(GramLattice ambient, IntMatrix basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_.rank()) {
    throw LatticeError(ErrorKind::InvalidInput, "basis vectors do not match the ambient rank");
  }
  if (gmlat::rank(basis_) != basis_.cols()) {
    throw LatticeError(ErrorKind::InvalidInput, "sublattice basis is not linearly independent");
  }
}

Sublattice Sublattice::from_vectors(GramLattice ambient, const std::vector<LatticeVector>& vectors) {
  IntMatrix basis(ambient.rank(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient.rank()) {
      throw LatticeError(ErrorKind::InvalidInput, "vector length does not match the ambient rank");
    }
    basis.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return Sublattice(std::move(ambient), std::move(basis));
}

IntMatrix Sublattice::induced_gram() const {
  const IntMatrix gb = ambient_.gram() * basis_;
  return basis_.transpose() * gb;
}

bool Sublattice::is_primitive() const {
  for (const auto& f : invariant_factors(basis_)) {
    if (f != 1) return false;
  }
  return true;
}

Sublattice orthogonal_complement(const Sublattice& sub) {
  const GramLattice& ambient = sub.ambient();
  if (sub.rank() == 0) {
    return Sublattice(ambient, IntMatrix::Identity(ambient.rank(), ambient.rank()));
  }
  const IntMatrix constraints = sub.basis().transpose() * ambient.gram();
  return Sublattice(ambient, integer_kernel(constraints));
}

Sublattice orthogonal_complement(const GramLattice& lattice, const Sublattice& sub) {
  if (!(lattice == sub.ambient())) {
    throw LatticeError(ErrorKind::InvalidInput, "sublattice does not live in this lattice");
  }
  return orthogonal_complement(sub);
}

Saturation saturate(const Sublattice& sub) {
  Integer index = 1;
  for (const auto& f : invariant_factors(sub.basis())) index *= f;
  if (index == 1) return {sub, Integer(1)};
  const GramLattice& ambient = sub.ambient();
  const Eigen::Index n = ambient.rank();
  if (sub.rank() == n) {
    return {Sublattice(ambient, IntMatrix::Identity(n, n)), index};
  }
  // Q-span ∩ Z^n is the annihilator of the annihilator.
  const IntMatrix transposed = sub.basis().transpose();
  const IntMatrix annihilator = integer_kernel(transposed);
  const IntMatrix annihilator_rows = annihilator.transpose();
  return {Sublattice(ambient, integer_kernel(annihilator_rows)), index};
}

Saturation saturate(const GramLattice& lattice, const Sublattice& sub) {
  if (!(lattice == sub.ambient())) {
    throw LatticeError(ErrorKind::InvalidInput, "sublattice does not live in this lattice");
  }
  return saturate(sub);
}

std::vector<LatticeVector> enumerate_vectors(const GramLattice& lattice, const Integer& target,
                                             const std::vector<std::int64_t>& bounds) {
  const Eigen::Index n = lattice.rank();
  if (static_cast<Eigen::Index>(bounds.size()) != n) {
    throw LatticeError(ErrorKind::InvalidInput, "one bound per coordinate required");
  }
  for (auto b : bounds) {
    if (b < 0) throw LatticeError(ErrorKind::InvalidInput, "coordinate bounds must be nonnegative");
  }
  std::vector<LatticeVector> out;
  if (n == 0) {
    if (target == 0) out.emplace_back(0);
    return out;
  }
  const IntMatrix& g = lattice.gram();
  const Eigen::Index last = n - 1;
  const Integer last_bound = bounds[static_cast<std::size_t>(last)];
  const Integer& a = g(last, last);

  LatticeVector x = LatticeVector::Zero(n);
  for (Eigen::Index i = 0; i < last; ++i) x(i) = -bounds[static_cast<std::size_t>(i)];

  std::vector<Integer> roots;
  while (true) {
    // Norm of x = a z^2 + 2 s z + c with z the last coordinate.
    Integer s = 0;
    Integer c = 0;
    for (Eigen::Index i = 0; i < last; ++i) {
      if (x(i) == 0) continue;
      s += g(i, last) * x(i);
      Integer row = 0;
      for (Eigen::Index j = 0; j < last; ++j) {
        if (x(j) != 0) row += g(i, j) * x(j);
      }
      c += x(i) * row;
    }
    roots.clear();
    const Integer rhs = c - target;
    if (a == 0) {
      if (s == 0) {
        if (rhs == 0) {
          for (Integer z = -last_bound; z <= last_bound; ++z) roots.push_back(z);
        }
      } else if (rhs % (2 * s) == 0) {
        roots.push_back(Integer(-rhs / (2 * s)));
      }
    } else {
      const Integer disc = s * s - a * rhs;
      if (disc >= 0) {
        if (auto r = exact_sqrt(disc)) {
          for (const Integer& num : {Integer(-s - *r), Integer(-s + *r)}) {
            if (num % a == 0) roots.push_back(Integer(num / a));
          }
          std::sort(roots.begin(), roots.end());
          roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        }
      }
    }
    for (const auto& z : roots) {
      if (z < -last_bound || z > last_bound) continue;
      x(last) = z;
      out.push_back(x);
    }
    x(last) = 0;
    // Odometer over the prefix.
    Eigen::Index i = last - 1;
    while (i >= 0) {
      if (x(i) < bounds[static_cast<std::size_t>(i)]) {
        x(i) += 1;
        break;
      }
      x(i) = -bounds[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<LatticeVector> enumerate_vectors(const GramLattice& lattice, const Integer& target,
                                             std::int64_t bound) {
  if (bound < 1) throw LatticeError(ErrorKind::InvalidInput, "coordinate bound must be >= 1");
  return enumerate_vectors(lattice, target,
                           std::vector<std::int64_t>(static_cast<std::size_t>(lattice.rank()), bound));
}

namespace {

Integer sup_norm(const LatticeVector& v) {
  Integer m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, detail::abs_value(Integer(v(i))));
  return m;
}

int leading_sign(const LatticeVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > 0) return 1;
    if (v(i) < 0) return -1;
  }
  return 0;
}

Integer vector_content(const LatticeVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, Integer(v(i)));
  return g;
}

// Box vectors u with coeffs . u = 1, via a linear solve on one coordinate.
std::vector<LatticeVector> solve_unit_pairing(const LatticeVector& coeffs, std::int64_t bound) {
  const Eigen::Index n = coeffs.size();
  Eigen::Index pivot = -1;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (coeffs(i) != 0) {
      pivot = i;
      break;
    }
  }
  std::vector<LatticeVector> out;
  if (pivot < 0) return out;
  std::vector<Eigen::Index> free_coords;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i != pivot) free_coords.push_back(i);
  }
  LatticeVector x = LatticeVector::Zero(n);
  for (auto i : free_coords) x(i) = -bound;
  while (true) {
    Integer partial = 0;
    for (auto i : free_coords) partial += coeffs(i) * x(i);
    const Integer rest = 1 - partial;
    if (rest % coeffs(pivot) == 0) {
      const Integer z = rest / coeffs(pivot);
      if (z >= -bound && z <= bound) {
        x(pivot) = z;
        out.push_back(x);
        x(pivot) = 0;
      }
    }
    std::size_t k = free_coords.size();
    while (k > 0) {
      const auto i = free_coords[k - 1];
      if (x(i) < bound) {
        x(i) += 1;
        break;
      }
      x(i) = -bound;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace

bool shell_order_less(const LatticeVector& a, const LatticeVector& b) {
  const Integer sa = sup_norm(a);
  const Integer sb = sup_norm(b);
  if (sa != sb) return sa < sb;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFoundWithinBound: return "not-found-within-bound";
    case SearchStatus::ProvenAbsent: return "proven-absent";
  }
  return "unknown";
}

std::optional<std::string> anisotropy_certificate(const GramLattice& lattice,
                                                  std::int64_t residue_budget) {
  if (lattice.is_degenerate() || lattice.rank() == 0) return std::nullopt;
  const Eigen::Index n = lattice.rank();
  // Candidate primes: those dividing 2 det.
  Integer m = detail::abs_value(Integer(2 * lattice.determinant()));
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; Integer(p) * p <= m; ++p) {
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1 && m < Integer(residue_budget)) primes.push_back(static_cast<std::int64_t>(m));

  for (std::int64_t p : primes) {
    std::int64_t modulus = p;
    for (int k = 1;; ++k, modulus *= p) {
      double count = 1;
      for (Eigen::Index i = 0; i < n; ++i) count *= static_cast<double>(modulus);
      if (count > static_cast<double>(residue_budget)) break;
      std::vector<std::int64_t> g(static_cast<std::size_t>(n * n));
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          g[static_cast<std::size_t>(i * n + j)] =
              static_cast<std::int64_t>(mod_floor(Integer(lattice.gram()(i, j)), Integer(modulus)));
        }
      }
      std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
      bool found = false;
      while (!found) {
        bool primitive = false;
        for (auto c : x) {
          if (c % p != 0) primitive = true;
        }
        if (primitive) {
          std::int64_t q = 0;
          for (Eigen::Index i = 0; i < n; ++i) {
            std::int64_t row = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
              row = (row + g[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)]) % modulus;
            }
            q = (q + row * x[static_cast<std::size_t>(i)]) % modulus;
          }
          if (q == 0) found = true;
        }
        std::size_t i = x.size();
        while (i > 0) {
          if (++x[i - 1] < modulus) break;
          x[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
      if (!found) {
        std::ostringstream msg;
        msg << "no primitive residue vector with x^T G x = 0 mod " << p;
        if (k > 1) msg << "^" << k;
        return msg.str();
      }
    }
  }
  return std::nullopt;
}

HyperbolicSearch find_hyperbolic_plane(const GramLattice& lattice, std::int64_t bound) {
  if (!lattice.is_even()) {
    throw LatticeError(ErrorKind::InvalidInput, "hyperbolic plane search needs an even lattice");
  }
  HyperbolicSearch out;
  out.bound = bound;
  if (lattice.rank() < 2) {
    out.status = SearchStatus::ProvenAbsent;
    out.certificate = "rank below 2";
    return out;
  }
  Integer content = 0;
  for (Eigen::Index i = 0; i < lattice.rank(); ++i) {
    for (Eigen::Index j = 0; j < lattice.rank(); ++j) content = gcd(content, Integer(lattice.gram()(i, j)));
  }
  if (content != 1) {
    out.status = SearchStatus::ProvenAbsent;
    out.certificate = "every pairing is divisible by " + to_string(content);
    return out;
  }

  std::vector<LatticeVector> isotropic;
  for (auto& v : enumerate_vectors(lattice, 0, bound)) {
    if (leading_sign(v) != 0) isotropic.push_back(std::move(v));
  }
  std::sort(isotropic.begin(), isotropic.end(), shell_order_less);

  for (const auto& v : isotropic) {
    if (leading_sign(v) < 0) continue;
    for (const auto& u : isotropic) {
      if (lattice.pairing(v, u) == 1) {
        out.status = SearchStatus::Found;
        out.plane = HyperbolicPlane{v, u};
        return out;
      }
    }
    const LatticeVector coeffs = lattice.pairings_with_basis(v);
    if (vector_content(coeffs) != 1) continue;
    auto partners = solve_unit_pairing(coeffs, bound);
    if (partners.empty()) continue;
    const auto best = std::min_element(partners.begin(), partners.end(), shell_order_less);
    const Integer half_norm = lattice.norm(*best) / 2;
    LatticeVector w = *best - half_norm * v;
    out.status = SearchStatus::Found;
    out.plane = HyperbolicPlane{v, std::move(w)};
    return out;
  }

  if (isotropic.empty()) {
    if (auto cert = anisotropy_certificate(lattice)) {
      out.status = SearchStatus::ProvenAbsent;
      out.certificate = *cert;
      return out;
    }
  }
  out.status = SearchStatus::NotFoundWithinBound;
  return out;
}

const char* to_string(IsometryStatus status) {
  switch (status) {
    case IsometryStatus::Found: return "found";
    case IsometryStatus::ProvenNone: return "proven-none";
    case IsometryStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

Integer principal_minor(const IntMatrix& g, Eigen::Index skip) {
  const Eigen::Index n = g.rows();
  IntMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i == skip) continue;
    for (Eigen::Index j = 0, c = 0; j < n; ++j) {
      if (j == skip) continue;
      minor(r, c++) = g(i, j);
    }
    ++r;
  }
  return determinant(minor);
}

}  // namespace

IsometrySearch is_isometric_small(const GramLattice& first, const GramLattice& second,
                                  const IsometryOptions& options) {
  IsometrySearch out;
  const Eigen::Index n = first.rank();
  if (n > options.rank_cap || second.rank() > options.rank_cap) {
    throw LatticeError(ErrorKind::UnsupportedRank,
                       "isometry search is limited to rank " + std::to_string(options.rank_cap));
  }
  auto none = [&](std::string reason) {
    out.status = IsometryStatus::ProvenNone;
    out.reason = std::move(reason);
    return out;
  };
  if (second.rank() != n) return none("ranks differ");
  if (first.determinant() != second.determinant()) return none("determinants differ");
  if (first.is_even() != second.is_even()) return none("parities differ");
  const Signature sig = signature(first);
  if (!(sig == signature(second))) return none("signatures differ");
  if (n == 0) {
    out.status = IsometryStatus::Found;
    out.transform = IntMatrix(0, 0);
    return out;
  }
  if (first.is_degenerate()) {
    throw LatticeError(ErrorKind::DegenerateLattice, "isometry search needs nondegenerate lattices");
  }

  const bool definite = sig.positive == n || sig.negative == n;
  const Integer sign = (definite && sig.negative == n) ? Integer(-1) : Integer(1);
  const GramLattice g1 = sign == 1 ? first : twist(first, -1);
  const GramLattice g2 = sign == 1 ? second : twist(second, -1);

  if (!definite && detail::abs_value(first.determinant()) > options.determinant_cap) {
    out.status = IsometryStatus::Inconclusive;
    out.reason = "determinant above the configured cap";
    return out;
  }

  std::vector<std::vector<LatticeVector>> candidates(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Integer target = g2.gram()(j, j);
    std::vector<std::int64_t> bounds(static_cast<std::size_t>(n), options.indefinite_bound);
    if (definite) {
      // x_i^2 <= N (G^-1)_ii by Cauchy-Schwarz in the form's metric.
      for (Eigen::Index i = 0; i < n; ++i) {
        const Integer cofactor = n == 1 ? Integer(1) : principal_minor(g1.gram(), i);
        bounds[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(isqrt(Integer(target * cofactor / g1.determinant())));
      }
    }
    candidates[static_cast<std::size_t>(j)] = enumerate_vectors(g1, target, bounds);
  }

  IntMatrix t = IntMatrix::Zero(n, n);
  std::function<bool(Eigen::Index)> extend = [&](Eigen::Index j) -> bool {
    if (j == n) {
      const Integer det = determinant(t);
      return det == 1 || det == -1;
    }
    for (const auto& c : candidates[static_cast<std::size_t>(j)]) {
      bool ok = true;
      for (Eigen::Index i = 0; i < j && ok; ++i) {
        const LatticeVector col = t.col(i);
        ok = g1.pairing(col, c) == g2.gram()(i, j);
      }
      if (!ok) continue;
      t.col(j) = c;
      if (extend(j + 1)) return true;
    }
    return false;
  };
  if (extend(0)) {
    out.status = IsometryStatus::Found;
    out.transform = t;
    return out;
  }
  if (definite) return none("exhaustive search over all vectors of the required norms");
  out.status = IsometryStatus::Inconclusive;
  out.reason = "no isometry with coordinates bounded by " + std::to_string(options.indefinite_bound);
  return out;
}

}  // namespace gmlat
