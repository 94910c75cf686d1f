#include "gmlattice/pell_forms.hpp"

#include "gmlattice/error.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <random>

namespace gmlat {

bool BinaryForm::is_reduced() const {
  const Integer abs_b = detail::abs_value(b);
  if (!(abs_b <= a && a <= c)) return false;
  if ((abs_b == a || a == c) && b < 0) return false;
  return true;
}

std::string to_string(const BinaryForm& f) {
  return to_string(f.a) + " " + to_string(f.b) + " " + to_string(f.c);
}

IntMatrix gram_of(const BinaryForm& f) {
  IntMatrix g(2, 2);
  g << 2 * f.a, f.b, f.b, 2 * f.c;
  return g;
}

ContinuedFraction cf_sqrt(const Integer& m) {
  if (m < 2) throw LatticeError(ErrorKind::Domain, "continued fraction of sqrt(m) needs m >= 2");
  const Integer root = isqrt(m);
  if (root * root == m) throw LatticeError(ErrorKind::SquareInput, to_string(m) + " is a perfect square");
  ContinuedFraction out;
  out.a0 = root;
  Integer mk = 0;
  Integer dk = 1;
  Integer ak = root;
  while (ak != 2 * root) {
    mk = dk * ak - mk;
    dk = (m - mk * mk) / dk;
    ak = (root + mk) / dk;
    out.period.push_back(ak);
  }
  return out;
}

namespace {

// Convergents p_k / q_k of sqrt(m) for k = 0 .. count-1.
std::vector<std::pair<Integer, Integer>> convergents(const ContinuedFraction& cf, std::size_t count) {
  std::vector<std::pair<Integer, Integer>> out;
  Integer p_prev = 1, q_prev = 0;
  Integer p = cf.a0, q = 1;
  out.emplace_back(p, q);
  for (std::size_t k = 1; k < count; ++k) {
    const Integer& a = cf.period[(k - 1) % cf.period.size()];
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.emplace_back(p, q);
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> small;
  std::vector<Integer> large;
  const Integer x = detail::abs_value(n);
  for (Integer d = 1; d * d <= x; ++d) {
    if (x % d != 0) continue;
    small.push_back(d);
    if (d * d != x) large.push_back(x / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

void sort_unique(std::vector<PellSolution>& sols) {
  std::sort(sols.begin(), sols.end(), [](const PellSolution& l, const PellSolution& r) {
    return l.n != r.n ? l.n < r.n : l.a < r.a;
  });
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
}

std::vector<PellSolution> pell_square(const Integer& s, const Integer& m, const Integer& c) {
  // (n - s a)(n + s a) = c.
  std::vector<PellSolution> out;
  for (const auto& d : divisors(c)) {
    for (const Integer& u : {d, Integer(-d)}) {
      const Integer v = c / u;
      if ((u + v) % 2 != 0) continue;
      const Integer n = (u + v) / 2;
      const Integer diff = v - u;
      if (diff % (2 * s) != 0) continue;
      const Integer a = diff / (2 * s);
      if (n < 0 || a < 0) continue;
      out.push_back({n, a, m, c});
    }
  }
  sort_unique(out);
  return out;
}

// Smallest-|n| member of the class of (n, a) under the fundamental unit,
// folded to n, a >= 0.
PellSolution reduce_in_class(PellSolution s, const PellSolution& unit) {
  while (true) {
    const Integer n2 = s.n * unit.n - s.m * s.a * unit.a;
    const Integer a2 = s.a * unit.n - s.n * unit.a;
    if (detail::abs_value(n2) >= detail::abs_value(s.n)) break;
    s.n = n2;
    s.a = a2;
  }
  s.n = detail::abs_value(s.n);
  s.a = detail::abs_value(s.a);
  return s;
}

std::vector<PellSolution> pell_by_convergents(const Integer& m, const Integer& c, const PellSolution& unit) {
  const ContinuedFraction cf = cf_sqrt(m);
  const auto conv = convergents(cf, 2 * cf.period.size());
  std::vector<PellSolution> out;
  // Solutions with gcd(n, a) = g come from c / g^2.
  for (Integer g = 1; g * g <= detail::abs_value(c); ++g) {
    if (c % (g * g) != 0) continue;
    const Integer reduced = c / (g * g);
    for (const auto& [p, q] : conv) {
      if (p * p - m * q * q == reduced) {
        out.push_back(reduce_in_class({Integer(g * p), Integer(g * q), m, c}, unit));
      }
    }
  }
  sort_unique(out);
  return out;
}

}  // namespace

std::optional<PellSolution> negative_pell(const Integer& m) {
  if (m < 1) throw LatticeError(ErrorKind::Domain, "negative Pell equation needs m >= 1");
  if (m == 1) return PellSolution{0, 1, 1, -1};
  if (is_square(m)) return std::nullopt;
  const ContinuedFraction cf = cf_sqrt(m);
  const std::size_t period = cf.period.size();
  if (period % 2 == 0) return std::nullopt;
  const auto conv = convergents(cf, period);
  const auto& [n, a] = conv.back();
  return PellSolution{n, a, m, -1};
}

PellSolution pell_fundamental(const Integer& m) {
  const ContinuedFraction cf = cf_sqrt(m);
  const std::size_t period = cf.period.size();
  const auto conv = convergents(cf, period % 2 == 0 ? period : 2 * period);
  const auto& [n, a] = conv.back();
  return {n, a, m, 1};
}

std::vector<PellSolution> pell_general(const Integer& m, const Integer& c, const Integer& cap) {
  if (m < 1) throw LatticeError(ErrorKind::Domain, "Pell equation needs m >= 1");
  if (c == 0) throw LatticeError(ErrorKind::Domain, "Pell equation needs c != 0");
  if (detail::abs_value(c) > cap) {
    throw LatticeError(ErrorKind::SearchCap, "|c| = " + to_string(detail::abs_value(c)) + " exceeds the cap");
  }
  if (auto s = exact_sqrt(m)) return pell_square(*s, m, c);

  const PellSolution unit = pell_fundamental(m);
  // Small |c|: every primitive solution is a convergent of sqrt(m).
  if (c * c < m) return pell_by_convergents(m, c, unit);
  const Integer abs_c = detail::abs_value(c);
  // Every class has a member with a^2 <= y1^2 |c| / (2 (x1 +- 1)).
  const Integer shift = c > 0 ? Integer(unit.n + 1) : Integer(unit.n - 1);
  const Integer a_max = isqrt(unit.a * unit.a * abs_c / (2 * shift));
  const Integer scan_limit = 10000000;
  if (a_max <= scan_limit) {
    std::vector<PellSolution> out;
    for (Integer a = 0; a <= a_max; ++a) {
      const Integer n2 = c + m * a * a;
      if (n2 < 0) continue;
      if (auto n = exact_sqrt(n2)) out.push_back({*n, a, m, c});
    }
    sort_unique(out);
    return out;
  }
  throw LatticeError(ErrorKind::SearchCap, "fundamental unit too large for a direct scan with this c");
}

FormReduction reduce_form(const BinaryForm& f) {
  if (!f.is_positive_definite()) {
    throw LatticeError(ErrorKind::UnsupportedForm, "reduction needs a positive definite form");
  }
  BinaryForm g = f;
  IntMatrix t = IntMatrix::Identity(2, 2);
  auto translate = [&](const Integer& k) {
    // (x, y) -> (x + k y, y)
    g = {g.a, Integer(g.b + 2 * g.a * k), Integer(g.a * k * k + g.b * k + g.c)};
    t.col(1) += k * t.col(0);
  };
  auto swap = [&] {
    // (x, y) -> (-y, x)
    g = {g.c, Integer(-g.b), g.a};
    const IntVector first = t.col(0);
    t.col(0) = t.col(1);
    t.col(1) = -first;
  };
  while (true) {
    if (g.b > g.a || g.b <= -g.a) translate(floor_div(Integer(g.a - g.b), Integer(2 * g.a)));
    if (g.a > g.c) {
      swap();
      continue;
    }
    break;
  }
  if (g.b < 0 && g.a == g.c) swap();
  return {g, t};
}

std::optional<std::pair<Integer, Integer>> represents(const BinaryForm& f, const Integer& value) {
  if (!f.is_positive_definite()) {
    throw LatticeError(ErrorKind::UnsupportedForm, "representation search needs a positive definite form");
  }
  if (value < 0) throw LatticeError(ErrorKind::Domain, "value must be nonnegative");
  if (value == 0) return std::make_pair(Integer(0), Integer(0));
  const Integer disc = -f.discriminant();
  // 4 a f = (2 a x + b y)^2 + |D| y^2 and symmetrically for x.
  const Integer x_max = isqrt(4 * f.c * value / disc);
  for (Integer x = 0; x <= x_max; ++x) {
    // c y^2 + b x y + (a x^2 - value) = 0
    const Integer delta = f.b * f.b * x * x - 4 * f.c * (f.a * x * x - value);
    const auto root = exact_sqrt(delta);
    if (!root) continue;
    std::vector<Integer> ys;
    for (const Integer& num : {Integer(-f.b * x + *root), Integer(-f.b * x - *root)}) {
      if (num % (2 * f.c) == 0) ys.push_back(num / (2 * f.c));
    }
    std::sort(ys.begin(), ys.end(), [](const Integer& l, const Integer& r) {
      const Integer al = detail::abs_value(l), ar = detail::abs_value(r);
      return al != ar ? al < ar : l > r;
    });
    for (const auto& y : ys) {
      if (x == 0 && y == 0) continue;
      return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

std::vector<Integer> represented_values(const BinaryForm& f, const Integer& limit) {
  if (!f.is_positive_definite()) {
    throw LatticeError(ErrorKind::UnsupportedForm, "value enumeration needs a positive definite form");
  }
  std::vector<Integer> values;
  if (limit <= 0) return values;
  const Integer disc = -f.discriminant();
  const Integer x_max = isqrt(4 * f.c * limit / disc);
  const bool small = x_max < 1000000 && detail::abs_value(f.a) < 1000000 &&
                     detail::abs_value(f.b) < 1000000 && detail::abs_value(f.c) < 1000000 &&
                     limit < Integer(1000000000000LL);
  for (Integer x = 0; x <= x_max; ++x) {
    const Integer delta = f.b * f.b * x * x - 4 * f.c * (f.a * x * x - limit);
    if (delta < 0) continue;
    const Integer s = isqrt(delta);
    const Integer lo = floor_div(Integer(-f.b * x - s), Integer(2 * f.c)) - 1;
    const Integer hi = floor_div(Integer(-f.b * x + s), Integer(2 * f.c)) + 1;
    if (small) {
      const auto a = f.a.convert_to<long long>(), b = f.b.convert_to<long long>(),
                 c = f.c.convert_to<long long>(), xx = x.convert_to<long long>(),
                 lim = limit.convert_to<long long>();
      for (long long y = lo.convert_to<long long>(); y <= hi.convert_to<long long>(); ++y) {
        if (xx == 0 && y <= 0) continue;
        const long long v = a * xx * xx + b * xx * y + c * y * y;
        if (v <= lim) values.emplace_back(v);
      }
      continue;
    }
    for (Integer y = lo; y <= hi; ++y) {
      if (x == 0 && y <= 0) continue;
      const Integer v = f(x, y);
      if (v <= limit) values.push_back(v);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

PrimeSearch find_prime_1mod4(const BinaryForm& f, const Integer& cap) {
  if (!f.is_positive_definite()) {
    throw LatticeError(ErrorKind::UnsupportedForm, "prime search needs a positive definite form");
  }
  if (f.content() != 1) throw LatticeError(ErrorKind::ImprimitiveForm, "form " + to_string(f) + " is imprimitive");
  PrimeSearch out;
  out.cap = cap;
  Integer limit = std::min(Integer(64), cap);
  while (true) {
    for (const auto& v : represented_values(f, limit)) {
      if (v % 4 != 1 || !is_prime(v)) continue;
      const auto xy = represents(f, v);
      out.status = SearchStatus::Found;
      out.result = PrimeRepresentation{v, xy->first, xy->second};
      return out;
    }
    if (limit >= cap) break;
    limit = std::min(Integer(limit * 2), cap);
  }
  out.status = SearchStatus::NotFoundWithinBound;
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 1369) return true;
  std::mt19937 engine(12345);
  return boost::multiprecision::miller_rabin_test(n, 25, engine);
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer offset = 1;; ++offset) {
    auto step = [&](const Integer& v) { return Integer((v * v + offset) % n); };
    Integer x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(Integer(x > y ? x - y : y - x), n);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  if (n == 0) throw LatticeError(ErrorKind::Domain, "cannot factor 0");
  Integer x = detail::abs_value(n);
  std::vector<Integer> primes;
  for (Integer p = 2; p < 10000 && p * p <= x; ++p) {
    while (x % p == 0) {
      primes.push_back(p);
      x /= p;
    }
  }
  factor_into(x, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, int>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

}  // namespace gmlat
