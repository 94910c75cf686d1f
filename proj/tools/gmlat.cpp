#include "gmlattice/discform.hpp"
#include "gmlattice/error.hpp"
#include "gmlattice/gm_oracle.hpp"
#include "gmlattice/io.hpp"
#include "gmlattice/pell_forms.hpp"
#include "gmlattice/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace gmlat;

namespace {

enum Exit { kOk = 0, kInputError = 1, kInadmissibleStrict = 2, kNoWitness = 3 };

// Lets a command stop with a specific exit code and message.
struct CommandExit {
  int code;
  std::string message;
};

Integer parse_d(const std::string& text) {
  auto d = parse_integer(text);
  if (!d) throw LatticeError(ErrorKind::InvalidInput, "not an integer: '" + text + "'");
  return *d;
}

std::string pell_text(const std::optional<PellSolution>& s) {
  if (!s) return "none";
  return "(n, a) = (" + to_string(s->n) + ", " + to_string(s->a) + ")";
}

std::string bool_text(bool b) { return b ? "yes" : "no"; }

std::string matrix_text(const IntMatrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += to_string(Integer(m(i, j)));
    }
    out += "]";
  }
  return out + "]";
}

std::string form_text(const BinaryForm& f) {
  auto term = [](const Integer& c, const std::string& mono, bool first) {
    if (c == 0) return std::string();
    std::string s;
    if (c < 0) s += first ? "-" : " - ";
    else if (!first) s += " + ";
    const Integer a = c < 0 ? Integer(-c) : c;
    if (a != 1) s += to_string(a);
    return s + mono;
  };
  std::string out = term(f.a, "x²", true);
  out += term(f.b, "xy", out.empty());
  out += term(f.c, "y²", out.empty());
  return out.empty() ? "0" : out;
}

// classify

void print_report(const DivisorReport& r) {
  std::cout << "d                 " << r.d << "\n";
  std::cout << "divisor           " << to_string(r.divisor) << "\n";
  if (!r.admissible) {
    std::cout << "admissible        no (need d > 0, d = 0, 2, 4 mod 8)\n";
    return;
  }
  std::cout << "admissible        yes\n";
  std::cout << "(**)  K3          " << bool_text(r.star2) << "\n";
  std::cout << "(**') twisted K3  " << bool_text(r.star2_twisted) << "\n";
  std::cout << "(***) Hilb^2      " << bool_text(r.star3.has_value());
  if (r.star3) std::cout << "  n^2 - " << r.star3->m << " a^2 = -1 at " << pell_text(r.star3);
  std::cout << "\n";
  std::cout << "DM isomorphic     ";
  if (r.dm_isomorphic) std::cout << bool_text(*r.dm_isomorphic) << "\n";
  else std::cout << "n/a\n";
  if (r.twisted) {
    std::cout << "twisted witness   2*" << r.twisted->x << "^2 + 2*" << r.twisted->y << "^2 = " << r.twisted->i
              << "^2 * " << r.d << "\n";
  } else if (r.star2_twisted) {
    std::cout << "twisted witness   none with i <= " << r.bound << "\n";
  }
  if (r.hilb2) {
    std::cout << "hilb2 witness     w = " << format_vector(r.hilb2->w) << " in " << matrix_text(r.hilb2->gram) << "\n";
  }
  if (r.k3_status) {
    std::cout << "k3 search         " << to_string(*r.k3_status) << " (bound " << r.bound << ")\n";
    if (r.k3) {
      std::cout << "k3 witness        U = <" << format_vector(r.k3->v) << ", " << format_vector(r.k3->w)
                << ">, complement " << format_vector(r.k3->complement_gen) << "\n";
    }
  }
  std::cout << "bound             " << r.bound << "\n";
}

int cmd_classify(const std::string& d_text, bool json, bool strict, std::int64_t bound, bool k3) {
  const Integer d = parse_d(d_text);
  const DivisorReport r = classify(d, ClassifyOptions{bound, k3});
  if (json) std::cout << report_to_json(r).dump() << "\n";
  else print_report(r);
  return strict && !r.admissible ? kInadmissibleStrict : kOk;
}

// scan

bool passes_filter(const DivisorReport& r, const std::string& filter) {
  if (filter.empty()) return true;
  if (filter == "star2") return r.star2;
  if (filter == "twisted") return r.star2_twisted;
  if (filter == "star3") return r.star3.has_value();
  throw LatticeError(ErrorKind::InvalidInput, "unknown filter '" + filter + "'");
}

std::string csv_line(const DivisorReport& r) {
  std::ostringstream out;
  out << r.d << "," << to_string(r.divisor) << "," << r.star2 << "," << r.star2_twisted << ",";
  if (r.star3) out << r.star3->n << "," << r.star3->a;
  else out << ",";
  out << ",";
  if (r.dm_isomorphic) out << *r.dm_isomorphic;
  return out.str();
}

int cmd_scan(const std::string& max_text, const std::string& filter, bool csv, bool json, unsigned jobs,
             std::int64_t bound) {
  const Integer max_d = parse_d(max_text);
  if (max_d < 2) throw LatticeError(ErrorKind::InvalidInput, "scan needs max_d >= 2");
  if (max_d > 100000000) throw LatticeError(ErrorKind::InvalidInput, "max_d too large for a scan");
  passes_filter(DivisorReport{}, filter);
  const auto n = max_d.convert_to<std::int64_t>();

  std::vector<std::int64_t> ds;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (admissible(d).admissible) ds.push_back(d);
  }
  std::vector<std::string> lines(ds.size());
  std::vector<char> keep(ds.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      const DivisorReport r = classify(ds[i], ClassifyOptions{bound, false});
      if (!passes_filter(r, filter)) continue;
      keep[i] = 1;
      if (json) {
        Json record;
        record["d"] = ds[i];
        record["report"] = report_to_json(r);
        lines[i] = record.dump();
      } else if (csv) {
        lines[i] = csv_line(r);
      } else {
        std::ostringstream out;
        out << r.d << "\t" << to_string(r.divisor) << "\t(**)=" << r.star2 << "\t(**')=" << r.star2_twisted
            << "\t(***)=" << (r.star3 ? "(" + to_string(r.star3->n) + "," + to_string(r.star3->a) + ")" : "none");
        lines[i] = out.str();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (csv) std::cout << "d,divisor,star2,star2_twisted,star3_n,star3_a,dm_isomorphic\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (keep[i]) std::cout << lines[i] << "\n";
  }
  return kOk;
}

// witness

void print_pairing(const GramLattice& lattice, const std::string& left, const LatticeVector& u,
                   const std::string& right, const LatticeVector& v) {
  std::cout << "  " << left << "·" << right << " = " << lattice.pairing(u, v) << "\n";
}

int witness_k3_lattice(const NeronSeveriModel& model, std::int64_t bound) {
  const K3Witness w = k3_witness(model, bound);
  const GramLattice& lattice = model.lattice();
  std::cout << "lattice " << matrix_text(lattice.gram()) << "\n";
  std::cout << "search bound " << bound << "\n";
  if (w.plane) {
    const auto& p = *w.plane;
    std::cout << "hyperbolic plane v = " << format_vector(p.v) << ", w = " << format_vector(p.w) << "\n";
    std::cout << "transcript\n";
    print_pairing(lattice, "v", p.v, "v", p.v);
    print_pairing(lattice, "w", p.w, "w", p.w);
    print_pairing(lattice, "v", p.v, "w", p.w);
    if (w.complement_gen) {
      const LatticeVector& c = *w.complement_gen;
      std::cout << "complement generator c = " << format_vector(c) << "\n";
      print_pairing(lattice, "c", c, "v", p.v);
      print_pairing(lattice, "c", c, "w", p.w);
      print_pairing(lattice, "c", c, "c", c);
    }
    return kOk;
  }
  if (w.labelling && w.qform) {
    const auto& q = *w.qform;
    const auto [x, y] = *w.labelling;
    std::cout << "Q(x,y) = " << q.A << "x² + " << q.B << "xy + " << q.C << "y², h = " << q.h << "\n";
    std::cout << "labelling <λ₁, λ₂, x κ₁ + y κ₂> at (x, y) = (" << x << ", " << y << ")\n";
    std::cout << "transcript\n";
    const Integer direct = labelling_determinant(q.k, q.l, q.m, q.n, x, y);
    std::cout << "  det <λ₁, λ₂, x κ₁ + y κ₂> = " << direct << ", Q(x,y) = " << q.Q(x, y) << "\n";
    std::cout << "  saturation index " << w.labelling_index << ", discriminant " << w.labelling_disc << "\n";
    std::cout << "  (**) at " << w.labelling_disc << ": " << bool_text(cond_star2(w.labelling_disc)) << "\n";
    return kOk;
  }
  std::cout << "status " << to_string(w.status) << "\n";
  if (!w.certificate.empty()) std::cout << "certificate " << w.certificate << "\n";
  throw CommandExit{kNoWitness, w.status == SearchStatus::ProvenAbsent
                                    ? "no hyperbolic plane exists (" + w.certificate + ")"
                                    : "bound exhausted: nothing found with |coordinates| <= " + std::to_string(bound)};
}

int witness_k3(const std::vector<std::string>& args, const std::string& gram_path, std::int64_t bound) {
  if (!gram_path.empty()) return witness_k3_lattice(NeronSeveriModel::standard(read_gram_file(gram_path)), bound);
  if (args.empty()) throw LatticeError(ErrorKind::InvalidInput, "witness k3 needs d or --gram");
  const Integer d = parse_d(args[0]);
  if (!admissible(d).admissible) throw CommandExit{kNoWitness, "d = " + to_string(d) + " is inadmissible"};
  if (!cond_star2(d)) throw CommandExit{kNoWitness, "condition (∗∗) fails for d = " + to_string(d)};
  return witness_k3_lattice(NeronSeveriModel::standard(normal_form_for(d)), bound);
}

int witness_twisted(const std::vector<std::string>& args, std::int64_t bound) {
  if (args.empty()) throw LatticeError(ErrorKind::InvalidInput, "witness twisted needs d");
  const Integer d = parse_d(args[0]);
  if (!admissible(d).admissible) throw CommandExit{kNoWitness, "d = " + to_string(d) + " is inadmissible"};
  if (!cond_star2_twisted(d)) throw CommandExit{kNoWitness, "condition (∗∗′) fails for d = " + to_string(d)};
  const auto t = twisted_witness(d, bound);
  std::cout << "search bound i <= " << bound << "\n";
  if (!t) throw CommandExit{kNoWitness, "bound exhausted: no 2x² + 2y² = i²d with i <= " + std::to_string(bound)};
  std::cout << "x = " << t->x << ", y = " << t->y << ", i = " << t->i << "\n";
  const IntMatrix g = [&] {
    IntMatrix m(3, 3);
    m << Integer(-2), Integer(0), t->x, Integer(0), Integer(-2), t->y, t->x, t->y, Integer(0);
    return m;
  }();
  std::cout << "transcript\n";
  std::cout << "  2x² + 2y² = " << 2 * t->x * t->x + 2 * t->y * t->y << "\n";
  std::cout << "  i²d = " << t->i * t->i * d << "\n";
  std::cout << "  det " << matrix_text(g) << " = " << determinant(g) << "\n";
  return kOk;
}

int witness_hilb2(const std::vector<std::string>& args) {
  if (args.empty()) throw LatticeError(ErrorKind::InvalidInput, "witness hilb2 needs d");
  const Integer d = parse_d(args[0]);
  if (!admissible(d).admissible) throw CommandExit{kNoWitness, "d = " + to_string(d) + " is inadmissible"};
  const auto h = hilb2_witness(d);
  if (!h) throw CommandExit{kNoWitness, "condition (∗∗∗) fails for d = " + to_string(d)};
  const NeronSeveriModel model = NeronSeveriModel::standard(h->lattice);
  const Hilb2Check c = hilb2_criterion(model, h->w);
  const GramLattice& lattice = h->lattice;
  std::cout << "lattice " << matrix_text(lattice.gram()) << " (" << to_string(h->kind) << ")\n";
  std::cout << "pell n² - " << h->pell.m << "a² = -1 at (n, a) = (" << h->pell.n << ", " << h->pell.a << ")\n";
  std::cout << "w = " << format_vector(h->w) << "\n";
  std::cout << "transcript\n";
  const Integer l1w = lattice.pairing(model.lambda1(), h->w);
  const Integer ww = lattice.norm(h->w);
  std::cout << "  λ₁·w = " << l1w << ", w·w = " << ww << "\n";
  std::cout << "  λ₂·w = " << lattice.pairing(model.lambda2(), h->w) << "\n";
  std::cout << "  a²d = " << h->pell.a * h->pell.a * d << ", 2n² + 2 = " << 2 * h->pell.n * h->pell.n + 2 << "\n";
  std::cout << "  det <λ₁, λ₂, w> = " << c.determinant << "\n";
  if (!c.holds) throw std::logic_error("hilb2 witness failed its own check");
  return kOk;
}

std::vector<Integer> parse_klmn(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(parse_d(token));
  if (out.size() != 4) throw LatticeError(ErrorKind::InvalidInput, "--klmn needs four integers k,l,m,n");
  return out;
}

int witness_counterexample(const std::string& n_text, const std::string& klmn, std::int64_t bound) {
  if (!klmn.empty()) {
    const auto v = parse_klmn(klmn);
    const auto g = counterexample_general(v[0], v[1], v[2], v[3], bound);
    std::cout << "lattice " << matrix_text(g.lattice.gram()) << "\n";
    std::cout << "κ₁ = " << format_vector(g.kappa1) << ", κ₂ = " << format_vector(g.kappa2) << "\n";
    std::cout << "transcript\n";
    print_pairing(g.lattice, "κ₁", g.kappa1, "κ₁", g.kappa1);
    print_pairing(g.lattice, "κ₂", g.kappa2, "κ₂", g.kappa2);
    print_pairing(g.lattice, "κ₁", g.kappa1, "κ₂", g.kappa2);
    std::cout << "  spans U: " << bool_text(g.spans_u) << "\n";
    std::cout << "  Gram in basis λ₁, λ₂, κ₁, κ₂: " << matrix_text(g.kappa_basis_gram) << "\n";
    std::cout << "  labelling discs scanned " << g.scanned << " with |x|,|y| <= " << g.bound
              << ", all 0 mod 8: " << bool_text(g.all_discs_0_mod_8) << "\n";
    if (g.violation) {
      throw CommandExit{kNoWitness, "labelling at (" + to_string(g.violation->first) + ", " +
                                        to_string(g.violation->second) + ") has disc not 0 mod 8"};
    }
    return kOk;
  }
  const Integer n = parse_d(n_text);
  const auto r = counterexample_family(n, bound);
  const GramLattice& lattice = r.lattice;
  std::cout << "lattice " << matrix_text(lattice.gram()) << "\n";
  std::cout << "κ₁ = " << format_vector(r.kappa1) << ", κ₂ = " << format_vector(r.kappa2) << "\n";
  std::cout << "transcript\n";
  print_pairing(lattice, "κ₁", r.kappa1, "κ₁", r.kappa1);
  print_pairing(lattice, "κ₂", r.kappa2, "κ₂", r.kappa2);
  print_pairing(lattice, "κ₁", r.kappa1, "κ₂", r.kappa2);
  std::cout << "  spans U: " << bool_text(r.spans_u) << "\n";
  std::cout << "  -Q/8 = " << form_text(r.form) << "\n";
  {
    LatticeVector e1 = LatticeVector::Zero(lattice.rank()), e2 = LatticeVector::Zero(lattice.rank());
    e1(0) = 1;
    e2(1) = 1;
    const LatticeVector x = r.kappa1 + r.kappa2;
    const Integer det = determinant(Sublattice::from_vectors(lattice, {e1, e2, x}).induced_gram());
    std::cout << "  det <λ₁, λ₂, κ₁ + κ₂> = " << det << ", -8·(-Q/8)(1,1) = " << -8 * r.form(1, 1) << "\n";
  }
  std::cout << "  reduced form " << form_text(r.reduction.form) << " via " << matrix_text(r.reduction.transform)
            << "\n";
  if (r.represents_one) {
    std::cout << "  represents 1 at (" << r.represents_one->first << ", " << r.represents_one->second << ")\n";
  } else {
    std::cout << "  represents 1: no\n";
  }
  std::cout << "  scan |x|,|y| <= " << r.bound << ": all labelling discs 0 mod 8: " << bool_text(r.all_discs_0_mod_8)
            << ", min |disc| = " << r.min_abs_disc << "\n";
  if (r.in_d8) throw CommandExit{kNoWitness, "-Q/8 represents 1, so the lattice lies in D_8 (no counterexample)"};
  return kOk;
}

// lattice

std::string discriminant_text(const DiscriminantData& dg) {
  if (dg.is_trivial()) return "0";
  std::string out;
  for (std::size_t i = 0; i < dg.invariant_factors.size(); ++i) {
    if (i > 0) out += " ⊕ ";
    out += "Z/" + to_string(dg.invariant_factors[i]);
  }
  out += ", q = (";
  for (std::size_t i = 0; i < dg.qvalues.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(dg.qvalues[i]);
  }
  return out + ")";
}

Sublattice basis_sublattice(const GramLattice& lattice, const std::string& basis) {
  if (basis.empty()) throw LatticeError(ErrorKind::InvalidInput, "this subcommand needs --basis");
  return Sublattice(lattice, parse_basis(basis, lattice.rank()));
}

void print_columns(const IntMatrix& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) std::cout << "  " << format_vector(basis.col(j)) << "\n";
}

int cmd_lattice(const std::string& sub, const std::string& path, const std::string& basis, std::int64_t bound,
                bool json) {
  const GramLattice lattice = read_gram_file(path);
  Json out;
  if (sub == "det") {
    if (json) out["det"] = integer_to_json(lattice.determinant());
    else std::cout << lattice.determinant() << "\n";
  } else if (sub == "sig") {
    const Signature s = signature(lattice);
    if (json) out["signature"] = {s.positive, s.negative, s.null};
    else std::cout << "(" << s.positive << "," << s.negative << "," << s.null << ")\n";
  } else if (sub == "snf") {
    const auto snf = smith_normal_form(lattice.gram());
    const auto diag = snf.diagonal();
    if (json) {
      out["diagonal"] = Json::array();
      for (const auto& x : diag) out["diagonal"].push_back(integer_to_json(x));
    } else {
      for (std::size_t i = 0; i < diag.size(); ++i) std::cout << (i ? " " : "") << diag[i];
      std::cout << "\n";
    }
  } else if (sub == "disc-group") {
    const DiscriminantData dg = discriminant_group(lattice);
    if (json) out = discriminant_to_json(dg);
    else std::cout << discriminant_text(dg) << "\n";
  } else if (sub == "complement" || sub == "saturate") {
    const Sublattice s = basis_sublattice(lattice, basis);
    Integer index = 1;
    IntMatrix result;
    if (sub == "complement") {
      result = orthogonal_complement(s).basis();
    } else {
      const Saturation sat = saturate(s);
      result = sat.lattice.basis();
      index = sat.index;
    }
    const Sublattice r(lattice, result);
    if (json) {
      out["basis"] = Json::array();
      for (Eigen::Index j = 0; j < result.cols(); ++j) out["basis"].push_back(vector_to_json(result.col(j)));
      out["gram"] = matrix_to_json(r.induced_gram());
      if (sub == "saturate") out["index"] = integer_to_json(index);
    } else {
      std::cout << "basis\n";
      print_columns(result);
      std::cout << "gram " << matrix_text(r.induced_gram()) << "\n";
      if (sub == "saturate") std::cout << "index " << index << "\n";
    }
  } else if (sub == "hyperbolic") {
    const HyperbolicSearch h = find_hyperbolic_plane(lattice, bound);
    if (json) {
      out["status"] = to_string(h.status);
      out["bound"] = bound;
      if (h.plane) out["plane"] = Json::array({vector_to_json(h.plane->v), vector_to_json(h.plane->w)});
      if (!h.certificate.empty()) out["certificate"] = h.certificate;
      std::cout << out.dump() << "\n";
    } else if (h.plane) {
      std::cout << format_vector(h.plane->v) << "," << format_vector(h.plane->w) << "\n";
      std::cout << "transcript (bound " << bound << ")\n";
      print_pairing(lattice, "v", h.plane->v, "v", h.plane->v);
      print_pairing(lattice, "w", h.plane->w, "w", h.plane->w);
      print_pairing(lattice, "v", h.plane->v, "w", h.plane->w);
    } else {
      std::cout << to_string(h.status) << " (bound " << bound << ")\n";
      if (!h.certificate.empty()) std::cout << "certificate " << h.certificate << "\n";
    }
    if (!h.plane) throw CommandExit{kNoWitness, "no hyperbolic plane: " + std::string(to_string(h.status))};
    return kOk;
  } else {
    throw LatticeError(ErrorKind::InvalidInput, "unknown lattice subcommand '" + sub + "'");
  }
  if (json) std::cout << out.dump() << "\n";
  return kOk;
}

// verify-paper

int cmd_verify(bool list, const std::string& fault) {
  if (list) {
    for (const auto& c : paper_checks()) std::cout << c.name << "  [" << c.anchor << "]\n";
    return kOk;
  }
  VerifyOptions options;
  if (fault == "mukai-sign") options.mukai_sign_fault = true;
  else if (!fault.empty()) throw LatticeError(ErrorKind::InvalidInput, "unknown fault '" + fault + "'");
  const auto outcomes = run_paper_checks(options);
  std::size_t failed = 0;
  double total = 0;
  for (const auto& o : outcomes) {
    total += o.millis;
    std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << "  [" << o.anchor << "]";
    std::cout << "  " << std::fixed << std::setprecision(1) << o.millis << " ms\n";
    if (!o.passed) {
      ++failed;
      std::cout << "     " << o.detail << "\n";
    }
  }
  std::cout << outcomes.size() - failed << "/" << outcomes.size() << " checks passed in " << std::fixed
            << std::setprecision(0) << total << " ms\n";
  return failed == 0 ? kOk : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice arithmetic for discriminants of Gushel-Mukai type"};
  app.require_subcommand(1);

  std::string d_text;
  bool json = false, csv = false, strict = false, k3 = false;
  std::int64_t bound = 20;

  auto* classify_cmd = app.add_subcommand("classify", "Evaluate every criterion for one discriminant");
  classify_cmd->add_option("d", d_text, "discriminant")->required();
  classify_cmd->add_flag("--json", json, "structured output");
  classify_cmd->add_flag("--strict", strict, "exit 2 on inadmissible d");
  classify_cmd->add_option("--bound", bound, "witness search bound");
  classify_cmd->add_flag("--k3", k3, "also search a hyperbolic plane in the labelling");

  std::string max_text, filter;
  unsigned jobs = 1;
  auto* scan_cmd = app.add_subcommand("scan", "Classify every admissible d up to max_d");
  scan_cmd->add_option("max_d", max_text, "largest discriminant")->required();
  scan_cmd->add_option("--filter", filter, "star2, twisted or star3")->check(CLI::IsMember({"star2", "twisted", "star3"}));
  auto* csv_flag = scan_cmd->add_flag("--csv", csv, "CSV output");
  scan_cmd->add_flag("--json", json, "JSON lines")->excludes(csv_flag);
  scan_cmd->add_option("--jobs", jobs, "worker threads");
  scan_cmd->add_option("--bound", bound, "witness search bound");

  std::string kind, n_text = "2", klmn, gram_path;
  std::vector<std::string> witness_args;
  auto* witness_cmd = app.add_subcommand("witness", "Construct and verify a witness");
  witness_cmd->add_option("kind", kind, "k3, twisted, hilb2 or counterexample")
      ->required()
      ->check(CLI::IsMember({"k3", "twisted", "hilb2", "counterexample"}));
  witness_cmd->add_option("args", witness_args, "discriminant d");
  witness_cmd->add_option("--n", n_text, "family parameter for counterexample");
  witness_cmd->add_option("--klmn", klmn, "k,l,m,n for the general counterexample");
  witness_cmd->add_option("--gram", gram_path, "Gram file with lambda1 = e1, lambda2 = e2 (k3)");
  std::int64_t witness_bound = -1;
  witness_cmd->add_option("--bound", witness_bound, "search bound");

  std::string sub, path, basis;
  std::int64_t lattice_bound = 20;
  auto* lattice_cmd = app.add_subcommand("lattice", "Operations on a Gram matrix file");
  lattice_cmd->add_option("op", sub, "det, sig, snf, disc-group, complement, saturate or hyperbolic")
      ->required()
      ->check(CLI::IsMember({"det", "sig", "snf", "disc-group", "complement", "saturate", "hyperbolic"}));
  lattice_cmd->add_option("file", path, "Gram file")->required();
  lattice_cmd->add_option("--basis", basis, "sublattice columns, e.g. 1,0,0;0,1,0");
  lattice_cmd->add_option("--bound", lattice_bound, "search bound");
  lattice_cmd->add_flag("--json", json, "structured output");

  bool list = false;
  std::string fault;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the anchored arithmetic checks");
  verify_cmd->add_flag("--list", list, "list checks without running them");
  verify_cmd->add_option("--inject-fault", fault, "mukai-sign")->check(CLI::IsMember({"mukai-sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify_cmd) return cmd_classify(d_text, json, strict, bound, k3);
    if (*scan_cmd) return cmd_scan(max_text, filter, csv, json, jobs, bound);
    if (*witness_cmd) {
      if (kind == "k3") return witness_k3(witness_args, gram_path, witness_bound < 0 ? 20 : witness_bound);
      if (kind == "twisted") return witness_twisted(witness_args, witness_bound < 0 ? 20 : witness_bound);
      if (kind == "hilb2") return witness_hilb2(witness_args);
      return witness_counterexample(n_text, klmn, witness_bound < 0 ? 30 : witness_bound);
    }
    if (*lattice_cmd) return cmd_lattice(sub, path, basis, lattice_bound, json);
    if (*verify_cmd) return cmd_verify(list, fault);
  } catch (const CommandExit& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
