#include "gmlattice/verify.hpp"

#include "gmlattice/discform.hpp"
#include "gmlattice/error.hpp"
#include "gmlattice/gm_oracle.hpp"
#include "gmlattice/pell_forms.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace gmlat {

namespace {

// Collects the first failure message.
class Failures {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && message_.empty()) message_ = what;
  }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
};

std::string sig_string(const Signature& s) {
  std::ostringstream out;
  out << "(" << s.positive << "," << s.negative << "," << s.null << ")";
  return out.str();
}

GramLattice mukai_lattice(const VerifyOptions& options) {
  if (!options.mukai_sign_fault) return standard_lattice(StandardName::LambdaTilde);
  const GramLattice u = standard_lattice(StandardName::U);
  const GramLattice e8 = standard_lattice(StandardName::E8);
  return direct_sum({u, u, u, u, e8, e8});
}

RatVector rat(std::initializer_list<Rational> values) {
  RatVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

std::vector<PaperCheck> build_checks() {
  std::vector<PaperCheck> checks;
  auto add = [&](std::string name, std::string anchor, std::function<std::string(const VerifyOptions&)> run) {
    checks.push_back({std::move(name), std::move(anchor), std::move(run)});
  };

  add("vanishing-lattice-twist", "I₂,₀(2) = diag(2,2)", [](const VerifyOptions&) {
    Failures f;
    const GramLattice g = standard_lattice(StandardName::I, 2, 2, 0);
    f.expect(g.gram() == int_matrix({{2, 0}, {0, 2}}), "I(2,0)(2) is not diag(2,2)");
    return f.message();
  });

  add("vanishing-lattice", "Λ := E₈² ⊕ U² ⊕ I₂,₀(2)", [](const VerifyOptions&) {
    Failures f;
    const GramLattice lambda = standard_lattice(StandardName::Lambda);
    f.expect(lambda.rank() == 22, "rank is not 22");
    f.expect(lambda.determinant() == 4, "det is " + to_string(lambda.determinant()));
    f.expect(lambda.is_even(), "not even");
    f.expect(signature(lambda) == Signature{20, 2, 0}, "signature " + sig_string(signature(lambda)));
    return f.message();
  });

  add("mukai-lattice", "Λ̃ := U⁴ ⊕ E₈(−1)²", [](const VerifyOptions& options) {
    Failures f;
    const GramLattice mukai = mukai_lattice(options);
    f.expect(mukai.rank() == 24, "rank is not 24");
    f.expect(mukai.determinant() == 1, "not unimodular");
    f.expect(mukai.is_even(), "not even");
    f.expect(signature(mukai) == Signature{4, 20, 0}, "signature " + sig_string(signature(mukai)) + ", expected (4,20,0)");
    const GramLattice reversed = twist(mukai, -1);
    f.expect(signature(reversed) == Signature{20, 4, 0}, "Λ̃(−1) signature " + sig_string(signature(reversed)));
    f.expect(reversed.rank() == standard_lattice(StandardName::LambdaTildeReversed).rank() &&
                 signature(reversed) == signature(standard_lattice(StandardName::LambdaTildeReversed)),
             "Λ̃(−1) does not match U⁴ ⊕ E₈²");
    return f.message();
  });

  add("mukai-embedding-complement", "⟨u₁−v₁, u₂−v₂⟩^⊥: rank 22, sign (20,2)", [](const VerifyOptions&) {
    Failures f;
    const MukaiModel model = mukai_model();
    const GramLattice perp = model.complement.lattice();
    f.expect(model.lambda.induced_gram() == int_matrix({{-2, 0}, {0, -2}}), "λ Gram is not diag(−2,−2)");
    f.expect(perp.rank() == 22, "rank " + std::to_string(perp.rank()));
    f.expect(perp.determinant() == 4, "det " + to_string(perp.determinant()));
    f.expect(perp.is_even(), "not even");
    f.expect(signature(perp) == Signature{20, 2, 0}, "signature " + sig_string(signature(perp)));
    return f.message();
  });

  add("mukai-complement-discriminant", "d(⟨λ₁,λ₂⟩^⊥) ≅ (Z/2Z)²", [](const VerifyOptions&) {
    Failures f;
    const DiscriminantData dg = discriminant_group(mukai_model().complement.lattice());
    f.expect(dg.invariant_factors == std::vector<Integer>{2, 2}, "invariant factors differ from (2,2)");
    return f.message();
  });

  add("mukai-unimodular-glue", "|H| = 4, d(Λ̃) = 0", [](const VerifyOptions&) {
    Failures f;
    const MukaiModel model = mukai_model();
    const GlueExtensionReport r = glue_extension_check(model.complement, model.lambda);
    f.expect(r.glue_order == 4, "|H| = " + to_string(r.glue_order));
    f.expect(r.disc_order_l == 1, "d(L) is not trivial");
    f.expect(r.isotropic, "H is not isotropic");
    f.expect(r.quotient_identity, "|d(L)| != |H^⊥/H|");
    return f.message();
  });

  add("lambda-discriminant", "d(⟨λ₁,λ₂⟩) ≅ (Z/2Z)², q = (3/2, 3/2)", [](const VerifyOptions&) {
    Failures f;
    const DiscriminantData dg = discriminant_group(GramLattice(int_matrix({{-2, 0}, {0, -2}})));
    f.expect(dg.invariant_factors == std::vector<Integer>{2, 2}, "invariant factors differ from (2,2)");
    f.expect(dg.qvalues == std::vector<Rational>{Rational(3, 2), Rational(3, 2)}, "q-values differ from (3/2, 3/2)");
    const DiscriminantData d2 = discriminant_group(GramLattice(int_matrix({{2}})));
    f.expect(d2.invariant_factors == std::vector<Integer>{2} && d2.qvalues == std::vector<Rational>{Rational(1, 2)},
             "⟨2⟩ does not give Z/2 with q = 1/2");
    return f.message();
  });

  add("glue-non-isotropic", "q((1,1,1)) = 1/2 + 1/2 − 1/2 ≠ 0", [](const VerifyOptions&) {
    Failures f;
    const GramLattice s(int_matrix({{-2, 0}, {0, -2}}));
    const GramLattice k(int_matrix({{2}}));
    const Rational half(1, 2);
    const GlueData g{s, k, {{rat({half, half}), rat({half})}}};
    f.expect(!check_isotropic(g), "H = ⟨(1,1,1)⟩ reported isotropic");
    // Twisting flips every q-value, so the obstruction persists.
    const GlueData twisted{twist(s, -1), twist(k, -1), {{rat({half, half}), rat({half})}}};
    f.expect(!check_isotropic(twisted), "twisted H = ⟨(1,1,1)⟩ reported isotropic");
    return f.message();
  });

  add("glue-isotropic-cases", "H_i = ⟨(0,1,1)⟩ or ⟨(1,0,1)⟩", [](const VerifyOptions&) {
    Failures f;
    const DiscriminantData sum = direct_sum(discriminant_group(GramLattice(int_matrix({{-2, 0}, {0, -2}}))),
                                            discriminant_group(GramLattice(int_matrix({{2}}))));
    const auto subgroups = isotropic_order_two_subgroups(sum, 2);
    f.expect(subgroups.size() == 2, "expected two isotropic order-2 subgroups, found " +
                                        std::to_string(subgroups.size()));
    if (subgroups.size() == 2) {
      f.expect(subgroups[0].coefficients == std::vector<Integer>{0, 1, 1} &&
                   subgroups[1].coefficients == std::vector<Integer>{1, 0, 1},
               "isotropic subgroups are not ⟨(0,1,1)⟩, ⟨(1,0,1)⟩");
    }
    return f.message();
  });

  add("twisted-discriminant", "disc⟨λ₁,λ₂,τ⟩ = 2x² + 2y²", [](const VerifyOptions&) {
    Failures f;
    for (int x = -12; x <= 12; ++x) {
      for (int y = -12; y <= 12; ++y) {
        const Integer det = determinant(int_matrix({{-2, 0, x}, {0, -2, y}, {x, y, 0}}));
        f.expect(det == 2 * x * x + 2 * y * y, "identity fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
    return f.message();
  });

  add("normal-form-2-mod-8", "d = 2 + 8k", [](const VerifyOptions&) {
    Failures f;
    for (int k = -50; k <= 50; ++k) {
      f.expect(determinant(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 2 * k}})) == 2 + 8 * k,
               "first form at k = " + std::to_string(k));
      f.expect(determinant(int_matrix({{-2, 0, 0}, {0, -2, 1}, {0, 1, 2 * k}})) == 2 + 8 * k,
               "second form at k = " + std::to_string(k));
    }
    const NormalForm nf = labelling_normal_form(int_matrix({{-2, 0, 1}, {0, -2, 0}, {1, 0, 0}}));
    f.expect(nf.k == 0 && nf.kind == NormalFormKind::FirstTwoModEight, "a=1, b=0, c=0 is not already standard");
    return f.message();
  });

  add("normal-form-4-mod-8", "d = 4 + 8k", [](const VerifyOptions&) {
    Failures f;
    for (int k = -50; k <= 50; ++k) {
      f.expect(determinant(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 2 * k}})) == 4 + 8 * k,
               "form at k = " + std::to_string(k));
    }
    const NormalForm nf = labelling_normal_form(int_matrix({{-2, 0, 1}, {0, -2, 1}, {1, 1, 0}}));
    f.expect(nf.k == 0 && nf.kind == NormalFormKind::FourModEight, "a=1, b=1, c=0 is not already standard");
    return f.message();
  });

  add("normal-form-out-of-scope", "d ≡ 2 or 4 (mod 8)", [](const VerifyOptions&) {
    Failures f;
    bool thrown = false;
    try {
      labelling_normal_form(int_matrix({{-2, 0, 2}, {0, -2, 0}, {2, 0, 0}}));
    } catch (const LatticeError& e) {
      thrown = e.kind() == ErrorKind::OutOfScope;
    }
    f.expect(thrown, "det = 0 mod 8 was not rejected as out of scope");
    return f.message();
  });

  add("admissible-labels", "d > 0, d ≡ 0, 2, 4 (mod 8)", [](const VerifyOptions&) {
    Failures f;
    f.expect(admissible(10).admissible && admissible(10).label == DivisorLabel::DprimeUnion, "d = 10 is not D′ ∪ D″");
    f.expect(admissible(12).admissible && admissible(12).label == DivisorLabel::Dd, "d = 12 is not D_d");
    for (int d = -20; d <= 10000; ++d) {
      const int r = ((d % 8) + 8) % 8;
      f.expect(admissible(d).admissible == (d > 0 && (r == 0 || r == 2 || r == 4)),
               "admissibility wrong at d = " + std::to_string(d));
    }
    return f.message();
  });

  add("d50", "d = 50: (∗∗) holds, (∗∗∗) fails", [](const VerifyOptions&) {
    Failures f;
    const DivisorReport r = classify(50);
    f.expect(r.star2, "(∗∗) fails at 50");
    f.expect(r.star2_twisted, "(∗∗′) fails at 50");
    f.expect(!r.star3, "(∗∗∗) holds at 50");
    f.expect(!negative_pell(25), "n² − 25a² = −1 reported solvable");
    f.expect(!hilb2_witness(50), "a Hilbert-square witness exists for 50");
    return f.message();
  });

  add("negative-pell-criterion", "a²d = 2n² + 2 ⇔ n² − (d/2)a² = −1", [](const VerifyOptions&) {
    Failures f;
    for (int d = 2; d <= 2000; d += 2) {
      const auto s = cond_star3(d);
      if (s) f.expect(s->a * s->a * d == 2 * s->n * s->n + 2, "identity fails at d = " + std::to_string(d));
    }
    return f.message();
  });

  add("star3-implies-star2", "(∗∗∗) ⇒ (∗∗) ⇒ (∗∗′)", [](const VerifyOptions&) {
    Failures f;
    for (int d = 2; d <= 10000; d += 2) {
      const bool s3 = cond_star3(d).has_value();
      const bool s2 = cond_star2(d);
      const bool s2t = cond_star2_twisted(d);
      f.expect(!s3 || s2, "(∗∗∗) without (∗∗) at d = " + std::to_string(d));
      f.expect(!s2 || s2t, "(∗∗) without (∗∗′) at d = " + std::to_string(d));
      f.expect(!(s3 && d % 8 == 0), "(∗∗∗) at d ≡ 0 mod 8: " + std::to_string(d));
    }
    return f.message();
  });

  add("hilb2-discriminant", "disc⟨λ₁,λ₂,w⟩ = 2n² + 2", [](const VerifyOptions&) {
    Failures f;
    for (int n = -40; n <= 40; ++n) {
      f.expect(determinant(int_matrix({{-2, 0, 1}, {0, -2, n}, {1, n, 0}})) == 2 * n * n + 2,
               "det fails at n = " + std::to_string(n));
    }
    return f.message();
  });

  add("hilb2-witness", "w := (a−1)/2 λ₁ + n/2 λ₂ + aτ", [](const VerifyOptions&) {
    Failures f;
    for (int d = 2; d <= 2000; ++d) {
      if (!admissible(d).admissible) continue;
      const auto w = hilb2_witness(d);
      const bool s3 = cond_star3(d).has_value();
      f.expect(w.has_value() == s3, "witness existence differs from (∗∗∗) at d = " + std::to_string(d));
      if (!w) continue;
      const auto check = hilb2_criterion(NeronSeveriModel::standard(w->lattice), w->w);
      f.expect(check.holds, "criterion fails at d = " + std::to_string(d));
      const Integer& n = w->pell.n;
      const Integer& a = w->pell.a;
      if (d % 8 == 2) f.expect(n % 2 == 0, "n odd for d ≡ 2 mod 8 at d = " + std::to_string(d));
      if (d % 8 == 4) {
        f.expect(n % 2 != 0 && a % 4 == 1, "parity claim fails for d ≡ 4 mod 8 at d = " + std::to_string(d));
      }
    }
    return f.message();
  });

  add("rank4-form", "Q = 8xy + 2(kx+my)² + 2(lx+ny)²", [](const VerifyOptions&) {
    Failures f;
    std::mt19937 rng(20240101);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (int t = 0; t < 300; ++t) {
      const int k = dist(rng), l = dist(rng), m = dist(rng), n = dist(rng), x = dist(rng), y = dist(rng);
      const QFormAnalysis qa = qform_rank4(k, l, m, n);
      const Integer poly = Integer(8) * x * y + 2 * Integer(k * x + m * y) * (k * x + m * y) +
                           2 * Integer(l * x + n * y) * (l * x + n * y);
      const Integer det = determinant(
          int_matrix({{-2, 0, k * x + m * y}, {0, -2, l * x + n * y}, {k * x + m * y, l * x + n * y, 2 * x * y}}));
      f.expect(qa.Q(x, y) == poly && poly == det, "Q-identity fails");
      f.expect(qa.h * qa.q(x, y) == poly, "Q != h q");
    }
    const QFormAnalysis qa = qform_rank4(2, 1, -1, 1);
    f.expect(qa.A == 10 && qa.B == 4 && qa.C == 4 && qa.h == 2 && qa.q == BinaryForm{5, 2, 2},
             "(2,1,−1,1) does not give A=10, B=4, C=4, h=2");
    return f.message();
  });

  add("gcd-lemma", "8 | h ⇔ k, l, m, n even", [](const VerifyOptions&) {
    Failures f;
    for (int k = -5; k <= 5; ++k) {
      for (int l = -5; l <= 5; ++l) {
        for (int m = -5; m <= 5; ++m) {
          for (int n = -5; n <= 5; ++n) {
            const QFormAnalysis qa = qform_rank4(k, l, m, n);
            const bool even = k % 2 == 0 && l % 2 == 0 && m % 2 == 0 && n % 2 == 0;
            f.expect((qa.h % 8 == 0) == even, "fails at (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                                  std::to_string(m) + "," + std::to_string(n) + ")");
            if (even) continue;
            const LemmaReport r = lemma_checks(qa, 0);
            f.expect(r.h_odd_primes == CheckStatus::Pass, "odd prime ≡ 3 mod 4 divides h");
            f.expect(r.ac_not_3_mod_4 == CheckStatus::Pass, "a or c ≡ 3 mod 4");
            f.expect(r.b_even == CheckStatus::Pass, "b odd");
          }
        }
      }
    }
    return f.message();
  });

  add("prime-lemma", "q(x,y) = p ≡ 1 (mod 4)", [](const VerifyOptions&) {
    Failures f;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-50, 50);
    int tested = 0;
    for (int t = 0; t < 200; ++t) {
      const int k = dist(rng), l = dist(rng), m = dist(rng), n = dist(rng);
      if (k % 2 == 0 && l % 2 == 0 && m % 2 == 0 && n % 2 == 0) continue;
      const LemmaReport r = lemma_checks(qform_rank4(k, l, m, n));
      if (r.prime_1_mod_4 == CheckStatus::NotPositiveDefinite) continue;
      ++tested;
      f.expect(r.prime_1_mod_4 == CheckStatus::Pass, "no prime ≡ 1 mod 4 below the cap");
    }
    f.expect(tested > 0, "no positive definite sample");
    return f.message();
  });

  add("counterexample-span", "κ₁ := λ₁+λ₂+τ₁, κ₂ := λ₁+nλ₂+τ₂ span U", [](const VerifyOptions&) {
    Failures f;
    for (int n = 0; n <= 20; ++n) {
      const auto r = counterexample_family(n, 6);
      f.expect(r.spans_u, "κ₁, κ₂ do not span U at n = " + std::to_string(n));
      f.expect(r.identity_holds, "Q-identity fails at n = " + std::to_string(n));
    }
    return f.message();
  });

  add("counterexample-d8", "∉ D₈ ⇔ n ≠ 0, 1", [](const VerifyOptions&) {
    Failures f;
    for (int n = 0; n <= 20; ++n) {
      const auto r = counterexample_family(n, 30);
      const bool one = r.represents_one.has_value();
      f.expect(one == (n == 0 || n == 1), "−Q/8 representability of 1 wrong at n = " + std::to_string(n));
      f.expect(r.represents_one_in_scan.has_value() == one, "scan disagrees at n = " + std::to_string(n));
      f.expect(r.all_discs_0_mod_8, "labelling disc ≢ 0 mod 8 at n = " + std::to_string(n));
    }
    const auto r0 = counterexample_family(0, 30);
    f.expect(r0.represents_one && *r0.represents_one == std::make_pair(Integer(0), Integer(1)),
             "n = 0 does not represent 1 at (0,1)");
    const auto r1 = counterexample_family(1, 30);
    f.expect(r1.represents_one && r1.form(1, -1) == 1, "n = 1 does not represent 1 at (1,−1)");
    return f.message();
  });

  add("counterexample-reduction", "2x² + 5xy + 5y² ~ 2x² + xy + 2y²", [](const VerifyOptions&) {
    Failures f;
    const auto red = reduce_form({2, 5, 5});
    f.expect(red.form == BinaryForm{2, 1, 2}, "reduction is " + to_string(red.form));
    f.expect(!represents({2, 5, 5}, 1), "2x² + 5xy + 5y² represents 1");
    f.expect(counterexample_family(2).reduction.form == BinaryForm{2, 1, 2}, "family n = 2 reduces differently");
    const auto iso = is_isometric_small(GramLattice(int_matrix({{4, 5}, {5, 10}})), GramLattice(int_matrix({{4, 1}, {1, 4}})));
    f.expect(iso.status == IsometryStatus::Found, "forms not isometric");
    return f.message();
  });

  add("counterexample-general", "N₁,₁,₁,ₙ and disc ≡ 0 (mod 8)", [](const VerifyOptions&) {
    Failures f;
    for (int n = 0; n <= 5; ++n) {
      const auto g = counterexample_general(1, 1, 1, n, 10);
      const auto fam = counterexample_family(n, 1);
      f.expect(g.lattice == fam.lattice, "N₁,₁,₁,ₙ differs from the family at n = " + std::to_string(n));
      f.expect(g.spans_u && g.basis_gram_matches && g.all_discs_0_mod_8, "general checks fail at n = " + std::to_string(n));
    }
    return f.message();
  });

  add("dm-criterion", "P_{d/2}(−1) solvable, P_{2d}(5) not", [](const VerifyOptions&) {
    Failures f;
    const auto d2 = dm_isomorphism_check(2);
    const auto d10 = dm_isomorphism_check(10);
    const auto d26 = dm_isomorphism_check(26);
    f.expect(d2.isomorphic == false, "d = 2 is not false");
    f.expect(d10.isomorphic == false, "d = 10 is not false");
    f.expect(d26.isomorphic == true, "d = 26 is not true");
    f.expect(d26.negative && d26.negative->n == 18 && d26.negative->a == 5, "P₁₃(−1) is not (18,5)");
    return f.message();
  });

  add("k3-hyperbolic-plane", "N(A_X) ⊇ U, M_K ≅ U ⊕ Zw", [](const VerifyOptions&) {
    Failures f;
    for (int d : {2, 10, 26, 50}) {
      const GramLattice lattice = normal_form_for(d);
      const auto w = k3_witness(NeronSeveriModel::standard(lattice), 20);
      f.expect(w.status == SearchStatus::Found, "no U at d = " + std::to_string(d));
      if (w.plane) {
        f.expect(lattice.norm(w.plane->v) == 0 && lattice.norm(w.plane->w) == 0 &&
                     lattice.pairing(w.plane->v, w.plane->w) == 1,
                 "plane check fails at d = " + std::to_string(d));
        f.expect(w.complement_norm == -d, "complement norm is not −d at d = " + std::to_string(d));
      }
    }
    const auto none = k3_witness(NeronSeveriModel::standard(normal_form_for(12)), 30);
    f.expect(none.status == SearchStatus::ProvenAbsent, "d = 12 is not proven absent");
    return f.message();
  });

  return checks;
}

}  // namespace

const std::vector<PaperCheck>& paper_checks() {
  static const std::vector<PaperCheck> checks = build_checks();
  return checks;
}

std::vector<CheckOutcome> run_paper_checks(const VerifyOptions& options) {
  std::vector<CheckOutcome> out;
  for (const auto& check : paper_checks()) {
    CheckOutcome o{check.name, check.anchor, false, {}, 0};
    const auto start = std::chrono::steady_clock::now();
    try {
      o.detail = check.run(options);
      o.passed = o.detail.empty();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace gmlat
