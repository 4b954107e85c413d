#pragma once

// End-to-end acceptance checks: one self-contained criterion per facet of the
// library, each with its tolerances pinned here.  run_acceptance returns one
// result per criterion; the CLI `selftest` subcommand and the acceptance test
// binary both print them one line apiece.

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncdomain/domains.hpp"
#include "ncdomain/fock.hpp"
#include "ncdomain/iso.hpp"
#include "ncdomain/symbol.hpp"
#include "ncdomain/weights.hpp"
#include "ncdomain/words.hpp"

namespace ncdomain {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace selftest {

inline Word w(std::initializer_list<int> letters) { return Word(std::vector<int>(letters)); }

// X1 + X2 + X1X2 and X1 + X2 + (1/2)X1X2 + (1/2)X2X1: the standard pair with
// identical scalar domains but non-matching weight families.
inline Symbol pair_f() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 1.0}});
}
inline Symbol pair_g() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 0.5}, {w({2, 1}), 0.5}});
}
inline Symbol linear2() { return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}}); }

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Degree-2 weight tables of both pair symbols against hand values.
inline CriterionResult c1_weight_tables(std::uint64_t) {
  CriterionResult r{1, "weight-tables-match-hand-values"};
  auto t0 = std::chrono::steady_clock::now();
  WeightTable bf(pair_f(), 2), bg(pair_g(), 2);
  double ms = elapsed_ms(t0);
  struct Expect {
    const WeightTable* table;
    Word word;
    double value;
  };
  std::vector<Expect> expect = {
      {&bf, w({}), 1.0},     {&bf, w({1}), 1.0},    {&bf, w({2}), 1.0},
      {&bf, w({1, 1}), 1.0}, {&bf, w({1, 2}), 2.0}, {&bf, w({2, 1}), 1.0},
      {&bf, w({2, 2}), 1.0}, {&bg, w({}), 1.0},     {&bg, w({1}), 1.0},
      {&bg, w({2}), 1.0},    {&bg, w({1, 1}), 1.0}, {&bg, w({1, 2}), 1.5},
      {&bg, w({2, 1}), 1.5}, {&bg, w({2, 2}), 1.0}};
  double worst = 0;
  for (const auto& e : expect)
    worst = std::max(worst, std::abs(e.table->at(e.word) - e.value));
  r.pass = worst <= 1e-12 && ms < 1.0;
  r.detail = "max|b - expected| = " + fmt(worst) + ", build time " + fmt(ms) + " ms";
  return r;
}

// 2. Closed-form monomial/homogeneous norms against dense SVD at L = 4.
inline CriterionResult c2_norm_formulas(std::uint64_t seed) {
  CriterionResult r{2, "closed-form-norms-match-svd"};
  auto t0 = std::chrono::steady_clock::now();
  ShiftOperators sf(pair_f(), 4), sg(pair_g(), 4);
  double mono_f = std::abs(monomial_norm(sf.weights(), w({1, 2})) - 1.0 / std::sqrt(2.0));
  double mono_g = std::abs(monomial_norm(sg.weights(), w({1, 2})) - std::sqrt(2.0 / 3.0));
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> degree(1, 3);
  double worst = 0;
  for (const ShiftOperators* shifts : {&sf, &sg}) {
    WordContext ctx = shifts->context();
    for (int trial = 0; trial < 200; ++trial) {
      int d = degree(rng);
      std::map<Word, std::complex<double>> coeffs;
      const std::uint64_t off = ctx.block_offset(d), cnt = ctx.block_size(d);
      for (std::uint64_t idx = off; idx < off + cnt; ++idx)
        coeffs.emplace(ctx.word_at(idx), std::complex<double>(gauss(rng), gauss(rng)));
      PolyElement x(2, std::move(coeffs));
      double closed = homogeneous_norm(shifts->weights(), x);
      double numeric = numerical_norm(assemble_element(*shifts, x));
      worst = std::max(worst, std::abs(closed - numeric));
    }
  }
  double ms = elapsed_ms(t0);
  r.pass = mono_f <= 1e-12 && mono_g <= 1e-12 && worst <= 1e-10 && ms < 5000.0;
  r.detail = "monomial errors " + fmt(mono_f) + " / " + fmt(mono_g) +
             ", max closed-vs-svd gap " + fmt(worst) + " over 400 homogeneous draws, " +
             fmt(ms) + " ms";
  return r;
}

// 3. Defect operator is exactly the vacuum projection at L = 5.
inline CriterionResult c3_defect_projection(std::uint64_t) {
  CriterionResult r{3, "defect-is-vacuum-projection"};
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const Symbol& s : {pair_f(), pair_g(), linear2()}) {
    CMat d = defect_operator(s, 5);
    CMat p = CMat::Zero(d.rows(), d.cols());
    p(0, 0) = 1.0;
    worst = std::max(worst, numerical_norm(d - p));
  }
  double ms = elapsed_ms(t0);
  r.pass = worst <= 1e-12 && ms < 2000.0;
  r.detail = "max ||defect - vacuum projection|| = " + fmt(worst) + ", " + fmt(ms) + " ms";
  return r;
}

// 4. Recursion agrees with the composition-sum oracle up to length 8, and the
// weights are supermultiplicative over every splitting.
inline CriterionResult c4_weight_oracle(std::uint64_t) {
  CriterionResult r{4, "weights-match-composition-oracle"};
  double worst_rel = 0, worst_super = 0;
  for (const Symbol& s : {pair_f(), pair_g()}) {
    WeightTable wt(s, 8);
    WordContext ctx = s.context();
    for (std::uint64_t idx = 1; idx < wt.size(); ++idx) {
      Word word = ctx.word_at(idx);
      double oracle = weight_by_compositions(s, word);
      worst_rel = std::max(worst_rel,
                           std::abs(wt.at_index(idx) - oracle) / std::abs(oracle));
      for (std::size_t k = 0; k <= word.length(); ++k) {
        double gap = wt.at_index(idx) -
                     wt.at(word.prefix(k)) * wt.at(word.suffix_from(k));
        worst_super = std::max(worst_super, (-gap) / wt.at_index(idx));
      }
    }
  }
  r.pass = worst_rel <= 1e-12 && worst_super <= 1e-12;
  r.detail = "max relative gap vs oracle " + fmt(worst_rel) +
             ", worst supermultiplicativity deficit " + fmt(worst_super);
  return r;
}

// 5. The standard pair is refuted: the degree-2 constraints restrict the
// doubly stochastic segment to p in {0, 1} via the row polynomial
// -(2/3)p(1-p), and both endpoints violate the g2g1 row at norm level by
// 1 - sqrt(2/3).
inline CriterionResult c5_pair_obstruction(std::uint64_t seed) {
  CriterionResult r{5, "standard-pair-obstructed"};
  auto t0 = std::chrono::steady_clock::now();
  ObstructionVerdict v = obstruction_search(pair_f(), pair_g(), 2, 10001, seed);
  double ms = elapsed_ms(t0);
  bool obstructed = v.outcome == ObstructionOutcome::Obstructed &&
                    v.violation_lower_bound > 0;
  const DegreeConstraints& d2 = v.systems.at(0);
  // Rows at degree 2 follow graded-lex: 11, 12, 21, 22.
  double poly_gap = 0;
  std::vector<double> expect_poly = {0.0, -2.0 / 3.0, 2.0 / 3.0};
  for (std::size_t k = 0; k < expect_poly.size(); ++k)
    poly_gap = std::max(poly_gap, std::abs(d2.poly.at(0).at(k) - expect_poly[k]));
  Eigen::MatrixXd p0(2, 2), p1(2, 2);
  p0 << 0, 1, 1, 0;
  p1 << 1, 0, 0, 1;
  double expected_violation = 1.0 - std::sqrt(2.0 / 3.0);
  double end_gap = std::max(
      std::abs(norm_level_violation(d2, 2, p0) - expected_violation),
      std::abs(norm_level_violation(d2, 2, p1) - expected_violation));
  r.pass = obstructed && poly_gap <= 1e-12 && end_gap <= 1e-12 && ms < 1000.0;
  r.detail = std::string(to_string(v.outcome)) + ", violation bound " +
             fmt(v.violation_lower_bound) + ", g1g1 row polynomial gap " + fmt(poly_gap) +
             ", endpoint norm-level violation vs 1-sqrt(2/3): gap " + fmt(end_gap) +
             ", " + fmt(ms) + " ms";
  return r;
}

// 6. Degree-1 symbols are disk algebras; the standard f is neither a disk
// algebra nor compatible with one.
inline CriterionResult c6_disk_detection(std::uint64_t seed) {
  CriterionResult r{6, "disk-algebras-detected-and-separated"};
  Symbol scaled(2, {{w({1}), 2.0}, {w({2}), 3.0}});
  bool detect = disk_detector(scaled) && disk_detector(linear2()) &&
                !disk_detector(pair_f()) && !disk_detector(pair_g());
  ObstructionVerdict refute = obstruction_search(pair_f(), linear2(), 2, 2001, seed);
  ObstructionVerdict match =
      obstruction_search(normalize(scaled).symbol, linear2(), 2, 2001, seed);
  bool identity_candidate =
      match.outcome == ObstructionOutcome::CandidateFound && match.candidate &&
      (*match.candidate - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0 &&
      match.candidate_residual <= 1e-9;
  r.pass = detect && refute.outcome == ObstructionOutcome::Obstructed &&
           identity_candidate;
  r.detail = std::string("detector verdicts ok: ") + (detect ? "yes" : "no") +
             "; f vs X1+X2: " + to_string(refute.outcome) + " (bound " +
             fmt(refute.violation_lower_bound) + "); normalized disk vs X1+X2: " +
             to_string(match.outcome) + " at P = I";
  return r;
}

// 7. The pair collapses coincide; scaling/permutation matching recovers
// planted witnesses and its witnesses invert.
inline CriterionResult c7_collapse_matching(std::uint64_t seed) {
  CriterionResult r{7, "collapse-matching-recovers-witnesses"};
  bool pair_equal = collapse(pair_f()) == collapse(pair_g());
  auto id_hit = sunada_equivalence(pair_f(), pair_g());
  bool id_ok = id_hit && id_hit->sigma == std::vector<int>{1, 2} &&
               std::abs(id_hit->scale[0] - 1.0) <= 1e-9 &&
               std::abs(id_hit->scale[1] - 1.0) <= 1e-9 && id_hit->residual <= 1e-9;
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4full);
  std::uniform_real_distribution<double> coeff(0.3, 2.0), pick(0.0, 1.0);
  std::size_t recovered = 0, inverted = 0;
  const std::size_t trials = 50;
  double worst_recon = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    int n = trial % 2 == 0 ? 2 : 3;
    WordContext ctx(n);
    std::map<Word, double> coeffs;
    for (int i = 1; i <= n; ++i) coeffs.emplace(Word::generator(i), coeff(rng));
    for (std::uint64_t idx = ctx.block_offset(2); idx < ctx.dim(3); ++idx)
      if (pick(rng) < 0.3) coeffs.emplace(ctx.word_at(idx), coeff(rng));
    Symbol base(n, std::move(coeffs));
    std::vector<double> c(n);
    for (double& ci : c) ci = coeff(rng);
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i + 1;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    Symbol moved = permute(rescale(base, c), sigma);
    auto hit = sunada_equivalence(base, moved);
    if (!hit) continue;
    ++recovered;
    CollapsedPolynomial cb = collapse(base), cm = collapse(moved);
    double worst = 0;
    for (const auto& [m, value] : cb.terms()) {
      double rhs = cm.coeff(permute_multidegree(m, hit->sigma));
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < m[i]; ++t) rhs *= hit->scale[i];
      worst = std::max(worst, std::abs(value - rhs) / std::max(1.0, std::abs(value)));
    }
    worst_recon = std::max(worst_recon, worst);
    // Witness inversion: sigma' = sigma^{-1}, s'_j = 1 / s_{sigma(j)}.
    std::vector<int> sig_inv(n);
    for (int j = 1; j <= n; ++j) sig_inv[hit->sigma[j - 1] - 1] = j;
    std::vector<double> s_inv(n);
    for (int j = 1; j <= n; ++j) s_inv[j - 1] = 1.0 / hit->scale[hit->sigma[j - 1] - 1];
    double worst_inv = 0;
    for (const auto& [m, value] : cm.terms()) {
      double rhs = cb.coeff(permute_multidegree(m, sig_inv));
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < m[i]; ++t) rhs *= s_inv[i];
      worst_inv = std::max(worst_inv, std::abs(value - rhs) / std::max(1.0, std::abs(value)));
    }
    if (worst <= 1e-9 && worst_inv <= 1e-9) ++inverted;
  }
  r.pass = pair_equal && id_ok && recovered == trials && inverted == trials;
  r.detail = "pair collapses equal: " + std::string(pair_equal ? "yes" : "no") +
             "; identity witness: " + (id_ok ? "yes" : "no") + "; planted pairs " +
             std::to_string(recovered) + "/" + std::to_string(trials) +
             " recovered and inverted " + std::to_string(inverted) + "/" +
             std::to_string(trials) + ", worst reconstruction error " + fmt(worst_recon);
  return r;
}

// 8. Poisson kernel residuals: exact at T = 0, small at L = 14 for a strict
// row contraction, and decaying by 10x or more from L = 7.
inline CriterionResult c8_poisson_kernel(std::uint64_t seed) {
  CriterionResult r{8, "poisson-kernel-residuals-decay"};
  auto t0 = std::chrono::steady_clock::now();
  PoissonKernelResult zero = poisson_kernel(linear2(), MatrixTuple::zero(2, 2), 5);
  bool zero_exact = zero.isometry_residual == 0.0 && zero.intertwining_residual == 0.0;
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CMat> g;
  for (int i = 0; i < 2; ++i) {
    CMat m(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m(a, b) = std::complex<double>(gauss(rng), gauss(rng));
    g.push_back(m);
  }
  CMat row = g[0] * g[0].adjoint() + g[1] * g[1].adjoint();
  double scale = 0.5 / std::sqrt(numerical_norm(row));
  MatrixTuple t({g[0] * scale, g[1] * scale});
  PoissonKernelResult r7 = poisson_kernel(linear2(), t, 7);
  PoissonKernelResult r14 = poisson_kernel(linear2(), t, 14);
  double ms = elapsed_ms(t0);
  bool small = r14.isometry_residual <= 1e-4 && r14.intertwining_residual <= 1e-4;
  bool decayed = r14.isometry_residual > 0 && r14.intertwining_residual > 0 &&
                 r7.isometry_residual / r14.isometry_residual >= 10.0 &&
                 r7.intertwining_residual / r14.intertwining_residual >= 10.0;
  r.pass = zero_exact && small && decayed;
  r.detail = "T=0 exact: " + std::string(zero_exact ? "yes" : "no") +
             "; L=7 residuals (" + fmt(r7.isometry_residual) + ", " +
             fmt(r7.intertwining_residual) + "); L=14 residuals (" +
             fmt(r14.isometry_residual) + ", " + fmt(r14.intertwining_residual) + "); " +
             fmt(ms) + " ms";
  return r;
}

// 9. Scalar Reinhardt invariance, matrix circular invariance, and membership
// monotonicity along rays.
inline CriterionResult c9_domain_geometry(std::uint64_t seed) {
  CriterionResult r{9, "domain-geometry-invariances"};
  Symbol f = pair_f();
  std::mt19937_64 rng(seed ^ 0xe7037ed1a0b428dbull);
  std::uniform_real_distribution<double> box(-1.1, 1.1), angle(0.0, 6.283185307179586);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.0, 0.8);

  std::vector<ReinhardtSample> rs;
  for (int i = 0; i < 1000; ++i) {
    ReinhardtSample s;
    for (int j = 0; j < 2; ++j) {
      s.z.push_back({box(rng), box(rng)});
      s.phases.push_back(std::polar(1.0, angle(rng)));
    }
    rs.push_back(std::move(s));
  }
  InvarianceReport rein = reinhardt_check(f, rs, 1e-9, 1e-12);

  std::vector<CircularSample> cs;
  for (int i = 0; i < 1000; ++i) {
    double u = radius(rng);
    std::vector<CMat> mats;
    for (int m = 0; m < 2; ++m) {
      CMat mm(2, 2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          mm(a, b) = std::complex<double>(gauss(rng), gauss(rng)) * u;
      mats.push_back(mm);
    }
    cs.push_back({MatrixTuple(std::move(mats)), std::polar(1.0, angle(rng))});
  }
  InvarianceReport circ = circular_check(f, cs, 1e-9, 1e-12);

  std::size_t monotone_rays = 0;
  const int rays = 100;
  for (int ray = 0; ray < rays; ++ray) {
    std::vector<CMat> mats;
    for (int m = 0; m < 2; ++m) {
      CMat mm(2, 2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) mm(a, b) = std::complex<double>(gauss(rng), gauss(rng));
      mats.push_back(mm);
    }
    MatrixTuple dir(std::move(mats));
    double norm = numerical_norm(dir.mat(1)) + numerical_norm(dir.mat(2));
    int prev = 0;
    bool monotone = true;
    for (int step = 0; step <= 40; ++step) {
      double tval = 2.0 * step / 40.0 / std::max(norm, 1e-9);
      MembershipVerdict v = domain_membership(f, scale_tuple(dir, tval), 1e-9);
      int rank = v.status == Membership::Interior ? 0
                 : v.status == Membership::Boundary ? 1
                                                    : 2;
      if (rank < prev) monotone = false;
      prev = std::max(prev, rank);
    }
    if (monotone) ++monotone_rays;
  }

  r.pass = rein.pass && circ.pass && monotone_rays == rays;
  r.detail = "reinhardt flips " + std::to_string(rein.status_flips) + " drift " +
             fmt(rein.max_margin_drift) + "; circular flips " +
             std::to_string(circ.status_flips) + " drift " + fmt(circ.max_margin_drift) +
             "; monotone rays " + std::to_string(monotone_rays) + "/" +
             std::to_string(rays);
  return r;
}

// 10. C^8 ball audit: the eigenvalue route is phase invariant; the literal
// closed-form inequality pair is compared against it over 10^4 samples and any
// disagreement is surfaced as a finding (the known discrepancy has a real
// witness reported below).
inline CriterionResult c10_c8_audit(std::uint64_t seed) {
  CriterionResult r{10, "c8-ball-two-route-audit"};
  C8Audit audit = audit_ball_domain_C8(10000, 0.8, seed ^ 0x8ebc6af09c88c6e3ull);
  std::mt19937_64 rng(seed ^ 0x589965cc75374cc3ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::size_t flips = 0;
  double drift = 0;
  for (int i = 0; i < 100; ++i) {
    std::array<std::complex<double>, 8> l{};
    double norm2 = 0;
    for (auto& li : l) {
      li = {gauss(rng), gauss(rng)};
      norm2 += std::norm(li);
    }
    double s = 0.9 / std::sqrt(norm2);
    for (auto& li : l) li *= s;
    std::array<std::complex<double>, 8> rot = l;
    std::complex<double> phase = std::polar(1.0, angle(rng));
    for (auto& li : rot) li *= phase;
    C8Verdict a = ball_domain_C8(l), b = ball_domain_C8(rot);
    if (a.eigen_route.status != b.eigen_route.status) ++flips;
    drift = std::max(drift, std::abs(a.eigen_route.margin - b.eigen_route.margin));
  }
  double t = std::sqrt(0.6);
  C8Verdict witness = ball_domain_C8({t, 0, 0, 0, t, 0, 0, 0});
  r.pass = audit.samples == 10000 && flips == 0 && drift <= 1e-12;
  r.detail = "agreement rate " + fmt(audit.agreement_rate) + " over 10000 samples at radius 0.8" +
             (audit.found_disagreement ? " (disagreements found)" : "") +
             "; eigen-route phase flips " + std::to_string(flips) + " drift " + fmt(drift) +
             "; finding: at the real witness sqrt(0.6)*(e1+e5) the closed form says " +
             to_string(witness.formula_route.status) + " while the eigenvalue route says " +
             to_string(witness.eigen_route.status);
  return r;
}

}  // namespace selftest

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0) {
  using namespace selftest;
  return {c1_weight_tables(seed),   c2_norm_formulas(seed),  c3_defect_projection(seed),
          c4_weight_oracle(seed),   c5_pair_obstruction(seed), c6_disk_detection(seed),
          c7_collapse_matching(seed), c8_poisson_kernel(seed), c9_domain_geometry(seed),
          c10_c8_audit(seed)};
}

inline bool print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    out << "[" << (r.id < 10 ? " " : "") << r.id << "] " << (r.pass ? "PASS" : "FAIL")
        << " " << r.name << " — " << r.detail << "\n";
  }
  out << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
  return all;
}

}  // namespace ncdomain
