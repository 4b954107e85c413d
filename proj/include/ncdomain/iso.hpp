#pragma once

// Isomorphism-detection pipeline.  Three independent tools:
//  * sunada_equivalence: permutation + positive rescaling matching of the
//    collapsed polynomials (a sufficient condition for isomorphism);
//  * degree_d_constraints / obstruction_search: necessary conditions on the
//    modulus-squared matrix P = (|m_ij|^2) of the degree-1 block of any
//    isometric isomorphism between normalized symbols.  P must be doubly
//    stochastic and satisfy, for every word beta of length d,
//        sum_{|alpha| = d} (prod_t p_{beta_t alpha_t}) / b^g_alpha
//            = 1 / b^f_beta;
//    an exhaustive certificate over the candidate set refutes isomorphism,
//    a feasible candidate is only a non-refutation;
//  * disk_detector / pushforward: degree-1 symbols are rescaled disk
//    algebras, and polynomial hom data pushes domain tuples forward.

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncdomain/fock.hpp"
#include "ncdomain/weights.hpp"

namespace ncdomain {

// (sigma . m)_j = m_{sigma(j)}: the multidegree seen through the permutation.
// Chosen so that collapse(permute(s, sigma)) evaluated at sigma . m equals
// collapse(s) at m.
inline std::vector<int> permute_multidegree(const std::vector<int>& m,
                                            const std::vector<int>& sigma) {
  std::vector<int> out(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) out[j] = m.at(sigma[j] - 1);
  return out;
}

struct SunadaEquivalence {
  std::vector<int> sigma;     // sigma[i-1] = sigma(i)
  std::vector<double> scale;  // s_i > 0 with c_f(m) = c_g(sigma.m) prod s_i^m_i
  double residual;            // largest log-domain equation residual
};

namespace detail {
inline std::optional<SunadaEquivalence> try_sunada_perm(
    const CollapsedPolynomial& cf, const CollapsedPolynomial& cg,
    const std::vector<int>& sigma, double residual_tol) {
  if (cf.terms().size() != cg.terms().size()) return std::nullopt;
  for (const auto& [m, c] : cf.terms())
    if (cg.coeff(permute_multidegree(m, sigma)) == 0.0) return std::nullopt;
  const std::size_t rows = cf.terms().size();
  const int n = cf.n();
  Eigen::MatrixXd a(rows, n);
  Eigen::VectorXd b(rows);
  std::size_t r = 0;
  for (const auto& [m, c] : cf.terms()) {
    for (int i = 0; i < n; ++i) a(r, i) = m[i];
    b(r) = std::log(c) - std::log(cg.coeff(permute_multidegree(m, sigma)));
    ++r;
  }
  Eigen::VectorXd u = a.colPivHouseholderQr().solve(b);
  double residual = (a * u - b).cwiseAbs().maxCoeff();
  if (residual > residual_tol) return std::nullopt;
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) scale[i] = std::exp(u(i));
  return SunadaEquivalence{sigma, std::move(scale), residual};
}
}  // namespace detail

// Searches all n! permutations (lexicographic order) for sigma and positive
// scalars s_i with c_f(m) = c_g(sigma.m) prod_i s_i^(m_i) on matching
// supports; the scalars come from a least-squares solve in log space.  A hit
// certifies that the two domain algebras are isomorphic.
inline std::optional<SunadaEquivalence> sunada_equivalence(const Symbol& f,
                                                           const Symbol& g,
                                                           double residual_tol = 1e-9) {
  require_valid(f);
  require_valid(g);
  if (f.n() != g.n()) return std::nullopt;
  CollapsedPolynomial cf = collapse(f), cg = collapse(g);
  std::vector<int> sigma(f.n());
  for (int i = 0; i < f.n(); ++i) sigma[i] = i + 1;
  do {
    if (auto hit = detail::try_sunada_perm(cf, cg, sigma, residual_tol)) return hit;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

inline std::vector<SunadaEquivalence> sunada_equivalence_all(const Symbol& f,
                                                             const Symbol& g,
                                                             double residual_tol = 1e-9) {
  require_valid(f);
  require_valid(g);
  std::vector<SunadaEquivalence> out;
  if (f.n() != g.n()) return out;
  CollapsedPolynomial cf = collapse(f), cg = collapse(g);
  std::vector<int> sigma(f.n());
  for (int i = 0; i < f.n(); ++i) sigma[i] = i + 1;
  do {
    if (auto hit = detail::try_sunada_perm(cf, cg, sigma, residual_tol))
      out.push_back(*hit);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// The degree-d block of necessary conditions.  Rows are indexed by the words
// beta of length d in graded-lex order; the row residual at a matrix P is
//   sum_{|alpha| = d} (prod_t P(beta_t, alpha_t)) / b^g_alpha - 1 / b^f_beta.
// For n = 2 each row is also expanded as a univariate polynomial in p, the
// corner of the doubly stochastic matrix [[p, 1-p], [1-p, p]].
struct DegreeConstraints {
  int n = 0;
  int degree = 0;
  std::vector<Word> words;                // length-d words, graded-lex
  std::vector<double> rhs;                // 1 / b^f_beta
  std::vector<double> inv_bg;             // 1 / b^g_alpha
  std::vector<std::vector<double>> poly;  // n = 2 only: residual coefficients in p

  double residual(const Eigen::MatrixXd& p, std::size_t row) const {
    double lhs = 0;
    const Word& beta = words[row];
    for (std::size_t a = 0; a < words.size(); ++a) {
      double term = inv_bg[a];
      const Word& alpha = words[a];
      for (std::size_t t = 0; t < alpha.length() && term != 0; ++t)
        term *= p(beta.letter(t) - 1, alpha.letter(t) - 1);
      lhs += term;
    }
    return lhs - rhs[row];
  }

  double max_residual(const Eigen::MatrixXd& p) const {
    double worst = 0;
    for (std::size_t r = 0; r < words.size(); ++r)
      worst = std::max(worst, std::abs(residual(p, r)));
    return worst;
  }

  double eval_poly(std::size_t row, double p) const {
    double v = 0;
    for (std::size_t k = poly[row].size(); k-- > 0;) v = v * p + poly[row][k];
    return v;
  }

  // sup |d/dp| bound on [0, 1]: sum_k k |c_k|.
  double poly_derivative_bound(std::size_t row) const {
    double b = 0;
    for (std::size_t k = 1; k < poly[row].size(); ++k) b += k * std::abs(poly[row][k]);
    return b;
  }
};

inline DegreeConstraints degree_d_constraints(const Symbol& f, const Symbol& g, int d) {
  require_valid(f);
  require_valid(g);
  if (f.n() != g.n()) throw std::invalid_argument("symbols must share one alphabet");
  if (!is_normalized(f) || !is_normalized(g))
    throw std::invalid_argument("symbols must be normalized (generator coefficients 1)");
  if (d < 1) throw std::invalid_argument("constraint degree must be >= 1");
  WordContext ctx = f.context();
  if (ctx.block_size(d) > 1'000'000)
    throw std::invalid_argument("constraint block too large at this degree");

  DegreeConstraints dc;
  dc.n = f.n();
  dc.degree = d;
  WeightTable bf(f, d), bg(g, d);
  const std::uint64_t off = ctx.block_offset(d), cnt = ctx.block_size(d);
  for (std::uint64_t idx = off; idx < off + cnt; ++idx) {
    Word w = ctx.word_at(idx);
    dc.rhs.push_back(1.0 / bf.at(w));
    dc.inv_bg.push_back(1.0 / bg.at(w));
    dc.words.push_back(std::move(w));
  }

  if (dc.n == 2) {
    // Row polynomial: product over positions of p (matching letters) or 1-p
    // (differing letters), weighted by 1/b^g_alpha, minus 1/b^f_beta.
    for (std::size_t r = 0; r < dc.words.size(); ++r) {
      std::vector<double> acc(static_cast<std::size_t>(d) + 1, 0.0);
      for (std::size_t a = 0; a < dc.words.size(); ++a) {
        std::vector<double> term{dc.inv_bg[a]};
        for (int t = 0; t < d; ++t) {
          bool match = dc.words[r].letter(t) == dc.words[a].letter(t);
          std::vector<double> next(term.size() + 1, 0.0);
          for (std::size_t k = 0; k < term.size(); ++k) {
            if (match) {
              next[k + 1] += term[k];  // * p
            } else {
              next[k] += term[k];      // * (1 - p)
              next[k + 1] -= term[k];
            }
          }
          term = std::move(next);
        }
        for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
      }
      acc[0] -= dc.rhs[r];
      dc.poly.push_back(std::move(acc));
    }
  }
  return dc;
}

// Norm-level (unsquared) violation of one row at a candidate P.
inline double norm_level_violation(const DegreeConstraints& dc, std::size_t row,
                                   const Eigen::MatrixXd& p) {
  double lhs = dc.residual(p, row) + dc.rhs[row];
  return std::abs(std::sqrt(std::max(0.0, lhs)) - std::sqrt(dc.rhs[row]));
}

enum class ObstructionOutcome { Obstructed, CandidateFound, Inconclusive };

inline const char* to_string(ObstructionOutcome o) {
  switch (o) {
    case ObstructionOutcome::Obstructed: return "Obstructed";
    case ObstructionOutcome::CandidateFound: return "CandidateFound";
    default: return "Inconclusive";
  }
}

struct ObstructionVerdict {
  ObstructionOutcome outcome = ObstructionOutcome::Inconclusive;
  int max_degree = 0;
  std::vector<DegreeConstraints> systems;  // degrees 2..max_degree
  double violation_lower_bound = 0;        // Obstructed: inf over candidates
  std::optional<Eigen::MatrixXd> candidate;
  double candidate_residual = 0;
  std::string note;
};

namespace detail {

inline Eigen::MatrixXd sinkhorn(Eigen::MatrixXd m, int iters = 60) {
  m = m.cwiseMax(1e-12);
  for (int it = 0; it < iters; ++it) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) /= m.row(r).sum();
    for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) /= m.col(c).sum();
  }
  return m;
}

inline double systems_max_residual(const std::vector<DegreeConstraints>& systems,
                                   const Eigen::MatrixXd& p) {
  double worst = 0;
  for (const auto& dc : systems) worst = std::max(worst, dc.max_residual(p));
  return worst;
}

inline double systems_sq_objective(const std::vector<DegreeConstraints>& systems,
                                   const Eigen::MatrixXd& p) {
  double total = 0;
  for (const auto& dc : systems)
    for (std::size_t r = 0; r < dc.words.size(); ++r) {
      double v = dc.residual(p, r);
      total += v * v;
    }
  return total;
}

}  // namespace detail

// Decides whether any doubly stochastic P can satisfy every constraint of
// degree 2..max_degree.  For n = 2 the candidate set is the segment
// P(p) = [[p, 1-p], [1-p, p]], p in [0, 1]; a uniform grid plus a Lipschitz
// bound on each row polynomial turns a positive grid minimum into a rigorous
// Obstructed certificate.  For n >= 3 the search is exact over permutation
// matrices and heuristic (seeded projected descent) beyond, so it never
// reports Obstructed there.  feasibility tolerance: 1e-9.
inline ObstructionVerdict obstruction_search(const Symbol& f, const Symbol& g,
                                             int max_degree, int resolution = 2001,
                                             std::uint64_t seed = 0) {
  constexpr double kFeasTol = 1e-9;
  if (max_degree < 2) throw std::invalid_argument("max degree must be >= 2");
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  ObstructionVerdict verdict;
  verdict.max_degree = max_degree;
  for (int d = 2; d <= max_degree; ++d)
    verdict.systems.push_back(degree_d_constraints(f, g, d));
  const int n = f.n();

  if (n == 1) {
    // One candidate: P = [1].
    Eigen::MatrixXd p(1, 1);
    p(0, 0) = 1.0;
    double res = detail::systems_max_residual(verdict.systems, p);
    if (res <= kFeasTol) {
      verdict.outcome = ObstructionOutcome::CandidateFound;
      verdict.candidate = p;
      verdict.candidate_residual = res;
      verdict.note = "the only stochastic 1x1 matrix satisfies every constraint";
    } else {
      verdict.outcome = ObstructionOutcome::Obstructed;
      verdict.violation_lower_bound = res;
      verdict.note = "the only stochastic 1x1 matrix violates a constraint";
    }
    return verdict;
  }

  if (n == 2) {
    auto pmat = [](double p) {
      Eigen::MatrixXd m(2, 2);
      m << p, 1 - p, 1 - p, p;
      return m;
    };
    double lipschitz = 0;
    for (const auto& dc : verdict.systems)
      for (std::size_t r = 0; r < dc.words.size(); ++r)
        lipschitz = std::max(lipschitz, dc.poly_derivative_bound(r));
    const double h = 1.0 / (resolution - 1);
    double grid_min = std::numeric_limits<double>::infinity();
    // Descending from P = I: the first feasible point wins, so the identity is
    // preferred over equally feasible matrices further away.
    for (int j = resolution - 1; j >= 0; --j) {
      double p = static_cast<double>(j) * h;
      double v = 0;
      for (const auto& dc : verdict.systems)
        for (std::size_t r = 0; r < dc.words.size(); ++r)
          v = std::max(v, std::abs(dc.eval_poly(r, p)));
      if (v <= kFeasTol) {
        verdict.outcome = ObstructionOutcome::CandidateFound;
        verdict.candidate = pmat(p);
        verdict.candidate_residual = v;
        verdict.note = "feasible at p = " + std::to_string(p);
        return verdict;
      }
      grid_min = std::min(grid_min, v);
    }
    double bound = grid_min - lipschitz * h / 2;
    if (bound > 0) {
      verdict.outcome = ObstructionOutcome::Obstructed;
      verdict.violation_lower_bound = bound;
      verdict.note =
          "every doubly stochastic candidate violates some constraint by > " +
          std::to_string(bound);
    } else {
      verdict.outcome = ObstructionOutcome::Inconclusive;
      verdict.note = "grid minimum positive but below the Lipschitz certificate";
    }
    return verdict;
  }

  // n >= 3: exact over permutation matrices first.
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i + 1;
  do {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, sigma[i] - 1) = 1.0;
    double res = detail::systems_max_residual(verdict.systems, p);
    if (res <= kFeasTol) {
      verdict.outcome = ObstructionOutcome::CandidateFound;
      verdict.candidate = p;
      verdict.candidate_residual = res;
      verdict.note = "feasible at a permutation matrix";
      return verdict;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  // Seeded projected descent over the doubly stochastic polytope (heuristic).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  double best_res = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best;
  for (int restart = 0; restart < 16; ++restart) {
    Eigen::MatrixXd p(n, n);
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = unif(rng);
    p = detail::sinkhorn(p);
    double obj = detail::systems_sq_objective(verdict.systems, p);
    for (int iter = 0; iter < 250; ++iter) {
      Eigen::MatrixXd grad(n, n);
      const double fd = 1e-6;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Eigen::MatrixXd up = p, dn = p;
          up(i, j) += fd;
          dn(i, j) -= fd;
          grad(i, j) = (detail::systems_sq_objective(verdict.systems, detail::sinkhorn(up)) -
                        detail::systems_sq_objective(verdict.systems, detail::sinkhorn(dn))) /
                       (2 * fd);
        }
      double step = 0.5;
      bool improved = false;
      for (int bt = 0; bt < 20; ++bt, step /= 2) {
        Eigen::MatrixXd cand = detail::sinkhorn(p - step * grad);
        double cobj = detail::systems_sq_objective(verdict.systems, cand);
        if (cobj < obj - 1e-18) {
          p = cand;
          obj = cobj;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    double res = detail::systems_max_residual(verdict.systems, p);
    if (res < best_res) {
      best_res = res;
      best = p;
    }
  }
  if (best_res <= kFeasTol) {
    verdict.outcome = ObstructionOutcome::CandidateFound;
    verdict.candidate = best;
    verdict.candidate_residual = best_res;
    verdict.note = "feasible interior point found by projected descent";
    return verdict;
  }
  verdict.outcome = ObstructionOutcome::Inconclusive;
  verdict.candidate_residual = best_res;
  verdict.note =
      "no feasible candidate found (search is heuristic for n >= 3; best residual " +
      std::to_string(best_res) + ")";
  return verdict;
}

// Degree-1 symbols generate rescaled disk-algebra tensor products.
inline bool disk_detector(const Symbol& s) {
  require_valid(s);
  return s.degree() == 1;
}

// Pushforward of a tuple under polynomial hom data: component i of the image
// is sum_alpha c_{i,alpha} T_alpha.  T must lie in the closed domain of g.
inline MatrixTuple pushforward(const std::vector<PolyElement>& maps,
                               const MatrixTuple& t, const Symbol& g,
                               double tol = 1e-9) {
  if (maps.empty()) throw std::invalid_argument("pushforward needs at least one component");
  if (t.n() != g.n())
    throw std::invalid_argument("tuple size must match the source symbol alphabet");
  for (const auto& m : maps)
    if (m.n() != g.n())
      throw std::invalid_argument("map components must live over the source alphabet");
  if (domain_membership(g, t, tol).status == Membership::Outside)
    throw std::domain_error("tuple lies outside the source domain");
  std::vector<CMat> images;
  images.reserve(maps.size());
  for (const auto& m : maps) images.push_back(evaluate(m, t));
  return MatrixTuple(std::move(images));
}

}  // namespace ncdomain
