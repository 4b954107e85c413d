#pragma once

// Weighted left creation operators of a symbol on the truncated full Fock
// space span{delta_alpha : |alpha| <= L}:
//   W_i delta_alpha = sqrt(b_alpha / b_{g_i alpha}) delta_{g_i alpha},
// columns at top-length words mapping to zero.  Provides closed-form monomial
// and homogeneous norms (with a numerical SVD cross-check), the rank-one
// defect I - sum a_alpha W_alpha W_alpha*, polynomial elements with radial
// truncation, and the Poisson kernel intertwining a domain tuple with the
// shifts.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/SparseCore>

#include <complex>
#include <map>
#include <vector>

#include "ncdomain/domains.hpp"
#include "ncdomain/weights.hpp"

namespace ncdomain {

using SparseCMat = Eigen::SparseMatrix<std::complex<double>>;

class ShiftOperators {
 public:
  ShiftOperators(const Symbol& s, int max_len) : weights_(s, max_len) {
    WordContext ctx = weights_.context();
    dim_ = ctx.dim(max_len);
    const std::uint64_t cols = max_len == 0 ? 0 : ctx.dim(max_len - 1);
    const int n = s.n();
    mats_.reserve(n);
    for (int i = 1; i <= n; ++i) {
      std::vector<Eigen::Triplet<std::complex<double>>> trips;
      trips.reserve(cols);
      for (std::uint64_t idx = 0; idx < cols; ++idx) {
        Word alpha = ctx.word_at(idx);
        std::uint64_t row = ctx.index(concat(Word::generator(i), alpha));
        double w = std::sqrt(weights_.at_index(idx) / weights_.at_index(row));
        trips.emplace_back(static_cast<int>(row), static_cast<int>(idx), w);
      }
      SparseCMat m(static_cast<int>(dim_), static_cast<int>(dim_));
      m.setFromTriplets(trips.begin(), trips.end());
      mats_.push_back(std::move(m));
    }
  }

  const Symbol& symbol() const { return weights_.symbol(); }
  const WeightTable& weights() const { return weights_; }
  WordContext context() const { return weights_.context(); }
  int n() const { return symbol().n(); }
  int max_len() const { return weights_.max_len(); }
  std::uint64_t dim() const { return dim_; }

  const SparseCMat& mat(int i) const { return mats_.at(i - 1); }  // 1-based

  // W_alpha = W_{a_1} ... W_{a_d}; the identity for the empty word.
  SparseCMat word_operator(const Word& w) const {
    context().require(w);
    SparseCMat out(static_cast<int>(dim_), static_cast<int>(dim_));
    out.setIdentity();
    for (std::size_t t = 0; t < w.length(); ++t) out = SparseCMat(out * mat(w.letter(t)));
    return out;
  }

 private:
  WeightTable weights_;
  std::vector<SparseCMat> mats_;
  std::uint64_t dim_;
};

inline ShiftOperators build_shifts(const Symbol& s, int max_len) {
  return ShiftOperators(s, max_len);
}

// ||W_alpha|| = 1 / sqrt(b_alpha), attained on the vacuum column.
inline double monomial_norm(const WeightTable& wt, const Word& alpha) {
  return 1.0 / std::sqrt(wt.at(alpha));
}

// Polynomial element sum_alpha c_alpha X_alpha with complex coefficients
// (constant term allowed).  Exact zeros are dropped.
class PolyElement {
 public:
  PolyElement(int n, std::map<Word, std::complex<double>> coeffs)
      : n_(n), coeffs_(std::move(coeffs)) {
    WordContext ctx(n);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      ctx.require(it->first);
      it = it->second == 0.0 ? coeffs_.erase(it) : std::next(it);
    }
  }

  int n() const { return n_; }
  const std::map<Word, std::complex<double>>& coeffs() const { return coeffs_; }

  std::complex<double> coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? std::complex<double>(0) : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [w, c] : coeffs_) d = std::max<int>(d, static_cast<int>(w.length()));
    return d;
  }

  bool operator==(const PolyElement& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

 private:
  int n_;
  std::map<Word, std::complex<double>> coeffs_;
};

// Coefficients scaled by r^|alpha|, 0 < r < 1.
inline PolyElement radial_truncation(const PolyElement& p, double r) {
  if (!(r > 0) || !(r < 1))
    throw std::invalid_argument("radial parameter must lie in (0, 1)");
  std::map<Word, std::complex<double>> out;
  for (const auto& [w, c] : p.coeffs()) out.emplace(w, c * std::pow(r, w.length()));
  return PolyElement(p.n(), std::move(out));
}

// Terms of word length exactly j.
inline PolyElement homogeneous_part(const PolyElement& p, int j) {
  if (j < 0) throw std::invalid_argument("homogeneous degree must be >= 0");
  std::map<Word, std::complex<double>> out;
  for (const auto& [w, c] : p.coeffs())
    if (static_cast<int>(w.length()) == j) out.emplace(w, c);
  return PolyElement(p.n(), std::move(out));
}

// sum_alpha c_alpha T_alpha at a matrix tuple.
inline CMat evaluate(const PolyElement& p, const MatrixTuple& t) {
  if (p.n() != t.n())
    throw std::invalid_argument("element and tuple must share one alphabet");
  CMat out = CMat::Zero(t.k(), t.k());
  for (const auto& [w, c] : p.coeffs()) out += c * word_product(t, w);
  return out;
}

// Largest singular value; the operator norm for a dense matrix.
inline double numerical_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw std::invalid_argument("matrix must have finite entries");
  if (std::min(m.rows(), m.cols()) <= 128)
    return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
  return Eigen::BDCSVD<CMat>(m).singularValues()(0);
}

// For a homogeneous element of degree k the norm is exactly
// sqrt(sum |x_alpha|^2 / b_alpha): distinct output suffixes are orthogonal and
// the per-suffix factor sqrt(b_beta / b_{alpha beta}) peaks at beta = e.
inline double homogeneous_norm(const WeightTable& wt, const PolyElement& x) {
  if (x.n() != wt.symbol().n())
    throw std::invalid_argument("element and weights must share one alphabet");
  int deg = -1;
  double sum = 0;
  for (const auto& [w, c] : x.coeffs()) {
    if (deg == -1) deg = static_cast<int>(w.length());
    if (static_cast<int>(w.length()) != deg)
      throw std::invalid_argument("element is not homogeneous");
    sum += std::norm(c) / wt.at(w);
  }
  return std::sqrt(sum);
}

// sum_alpha c_alpha W_alpha as a dense matrix, for SVD cross-checks.
inline CMat assemble_element(const ShiftOperators& shifts, const PolyElement& x) {
  if (x.n() != shifts.n())
    throw std::invalid_argument("element and shifts must share one alphabet");
  const auto d = static_cast<Eigen::Index>(shifts.dim());
  CMat out = CMat::Zero(d, d);
  for (const auto& [w, c] : x.coeffs())
    out += c * CMat(shifts.word_operator(w));
  return out;
}

// I - sum_alpha a_alpha W_alpha W_alpha*; on the truncated space this is
// exactly the rank-one projection onto the vacuum once L >= degree(symbol).
inline CMat defect_operator(const Symbol& s, int max_len) {
  require_valid(s);
  if (max_len < s.degree())
    throw std::invalid_argument("truncation length below symbol degree");
  ShiftOperators shifts(s, max_len);
  const auto d = static_cast<Eigen::Index>(shifts.dim());
  CMat out = CMat::Identity(d, d);
  for (const auto& [w, a] : s.coeffs()) {
    SparseCMat ww = shifts.word_operator(w);
    SparseCMat wa = ww.adjoint();
    out -= a * CMat(SparseCMat(ww * wa));
  }
  return out;
}

struct PoissonKernelResult {
  CMat kernel;  // (dim * k) x k, block row alpha = sqrt(b_alpha) Delta T_alpha*
  double isometry_residual;      // || K* K - I ||
  double intertwining_residual;  // max_i || K* (W_i x I) K - T_i ||
};

// Poisson kernel of a tuple in the closed domain.  The defect of T must be
// positive semidefinite up to -1e-12 (eigenvalues clamped at zero); its square
// root feeds the block rows.  Both residuals vanish as L grows for tuples in
// the open domain, exactly at T = 0.
inline PoissonKernelResult poisson_kernel(const Symbol& s, const MatrixTuple& t,
                                          int max_len) {
  CMat defect = membership_defect(s, t);
  Eigen::SelfAdjointEigenSolver<CMat> es(defect);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::domain_error("tuple lies outside the closed domain");
  Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  CMat delta = es.eigenvectors() *
               clamped.cwiseSqrt().asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
               es.eigenvectors().adjoint();

  WeightTable wt(s, max_len);
  WordContext ctx = wt.context();
  const std::uint64_t dim = ctx.dim(max_len);
  const int k = t.k();

  // Word products, each from its tail: T_{a_1 ... a_d} = T_{a_1} T_{tail}.
  std::vector<CMat> products(dim);
  products[0] = CMat::Identity(k, k);
  for (std::uint64_t idx = 1; idx < dim; ++idx) {
    Word w = ctx.word_at(idx);
    products[idx] = t.mat(w.letter(0)) * products[ctx.index(w.suffix_from(1))];
  }

  CMat kernel(static_cast<Eigen::Index>(dim) * k, k);
  for (std::uint64_t idx = 0; idx < dim; ++idx)
    kernel.block(static_cast<Eigen::Index>(idx) * k, 0, k, k) =
        std::sqrt(wt.at_index(idx)) * delta * products[idx].adjoint();

  PoissonKernelResult res;
  res.kernel = kernel;
  res.isometry_residual =
      numerical_norm(kernel.adjoint() * kernel - CMat::Identity(k, k));

  // (W_i x I) K has block sqrt(b_alpha / b_{g_i alpha}) K_alpha at g_i alpha,
  // so K* (W_i x I) K accumulates over |alpha| <= L - 1.
  const std::uint64_t cols = max_len == 0 ? 0 : ctx.dim(max_len - 1);
  res.intertwining_residual = 0;
  for (int i = 1; i <= s.n(); ++i) {
    CMat acc = CMat::Zero(k, k);
    for (std::uint64_t idx = 0; idx < cols; ++idx) {
      Word alpha = ctx.word_at(idx);
      std::uint64_t row = ctx.index(concat(Word::generator(i), alpha));
      double w = std::sqrt(wt.at_index(idx) / wt.at_index(row));
      acc += w *
             kernel.block(static_cast<Eigen::Index>(row) * k, 0, k, k).adjoint() *
             kernel.block(static_cast<Eigen::Index>(idx) * k, 0, k, k);
    }
    res.intertwining_residual = std::max(res.intertwining_residual,
                                         numerical_norm(acc - t.mat(i)));
  }
  return res;
}

}  // namespace ncdomain
