#pragma once

// Matrix domains D_f(C^k) = { (T_1..T_n) : sum a_alpha T_alpha T_alpha* <= I }
// attached to a symbol: membership with a signed margin (least eigenvalue of
// the defect I - sum a_alpha T_alpha T_alpha*), the scalar (k = 1) shadow,
// Reinhardt/circular invariance audits, boundary slices of the scalar domain,
// and the closed-form C^8 description of the k = 2 row-contraction ball with a
// cross-check against the eigenvalue route.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "ncdomain/symbol.hpp"
#include "ncdomain/words.hpp"

namespace ncdomain {

using CMat = Eigen::MatrixXcd;

class MatrixTuple {
 public:
  explicit MatrixTuple(std::vector<CMat> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) throw std::invalid_argument("tuple needs at least one matrix");
    k_ = static_cast<int>(mats_[0].rows());
    for (const CMat& m : mats_) {
      if (m.rows() != k_ || m.cols() != k_)
        throw std::invalid_argument("tuple matrices must share one square size");
      if (!m.allFinite())
        throw std::invalid_argument("tuple matrices must have finite entries");
    }
  }

  static MatrixTuple zero(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("tuple sizes must be >= 1");
    return MatrixTuple(std::vector<CMat>(n, CMat::Zero(k, k)));
  }

  int n() const { return static_cast<int>(mats_.size()); }
  int k() const { return k_; }
  const CMat& mat(int i) const { return mats_.at(i - 1); }  // 1-based generator
  const std::vector<CMat>& mats() const { return mats_; }

 private:
  std::vector<CMat> mats_;
  int k_;
};

// Points of C^n as 1x1 matrix tuples.
inline MatrixTuple scalar_tuple(const std::vector<std::complex<double>>& z) {
  std::vector<CMat> mats;
  mats.reserve(z.size());
  for (const auto& zi : z) {
    CMat m(1, 1);
    m(0, 0) = zi;
    mats.push_back(m);
  }
  return MatrixTuple(std::move(mats));
}

inline MatrixTuple scale_tuple(const MatrixTuple& t, std::complex<double> c) {
  std::vector<CMat> mats = t.mats();
  for (CMat& m : mats) m *= c;
  return MatrixTuple(std::move(mats));
}

// T_alpha = T_{a_1} ... T_{a_d}; the identity for the empty word.
inline CMat word_product(const MatrixTuple& t, const Word& w) {
  if (w.max_letter() > t.n())
    throw std::invalid_argument("word uses generator beyond tuple size");
  CMat out = CMat::Identity(t.k(), t.k());
  for (std::size_t i = 0; i < w.length(); ++i) out *= t.mat(w.letter(i));
  return out;
}

// Hermitized defect I - sum_alpha a_alpha T_alpha T_alpha*.
inline CMat membership_defect(const Symbol& s, const MatrixTuple& t) {
  require_valid(s);
  if (t.n() != s.n())
    throw std::invalid_argument("tuple size must match symbol alphabet");
  CMat m = CMat::Identity(t.k(), t.k());
  for (const auto& [w, a] : s.coeffs()) {
    CMat p = word_product(t, w);
    m -= a * p * p.adjoint();
  }
  return ((m + CMat(m.adjoint())) / 2.0).eval();
}

enum class Membership { Interior, Boundary, Outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    default: return "Outside";
  }
}

struct MembershipVerdict {
  Membership status;
  double margin;  // least eigenvalue of the defect (1 - value in the scalar case)
};

inline MembershipVerdict classify_margin(double margin, double tol) {
  if (!(tol >= 0) || !std::isfinite(tol))
    throw std::invalid_argument("tolerance must be nonnegative and finite");
  if (margin > tol) return {Membership::Interior, margin};
  if (margin < -tol) return {Membership::Outside, margin};
  return {Membership::Boundary, margin};
}

inline MembershipVerdict domain_membership(const Symbol& s, const MatrixTuple& t,
                                           double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<CMat> es(membership_defect(s, t),
                                         Eigen::EigenvaluesOnly);
  return classify_margin(es.eigenvalues().minCoeff(), tol);
}

// Scalar shadow: margin 1 - sum_m c_m prod |z_i|^(2 m_i).  Agrees with the
// k = 1 matrix route because |z_alpha|^2 only depends on the multidegree.
inline MembershipVerdict scalar_membership(const CollapsedPolynomial& cp,
                                           const std::vector<std::complex<double>>& z,
                                           double tol = 1e-9) {
  return classify_margin(1.0 - cp.value(z), tol);
}

struct InvarianceReport {
  std::size_t samples = 0;
  std::size_t status_flips = 0;
  double max_margin_drift = 0;
  bool pass = true;
};

struct ReinhardtSample {
  std::vector<std::complex<double>> z;
  std::vector<std::complex<double>> phases;  // unit modulus, one per coordinate
};

namespace detail {
inline void require_unit(const std::complex<double>& w) {
  if (std::abs(std::abs(w) - 1.0) > 1e-9)
    throw std::invalid_argument("phase must have unit modulus");
}
}  // namespace detail

// Coordinatewise phases must not move the scalar membership verdict.
inline InvarianceReport reinhardt_check(const Symbol& s,
                                        const std::vector<ReinhardtSample>& samples,
                                        double tol = 1e-9, double drift_tol = 1e-12) {
  require_valid(s);
  InvarianceReport rep;
  for (const auto& sample : samples) {
    if (static_cast<int>(sample.z.size()) != s.n() ||
        static_cast<int>(sample.phases.size()) != s.n())
      throw std::invalid_argument("sample arity must match symbol alphabet");
    std::vector<std::complex<double>> rotated(sample.z.size());
    for (std::size_t i = 0; i < sample.z.size(); ++i) {
      detail::require_unit(sample.phases[i]);
      rotated[i] = sample.phases[i] * sample.z[i];
    }
    MembershipVerdict a = domain_membership(s, scalar_tuple(sample.z), tol);
    MembershipVerdict b = domain_membership(s, scalar_tuple(rotated), tol);
    ++rep.samples;
    if (a.status != b.status) ++rep.status_flips;
    rep.max_margin_drift = std::max(rep.max_margin_drift, std::abs(a.margin - b.margin));
  }
  rep.pass = rep.status_flips == 0 && rep.max_margin_drift <= drift_tol;
  return rep;
}

struct CircularSample {
  MatrixTuple tuple;
  std::complex<double> phase;  // unit modulus, applied to the whole tuple
};

// A global phase rotation of the tuple must not move the matrix verdict.
inline InvarianceReport circular_check(const Symbol& s,
                                       const std::vector<CircularSample>& samples,
                                       double tol = 1e-9, double drift_tol = 1e-12) {
  require_valid(s);
  InvarianceReport rep;
  for (const auto& sample : samples) {
    detail::require_unit(sample.phase);
    MembershipVerdict a = domain_membership(s, sample.tuple, tol);
    MembershipVerdict b = domain_membership(s, scale_tuple(sample.tuple, sample.phase), tol);
    ++rep.samples;
    if (a.status != b.status) ++rep.status_flips;
    rep.max_margin_drift = std::max(rep.max_margin_drift, std::abs(a.margin - b.margin));
  }
  rep.pass = rep.status_flips == 0 && rep.max_margin_drift <= drift_tol;
  return rep;
}

// Planar slice of the scalar domain: for x on a uniform grid of [0, 1], the
// largest y >= 0 with value(x e_i + y e_j) <= 1, found by doubling plus
// bisection to 1e-10.  Grid points whose axis value already exceeds 1 are
// omitted.  Monotone in y because every collapsed coefficient is nonnegative.
inline std::vector<std::pair<double, double>> boundary_slice(
    const CollapsedPolynomial& cp, int axis_i, int axis_j, int resolution) {
  if (cp.n() < 2) throw std::invalid_argument("slice needs at least two variables");
  if (axis_i < 1 || axis_i > cp.n() || axis_j < 1 || axis_j > cp.n() || axis_i == axis_j)
    throw std::invalid_argument("slice axes must be distinct coordinates");
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  std::vector<std::pair<double, double>> out;
  std::vector<double> abs2(cp.n(), 0.0);
  for (int gi = 0; gi < resolution; ++gi) {
    double x = static_cast<double>(gi) / (resolution - 1);
    abs2[axis_i - 1] = x * x;
    auto value = [&](double y) {
      abs2[axis_j - 1] = y * y;
      return cp.value_at_abs2(abs2);
    };
    if (value(0.0) > 1.0) continue;
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (value(hi) <= 1.0) {
      lo = hi;
      hi *= 2;
      if (++guard > 200) throw std::domain_error("slice is unbounded along the chosen axis");
    }
    while (hi - lo > 1e-10) {
      double mid = 0.5 * (lo + hi);
      (value(mid) <= 1.0 ? lo : hi) = mid;
    }
    out.emplace_back(x, 0.5 * (lo + hi));
  }
  return out;
}

// The k = 2 matrix ball of the symbol X_1 + X_2, viewed as a subset of C^8
// through T_1 = [[l1, l2], [l5, l6]], T_2 = [[l3, l4], [l7, l8]].  Two routes:
// the eigenvalue route packs the tuple and takes the membership margin; the
// formula route evaluates the closed-form inequality pair
//   |l1|^2 + |l2|^2 + |l3|^2 + |l4|^2 <= 1,
//   sum_i |l_i|^2 - sum_{i<j} |l_i l_j|^2
//         + sum_{1<=i<j<=4} |l_i conj(l_j) + conj(l_{i+4}) l_{j+4}|^2 <= 1
// exactly as stated, so the audit can measure how well it tracks the
// eigenvalue route.
struct C8Verdict {
  MembershipVerdict eigen_route;
  MembershipVerdict formula_route;
  double lhs1;
  double lhs2;
  bool agree;
};

inline C8Verdict ball_domain_C8(const std::array<std::complex<double>, 8>& l,
                                double tol = 1e-9) {
  CMat t1(2, 2), t2(2, 2);
  t1 << l[0], l[1], l[4], l[5];
  t2 << l[2], l[3], l[6], l[7];
  Symbol linear(2, {{Word::generator(1), 1.0}, {Word::generator(2), 1.0}});
  MatrixTuple tuple({t1, t2});

  C8Verdict v{};
  v.eigen_route = domain_membership(linear, tuple, tol);

  v.lhs1 = std::norm(l[0]) + std::norm(l[1]) + std::norm(l[2]) + std::norm(l[3]);
  double lhs2 = 0;
  for (int i = 0; i < 8; ++i) lhs2 += std::norm(l[i]);
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) lhs2 -= std::norm(l[i] * l[j]);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      lhs2 += std::norm(l[i] * std::conj(l[j]) + std::conj(l[i + 4]) * l[j + 4]);
  v.lhs2 = lhs2;
  v.formula_route = classify_margin(1.0 - std::max(v.lhs1, v.lhs2), tol);
  v.agree = v.eigen_route.status == v.formula_route.status;
  return v;
}

struct C8Audit {
  std::size_t samples = 0;
  std::size_t agreements = 0;
  double agreement_rate = 1.0;
  bool found_disagreement = false;
  std::array<std::complex<double>, 8> first_disagreement{};
};

// Uniform samples from the radius-r ball of C^8 (as R^16), both routes
// compared.  Deterministic for a fixed seed.
inline C8Audit audit_ball_domain_C8(std::size_t count, double radius,
                                    std::uint64_t seed, double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  C8Audit audit;
  for (std::size_t s = 0; s < count; ++s) {
    std::array<double, 16> dir{};
    double norm2 = 0;
    for (double& d : dir) {
      d = gauss(rng);
      norm2 += d * d;
    }
    double r = radius * std::pow(unif(rng), 1.0 / 16.0) / std::sqrt(norm2);
    std::array<std::complex<double>, 8> l{};
    for (int i = 0; i < 8; ++i) l[i] = {dir[2 * i] * r, dir[2 * i + 1] * r};
    C8Verdict v = ball_domain_C8(l, tol);
    ++audit.samples;
    if (v.agree) {
      ++audit.agreements;
    } else if (!audit.found_disagreement) {
      audit.found_disagreement = true;
      audit.first_disagreement = l;
    }
  }
  audit.agreement_rate =
      audit.samples == 0 ? 1.0
                         : static_cast<double>(audit.agreements) / audit.samples;
  return audit;
}

}  // namespace ncdomain
