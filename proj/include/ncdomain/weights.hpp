#pragma once

// Weight family {b_alpha} of a symbol: b_e = 1 and
//   b_alpha = sum over proper splittings alpha = beta.gamma, |beta| >= 1, of
//             a_beta * b_gamma,
// equivalently the coefficients of the formal inverse of 1 - f.  Two
// independent routes are provided: the left-splitting recursion (fast) and a
// brute-force sum over all ordered compositions of alpha (oracle), plus a
// numeric check that the series actually inverts 1 - f in both orders.

#include <cmath>
#include <vector>

#include "ncdomain/symbol.hpp"
#include "ncdomain/words.hpp"

namespace ncdomain {

class WeightTable {
 public:
  WeightTable(Symbol symbol, int max_len)
      : symbol_(std::move(symbol)), max_len_(max_len) {
    require_valid(symbol_);
    if (max_len < 0) throw std::invalid_argument("truncation length must be >= 0");
    WordContext ctx = symbol_.context();
    values_.resize(ctx.dim(max_len));
    values_[0] = 1.0;
    for (std::uint64_t idx = 1; idx < values_.size(); ++idx) {
      Word w = ctx.word_at(idx);
      double b = 0;
      for (std::size_t k = 1; k <= w.length(); ++k) {
        double a = symbol_.coeff(w.prefix(k));
        if (a != 0) b += a * values_[ctx.index(w.suffix_from(k))];
      }
      values_[idx] = b;
    }
  }

  const Symbol& symbol() const { return symbol_; }
  int max_len() const { return max_len_; }
  WordContext context() const { return symbol_.context(); }
  std::uint64_t size() const { return values_.size(); }

  double at(const Word& w) const {
    if (static_cast<int>(w.length()) > max_len_)
      throw std::out_of_range("word exceeds weight-table truncation length");
    return values_[symbol_.context().index(w)];
  }

  double at_index(std::uint64_t idx) const { return values_.at(idx); }

 private:
  Symbol symbol_;
  int max_len_;
  std::vector<double> values_;
};

inline WeightTable compute_weights(const Symbol& s, int max_len) {
  return WeightTable(s, max_len);
}

// Oracle route: b_alpha = sum over all ordered compositions
// alpha = gamma_1 ... gamma_j (nonempty parts) of prod_t a_{gamma_t}.
// Exponential in |alpha|, so capped at length 12.
inline double weight_by_compositions(const Symbol& s, const Word& alpha) {
  require_valid(s);
  s.context().require(alpha);
  if (alpha.empty()) throw std::invalid_argument("composition oracle needs |alpha| >= 1");
  if (alpha.length() > 12)
    throw std::invalid_argument("composition oracle capped at |alpha| <= 12");
  double total = 0;
  for_each_composition(alpha, [&](const std::vector<Word>& parts) {
    double term = 1;
    for (const Word& g : parts) {
      term *= s.coeff(g);
      if (term == 0) break;
    }
    total += term;
  });
  return total;
}

// Multiplies the truncated series B = sum b_alpha r^|alpha| X_alpha against
// 1 - f(rX) in both orders and reports the largest deviation of any
// coefficient with |w| <= max_len from the identity series.  Requires
// r * growth_constant < 1/2, the regime where the inverse series converges.
inline double verify_series_inverse(const Symbol& s, int max_len, double radius) {
  double m = growth_constant(s);  // validates s
  if (!(radius >= 0) || !std::isfinite(radius))
    throw std::invalid_argument("radius must be nonnegative and finite");
  if (radius * m >= 0.5)
    throw std::domain_error("radius * growth_constant must stay below 1/2");
  WordContext ctx = s.context();
  WeightTable weights(s, max_len);
  std::vector<double> b(weights.size());
  for (std::uint64_t i = 0; i < b.size(); ++i)
    b[i] = weights.at_index(i) * std::pow(radius, ctx.word_at(i).length());
  double worst = 0;
  for (std::uint64_t i = 0; i < b.size(); ++i) {
    Word w = ctx.word_at(i);
    double left = b[i], right = b[i];  // coefficients of (1-A)B and B(1-A) at w
    for (std::size_t k = 1; k <= w.length(); ++k) {
      double a_pre = s.coeff(w.prefix(k)) * std::pow(radius, k);
      if (a_pre != 0) left -= a_pre * b[ctx.index(w.suffix_from(k))];
      double a_suf = s.coeff(w.suffix_from(w.length() - k)) * std::pow(radius, k);
      if (a_suf != 0) right -= b[ctx.index(w.prefix(w.length() - k))] * a_suf;
    }
    double target = w.empty() ? 1.0 : 0.0;
    worst = std::max({worst, std::abs(left - target), std::abs(right - target)});
  }
  return worst;
}

}  // namespace ncdomain
