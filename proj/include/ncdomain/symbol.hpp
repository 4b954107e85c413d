#pragma once

// Positive regular free polynomials f = sum_a a_alpha X_alpha: no constant
// term, strictly positive coefficients, every generator present.  These are
// the symbols whose weighted shifts and domains the rest of the library
// computes.  Also the abelianized ("collapsed") polynomial in |z_i|^2 and the
// symbol file format.

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncdomain/text.hpp"
#include "ncdomain/words.hpp"

namespace ncdomain {

class Symbol {
 public:
  // Structural errors (bad alphabet, letters out of range) throw; value-level
  // invariant violations (missing generator, nonpositive coefficient, constant
  // term) stay representable so validate() can diagnose them.  Exact zeros are
  // dropped so absence and zero coincide.
  Symbol(int n, std::map<Word, double> coeffs)
      : n_(n), coeffs_(std::move(coeffs)) {
    WordContext ctx(n);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      ctx.require(it->first);
      it = it->second == 0.0 ? coeffs_.erase(it) : std::next(it);
    }
  }

  int n() const { return n_; }
  WordContext context() const { return WordContext(n_); }
  const std::map<Word, double>& coeffs() const { return coeffs_; }

  double coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  // Largest word length in the support (0 for empty support).
  int degree() const {
    int d = 0;
    for (const auto& [w, a] : coeffs_) d = std::max<int>(d, static_cast<int>(w.length()));
    return d;
  }

  bool operator==(const Symbol& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

 private:
  int n_;
  std::map<Word, double> coeffs_;
};

struct Validation {
  bool ok = true;
  std::vector<std::string> problems;

  std::string message() const {
    std::string out;
    for (const auto& p : problems) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }
};

inline Validation validate(const Symbol& s) {
  Validation v;
  auto flag = [&](const std::string& msg) {
    v.ok = false;
    v.problems.push_back(msg);
  };
  for (const auto& [w, a] : s.coeffs()) {
    if (w.empty()) flag("constant term must vanish");
    if (!std::isfinite(a))
      flag("coefficient of '" + format_word(w, s.n()) + "' is not finite");
    else if (a < 0)
      flag("coefficient of '" + format_word(w, s.n()) + "' is negative");
  }
  for (int i = 1; i <= s.n(); ++i)
    if (s.coeff(Word::generator(i)) <= 0)
      flag("generator " + std::to_string(i) + " has no positive linear coefficient");
  return v;
}

inline void require_valid(const Symbol& s) {
  Validation v = validate(s);
  if (!v.ok) throw std::invalid_argument("invalid symbol: " + v.message());
}

// Growth constant M = max over support degrees d of (sum_{|a|=d} a_a^2)^(1/d).
// The inverse-series estimates converge on radii r with r*M < 1/2.
inline double growth_constant(const Symbol& s) {
  require_valid(s);
  std::map<int, double> sq_by_degree;
  for (const auto& [w, a] : s.coeffs()) sq_by_degree[static_cast<int>(w.length())] += a * a;
  double m = 0;
  for (const auto& [d, sq] : sq_by_degree) m = std::max(m, std::pow(sq, 1.0 / d));
  return m;
}

// a'_alpha = a_alpha / prod_i c_i^(2 r_i(alpha)); the associated shifts
// rescale as V_i = c_i W_i and the weights as b'_alpha = b_alpha / prod c^2r.
inline Symbol rescale(const Symbol& s, const std::vector<double>& c) {
  require_valid(s);
  if (static_cast<int>(c.size()) != s.n())
    throw std::invalid_argument("rescale expects one factor per generator");
  for (double ci : c)
    if (!(ci > 0) || !std::isfinite(ci))
      throw std::invalid_argument("rescale factors must be positive and finite");
  WordContext ctx = s.context();
  std::map<Word, double> out;
  for (const auto& [w, a] : s.coeffs()) {
    std::vector<int> r = ctx.multidegree(w);
    double denom = 1;
    for (int i = 0; i < s.n(); ++i) denom *= std::pow(c[i], 2.0 * r[i]);
    out.emplace(w, a / denom);
  }
  return Symbol(s.n(), std::move(out));
}

struct Normalization {
  Symbol symbol;
  std::vector<double> scale;  // c_i = sqrt(a_{g_i}) used for the rescale
};

// Rescales so every generator coefficient becomes exactly 1.
inline Normalization normalize(const Symbol& s) {
  require_valid(s);
  std::vector<double> c(s.n());
  for (int i = 1; i <= s.n(); ++i) c[i - 1] = std::sqrt(s.coeff(Word::generator(i)));
  Symbol out = rescale(s, c);
  // Pin the generator coefficients to 1 exactly; rescale already lands within
  // rounding of 1.
  std::map<Word, double> coeffs = out.coeffs();
  for (int i = 1; i <= s.n(); ++i) coeffs[Word::generator(i)] = 1.0;
  return {Symbol(s.n(), std::move(coeffs)), std::move(c)};
}

inline bool is_normalized(const Symbol& s, double tol = 1e-12) {
  for (int i = 1; i <= s.n(); ++i)
    if (std::abs(s.coeff(Word::generator(i)) - 1.0) > tol) return false;
  return true;
}

// sigma[i-1] = sigma(i), a bijection of {1..n}.  The result has
// coeff(w) = s.coeff(sigma applied letterwise to w).
inline Symbol permute(const Symbol& s, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != s.n())
    throw std::invalid_argument("permutation size must match alphabet");
  std::vector<int> seen(s.n(), 0), inverse(s.n(), 0);
  for (int i = 1; i <= s.n(); ++i) {
    int img = sigma[i - 1];
    if (img < 1 || img > s.n() || seen[img - 1]++)
      throw std::invalid_argument("not a permutation of 1..n");
    inverse[img - 1] = i;
  }
  std::map<Word, double> out;
  for (const auto& [w, a] : s.coeffs()) {
    std::vector<int> letters(w.length());
    for (std::size_t t = 0; t < w.length(); ++t) letters[t] = inverse[w.letter(t) - 1];
    out.emplace(Word(std::move(letters)), a);
  }
  return Symbol(s.n(), std::move(out));
}

// Commutative shadow sum_m c_m prod_i x_i^(m_i) evaluated at x_i = |z_i|^2,
// where c_m collects every coefficient of multidegree m.
class CollapsedPolynomial {
 public:
  CollapsedPolynomial(int n, std::map<std::vector<int>, double> terms)
      : n_(n), terms_(std::move(terms)) {
    if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (static_cast<int>(it->first.size()) != n_)
        throw std::invalid_argument("multidegree arity mismatch");
      it = it->second == 0.0 ? terms_.erase(it) : std::next(it);
    }
  }

  int n() const { return n_; }
  const std::map<std::vector<int>, double>& terms() const { return terms_; }

  double coeff(const std::vector<int>& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
  }

  // Evaluate with x_i standing for |z_i|^2.
  double value_at_abs2(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::invalid_argument("point arity mismatch");
    double total = 0;
    for (const auto& [m, c] : terms_) {
      double term = c;
      for (int i = 0; i < n_; ++i)
        for (int t = 0; t < m[i]; ++t) term *= x[i];
      total += term;
    }
    return total;
  }

  double value(const std::vector<std::complex<double>>& z) const {
    std::vector<double> x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = std::norm(z[i]);
    return value_at_abs2(x);
  }

  bool operator==(const CollapsedPolynomial& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

 private:
  int n_;
  std::map<std::vector<int>, double> terms_;
};

inline CollapsedPolynomial collapse(const Symbol& s) {
  WordContext ctx = s.context();
  std::map<std::vector<int>, double> terms;
  for (const auto& [w, a] : s.coeffs()) terms[ctx.multidegree(w)] += a;
  return CollapsedPolynomial(s.n(), std::move(terms));
}

// Symbol file format: '#' comments, first content line "n=<int>", then one
// "<word> <coefficient>" per line.  Duplicates and negative coefficients are
// rejected with their line number; the assembled symbol must validate.
inline Symbol parse_symbol(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<int> n;
  std::map<Word, double> coeffs;
  std::map<Word, std::size_t> first_seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.empty()) continue;
    if (!n) {
      std::size_t eq = body.find('=');
      if (eq == std::string::npos || trim(body.substr(0, eq)) != "n")
        throw ParseError(lineno, "expected header 'n=<int>'");
      int value = 0;
      try {
        value = std::stoi(trim(body.substr(eq + 1)));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad alphabet size '" + trim(body.substr(eq + 1)) + "'");
      }
      if (value < 1) throw ParseError(lineno, "alphabet size must be >= 1");
      n = value;
      continue;
    }
    std::vector<std::string> tok = split_ws(body);
    if (tok.size() != 2)
      throw ParseError(lineno, "expected '<word> <coefficient>'");
    Word w;
    double a = 0;
    try {
      w = parse_word(tok[0], *n);
      a = parse_double(tok[1]);
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
    if (w.empty()) throw ParseError(lineno, "constant term 'e' not allowed in a symbol");
    if (a < 0) throw ParseError(lineno, "negative coefficient for '" + tok[0] + "'");
    if (auto it = first_seen.find(w); it != first_seen.end())
      throw ParseError(lineno, "duplicate word '" + tok[0] + "' (first on line " +
                                   std::to_string(it->second) + ")");
    first_seen.emplace(w, lineno);
    if (a != 0) coeffs.emplace(w, a);
  }
  if (!n) throw ParseError(0, "missing header 'n=<int>'");
  Symbol s(*n, std::move(coeffs));
  Validation v = validate(s);
  if (!v.ok) throw ParseError(0, "invalid symbol: " + v.message());
  return s;
}

inline Symbol parse_symbol_text(const std::string& text) {
  std::istringstream in(text);
  return parse_symbol(in);
}

inline std::string serialize_symbol(const Symbol& s) {
  std::string out = "n=" + std::to_string(s.n()) + "\n";
  for (const auto& [w, a] : s.coeffs())
    out += format_word(w, s.n()) + " " + format_double(a) + "\n";
  return out;
}

}  // namespace ncdomain
