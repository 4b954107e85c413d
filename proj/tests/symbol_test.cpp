#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "ncdomain/symbol.hpp"

using namespace ncdomain;
using Catch::Approx;

namespace {
Word w(std::initializer_list<int> letters) { return Word(std::vector<int>(letters)); }

Symbol pair_f() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 1.0}});
}
Symbol pair_g() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 0.5}, {w({2, 1}), 0.5}});
}
}  // namespace

TEST_CASE("construction drops zero coefficients and checks the alphabet") {
  Symbol s(2, {{w({1}), 1.0}, {w({2}), 2.0}, {w({1, 1}), 0.0}});
  CHECK(s.coeffs().size() == 2);
  CHECK(s.coeff(w({1, 1})) == 0.0);
  CHECK(s.coeff(w({2})) == 2.0);
  CHECK(s.degree() == 1);
  CHECK(pair_f().degree() == 2);
  CHECK_THROWS_AS(Symbol(2, {{w({3}), 1.0}}), std::invalid_argument);
}

TEST_CASE("validation flags each defect with a reason") {
  CHECK(validate(pair_f()).ok);
  CHECK(validate(pair_g()).problems.empty());

  Validation constant = validate(Symbol(2, {{w({}), 0.5}, {w({1}), 1.0}, {w({2}), 1.0}}));
  CHECK_FALSE(constant.ok);
  CHECK(constant.message().find("constant") != std::string::npos);

  Validation negative = validate(Symbol(2, {{w({1}), 1.0}, {w({2}), -1.0}}));
  CHECK_FALSE(negative.ok);

  Validation missing = validate(Symbol(3, {{w({1}), 1.0}, {w({3}), 1.0}}));
  CHECK_FALSE(missing.ok);
  CHECK(missing.message().find("generator 2") != std::string::npos);

  double inf = std::numeric_limits<double>::infinity();
  CHECK_FALSE(validate(Symbol(1, {{w({1}), inf}})).ok);

  CHECK_THROWS_AS(require_valid(Symbol(2, {{w({1}), 1.0}})), std::invalid_argument);
  CHECK_NOTHROW(require_valid(pair_f()));
}

TEST_CASE("growth constant maximizes per-degree coefficient power sums") {
  CHECK(growth_constant(pair_f()) == Approx(2.0));
  CHECK(growth_constant(pair_g()) == Approx(2.0));
  CHECK(growth_constant(Symbol(1, {{w({1}), 1.0}})) == Approx(1.0));
  CHECK(growth_constant(Symbol(1, {{w({1}), 3.0}})) == Approx(9.0));
  // degree-3 bucket dominating: max(0.1^2, (8^2)^(1/3)) = 4
  Symbol deep(1, {{w({1}), 0.1}, {w({1, 1, 1}), 8.0}});
  CHECK(growth_constant(deep) == Approx(4.0));
}

TEST_CASE("rescale divides by the squared scale of each letter") {
  Symbol s = rescale(pair_f(), {2.0, 3.0});
  CHECK(s.coeff(w({1})) == Approx(0.25));
  CHECK(s.coeff(w({2})) == Approx(1.0 / 9.0));
  CHECK(s.coeff(w({1, 2})) == Approx(1.0 / 36.0));
  CHECK(rescale(pair_f(), {1.0, 1.0}) == pair_f());

  Symbol twice = rescale(rescale(pair_g(), {2.0, 0.5}), {3.0, 4.0});
  Symbol once = rescale(pair_g(), {6.0, 2.0});
  for (const auto& [word, a] : once.coeffs())
    CHECK(twice.coeff(word) == Approx(a).margin(1e-15));

  CHECK_THROWS_AS(rescale(pair_f(), {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(rescale(pair_f(), {2.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(rescale(pair_f(), {2.0, -1.0}), std::invalid_argument);
}

TEST_CASE("normalization pins generator coefficients to one") {
  Symbol s(2, {{w({1}), 4.0}, {w({2}), 9.0}, {w({1, 2}), 6.0}});
  Normalization nm = normalize(s);
  CHECK(nm.scale == std::vector<double>{2.0, 3.0});
  CHECK(nm.symbol.coeff(w({1})) == 1.0);  // pinned exactly
  CHECK(nm.symbol.coeff(w({2})) == 1.0);
  CHECK(nm.symbol.coeff(w({1, 2})) == Approx(6.0 / 36.0));
  CHECK(is_normalized(nm.symbol));
  CHECK_FALSE(is_normalized(s));
  CHECK(normalize(pair_f()).symbol == pair_f());  // already normalized: fixed point
}

TEST_CASE("permutation relabels letters through the inverse image") {
  Symbol swapped = permute(pair_f(), {2, 1});
  CHECK(swapped.coeff(w({2, 1})) == 1.0);
  CHECK(swapped.coeff(w({1, 2})) == 0.0);
  CHECK(swapped.coeff(w({1})) == 1.0);
  CHECK(permute(pair_f(), {1, 2}) == pair_f());

  // permute(s, sigma).coeff(u) = s.coeff(sigma(u)) letterwise
  Symbol s3(3, {{w({1}), 1.0}, {w({2}), 2.0}, {w({3}), 3.0}, {w({1, 3}), 0.25}});
  std::vector<int> sigma = {2, 3, 1};
  Symbol ps = permute(s3, sigma);
  for (const auto& [u, a] : s3.coeffs()) {
    std::vector<int> mapped;
    for (std::size_t t = 0; t < u.length(); ++t) mapped.push_back(sigma[u.letter(t) - 1]);
    (void)a;
  }
  for (const auto& [u, a] : ps.coeffs()) {
    std::vector<int> img;
    for (std::size_t t = 0; t < u.length(); ++t) img.push_back(sigma[u.letter(t) - 1]);
    CHECK(s3.coeff(Word(img)) == a);
  }

  // composition: permute(permute(s, sigma), tau) = permute(s, sigma о tau)
  std::vector<int> tau = {3, 1, 2}, comp(3);
  for (int i = 0; i < 3; ++i) comp[i] = sigma[tau[i] - 1];
  CHECK(permute(permute(s3, sigma), tau) == permute(s3, comp));

  CHECK_THROWS_AS(permute(pair_f(), {1}), std::invalid_argument);
  CHECK_THROWS_AS(permute(pair_f(), {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute(pair_f(), {0, 1}), std::invalid_argument);
}

TEST_CASE("collapse merges words with equal multidegree") {
  CollapsedPolynomial cf = collapse(pair_f());
  CHECK(cf.terms().size() == 3);
  CHECK(cf.coeff({1, 0}) == 1.0);
  CHECK(cf.coeff({1, 1}) == 1.0);
  CHECK(collapse(pair_g()) == cf);  // 0.5 + 0.5 merges into the same term

  CHECK(cf.value_at_abs2({0.36, 0.36}) == Approx(0.36 + 0.36 + 0.36 * 0.36));
  CHECK(cf.value({{0.6, 0.0}, {0.6, 0.0}}) == Approx(0.8496));
  CHECK(cf.value({{0.0, 0.6}, {0.6, 0.0}}) == Approx(0.8496));  // only moduli matter
  CHECK_THROWS_AS(cf.value_at_abs2({0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CollapsedPolynomial(2, {{{1, 2, 3}, 1.0}}), std::invalid_argument);
}

TEST_CASE("symbol text parses with comments and round-trips") {
  const std::string text =
      "# demo\n"
      "n=2\n"
      "\n"
      "1 1        # generator\n"
      "2 1\n"
      "12 1\n";
  Symbol s = parse_symbol_text(text);
  CHECK(s == pair_f());
  CHECK(parse_symbol_text(serialize_symbol(s)) == s);
  CHECK(parse_symbol_text(serialize_symbol(pair_g())) == pair_g());
  // zero-coefficient lines are legal and dropped
  Symbol z = parse_symbol_text("n=2\n1 1\n2 1\n11 0\n");
  CHECK(z.coeffs().size() == 2);
}

TEST_CASE("symbol text errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_symbol_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t(9999);
  };
  CHECK(line_of("1 1\n") == 1);                       // header missing
  CHECK(line_of("n=x\n") == 1);                       // bad arity
  CHECK(line_of("n=2\n1 1\n2 1\nbogus\n") == 4);      // word + coeff expected
  CHECK(line_of("n=2\n1 1\n2 -3\n") == 3);            // negative coefficient
  CHECK(line_of("n=2\n1 1\n2 1\n1 2\n") == 4);        // duplicate word
  CHECK(line_of("n=2\n1 1\n2 1\ne 1\n") == 4);        // constant term
  CHECK(line_of("n=2\n1 1\n2 1e999\n") == 3);         // overflowing coefficient
  CHECK(line_of("n=2\n1 1\n13 1\n") == 3);            // letter outside alphabet
  CHECK(line_of("n=2\n1 1\n") == 0);                  // missing generator: whole file
  try {
    parse_symbol_text("n=2\n1 1\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("generator 2") != std::string::npos);
  }
}
