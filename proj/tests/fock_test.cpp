#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ncdomain/fock.hpp"

using namespace ncdomain;
using Catch::Approx;
using namespace std::complex_literals;

namespace {
Word w(std::initializer_list<int> letters) { return Word(std::vector<int>(letters)); }

Symbol pair_f() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 1.0}});
}
Symbol pair_g() {
  return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}, {w({1, 2}), 0.5}, {w({2, 1}), 0.5}});
}
Symbol linear2() { return Symbol(2, {{w({1}), 1.0}, {w({2}), 1.0}}); }
}  // namespace

TEST_CASE("shift matrices carry square-root weight ratios on the word basis") {
  ShiftOperators shifts(pair_f(), 4);
  CHECK(shifts.dim() == 31);
  CHECK(shifts.mat(1).nonZeros() == 15);  // one entry per word of length <= 3
  CHECK(shifts.mat(2).nonZeros() == 15);

  WordContext ctx = shifts.context();
  const WeightTable& b = shifts.weights();
  // W_1 delta_2 = sqrt(b_2 / b_12) delta_12
  auto c12 = shifts.mat(1).coeff(static_cast<int>(ctx.index(w({1, 2}))),
                                 static_cast<int>(ctx.index(w({2}))));
  CHECK(std::abs(c12 - 1.0 / std::sqrt(2.0)) < 1e-15);
  // vacuum goes to delta_{g_i} with weight 1 for a normalized symbol
  CHECK(std::abs(shifts.mat(1).coeff(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(shifts.mat(2).coeff(2, 0) - 1.0) < 1e-15);
  // all entries match the closed ratio
  for (int i = 1; i <= 2; ++i)
    for (std::uint64_t idx = 0; idx < ctx.dim(3); ++idx) {
      Word alpha = ctx.word_at(idx);
      Word ia = concat(Word::generator(i), alpha);
      auto entry = shifts.mat(i).coeff(static_cast<int>(ctx.index(ia)),
                                       static_cast<int>(idx));
      CHECK(std::abs(entry - std::sqrt(b.at(alpha) / b.at(ia))) < 1e-15);
    }

  ShiftOperators trivial(pair_f(), 0);
  CHECK(trivial.dim() == 1);
  CHECK(trivial.mat(1).nonZeros() == 0);
}

TEST_CASE("shift norms equal the inverse square roots of generator coefficients") {
  ShiftOperators shifts(Symbol(2, {{w({1}), 4.0}, {w({2}), 9.0}}), 3);
  CHECK(numerical_norm(CMat(shifts.mat(1))) == Approx(0.5).epsilon(1e-12));
  CHECK(numerical_norm(CMat(shifts.mat(2))) == Approx(1.0 / 3.0).epsilon(1e-12));
  ShiftOperators normalized(pair_f(), 3);
  CHECK(numerical_norm(CMat(normalized.mat(1))) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("word operators compose left to right") {
  ShiftOperators shifts(pair_f(), 4);
  CMat w12 = CMat(shifts.word_operator(w({1, 2})));
  CMat prod = CMat(shifts.mat(1)) * CMat(shifts.mat(2));
  CHECK((w12 - prod).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(CMat(shifts.word_operator(w({}))).isIdentity(1e-15));

  // W_alpha delta_beta = sqrt(b_beta / b_{alpha beta}) delta_{alpha beta}
  WordContext ctx = shifts.context();
  const WeightTable& b = shifts.weights();
  auto entry = shifts.word_operator(w({1, 2})).coeff(
      static_cast<int>(ctx.index(w({1, 2, 2, 1}))), static_cast<int>(ctx.index(w({2, 1}))));
  CHECK(std::abs(entry - std::sqrt(b.at(w({2, 1})) / b.at(w({1, 2, 2, 1})))) < 1e-15);
}

TEST_CASE("monomial norms follow the weight table and the truncation is exact") {
  WeightTable bf(pair_f(), 4), bg(pair_g(), 4);
  CHECK(monomial_norm(bf, w({1, 2})) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(monomial_norm(bg, w({1, 2})) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(monomial_norm(bf, w({})) == 1.0);

  for (const Symbol& s : {pair_f(), pair_g()}) {
    PolyElement mono(2, {{w({1, 2}), 1.0}});
    for (int len = 2; len <= 4; ++len) {
      ShiftOperators shifts(s, len);
      double numeric = numerical_norm(assemble_element(shifts, mono));
      CHECK(numeric == Approx(monomial_norm(shifts.weights(), w({1, 2}))).epsilon(1e-12));
    }
  }
}

TEST_CASE("homogeneous norms have a closed form independent of truncation") {
  WeightTable bf(pair_f(), 4);
  PolyElement x(2, {{w({1, 1}), 1.0}, {w({1, 2}), 0.5 + 0.5i}});
  CHECK(homogeneous_norm(bf, x) == Approx(std::sqrt(1.25)).epsilon(1e-14));
  for (int len = 2; len <= 4; ++len) {
    ShiftOperators shifts(pair_f(), len);
    CHECK(numerical_norm(assemble_element(shifts, x)) ==
          Approx(std::sqrt(1.25)).epsilon(1e-10));
  }
  CHECK(homogeneous_norm(bf, PolyElement(2, {{w({}), 3.0i}})) == Approx(3.0));
  CHECK(homogeneous_norm(bf, PolyElement(2, {})) == 0.0);
  PolyElement mixed(2, {{w({1}), 1.0}, {w({1, 2}), 1.0}});
  CHECK_THROWS_AS(homogeneous_norm(bf, mixed), std::invalid_argument);
}

TEST_CASE("numerical norm is the largest singular value") {
  CHECK(numerical_norm(CMat::Identity(5, 5)) == Approx(1.0));
  CMat d = CMat::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0i;
  CHECK(numerical_norm(d) == Approx(3.0));
  CHECK(numerical_norm(CMat(0, 0)) == 0.0);
  CMat bad = CMat::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(numerical_norm(bad), std::invalid_argument);
}

TEST_CASE("element assembly matches manual operator sums") {
  ShiftOperators shifts(pair_f(), 3);
  PolyElement x(2, {{w({}), 2.0}, {w({1}), 1.0i}, {w({2, 1}), -0.5}});
  CMat manual = 2.0 * CMat::Identity(15, 15) + 1.0i * CMat(shifts.mat(1)) -
                0.5 * CMat(shifts.mat(2)) * CMat(shifts.mat(1));
  CHECK((assemble_element(shifts, x) - manual).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("polynomial elements evaluate multiplicatively on tuples") {
  CMat t1(2, 2), t2(2, 2);
  t1 << 0.0, 1.0, 0.0, 0.0;
  t2 << 0.0, 0.0, 1.0, 0.0;
  MatrixTuple t({t1, t2});
  CMat v = evaluate(PolyElement(2, {{w({1, 2}), 1.0}}), t);
  CHECK((v - t1 * t2).cwiseAbs().maxCoeff() < 1e-15);  // order matters: not t2 * t1
  CHECK((evaluate(PolyElement(2, {{w({}), 1.0}}), t) - CMat::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CMat lin = evaluate(PolyElement(2, {{w({1}), 2.0}, {w({2}), -1.0i}}), t);
  CHECK((lin - (2.0 * t1 - 1.0i * t2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("radial truncation scales by degree and matches tuple scaling") {
  PolyElement p(2, {{w({1}), 1.0}, {w({1, 2}), 4.0}, {w({2, 2, 1}), -2.0i}});
  PolyElement q = radial_truncation(p, 0.5);
  CHECK(q.coeff(w({1})) == 0.5);
  CHECK(q.coeff(w({1, 2})) == 1.0);
  CHECK(q.coeff(w({2, 2, 1})) == -0.25i);
  CHECK_THROWS_AS(radial_truncation(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_truncation(p, 1.0), std::invalid_argument);  // open interval
  CHECK_THROWS_AS(radial_truncation(p, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(radial_truncation(p, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);

  CMat t1(2, 2), t2(2, 2);
  t1 << 0.2, 0.1, 0.0, 0.3;
  t2 << 0.0, 0.4, 0.1, 0.1;
  MatrixTuple t({t1, t2});
  CMat a = evaluate(radial_truncation(p, 0.7), t);
  CMat b = evaluate(p, scale_tuple(t, 0.7));
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("homogeneous parts partition an element by degree") {
  PolyElement p(2, {{w({}), 1.0}, {w({1}), 2.0}, {w({2}), 3.0}, {w({1, 2}), 4.0}});
  CHECK(homogeneous_part(p, 0) == PolyElement(2, {{w({}), 1.0}}));
  CHECK(homogeneous_part(p, 1) == PolyElement(2, {{w({1}), 2.0}, {w({2}), 3.0}}));
  CHECK(homogeneous_part(p, 2) == PolyElement(2, {{w({1, 2}), 4.0}}));
  CHECK(homogeneous_part(p, 3).coeffs().empty());
  std::map<Word, std::complex<double>> sum;
  for (int j = 0; j <= p.degree(); ++j) {
    PolyElement part = homogeneous_part(p, j);
    for (const auto& [word, c] : part.coeffs()) sum[word] = c;
  }
  CHECK(PolyElement(2, std::move(sum)) == p);
}

TEST_CASE("membership defect of the shifts is the vacuum projection") {
  for (const Symbol& s : {pair_f(), pair_g(), linear2()}) {
    for (int len = s.degree(); len <= s.degree() + 2; ++len) {
      CMat defect = defect_operator(s, len);
      CMat vacuum = CMat::Zero(defect.rows(), defect.cols());
      vacuum(0, 0) = 1.0;
      CHECK((defect - vacuum).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  CHECK_THROWS_AS(defect_operator(pair_f(), 1), std::invalid_argument);
}

TEST_CASE("poisson kernel is exactly isometric at the origin") {
  PoissonKernelResult pk = poisson_kernel(pair_f(), MatrixTuple::zero(2, 2), 3);
  CHECK(pk.isometry_residual == 0.0);
  CHECK(pk.intertwining_residual == 0.0);
  CHECK(pk.kernel.rows() == 15 * 2);
  CHECK(pk.kernel.cols() == 2);
}

TEST_CASE("poisson kernel residuals shrink with the truncation length") {
  CMat t1(2, 2), t2(2, 2);
  t1 << 0.3, 0.1, 0.0, 0.2;
  t2 << 0.1, 0.0, 0.05, 0.25;
  MatrixTuple t({t1, t2});
  PoissonKernelResult coarse = poisson_kernel(pair_f(), t, 4);
  PoissonKernelResult fine = poisson_kernel(pair_f(), t, 9);
  CHECK(fine.isometry_residual < coarse.isometry_residual);
  CHECK(fine.intertwining_residual < coarse.intertwining_residual);
  CHECK(fine.isometry_residual < 1e-6);

  PoissonKernelResult scalar = poisson_kernel(pair_f(), scalar_tuple({0.3, 0.2}), 12);
  CHECK(scalar.isometry_residual < 1e-8);
  CHECK(scalar.intertwining_residual < 1e-8);
}

TEST_CASE("poisson kernel handles the boundary and rejects the outside") {
  PoissonKernelResult edge = poisson_kernel(pair_f(), scalar_tuple({1.0, 0.0}), 4);
  CHECK(edge.isometry_residual == Approx(1.0));  // defect vanishes, kernel is zero
  CHECK_THROWS_AS(poisson_kernel(pair_f(), scalar_tuple({1.2, 0.0}), 4),
                  std::domain_error);
}
