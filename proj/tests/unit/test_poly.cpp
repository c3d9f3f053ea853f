#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qsmooth/linalg.hpp"
#include "qsmooth/order.hpp"
#include "qsmooth/polynomial.hpp"
#include "random_poly.hpp"

using namespace qsmooth::poly;
using qsmooth::testing::random_monomial;
using qsmooth::testing::random_polynomial;

namespace {
const std::vector<std::string> xyz{"x", "y", "z"};
Polynomial P(const std::string& s) { return parse(s, xyz); }
}  // namespace

TEST(Monomial, MultiplicationAddsExponents) {
  const Monomial a{1, 2, 0}, b{0, 3, 4};
  EXPECT_EQ(a * b, (Monomial{1, 5, 4}));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(lcm(a, b), (Monomial{1, 3, 4}));
  EXPECT_TRUE(a.divides(a * b));
  EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
}

TEST(Monomial, OverflowIsReported) {
  const Monomial big = Monomial::variable(0, kMaxExponent);
  EXPECT_THROW(big * Monomial::variable(0), std::overflow_error);
}

TEST(Order, GrevlexBasics) {
  const auto ord = MonomialOrder::grevlex();
  // x*z < y^2 in grevlex (last variable decides).
  EXPECT_LT(ord.compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}), 0);
  EXPECT_GT(ord.compare(Monomial{0, 0, 3}, Monomial{1, 1, 0}), 0);
  const auto lex = MonomialOrder::lex();
  EXPECT_GT(lex.compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}), 0);
}

TEST(Order, EliminationDominatesBlock) {
  const auto e = MonomialOrder::elimination(1);
  EXPECT_GT(e.compare(Monomial{1, 0, 0}, Monomial{0, 5, 5}), 0);
  EXPECT_LT(e.compare(Monomial{0, 2, 0}, Monomial{0, 1, 2}), 0);
}

TEST(Order, ParseRoundTrip) {
  for (const auto& o : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2),
                        MonomialOrder::lex().with_permutation({2, 0, 1})}) {
    EXPECT_EQ(MonomialOrder::parse(o.to_string()), o);
  }
  EXPECT_THROW(MonomialOrder::lex().with_permutation({0, 0}), std::invalid_argument);
}

TEST(Order, PermutedLexRanksVariables) {
  const auto o = MonomialOrder::lex().with_permutation({2, 0, 1});
  EXPECT_GT(o.compare(Monomial{0, 0, 1}, Monomial{5, 5, 0}), 0);
}

TEST(Polynomial, ParseAndPrint) {
  const Polynomial f = P("x^2 - 3/2*x*y + 7");
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.constant_term(), 7);
  EXPECT_EQ(f.coefficient(Monomial{1, 1, 0}), Rational(-3, 2));
  EXPECT_EQ(P(f.to_string(xyz)), f);
  EXPECT_EQ(P("(x+y)^2"), P("x^2 + 2*x*y + y^2"));
  EXPECT_EQ(P("-x*-y"), P("x*y"));
  EXPECT_EQ(P("0"), Polynomial(3));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(P("x^-1"), ParseError);
  EXPECT_THROW(P("q + 1"), ParseError);
  EXPECT_THROW(P("x + "), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P("x $ y"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
}

TEST(Polynomial, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Polynomial f = random_polynomial(rng, 3, 6, 8, 40);
    EXPECT_EQ(P(f.to_string(xyz)), f);
  }
}

TEST(Polynomial, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_polynomial(rng, 3, 4, 5);
    const auto b = random_polynomial(rng, 3, 4, 5);
    const auto c = random_polynomial(rng, 3, 4, 5);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * Polynomial::constant(3, 1), a);
    if (!a.is_zero() && !b.is_zero())
      EXPECT_EQ((a * b).total_degree(), a.total_degree() + b.total_degree());
  }
}

TEST(Polynomial, TermsSortedDescending) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_polynomial(rng, 4, 5, 10) * random_polynomial(rng, 4, 3, 4);
    for (std::size_t k = 1; k < f.size(); ++k)
      ASSERT_GT(grevlex_compare(f.terms()[k - 1].monomial, f.terms()[k].monomial), 0);
    for (const auto& t : f.terms()) ASSERT_NE(t.coefficient, 0);
  }
}

TEST(Polynomial, LeibnizRule) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_polynomial(rng, 3, 5, 5);
    const auto b = random_polynomial(rng, 3, 5, 5);
    for (std::size_t v = 0; v < 3; ++v)
      EXPECT_EQ(partial_derivative(a * b, v), partial_derivative(a, v) * b + a * partial_derivative(b, v));
  }
  EXPECT_THROW(partial_derivative(P("x"), 3), std::out_of_range);
}

TEST(Polynomial, SubstitutionIsHomomorphism) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_polynomial(rng, 3, 3, 4);
    const auto b = random_polynomial(rng, 3, 3, 4);
    std::vector<Polynomial> img;
    for (int v = 0; v < 3; ++v) img.push_back(random_polynomial(rng, 2, 2, 3));
    auto s = [&](const Polynomial& f) { return substitute(f, img, 2); };
    EXPECT_EQ(s(a * b), s(a) * s(b));
    EXPECT_EQ(s(a + b), s(a) + s(b));
  }
}

TEST(Polynomial, EvaluateMatchesSubstitution) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_polynomial(rng, 3, 4, 6);
    Rational r(static_cast<long>(rng() % 7), static_cast<unsigned long>(1 + rng() % 3));
    r.canonicalize();
    std::vector<Rational> pt{r, Rational(-2), Rational(1, 3)};
    std::vector<Polynomial> img;
    for (const auto& c : pt) img.push_back(Polynomial::constant(0, c));
    EXPECT_EQ(substitute(f, img, 0).constant_term(), f.evaluate(pt));
  }
}

TEST(Polynomial, QuasiHomogeneity) {
  const std::vector<long> w{1, 1, 2};
  const auto q = is_quasi_homogeneous(P("x^4 + y^4 + z^2 + x*y*z"), w);
  EXPECT_TRUE(q.homogeneous);
  EXPECT_EQ(q.degree, 4);
  EXPECT_FALSE(is_quasi_homogeneous(P("x^4 + z"), w).homogeneous);
  EXPECT_TRUE(is_quasi_homogeneous(Polynomial(3), w).homogeneous);
}

TEST(Polynomial, ExtendAndDrop) {
  const auto f = P("x*y + z^2 + 1");
  const auto g = f.extend(4, 1);
  EXPECT_EQ(g.nvars(), 4u);
  EXPECT_EQ(g.coefficient(Monomial{0, 1, 1, 0}), 1);
  EXPECT_EQ(f.drop_terms_with(0, 1), P("z^2 + 1"));
  EXPECT_EQ(f.truncate(0), P("1"));
  EXPECT_EQ(P("x^2*y").degree_in(0), 2u);
  EXPECT_EQ(P("3*x + 2*y^2").linear_coefficient(0), 3);
}

TEST(Polynomial, PowMatchesRepeatedProduct) {
  const auto f = P("x - 2*y + 1");
  Polynomial acc = Polynomial::constant(3, 1);
  for (unsigned k = 0; k < 6; ++k) {
    EXPECT_EQ(f.pow(k), acc);
    acc *= f;
  }
}

TEST(Linalg, RankAndNullspace) {
  using namespace qsmooth::linalg;
  Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(m), 2u);
  const auto ns = nullspace(m, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : m) {
    Rational s = 0;
    for (int j = 0; j < 3; ++j) s += row[j] * ns[0][j];
    EXPECT_EQ(s, 0);
  }
}

TEST(Linalg, UnivariateSquarefree) {
  using namespace qsmooth::linalg::uni;
  // (t-1)^2 (t+2) = t^3 - 3t + 2
  Poly p{2, -3, 0, 1};
  const Poly s = squarefree_part(p);
  // monic (t-1)(t+2) = t^2 + t - 2
  EXPECT_EQ(s, (Poly{-2, 1, 1}));
}

TEST(Univariate, RationalRoots) {
  using qsmooth::linalg::uni::Poly;
  using qsmooth::linalg::uni::rational_roots;
  using qsmooth::poly::Rational;
  // 6t^3 - 5t^2 - 2t + 1 = (t - 1)(2t + 1)(3t - 1)
  const Poly p{1, -2, -5, 6};
  const auto r = rational_roots(p);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->size(), 3u);
  for (const auto& t : *r) EXPECT_EQ(qsmooth::linalg::uni::evaluate(p, t), 0);
  EXPECT_EQ(rational_roots(Poly{2, 0, 1})->size(), 0u);        // t^2 + 2
  EXPECT_EQ(*rational_roots(Poly{0, 0, 1, 1}), (std::vector<Rational>{-1, 0}));
  EXPECT_EQ(*rational_roots(Poly{Rational(1, 4), 0, -1}), (std::vector<Rational>{Rational(-1, 2), Rational(1, 2)}));
  EXPECT_THROW(rational_roots(Poly{}), std::invalid_argument);
  EXPECT_FALSE(rational_roots(Poly{qsmooth::poly::Integer("1000000000000000000000000000039"), 1}, 1000));
}

TEST(Univariate, RationalRootsOfRandomProducts) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    using qsmooth::linalg::uni::Poly;
    using qsmooth::poly::Rational;
    Poly p{1};
    std::vector<Rational> expected;
    for (int k = 0; k < 3; ++k) {
      const long a = static_cast<long>(rng() % 13) - 6, b = 1 + static_cast<long>(rng() % 5);
      Rational t(a, b);
      t.canonicalize();
      expected.push_back(t);
      Poly q(p.size() + 1, 0);  // p * (x - t)
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= t * p[i];
      }
      p = q;
    }
    // Irreducible quadratic factor t^2 + 3.
    Poly q(p.size() + 2, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 2] += p[i];
      q[i] += 3 * p[i];
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    EXPECT_EQ(*qsmooth::linalg::uni::rational_roots(q), expected);
  }
}
