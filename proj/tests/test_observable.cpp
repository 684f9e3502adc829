#include <gtest/gtest.h>

#include "ergolab/cli/corpus.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/observable.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/systems.hpp"
#include "oracles.hpp"

using namespace ergolab;

TEST(Observable, ParsesCosineLiteral) {
  const Observable f = parse_observable("0.5*e(1)+0.5*e(-1)");
  EXPECT_EQ(f.dimension(), 1u);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.coefficient({1}), Complex(0.5));
  EXPECT_EQ(f.coefficient({-1}), Complex(0.5));
  EXPECT_EQ(f, Observable::cosine(1));
}

TEST(Observable, ParsesComplexCoefficientsAndConstants) {
  const Observable f = parse_observable("(1-2i)*e(0,1) + 3 - 2i*e(1,0) + e(1,1)");
  EXPECT_EQ(f.dimension(), 2u);
  EXPECT_EQ(f.coefficient({0, 1}), Complex(1, -2));
  EXPECT_EQ(f.coefficient({0, 0}), Complex(3));
  EXPECT_EQ(f.coefficient({1, 0}), Complex(0, -2));
  EXPECT_EQ(f.coefficient({1, 1}), Complex(1));
}

TEST(Observable, MergesRepeatedFrequenciesAndDropsZeros) {
  const Observable f = parse_observable("e(2) - e(2) + 0.25*e(3) + 0.25*e(3)");
  EXPECT_EQ(f.size(), 1u);
  EXPECT_EQ(f.coefficient({3}), Complex(0.5));
}

TEST(Observable, BareConstantUsesRequestedDimension) {
  const Observable f = parse_observable("3", 2);
  EXPECT_EQ(f.dimension(), 2u);
  EXPECT_EQ(f.coefficient({0, 0}), Complex(3));
}

TEST(Observable, RejectsMalformedLiterals) {
  EXPECT_THROW(parse_observable(""), ParseError);
  EXPECT_THROW(parse_observable("e(1"), ParseError);
  EXPECT_THROW(parse_observable("0.5*"), ParseError);
  EXPECT_THROW(parse_observable("e(1) e(2)"), ParseError);
  EXPECT_THROW(parse_observable("e(1)+e(1,2)"), ParseError);
  EXPECT_THROW(parse_observable("foo"), ParseError);
  EXPECT_THROW(parse_observable("(1+2)*e(1)"), ParseError);
  EXPECT_THROW(parse_observable("e(1)", 2), ParseError);
}

TEST(Observable, FormatRoundTripsExactly) {
  const CounterRng rng(99);
  for (std::uint64_t t = 0; t < 500; ++t) {
    const std::size_t dim = 1 + rng.bits(t, 0) % 3;
    CoefficientMap terms;
    const std::size_t count = 1 + rng.bits(t, 1) % 8;
    for (std::size_t i = 0; i < count; ++i) {
      Frequency m(dim);
      for (std::size_t d = 0; d < dim; ++d) m[d] = static_cast<std::int64_t>(rng.bits(t, 10 + 10 * i + d) % 41) - 20;
      const double re = (rng.uniform(t, 200 + i) - 0.5) * 1e3, im = (rng.uniform(t, 300 + i) - 0.5) * 1e-3;
      terms[m] = Complex(re, im);
    }
    const Observable f(dim, terms);
    const Observable g = parse_observable(format_observable(f), dim);
    ASSERT_EQ(f, g) << format_observable(f);
  }
}

TEST(Observable, EmptyObservableRoundTrips) {
  const Observable zero(3);
  EXPECT_EQ(parse_observable(format_observable(zero), 3), zero);
}

TEST(Observable, EvaluatesCharactersExactlyAtDyadicPoints) {
  const Observable e1 = Observable::character({1});
  EXPECT_NEAR(std::abs(e1(Point({0.25})) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e1(Point({0.5})) - Complex(-1, 0)), 0.0, 1e-15);
  const Observable f = parse_observable("3 + e(1)");
  EXPECT_NEAR(std::abs(f(Point({0.0})) - Complex(4, 0)), 0.0, 1e-15);
}

TEST(Observable, EvaluationMatchesDirectSum) {
  const Observable f = parse_observable("(0.3+0.1i)*e(2,-1) - 0.7*e(0,3) + 0.2i*e(-5,4)");
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Point p = random_point(2, 5, i);
    Complex expected{};
    for (const auto& [m, c] : f.terms())
      expected += c * oracle::e(static_cast<long double>(m[0]) * p[0] + static_cast<long double>(m[1]) * p[1]);
    EXPECT_NEAR(std::abs(f(p) - expected), 0.0, 1e-12);
  }
}

TEST(Observable, ValuesNeverExceedSupNormBound) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Observable f = cli::random_trig_polynomial(2, 17, k);
    const double bound = f.sup_norm_bound();
    for (std::uint64_t i = 0; i < 500; ++i) ASSERT_LE(std::abs(f(random_point(2, 3, i))), bound * (1 + 1e-12));
  }
}

TEST(Observable, MultiplyMatchesPointwiseProduct) {
  const Observable a = parse_observable("0.5*e(1)+0.5*e(-1)");
  const Observable b = parse_observable("(1+1i)*e(3) - 2*e(0)");
  const Observable ab = multiply(a, b);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Point p = random_point(1, 8, i);
    EXPECT_NEAR(std::abs(ab(p) - a(p) * b(p)), 0.0, 1e-12);
  }
  EXPECT_EQ(multiply(Observable::character({1}), Observable::character({-1})), Observable::constant(1, 1.0));
}

TEST(Observable, MultiplyDetectsOverflow) {
  const Observable big = Observable::character({std::numeric_limits<std::int64_t>::max()});
  EXPECT_THROW(multiply(big, big), ExactArithmeticOverflow);
  const Observable f = parse_observable("e(1)+e(2)+e(3)");
  EXPECT_THROW(multiply(f, f, 3), ExactArithmeticOverflow);
}

TEST(Observable, ConjugateMirrorsFrequencies) {
  const Observable f = parse_observable("(1+2i)*e(3,-1)");
  EXPECT_EQ(f.conj().coefficient({-3, 1}), Complex(1, -2));
}

TEST(Observable, FrequencyLengthMustMatchDimension) {
  EXPECT_THROW(Observable(2, {{Frequency{1}, 1.0}}), InvalidArgument);
  EXPECT_THROW(Observable(0), InvalidArgument);
}
