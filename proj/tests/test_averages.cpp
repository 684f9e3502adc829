#include <gtest/gtest.h>

#include <cmath>

#include "ergolab/averages.hpp"
#include "ergolab/cli/corpus.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/rng.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

constexpr double kGolden = 0.61803398874989485;
constexpr double kSilver = 0.41421356237309503;

DynamicalSystem rotation(double a) { return make_system(SystemSpec::rotation(a)); }

std::vector<Complex> characters(double beta, std::size_t N) {
  std::vector<Complex> a(N);
  for (std::size_t n = 1; n <= N; ++n) a[n - 1] = oracle::e(static_cast<long double>(n) * beta);
  return a;
}

std::vector<Complex> random_signs(std::uint64_t seed, std::size_t N) {
  const CounterRng rng(seed);
  std::vector<Complex> a(N);
  for (std::size_t n = 0; n < N; ++n) a[n] = Complex(rng.sign(0, n), rng.uniform(1, n) - 0.5);
  return a;
}

}  // namespace

TEST(Birkhoff, ConstantSeries) {
  const auto rot = rotation(kGolden);
  const auto s = sample_observable(rot, Observable::constant(1, Complex(0.25, 2)), Point({0.3}), 64);
  EXPECT_NEAR(std::abs(birkhoff_average(s, 64) - Complex(0.25, 2)), 0.0, 1e-15);
}

TEST(Birkhoff, CharacterObeysGeometricBound) {
  const auto rot = rotation(kGolden);
  const auto s = sample_observable(rot, Observable::character({1}), Point({0.0}), 1 << 14);
  for (std::size_t N : {1u, 10u, 100u, 1000u, 16384u}) {
    const double got = std::abs(birkhoff_average(s, N));
    EXPECT_LE(got, oracle::geometric_bound(kGolden, N) + 1e-12);
    EXPECT_NEAR(got, oracle::geometric_average_modulus(kGolden, N), 1e-12);
  }
}

TEST(Birkhoff, MeanPlusCharacterConvergesToMean) {
  const auto rot = rotation(kGolden);
  const Observable f = parse_observable("0.5 + e(1)");
  const auto s = sample_observable(rot, f, Point({0.0}), 4096);
  for (std::size_t N : {16u, 256u, 4096u})
    EXPECT_LE(std::abs(birkhoff_average(s, N) - 0.5), oracle::geometric_bound(kGolden, N) + 1e-12);
}

TEST(Birkhoff, RejectsOutOfRangeN) {
  const auto s = sample_observable(rotation(kGolden), Observable::character({1}), Point({0.0}), 8);
  EXPECT_THROW(birkhoff_average(s, 9), InvalidArgument);
  EXPECT_THROW(birkhoff_average(s, 0), InvalidArgument);
}

TEST(ReturnTimes, SingleEntryIsBirkhoff) {
  const auto rot = rotation(kGolden);
  const StackEntry e{rot, parse_observable("0.3*e(2) - e(-1)"), Point({0.2})};
  const std::vector<StackEntry> stack{e};
  EXPECT_EQ(return_times_average(stack, 777), birkhoff_average(e.sample(777), 777));
}

TEST(ReturnTimes, TwoRotationsGeometricOracle) {
  const std::vector<StackEntry> stack{{rotation(kGolden), Observable::character({1}), Point({0.0})},
                                      {rotation(kSilver), Observable::character({1}), Point({0.0})}};
  for (std::size_t N : {10u, 1000u, 65536u}) {
    const double got = std::abs(return_times_average(stack, N));
    EXPECT_NEAR(got, oracle::geometric_average_modulus(static_cast<long double>(kGolden) + kSilver, N), 1e-12);
    EXPECT_LE(got, oracle::geometric_bound(kGolden + kSilver, N) + 1e-12);
  }
}

TEST(ReturnTimes, UnitEntryDoesNotChangeAverage) {
  const auto dbl = make_system(SystemSpec::doubling());
  const StackEntry f{rotation(kGolden), Observable::cosine(1), Point({0.1})};
  const StackEntry one{dbl, Observable::constant(1, 1.0), random_point(dbl, 3, 0)};
  const std::vector<StackEntry> a{f}, b{f, one}, c{one, f};
  EXPECT_EQ(return_times_average(a, 5000), return_times_average(b, 5000));
  EXPECT_EQ(return_times_average(a, 5000), return_times_average(c, 5000));
}

TEST(ReturnTimes, EmptyStackThrows) {
  const std::vector<StackEntry> none;
  EXPECT_THROW(return_times_average(none, 1), InvalidArgument);
}

TEST(ReturnTimes, ModulusBoundedByProductOfSupNorms) {
  const auto dbl = make_system(SystemSpec::doubling());
  const auto skew = make_system(SystemSpec::skew_sqrt(kSilver));
  for (std::uint64_t t = 0; t < 30; ++t) {
    const std::vector<StackEntry> stack{
        {rotation(kGolden), cli::random_trig_polynomial(1, 41, t), random_point(1, 5, t)},
        {dbl, cli::random_trig_polynomial(1, 42, t), random_point(1, 6, t)},
        {skew, cli::random_trig_polynomial(2, 43, t, 4, 3), random_point(2, 7, t)}};
    double bound = 1.0;
    for (const auto& e : stack) bound *= e.observable.sup_norm_bound();
    for (std::size_t N : {1u, 17u, 2000u}) ASSERT_LE(std::abs(return_times_average(stack, N)), bound * (1 + 1e-12));
  }
}

TEST(FrequencyGridTest, Basics) {
  const FrequencyGrid g(8);
  EXPECT_EQ(g.resolution(), 8u);
  EXPECT_DOUBLE_EQ(g.frequency(3), 0.375);
  EXPECT_TRUE(g.is_power_of_two());
  EXPECT_FALSE(FrequencyGrid(12).is_power_of_two());
  EXPECT_THROW(FrequencyGrid(1), InvalidArgument);
  EXPECT_EQ(FrequencyGrid::for_length(100).resolution(), 800u);
  for (std::size_t j = 1; j < 8; ++j) EXPECT_LT(g.frequency(j - 1), g.frequency(j));
  EXPECT_NEAR(g.lipschitz_error(4), std::numbers::pi * 4 / 16, 1e-15);
}

TEST(WienerWintner, ConstantSequenceResonatesAtZero) {
  const std::vector<Complex> a(500, 1.0);
  const auto r = wiener_wintner_sup(a, 500, FrequencyGrid(4096));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_EQ(r.argmax_index, 0u);
  EXPECT_EQ(r.argmax, 0.0);
}

TEST(WienerWintner, OnGridCharacterResonatesAtCancellingFrequency) {
  const std::size_t N = 1000, M = 1024, j0 = 301;
  const double beta = static_cast<double>(j0) / M;
  const auto a = characters(beta, N);
  for (GridMethod m : {GridMethod::Fast, GridMethod::Direct}) {
    const auto r = wiener_wintner_sup(a, N, FrequencyGrid(M), m);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_EQ(r.argmax_index, M - j0);
    EXPECT_DOUBLE_EQ(r.argmax, 1.0 - beta);
  }
}

TEST(WienerWintner, OffGridCharacterWithinLipschitzBound) {
  const std::size_t N = 512;
  const auto a = characters(kGolden, N);
  for (std::size_t M : {4 * N, 8 * N, 16 * N}) {
    const auto r = wiener_wintner_sup(a, N, FrequencyGrid(M));
    EXPECT_GE(r.value, 1.0 - std::numbers::pi * N / (2.0 * M)) << M;
    EXPECT_LE(r.value, 1.0 + 1e-12);
  }
}

TEST(WienerWintner, TiesResolveToSmallestFrequency) {
  // a_n = cos(2 pi n / 4) resonates equally at 1/4 and 3/4.
  std::vector<Complex> a(64);
  for (std::size_t n = 1; n <= 64; ++n) a[n - 1] = oracle::e(n / 4.0L).real();
  const auto r = wiener_wintner_sup(a, 64, FrequencyGrid(16), GridMethod::Direct);
  EXPECT_EQ(r.argmax_index, 4u);
  EXPECT_EQ(wiener_wintner_sup(a, 64, FrequencyGrid(16), GridMethod::Fast).argmax_index, 4u);
}

TEST(WienerWintner, FastAndDirectAgreeWithOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = random_signs(seed, 96);
    const double expected = oracle::grid_sup(a, 96, 256);
    const auto fast = wiener_wintner_sup(a, 96, FrequencyGrid(256), GridMethod::Fast);
    const auto direct = wiener_wintner_sup(a, 96, FrequencyGrid(256), GridMethod::Direct);
    EXPECT_NEAR(fast.value, expected, 1e-12);
    EXPECT_EQ(fast.value, direct.value);
    EXPECT_EQ(fast.argmax_index, direct.argmax_index);
    EXPECT_NEAR(wiener_wintner_sup(a, 96, FrequencyGrid(250)).value, oracle::grid_sup(a, 96, 250), 1e-12);
  }
}

TEST(WienerWintner, MonotoneUnderRefinement) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto a = random_signs(100 + seed, 300);
    double previous = 0.0;
    for (std::size_t M = 64; M <= 8192; M *= 2) {
      const double v = wiener_wintner_sup(a, 300, FrequencyGrid(M)).value;
      ASSERT_GE(v, previous) << "seed " << seed << " M " << M;
      previous = v;
    }
    // Non-nested sizes: 3M contains M.
    EXPECT_GE(wiener_wintner_sup(a, 300, FrequencyGrid(3 * 512)).value,
              wiener_wintner_sup(a, 300, FrequencyGrid(512)).value);
  }
}

TEST(WienerWintner, DominatesBirkhoffAverage) {
  const auto dbl = make_system(SystemSpec::doubling());
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto series = sample_observable(dbl, parse_observable("0.2 + 0.5*e(1) + 0.3*e(-2)"), random_point(1, 9, s), 2048);
    EXPECT_GE(wiener_wintner_sup(series, 2048, FrequencyGrid(4096)).value, std::abs(birkhoff_average(series, 2048)));
  }
}

TEST(WienerWintner, FastPathNeedsPowerOfTwo) {
  const std::vector<Complex> a(10, 1.0);
  EXPECT_THROW(wiener_wintner_sup(a, 10, FrequencyGrid(12), GridMethod::Fast), InvalidArgument);
  EXPECT_THROW(wiener_wintner_sup(a, 11, FrequencyGrid(16)), InvalidArgument);
}

TEST(Spectral, CharacterOnRotationGivesExactPhases) {
  const auto rot = rotation(kSilver);
  const auto s = spectral_coefficients(rot, Observable::character({1}), random_point(1, 2, 0), 64, 4096);
  ASSERT_EQ(s.coeffs.size(), 65u);
  for (std::int64_t h = 0; h <= 64; ++h) {
    EXPECT_NEAR(std::abs(s(h) - oracle::e(static_cast<long double>(h) * kSilver)), 0.0, 1e-12);
    EXPECT_EQ(s(-h), std::conj(s(h)));
  }
}

TEST(Spectral, ConstantGivesDiracAtZero) {
  const auto dbl = make_system(SystemSpec::doubling());
  const auto s = spectral_coefficients(dbl, Observable::constant(1, 1.0), random_point(1, 2, 0), 16, 64);
  for (const auto& c : s.coeffs) EXPECT_EQ(c, Complex(1.0));
}

TEST(Spectral, CosineOnDoublingHasVanishingLags) {
  const auto dbl = make_system(SystemSpec::doubling());
  const auto s = spectral_coefficients(dbl, Observable::cosine(1), random_point(1, 77, 0), 64, 1 << 18);
  EXPECT_NEAR(s.coeffs[0].real(), 0.5, 0.01);
  for (std::size_t h = 1; h <= 64; ++h) EXPECT_LE(std::abs(s.coeffs[h]), 0.05) << h;
}

TEST(Spectral, RejectsTooManyLags) {
  const auto rot = rotation(kGolden);
  EXPECT_THROW(spectral_coefficients(rot, Observable::character({1}), Point({0.0}), 33, 64), InvalidArgument);
}

TEST(Spectral, ToeplitzMatricesArePositiveSemidefinite) {
  struct Case {
    SystemSpec spec;
    std::string g;
  };
  const std::vector<Case> cases{{SystemSpec::rotation(kGolden), "0.5*e(1)+0.5*e(-3)"},
                                {SystemSpec::doubling(), "0.5*e(1)+0.5*e(-1)"},
                                {SystemSpec::skew_anzai(kSilver), "0.5*e(0,1)+0.5*e(1,1)"},
                                {SystemSpec::skew_sqrt(kGolden), "e(0,1)"},
                                {SystemSpec::product({SystemSpec::rotation(kSilver), SystemSpec::doubling()}),
                                 "0.5*e(1,0)+0.5i*e(0,1)"}};
  for (const auto& c : cases) {
    const auto sys = make_system(c.spec);
    const auto s = spectral_coefficients(sys, parse_observable(c.g, sys.dimension()), random_point(sys, 1, 0), 8, 8192);
    const double s0 = s.coeffs[0].real();
    EXPECT_EQ(s.coeffs[0].imag(), 0.0);
    EXPECT_GE(s0, 0.0);
    for (const auto& v : s.coeffs) EXPECT_LE(std::abs(v), s0 + 1e-2);
    std::complex<double> m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = s(j - i);
    EXPECT_GE(oracle::min_eigenvalue_hermitian3(m), -1e-6 * s0) << sys.describe();
  }
}

TEST(Spectral, ExactCoefficientsMatchEstimatorOnRotation) {
  const auto rot = rotation(kGolden);
  const Observable g = parse_observable("0.6*e(1) + 0.8i*e(-2)");
  const auto exact = exact_spectral_coefficients(rot, g, 20);
  const auto est = spectral_coefficients(rot, g, random_point(1, 3, 3), 20, 1 << 16);
  for (std::size_t h = 0; h <= 20; ++h) EXPECT_NEAR(std::abs(exact.coeffs[h] - est.coeffs[h]), 0.0, 1e-3);
  EXPECT_THROW(exact_spectral_coefficients(make_system(SystemSpec::skew_sqrt(kGolden)), Observable::character({0, 1}), 4),
               InvalidArgument);
}

TEST(Quadratic, UnitGReducesToSquaredBirkhoff) {
  const auto dbl = make_system(SystemSpec::doubling());
  const auto rot = rotation(kSilver);
  const auto f = sample_observable(dbl, parse_observable("0.4 + 0.6*e(1)"), random_point(1, 1, 0), 512);
  const Observable one = Observable::constant(1, 1.0);
  const double expected = std::norm(birkhoff_average(f, 512));
  EXPECT_NEAR(quadratic_rt_functional(f, rot, one, 512, MonteCarloMode{7, 3}), expected, 1e-14);
  EXPECT_NEAR(quadratic_rt_functional(f, rot, one, 512, SpectralMode{exact_spectral_coefficients(rot, one, 511)}),
              expected, 1e-14);
}

TEST(Quadratic, SpectralMatchesDirectAndGeometricOracle) {
  const auto rot_f = rotation(kGolden), rot_g = rotation(kSilver);
  const Observable e1 = Observable::character({1});
  for (std::size_t N : {64u, 1000u, 4096u}) {
    const auto f = sample_observable(rot_f, e1, Point({0.0}), N);
    const double spectral =
        quadratic_rt_functional(f, rot_g, e1, N, SpectralMode{exact_spectral_coefficients(rot_g, e1, N - 1)});
    const double direct = quadratic_rt_at(f, rot_g, e1, Point({0.37}), N);
    const double closed = std::pow(oracle::geometric_average_modulus(static_cast<long double>(kGolden) + kSilver, N), 2);
    EXPECT_LE(std::abs(spectral - direct), 1e-9 * direct);
    EXPECT_NEAR(spectral, closed, 1e-12);
    const double mc = quadratic_rt_functional(f, rot_g, e1, N, MonteCarloMode{400, 5});
    EXPECT_LE(std::abs(mc - spectral), 3.0 / std::sqrt(400.0));
  }
}

TEST(Quadratic, SpectralModeNeedsEnoughLags) {
  const auto rot = rotation(kGolden);
  const auto f = sample_observable(rot, Observable::character({1}), Point({0.0}), 100);
  EXPECT_THROW(quadratic_rt_functional(f, rot, Observable::character({1}), 100,
                                       SpectralMode{exact_spectral_coefficients(rot, Observable::character({1}), 50)}),
               InvalidArgument);
  EXPECT_THROW(quadratic_rt_functional(f, rot, Observable::character({1}), 100, MonteCarloMode{0, 1}),
               InvalidArgument);
}
