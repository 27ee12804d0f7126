#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "causet/born.hpp"

namespace causet {
namespace {

OfferWave offer(std::vector<Complex> a) { return {std::move(a), "test"}; }

OfferWave random_offer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return offer(std::move(a));
}

HermitianGenerator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return HermitianGenerator(0.5 * (m + m.adjoint()));
}

// Classical fourth-order Runge-Kutta for i da/dt = H a.
std::vector<Complex> rk4(const Eigen::MatrixXcd& h, std::vector<Complex> a, double t, double dt) {
  const Eigen::Index n = h.rows();
  Eigen::VectorXcd y = Eigen::Map<Eigen::VectorXcd>(a.data(), n);
  const Complex minus_i(0.0, -1.0);
  auto f = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return minus_i * (h * v); };
  const auto steps = static_cast<long>(std::llround(t / dt));
  const double step = t / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = f(y);
    const Eigen::VectorXcd k2 = f(y + 0.5 * step * k1);
    const Eigen::VectorXcd k3 = f(y + 0.5 * step * k2);
    const Eigen::VectorXcd k4 = f(y + step * k3);
    y += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {y.data(), y.data() + n};
}

double norm_of(const OfferWave& o) { return std::sqrt(o.norm_squared()); }

TEST(BornWeightsTest, Examples) {
  EXPECT_EQ(born_weights(offer({1.0, 0.0})).weights(), (std::vector{1.0, 0.0}));
  const double h = 1.0 / std::sqrt(2.0);
  const auto half = born_weights(offer({h, h}));
  EXPECT_NEAR(half[0], 0.5, 1e-15);
  EXPECT_NEAR(half[1], 0.5, 1e-15);
  const auto w = born_weights(offer({0.6, Complex(0.0, 0.8)}));
  EXPECT_NEAR(w[0], 0.36, 1e-15);
  EXPECT_NEAR(w[1], 0.64, 1e-15);
}

TEST(BornWeightsTest, NormalizationBand) {
  // Inside 1e-6: silently renormalized.
  const auto w = born_weights(offer({std::sqrt(0.5 + 2e-7), std::sqrt(0.5 + 2e-7)}));
  EXPECT_NEAR(w[0] + w[1], 1.0, 1e-12);
  EXPECT_NEAR(w[0], 0.5, 1e-12);
  try {
    born_weights(offer({1.0, 0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormalized);
  }
  EXPECT_THROW(born_weights(offer({})), Error);
}

TEST(MixtureTest, ProjectionExamples) {
  const auto m = project_to_mixed(offer({1.0, 0.0}));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].index, 0u);
  EXPECT_EQ(m[0].weight, 1.0);
  EXPECT_EQ(m[1].index, 1u);
  EXPECT_EQ(m[1].weight, 0.0);

  const double third = 1.0 / std::sqrt(3.0);
  for (const auto& term : project_to_mixed(offer({third, third, third}))) {
    EXPECT_NEAR(term.weight, 1.0 / 3.0, 1e-15);
  }
}

TEST(MixtureTest, AgreesWithBornWeights) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto o = random_offer(1 + trial % 20, rng);
    const auto w = born_weights(o);
    const auto m = project_to_mixed(o);
    ASSERT_EQ(m.size(), w.size());
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i].weight, w[i], 1e-15);
  }
}

TEST(WeightDistributionTest, RejectsBadWeights) {
  EXPECT_THROW(WeightDistribution({0.5, 0.6}), Error);
  EXPECT_THROW(WeightDistribution({1.5, -0.5}), Error);
  EXPECT_NO_THROW(WeightDistribution({0.25, 0.75}));
}

TEST(ActualizeTest, CertainOutcome) {
  std::mt19937_64 rng(1);
  const WeightDistribution w({1.0, 0.0});
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(actualize(w, rng), 0u);
  const WeightDistribution last({0.0, 0.0, 1.0});
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(actualize(last, rng), 2u);
}

TEST(ActualizeTest, FairCoinFrequency) {
  std::mt19937_64 rng(2);
  const WeightDistribution w({0.5, 0.5});
  const int draws = 100000;
  int zeros = 0;
  for (int i = 0; i < draws; ++i) zeros += actualize(w, rng) == 0 ? 1 : 0;
  const double f = static_cast<double>(zeros) / draws;
  EXPECT_GE(f, 0.494);
  EXPECT_LE(f, 0.506);
}

TEST(ActualizeTest, ChiSquareGoodnessOfFit) {
  std::mt19937_64 rng(3);
  const WeightDistribution w({0.36, 0.64});
  const int draws = 100000;
  double counts[2] = {0, 0};
  for (int i = 0; i < draws; ++i) counts[actualize(w, rng)] += 1;
  double chi2 = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double expected = draws * w[k];
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  // one degree of freedom: p = erfc(sqrt(chi2 / 2))
  EXPECT_GT(std::erfc(std::sqrt(chi2 / 2.0)), 1e-3);
}

TEST(ActualizeTest, DeterministicUnderSeed) {
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  const WeightDistribution w({0.2, 0.3, 0.5});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(actualize(w, a), actualize(w, b));
}

TEST(HermitianTest, RejectsNonHermitianAndNonSquare) {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 2.0, 0.0;
  try {
    HermitianGenerator{m};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
  EXPECT_THROW(HermitianGenerator(Eigen::MatrixXcd(2, 3)), Error);
}

TEST(EvolveTest, ZeroGeneratorIsIdentity) {
  const auto o = offer({0.6, Complex(0.0, 0.8)});
  const auto out = evolve(o, HermitianGenerator(Eigen::MatrixXcd::Zero(2, 2)), 3.7);
  EXPECT_NEAR(std::abs(out.amplitudes[0] - o.amplitudes[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitudes[1] - o.amplitudes[1]), 0.0, 1e-15);
  EXPECT_EQ(out.emitter_tag, "test");
}

TEST(EvolveTest, DiagonalGeneratorAddsPhases) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
  h(0, 0) = 1.5;
  h(1, 1) = -0.25;
  const auto o = offer({0.6, 0.8});
  const double t = 2.0;
  const auto out = evolve(o, HermitianGenerator(h), t);
  EXPECT_NEAR(std::abs(out.amplitudes[0] - 0.6 * std::exp(Complex(0, -1.5 * t))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitudes[1] - 0.8 * std::exp(Complex(0, 0.25 * t))), 0.0, 1e-14);
  EXPECT_NEAR(born_weights(out)[0], 0.36, 1e-14);
}

TEST(EvolveTest, RabiSwapMatchesRungeKutta) {
  Eigen::MatrixXcd h(2, 2);
  h << 0.0, 1.0, 1.0, 0.0;
  const double t = std::numbers::pi / 2.0;
  const auto o = offer({1.0, 0.0});
  const auto out = evolve(o, HermitianGenerator(h), t);
  const auto oracle = rk4(h, o.amplitudes, t, 1e-4);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(out.amplitudes[i] - oracle[i]), 0.0, 1e-6);
  EXPECT_NEAR(std::norm(out.amplitudes[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::norm(out.amplitudes[1]), 1.0, 1e-12);
}

TEST(EvolveTest, RandomGeneratorMatchesRungeKutta) {
  std::mt19937_64 rng(21);
  const auto h = random_hermitian(4, rng);
  const auto o = random_offer(4, rng);
  const auto out = evolve(o, h, 0.8);
  const auto oracle = rk4(h.matrix(), o.amplitudes, 0.8, 1e-4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out.amplitudes[i] - oracle[i]), 0.0, 1e-6);
}

TEST(EvolveTest, DimensionMismatch) {
  try {
    evolve(offer({1.0}), HermitianGenerator(Eigen::MatrixXcd::Zero(2, 2)), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(BornProperty, NormalizationAndPhaseInvariance) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 500; ++trial) {
    auto o = random_offer(1 + trial % 64, rng);
    const auto w = born_weights(o);
    double sum = 0.0;
    for (double x : w.weights()) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    const Complex phase = std::polar(1.0, angle(rng));
    for (auto& a : o.amplitudes) a *= phase;
    const auto rotated = born_weights(o);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(rotated[i], w[i], 1e-12);
  }
}

TEST(BornProperty, UnitarityAndComposition) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> time(-100.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 16;
    const auto h = random_hermitian(n, rng);
    const auto o = random_offer(n, rng);
    const double t1 = time(rng);
    const double t2 = time(rng) / 2.0;
    const auto once = evolve(o, h, t1);
    EXPECT_NEAR(norm_of(once), norm_of(o), 1e-10);
    const auto twice = evolve(once, h, t2);
    const auto direct = evolve(o, h, t1 + t2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::abs(twice.amplitudes[i] - direct.amplitudes[i]), 0.0, 1e-9);
  }
}

TEST(ElevationTest, Product) {
  const double alpha = 1.0 / 137.035999;
  EXPECT_NEAR(elevation_probability({alpha, 1.0}), 0.0072973525, 1e-10);
  EXPECT_EQ(elevation_probability({alpha, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(elevation_probability({0.5, 0.5}), 0.25);
  EXPECT_THROW(elevation_probability({1.5, 0.5}), Error);
  EXPECT_THROW(elevation_probability({0.5, -0.1}), Error);
}

}  // namespace
}  // namespace causet
