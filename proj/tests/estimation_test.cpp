#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "sslud/estimation.hpp"

using namespace sslud;
namespace oracle = sslud::oracle;

namespace {

std::vector<double> shifted_returns(double c) {
  auto v = oracle::nifty_returns();
  for (double& x : v) x -= c;
  return v;
}

// Symmetric pseudo-sample whose mean is exactly `target` up to rounding.
Sample exact_mean_sample(double target) {
  return Sample({target - 1.0, target - 0.25, target, target + 0.25, target + 1.0});
}

}  // namespace

TEST(InformationCriteria, Examples) {
  // A 4-decimal lnL carries up to 1e-4 of rounding into 2 lnL.
  const auto a = information_criteria(-138.7604, 1, 82);
  EXPECT_NEAR(a.aic, 279.5207, 2e-4);
  EXPECT_NEAR(a.bic, 281.9274, 2e-4);
  const auto exact = information_criteria(-138.760351, 1, 82);
  EXPECT_NEAR(exact.aic, 279.5207, 1e-4);
  EXPECT_NEAR(exact.bic, 281.9274, 1e-4);
  const auto b = information_criteria(-138.7580, 2, 82);
  EXPECT_NEAR(b.aic, 281.5161, 1e-4);
  EXPECT_NEAR(b.bic, 286.3295, 1e-4);
  const auto c = information_criteria(0.0, 1, 1);
  EXPECT_EQ(c.aic, 2.0);
  EXPECT_EQ(c.bic, 0.0);
}

TEST(SsludLoglik, HandEvaluations) {
  const Sample data({2.0, 3.0});
  // Both observations lie at or above mu = 1, so no uniform factor applies.
  EXPECT_DOUBLE_EQ(sslud_loglik(1.0, data), -5.0);
  EXPECT_NEAR(sslud_loglik(10.0, data), -5.0 + std::log(12.0 / 20.0) + std::log(13.0 / 20.0), 1e-14);
  EXPECT_EQ(sslud_loglik(-1.0, data), -std::numeric_limits<double>::infinity());
}

TEST(SsludLoglik, InfeasibleAndEdgeConventions) {
  const Sample data({-1.0, 0.5, 2.0});
  EXPECT_EQ(sslud_loglik(0.5, data), -std::numeric_limits<double>::infinity());
  // x = -mu has zero density.
  EXPECT_EQ(sslud_loglik(1.0, data), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(sslud_loglik(0.0, data), -std::numeric_limits<double>::infinity());
  // x = mu takes the x/mu >= 1 branch.
  EXPECT_DOUBLE_EQ(sslud_loglik(2.0, Sample({2.0})), -2.0);
  EXPECT_DOUBLE_EQ(sslud_loglik(-2.0, Sample({-2.0})), -2.0);
}

TEST(SsludLoglik, MatchesBruteForceSum) {
  const auto y = oracle::nifty_returns();
  const auto z = shifted_returns(0.8);
  for (const auto* v : {&y, &z}) {
    const Sample data(*v);
    int feasible = 0;
    for (double mu = -80.0; mu <= 80.0; mu += 0.0731) {
      const double ll = sslud_loglik(mu, data);
      const double brute = oracle::brute_loglik(mu, *v);
      if (!std::isfinite(brute)) {
        EXPECT_EQ(ll, -std::numeric_limits<double>::infinity()) << mu;
        continue;
      }
      ++feasible;
      EXPECT_NEAR(ll, brute, 1e-10) << mu;
    }
    EXPECT_GT(feasible, 500);
  }
}

TEST(FitMom, ClampsOutsideUnitInterval) {
  const auto hi = fit_mom(exact_mean_sample(1.2));
  EXPECT_EQ(hi.mu(), 1e-5);
  EXPECT_TRUE(hi.boundary_hit);
  const auto lo = fit_mom(exact_mean_sample(-1.2));
  EXPECT_EQ(lo.mu(), -1e-5);
  EXPECT_TRUE(lo.boundary_hit);
  EXPECT_EQ(fit_mom(Sample({1.0})).mu(), 1e-5);
  EXPECT_EQ(fit_mom(Sample({-1.0})).mu(), -1e-5);
}

TEST(FitMom, RoundTripsThroughTheMean) {
  for (double mu0 : {0.25, 0.75, 1.0, 1.5, -0.25, -0.75, -1.5}) {
    const double mean = oracle::expect(mu0, [](double x) { return x; });
    const auto fit = fit_mom(exact_mean_sample(mean));
    EXPECT_NEAR(fit.mu(), mu0, 1e-6) << mu0;
    EXPECT_FALSE(fit.boundary_hit);
    EXPECT_EQ(fit.branch, mu0 > 0 ? Branch::PositiveMu : Branch::NegativeMu);
  }
}

TEST(FitMom, ZeroMeanHitsTheCap) {
  const auto fit = fit_mom(Sample({-1.0, 1.0}));
  EXPECT_TRUE(fit.boundary_hit);
  EXPECT_GE(fit.mu(), 1e9);
}

TEST(FitMom, InternallyConsistent) {
  const Sample data(oracle::nifty_returns());
  const auto fit = fit_mom(data);
  EXPECT_EQ(fit.k, 1);
  EXPECT_EQ(fit.aic, 2.0 * fit.k - 2.0 * fit.loglik);
  EXPECT_EQ(fit.bic, fit.k * std::log(82.0) - 2.0 * fit.loglik);
}

TEST(FitMle, ReturnsData) {
  const Sample data(oracle::nifty_returns());
  const auto fit = fit_mle(data);
  EXPECT_NEAR(fit.mu(), 62.38674, 1e-3);
  EXPECT_NEAR(fit.loglik, -138.7604, 1e-4);
  EXPECT_NEAR(fit.aic, 279.5207, 1e-4);
  EXPECT_NEAR(fit.bic, 281.9274, 1e-4);
  EXPECT_EQ(fit.branch, Branch::PositiveMu);
  EXPECT_FALSE(fit.boundary_hit);
  EXPECT_EQ(fit.aic, 2.0 - 2.0 * fit.loglik);
  EXPECT_EQ(fit.bic, std::log(82.0) - 2.0 * fit.loglik);
}

TEST(FitMle, ShiftedReturnsData) {
  const Sample data(shifted_returns(0.8));
  const auto fit = fit_mle(data);
  EXPECT_NEAR(fit.mu(), -2.589259, 1e-4);
  EXPECT_NEAR(fit.loglik, -136.8343, 1e-4);
  EXPECT_NEAR(fit.aic, 275.6685, 1e-4);
  EXPECT_NEAR(fit.bic, 278.0752, 1e-4);
  EXPECT_EQ(fit.branch, Branch::NegativeMu);
}

TEST(FitMle, LocalMaximumCertificate) {
  for (double c : {0.0, 0.8}) {
    const Sample data(shifted_returns(c));
    const auto fit = fit_mle(data);
    for (double d : {1e-3, 1e-2}) {
      EXPECT_GE(fit.loglik, sslud_loglik(fit.mu() + d, data));
      EXPECT_GE(fit.loglik, sslud_loglik(fit.mu() - d, data));
    }
    EXPECT_EQ(fit.loglik, sslud_loglik(fit.mu(), data));
  }
}

TEST(FitMle, ConsistentOnLargeSample) {
  RngStream rng(777, 0);
  const Sample data(sample(SsludParams(0.75), 10000, rng));
  const auto fit = fit_mle(data);
  EXPECT_NEAR(fit.mu(), 0.75, 0.05);
  EXPECT_GE(fit.loglik, fit_mom(data).loglik);
}

TEST(FitMle, SmallSearchLimitFlagsBoundary) {
  const Sample data(oracle::nifty_returns());
  const auto fit = fit_mle(data, 20.0);
  EXPECT_TRUE(fit.boundary_hit);
  EXPECT_NEAR(std::abs(fit.mu()), 20.0, 1e-6);
}

TEST(FitMle, EmptyFeasibleRegion) {
  // Feasible mu must exceed 50 on the positive side and be below -50 on the negative side.
  EXPECT_THROW(fit_mle(Sample({-50.0, 50.0}), 40.0), Error);
  EXPECT_THROW(fit_mle(Sample({1.0}), -1.0), Error);
}

TEST(FitMle, SingleBranchWhenDataStraddleZero) {
  const Sample data({-0.4, 0.1, 0.3, 1.7, 2.2, 0.9, -0.2});
  const auto fit = fit_mle(data);
  EXPECT_TRUE(std::isfinite(fit.loglik));
  if (fit.branch == Branch::PositiveMu) EXPECT_GT(fit.mu(), 0.4);
  else EXPECT_LT(fit.mu(), -2.2);
}
