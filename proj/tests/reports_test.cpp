#include "securesum/reports.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "securesum/errors.hpp"
#include "securesum/information.hpp"
#include "test_support.hpp"

namespace securesum {
namespace {

using V = Variable;

TEST(LeakageReport, SecureKmIsPerfectlyPrivate) {
  Rng rng(5);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      const LinearCode code = build_code(n, m, rng);
      for (double p : {0.05, 0.25, 0.49}) {
        const JointPmf pmf = enumerate_joint(ProtocolId::secure_km, &code, {p, n});
        const LeakageReport r = leakage_report(pmf, n);
        EXPECT_NEAR(r.eps1, 0.0, kInfoTolerance);
        EXPECT_NEAR(r.eps2, 0.0, kInfoTolerance);
        EXPECT_NEAR(r.eps3, 0.0, kInfoTolerance);
        EXPECT_GE(r.eps4, -1e-12);
      }
    }
  }
}

TEST(LeakageReport, OneTimePadLeaksNothingAndNeverErrs) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (double p : {0.0, 0.1, 0.25, 0.5}) {
      const JointPmf pmf = enumerate_joint(ProtocolId::zero_error_otp, nullptr, {p, n});
      const LeakageReport r = leakage_report(pmf, n);
      EXPECT_NEAR(r.eps1, 0.0, kInfoTolerance);
      EXPECT_NEAR(r.eps2, 0.0, kInfoTolerance);
      EXPECT_NEAR(r.eps3, 0.0, kInfoTolerance);
      EXPECT_NEAR(r.eps4, 0.0, kInfoTolerance);
      EXPECT_EQ(error_probability(pmf), 0.0);
    }
  }
}

// Plain syndromes with an invertible H hand Charlie all of X given Z, so
// eps3 = H(X | Z) / n = 1. Alice's own view (M13 = Hx, nothing on link 12)
// is a function of X, so eps1 is exactly zero.
TEST(LeakageReport, PlainKmLeaksToCharlie) {
  Rng rng(6);
  const LinearCode code = build_code(2, 2, rng);
  const JointPmf pmf = enumerate_joint(ProtocolId::plain_km, &code, {0.25, 2});
  const LeakageReport r = leakage_report(pmf, 2);
  EXPECT_NEAR(r.eps3, 1.0, 1e-12);
  EXPECT_NEAR(testing::oracle_cmi(pmf, {V::m13, V::m23}, {V::x, V::y}, {V::z}) / 2, 1.0, 1e-12);
  EXPECT_NEAR(r.eps1, 0.0, 1e-12);
  EXPECT_NEAR(testing::oracle_cmi(pmf, {V::m13, V::m12}, {V::y}, {V::x}) / 2, 0.0, 1e-12);
  EXPECT_NEAR(r.eps2, 0.0, 1e-12);
  EXPECT_NEAR(r.eps4, 0.0, 1e-12);
}

TEST(LeakageReport, PlainKmLowRateStillLeaks) {
  Rng rng(7);
  const LinearCode code = build_code(4, 2, rng);
  const JointPmf pmf = enumerate_joint(ProtocolId::plain_km, &code, {0.25, 4});
  const LeakageReport r = leakage_report(pmf, 4);
  EXPECT_NEAR(r.eps3, testing::oracle_cmi(pmf, {V::m13, V::m23}, {V::x, V::y}, {V::z}) / 4, 1e-12);
  EXPECT_GT(r.eps3, 0.1);
  EXPECT_GT(r.eps4, 0.0);
}

TEST(RateReport, SecureKmUsesMBitsEverywhere) {
  const LinearCode code(Gf2Matrix::from_string("110;011"));
  const JointPmf pmf = enumerate_joint(ProtocolId::secure_km, &code, {0.25, 3});
  const RateReport r = rate_report(pmf, 3);
  EXPECT_NEAR(r.r12, 2.0 / 3, 1e-15);
  EXPECT_NEAR(r.r13, 2.0 / 3, 1e-15);
  EXPECT_NEAR(r.r23, 2.0 / 3, 1e-15);
  EXPECT_NEAR(r.rho, 2.0 / 3, 1e-12);
  EXPECT_NEAR(r.realized_r, 2.0 / 3, 1e-15);
}

TEST(RateReport, OneTimePadAndPlainBaseline) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const RateReport otp = rate_report(enumerate_joint(ProtocolId::zero_error_otp, nullptr, {0.2, n}), n);
    EXPECT_NEAR(otp.r12, 1.0, 1e-12);
    EXPECT_NEAR(otp.r13, 1.0, 1e-12);
    EXPECT_NEAR(otp.r23, 1.0, 1e-12);
    EXPECT_NEAR(otp.rho * static_cast<double>(n), static_cast<double>(n), 1e-10);
  }
  Rng rng(8);
  const LinearCode code = build_code(4, 3, rng);
  const RateReport plain = rate_report(enumerate_joint(ProtocolId::plain_km, &code, {0.2, 4}), 4);
  EXPECT_EQ(plain.r12, 0.0);
  EXPECT_NEAR(plain.rho, 0.0, 1e-12);
  EXPECT_NEAR(plain.r13, 0.75, 1e-12);
}

TEST(RateRegion, Examples) {
  EXPECT_TRUE(check_rate_region({1, 1, 1, 1}, 0.25));
  EXPECT_FALSE(check_rate_region({0.5, 1, 1, 1}, 0.25));
  EXPECT_TRUE(check_rate_region({0, 0, 0, 0}, 0.0));
  EXPECT_TRUE(check_rate_region({0.3, 0.1, 0.7, 0.2}, 0.0));
  EXPECT_FALSE(check_rate_region({0.8, 0.9, 0.9, 0.9}, 0.25));
  EXPECT_TRUE(check_rate_region({1, 1, 1, 1}, 0.5));
  EXPECT_FALSE(check_rate_region({1, 1, 1, 0.999}, 0.5));
  EXPECT_THROW(check_rate_region({1, 1, 1, 1}, 0.7), ContractViolation);
}

TEST(CutSet, OneTimePadMeetsEveryCondition) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (double p : {0.1, 0.25, 0.49}) {
      const CutSetReport r = check_cut_set(enumerate_joint(ProtocolId::zero_error_otp, nullptr, {p, n}));
      EXPECT_TRUE(r.x_determined());
      EXPECT_TRUE(r.y_determined());
      EXPECT_TRUE(r.m12_independent());
      EXPECT_TRUE(r.m13_independent());
      EXPECT_TRUE(r.m23_independent());
    }
  }
}

TEST(CutSet, PlainKmFailsLinkIndependence) {
  Rng rng(9);
  const LinearCode code = build_code(2, 2, rng);
  const CutSetReport r = check_cut_set(enumerate_joint(ProtocolId::plain_km, &code, {0.25, 2}));
  EXPECT_FALSE(r.m13_independent());
  EXPECT_NEAR(r.i_m13_xy, 2.0, 1e-12);  // M13 = Hx reveals both bits of X
  EXPECT_FALSE(r.all_hold());
}

TEST(CutSet, SecureKmFullRateDeterminesInputs) {
  Rng rng(10);
  const LinearCode code = build_code(2, 2, rng);
  const CutSetReport r = check_cut_set(enumerate_joint(ProtocolId::secure_km, &code, {0.25, 2}));
  EXPECT_TRUE(r.x_determined());
  EXPECT_TRUE(r.y_determined());
  EXPECT_TRUE(r.m12_independent());
  EXPECT_TRUE(r.m13_independent());
  EXPECT_TRUE(r.m23_independent());
}

TEST(ErrorProbability, PmfAgreesWithCodeForBothSyndromeProtocols) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const std::size_t m = 1 + rng() % n;
    const LinearCode code = build_code(n, m, rng);
    for (double p : {0.1, 0.3}) {
      const double exact = exact_error_probability(code, p);
      EXPECT_NEAR(error_probability(enumerate_joint(ProtocolId::secure_km, &code, {p, n})), exact, 1e-12);
      EXPECT_NEAR(error_probability(enumerate_joint(ProtocolId::plain_km, &code, {p, n})), exact, 1e-12);
    }
  }
}

TEST(MonteCarlo, OneTimePadIsErrorFree) {
  Rng rng(12);
  const McEstimate est = monte_carlo_error(ProtocolId::zero_error_otp, nullptr, {0.25, 8}, 1000, rng);
  EXPECT_EQ(est.trials, 1000U);
  EXPECT_EQ(est.errors, 0U);
  EXPECT_EQ(est.rate, 0.0);
  EXPECT_EQ(est.half_width, 0.0);
  EXPECT_EQ(est.mean_length[0], 8.0);
}

TEST(MonteCarlo, FullRateCodeIsErrorFree) {
  Rng rng(13);
  const LinearCode code = build_code(10, 10, rng);
  EXPECT_EQ(monte_carlo_error(ProtocolId::secure_km, &code, {0.4, 10}, 2000, rng).errors, 0U);
}

TEST(MonteCarlo, AgreesWithExactWithinThreeSigma) {
  Rng rng(14);
  const LinearCode code = build_code(12, 8, rng);
  const double exact = exact_error_probability(code, 0.1);
  const McEstimate est = monte_carlo_error(ProtocolId::secure_km, &code, {0.1, 12}, 20000, rng);
  EXPECT_NEAR(est.rate, exact, 3 * std::sqrt(exact * (1 - exact) / 20000));
  EXPECT_GT(est.half_width, 0.0);
}

TEST(MonteCarlo, DeterministicPerSeed) {
  Rng code_rng(15);
  const LinearCode code = build_code(9, 5, code_rng);
  Rng a(99), b(99);
  EXPECT_EQ(monte_carlo_error(ProtocolId::secure_km, &code, {0.2, 9}, 3001, a).errors,
            monte_carlo_error(ProtocolId::secure_km, &code, {0.2, 9}, 3001, b).errors);
  Rng c(1);
  EXPECT_THROW(monte_carlo_error(ProtocolId::secure_km, &code, {0.2, 9}, 0, c), ContractViolation);
}

TEST(RateRegion, AchievedQuadruplesAreInRegion) {
  Rng rng(16);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      const LinearCode code = build_code(n, m, rng);
      for (double p : {0.05, 0.1, 0.25}) {
        const RateReport r = rate_report(enumerate_joint(ProtocolId::secure_km, &code, {p, n}), n);
        EXPECT_NEAR(r.rho * static_cast<double>(n), static_cast<double>(m), 1e-10);
        if (static_cast<double>(m) / static_cast<double>(n) >= binary_entropy(p)) {
          EXPECT_TRUE(check_rate_region(r.quad(), p));
        }
      }
    }
  }
}

}  // namespace
}  // namespace securesum
