// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

namespace gdneg {
namespace {

const double kSqrt26 = std::sqrt(26.0);

DensityMatrix product_state(std::size_t m, std::size_t n, Rng& rng) {
  return {m, n, kron(random_hs_matrix(m, rng), random_hs_matrix(n, rng))};
}

TEST(Negativity, Rho1ClosedForm) {
  EXPECT_NEAR(negativity(rho1(5, 2)), (4 * kSqrt26 - 4) / 29, 1e-13);
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{-3.0, 0.5}, std::pair{0.01, 2.0}}) {
    EXPECT_NEAR(negativity(rho1(a, b)), rho1_negativity(a, b), 1e-12);
  }
  EXPECT_NEAR(negativity(rho1(0, 1)), 0.0, 1e-15);
}

TEST(Negativity, ProductStatesHaveNone) {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) EXPECT_NEAR(negativity(product_state(2, 3, rng)), 0.0, 1e-12);
}

TEST(Negativity, MaximalStateIsOne) {
  for (auto [m, n] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}, std::pair{3u, 5u}}) {
    EXPECT_NEAR(negativity(maximal_state(m, n)), 1.0, 1e-12);
  }
}

TEST(Negativity, DualExpressionsAgree) {
  Rng rng(42);
  for (auto [m, n] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}, std::pair{3u, 4u}}) {
    for (int rep = 0; rep < 50; ++rep) {
      EXPECT_LE(negativity_parts(random_hs_state(m, n, rng)).disagreement(), 1e-9);
    }
  }
}

TEST(Negativity, ConvexitySpotCheck) {
  Rng rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    const DensityMatrix r1 = random_state(2, 3, rep % 2 ? Ensemble::pure : Ensemble::hilbert_schmidt, rng);
    const DensityMatrix r2 = random_pure_state(2, 3, rng).projector();
    const double t = rng.uniform();
    const DensityMatrix mix(2, 3, r1.matrix() * complex(t) + r2.matrix() * complex(1 - t));
    EXPECT_LE(negativity(mix), t * negativity(r1) + (1 - t) * negativity(r2) + 1e-9);
  }
}

TEST(PtNegativeCount, Examples) {
  EXPECT_EQ(pt_negative_count(rho1(5, 2)), 2u);
  EXPECT_EQ(pt_negative_count(rho1(-0.2, 3)), 2u);
  EXPECT_EQ(pt_negative_count(rho1(0, 1)), 0u);
  EXPECT_EQ(pt_negative_count(DensityMatrix::maximally_mixed(2, 3)), 0u);
  // (1/m) SWAP on the m x m support: m(m-1)/2 negative eigenvalues
  EXPECT_EQ(pt_negative_count(maximal_state(2, 3)), 1u);
  EXPECT_EQ(pt_negative_count(maximal_state(3, 3)), 3u);
}

TEST(PtNegativeCount, NeverExceedsCap) {
  Rng rng(44);
  for (auto [m, n] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}}) {
    for (int rep = 0; rep < 200; ++rep) {
      EXPECT_LE(pt_negative_count(random_hs_state(m, n, rng)), (m - 1) * (n - 1));
    }
  }
}

TEST(Discord, LowerBoundExamples) {
  EXPECT_NEAR(gd_lower_bound(DensityMatrix::maximally_mixed(2, 3)), 0.0, 1e-15);
  EXPECT_NEAR(gd_lower_bound(DensityMatrix::maximally_mixed(3, 4)), 0.0, 1e-15);
  EXPECT_NEAR(gd_lower_bound(rho1(5, 2)), 200.0 / 841, 1e-13);
}

TEST(Discord, ClassicalQuantumStatesHaveZero) {
  Rng rng(45);
  for (auto [m, n] : {std::pair{2u, 3u}, std::pair{3u, 3u}, std::pair{3u, 4u}}) {
    for (int rep = 0; rep < 30; ++rep) {
      EXPECT_NEAR(gd_lower_bound(random_classical_quantum_state(m, n, rng)), 0.0, 1e-10);
    }
  }
}

TEST(Discord, Rho1Branches) {
  for (auto [a, b] : {std::pair{5.0, 2.0}, std::pair{3.0, 1.0}, std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    const GeometricDiscord gd = geometric_discord(rho1(a, b));
    EXPECT_TRUE(gd.exact);
    EXPECT_NEAR(gd.value, test::rho1_discord_literal(a, b), 1e-12);
  }
}

TEST(Discord, MaximalStateIsOne) {
  for (auto [m, n] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{2u, 5u}}) {
    const GeometricDiscord gd = geometric_discord(maximal_state(m, n));
    EXPECT_TRUE(gd.exact);
    EXPECT_NEAR(gd.value, 1.0, 1e-12);
  }
  const GeometricDiscord gd = geometric_discord(maximal_state(3, 4));
  EXPECT_FALSE(gd.exact);
  EXPECT_NEAR(gd.value, 1.0, 1e-12);
}

TEST(BruteForce, Rho1AtFiveTwo) {
  EXPECT_NEAR(gd_bruteforce_2xn(rho1(5, 2), 200), 200.0 / 841, 1e-6);
}

TEST(BruteForce, MaximallyMixed) {
  EXPECT_NEAR(gd_bruteforce_2xn(DensityMatrix::maximally_mixed(2, 3), 50), 0.0, 1e-9);
}

TEST(BruteForce, AgreesWithClosedFormOnRandomStates) {
  Rng rng(46);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int rep = 0; rep < 30; ++rep) {
      const DensityMatrix rho = random_hs_state(2, n, rng);
      EXPECT_NEAR(gd_bruteforce_2xn(rho, 40), geometric_discord(rho).value, 1e-6);
    }
  }
}

TEST(BruteForce, WrongDimension) {
  try {
    gd_bruteforce_2xn(DensityMatrix::maximally_mixed(3, 3), 10);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::wrong_dimension);
  }
}

TEST(Schmidt, Examples) {
  const PureState prod = PureState::normalized(2, 3, {1, 0, 0, 0, 0, 0});
  const auto c1 = schmidt(prod);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_NEAR(c1[0], 1.0, 1e-15);

  const double h = 1.0 / std::sqrt(2.0);
  const auto c2 = schmidt(PureState(2, 3, {h, 0, 0, 0, h, 0}));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_NEAR(c2[0], h, 1e-15);
  EXPECT_NEAR(c2[1], h, 1e-15);

  for (auto [m, n] : {std::pair{2u, 3u}, std::pair{3u, 4u}, std::pair{4u, 4u}}) {
    const auto c = schmidt(maximal_vector(m, n));
    ASSERT_EQ(c.size(), m);
    for (double v : c) EXPECT_NEAR(v, 1.0 / std::sqrt(static_cast<double>(m)), 1e-14);
  }
}

TEST(Schmidt, NormalizationAndOrder) {
  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const auto c = schmidt(random_pure_state(3, 4, rng));
    double s = 0.0;
    for (double v : c) s += v * v;
    EXPECT_NEAR(s, 1.0, 1e-10);
    EXPECT_TRUE(std::is_sorted(c.begin(), c.end(), std::greater<>()));
  }
}

TEST(PureState, RejectsNonUnitVector) {
  EXPECT_THROW(PureState(2, 2, {1, 1, 0, 0}), error);
}

TEST(PureFormulas, Examples) {
  EXPECT_DOUBLE_EQ(pure_negativity({1.0}, 2), 0.0);
  EXPECT_DOUBLE_EQ(pure_gd({1.0}, 3), 0.0);
  for (std::size_t m : {2u, 3u, 4u}) {
    const std::vector<double> c(m, 1.0 / std::sqrt(static_cast<double>(m)));
    EXPECT_NEAR(pure_negativity(c, m), 1.0, 1e-14);
    EXPECT_NEAR(pure_gd(c, m), 1.0, 1e-14);
  }
}

TEST(PureFormulas, MatchGeneralPipelines) {
  Rng rng(48);
  for (auto [m, n] : {std::pair{2u, 3u}, std::pair{2u, 4u}, std::pair{3u, 3u}}) {
    for (int rep = 0; rep < 50; ++rep) {
      const PureState phi = random_pure_state(m, n, rng);
      const auto c = schmidt(phi);
      const DensityMatrix rho = phi.projector();
      EXPECT_NEAR(pure_negativity(c, m), negativity(rho), 1e-8);
      if (m == 2) {
        EXPECT_NEAR(pure_gd(c, m), geometric_discord(rho).value, 1e-8);
      }
      // pure-state bounds: N <= 1, D <= 1, |N^2 - D| <= 1
      EXPECT_LE(pure_gd(c, m), 1.0 + 1e-12);
      EXPECT_LE(std::abs(std::pow(pure_negativity(c, m), 2) - pure_gd(c, m)), 1.0 + 1e-12);
    }
  }
}

TEST(MaximalState, Construction) {
  const DensityMatrix bell = maximal_state(2, 2);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_EQ(bell.matrix(), expected);

  const DensityMatrix r = maximal_state(2, 3);
  const Spectrum s = hermitian_eigenvalues(r.matrix());
  EXPECT_NEAR(s[0], 1.0, 1e-15);
  EXPECT_NEAR(s[1], 0.0, 1e-15);
  const MeasureReport rep = measure_report(r);
  EXPECT_NEAR(rep.negativity_sq - rep.discord, 0.0, 1e-12);

  try {
    maximal_state(3, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_dimension);
  }
}

TEST(BoundsCheck, Rho1AtFiveTwo) {
  const MeasureReport r = bounds_check(rho1(5, 2));
  EXPECT_TRUE(r.bounds_ok);
  EXPECT_NEAR(r.gap(), (232 - 32 * kSqrt26) / 841, 1e-12);
  EXPECT_NEAR(r.gap(), 0.0818, 5e-5);
  EXPECT_EQ(r.pt_negative_count, 2u);
  EXPECT_EQ(r.pt_negative_cap, 2u);
}

TEST(BoundsCheck, MaximallyMixed) {
  const MeasureReport r = bounds_check(DensityMatrix::maximally_mixed(2, 3));
  EXPECT_NEAR(r.negativity, 0.0, 1e-15);
  EXPECT_NEAR(r.discord, 0.0, 1e-15);
}

TEST(BoundsCheck, MonteCarlo) {
  Rng rng(49);
  for (auto [m, n] : {std::pair{2u, 3u}, std::pair{3u, 3u}}) {
    for (int rep = 0; rep < 500; ++rep) {
      const MeasureReport r = bounds_check(random_state(m, n, rep % 3 ? Ensemble::hilbert_schmidt : Ensemble::pure, rng));
      EXPECT_TRUE(r.bounds_ok);
      EXPECT_GE(r.gap(), -discord_prefactor(m) - 1e-9);
      EXPECT_LE(r.gap(), 1.0 + 1e-9);
    }
  }
}

TEST(MeasurementIdentity, Examples) {
  const MeasurementIdentity z = measurement_identity_check(rho1(5, 2), {0, 0, 1});
  EXPECT_LE(z.overlap_residual(), 1e-10);
  EXPECT_LE(z.distance_residual(), 1e-10);

  Rng rng(50);
  for (int rep = 0; rep < 20; ++rep) {
    const std::array<double, 3> u{rng.normal(), rng.normal(), rng.normal()};
    const MeasurementIdentity id = measurement_identity_check(rho1(5, 2), u);
    EXPECT_LE(id.overlap_residual(), 1e-10);
    EXPECT_LE(id.distance_residual(), 1e-10);
    // distance can never beat the optimum
    EXPECT_GE(2.0 * id.distance_sq, 200.0 / 841 - 1e-12);
  }

  const MeasurementIdentity mixed = measurement_identity_check(DensityMatrix::maximally_mixed(2, 3), {1, 2, 3});
  EXPECT_NEAR(mixed.projected_purity, 1.0 / 6, 1e-15);
  EXPECT_NEAR(mixed.overlap, 1.0 / 6, 1e-15);
  EXPECT_NEAR(mixed.distance_sq, 0.0, 1e-15);
}

TEST(MeasurementIdentity, RandomStatesRespectUpperBound) {
  Rng rng(51);
  for (int rep = 0; rep < 100; ++rep) {
    const DensityMatrix rho = random_state(2, 3, rep % 2 ? Ensemble::pure : Ensemble::hilbert_schmidt, rng);
    const MeasurementIdentity id = measurement_identity_check(rho, {rng.normal(), rng.normal(), rng.normal()});
    EXPECT_LE(id.overlap_residual(), 1e-10);
    EXPECT_LE(id.distance_residual(), 1e-10);
    EXPECT_LE(id.distance_sq, 1.0);
  }
  EXPECT_THROW(measurement_identity_check(DensityMatrix::maximally_mixed(3, 3), {0, 0, 1}), error);
}

TEST(DensityMatrix, ValidationNamesInvariant) {
  ComplexMatrix m = ComplexMatrix::identity(6) * complex(0.9 / 6);
  try {
    DensityMatrix(2, 3, m);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_state);
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
    EXPECT_NEAR(e.residual(), 0.1, 1e-12);
  }
  const std::vector<complex> d{0.6, -0.1, 0.5, 0.0};
  try {
    DensityMatrix(2, 2, ComplexMatrix::diagonal(d));
    FAIL();
  } catch (const error& e) {
    EXPECT_NE(std::string(e.what()).find("positivity"), std::string::npos);
  }
}

}  // namespace
}  // namespace gdneg
