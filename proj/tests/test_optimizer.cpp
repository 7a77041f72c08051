#include <polyent/roof_optimizer.hpp>
#include <polyent/roof_oracle.hpp>
#include <polyent/states.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace polyent;

namespace {

DensityMatrix w3_pair() { return reduced_state(build("w3"), {0, 1}); }

OptimizerSettings quick(std::uint64_t seed = 0) {
  OptimizerSettings s;
  s.restarts = 6;
  s.seed = seed;
  s.threads = 1;
  return s;
}

}  // namespace

TEST(Isometry, IdentityGivesEigenEnsemble) {
  const DensityMatrix rho = w3_pair();
  const auto dec = decomposition_from_isometry(rho, Matrix::Identity(2, 2));
  ASSERT_EQ(dec.members.size(), 2u);
  EXPECT_LT(dec.residual(rho), 1e-12);
  EXPECT_NEAR(dec.probs[0] + dec.probs[1], 1.0, 1e-12);
}

TEST(Isometry, HadamardMixing) {
  const DensityMatrix rho = w3_pair();
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto dec = decomposition_from_isometry(rho, h);
  EXPECT_LT(dec.residual(rho), 1e-12);
  EXPECT_NEAR(dec.probs[0], 0.5, 1e-12);
}

TEST(Isometry, RandomFourMembers) {
  const DensityMatrix rho(oracle::random_mixed(6, 3, 9), {2, 3});
  Rng rng(1);
  const Matrix v = haar_unitary(4, rng).leftCols(3);
  const auto dec = decomposition_from_isometry(rho, v);
  EXPECT_EQ(dec.members.size(), 4u);
  EXPECT_LT(dec.residual(rho), 1e-12);
  for (const auto& m : dec.members) EXPECT_NEAR(m.amps().norm(), 1.0, 1e-12);
}

TEST(Isometry, RejectsBadShapes) {
  const DensityMatrix rho = w3_pair();
  EXPECT_THROW(decomposition_from_isometry(rho, Matrix::Identity(3, 3)), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  EXPECT_THROW(decomposition_from_isometry(rho, bad), std::invalid_argument);
}

TEST(MaximizeAssistance, WPairEntropy) {
  const DensityMatrix rho = w3_pair();
  const auto res = maximize_assistance(rho, AssistanceObjective::entropy(), quick());
  EXPECT_GE(res.value, 2.0 / 3.0 - 1e-2);
  EXPECT_LE(res.value, assistance_entropy_cap(rho) + 1e-9);
  EXPECT_LT(res.best.residual(rho), 1e-9);
}

TEST(MaximizeAssistance, PureStateIsExact) {
  const PureState psi = haar_random_pure({2, 3}, 12);
  const auto res = maximize_assistance(DensityMatrix::from_pure(psi), AssistanceObjective::entropy(), quick());
  EXPECT_EQ(res.best.members.size(), 1u);
  EXPECT_NEAR(res.value, entanglement_pure(psi, 0), 1e-10);
}

TEST(MaximizeAssistance, ConcurrenceMatchesClosedForm) {
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho(oracle::random_mixed(4, 2, 300 + i), {2, 2});
    const double closed = ca_two_qubit(rho).value;
    const auto res = maximize_assistance(rho, AssistanceObjective::concurrence(), quick(i));
    EXPECT_NEAR(res.value, closed, 5e-3);
    EXPECT_LE(res.value, closed + 1e-9);
  }
}

TEST(MaximizeAssistance, NotBelowGridOracle) {
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho(oracle::random_mixed(4, 2, 400 + i), {2, 2});
    const double grid = grid_oracle(rho, AssistanceObjective::entropy(), 40);
    const auto res = maximize_assistance(rho, AssistanceObjective::entropy(), quick(i));
    EXPECT_GE(res.value, grid - 1e-3);
  }
}

TEST(MaximizeAssistance, AtLeastEigenEnsemble) {
  const DensityMatrix rho(oracle::random_mixed(6, 3, 77), {2, 3});
  const auto base = decomposition_from_isometry(rho, Matrix::Identity(3, 3));
  double avg = 0.0;
  for (std::size_t i = 0; i < base.members.size(); ++i) avg += base.probs[i] * entanglement_pure(base.members[i], 0);
  const auto res = maximize_assistance(rho, AssistanceObjective::entropy(), quick());
  EXPECT_GE(res.value, avg - 1e-12);
  EXPECT_LE(res.value, assistance_entropy_cap(rho) + 1e-9);
}

TEST(MaximizeAssistance, RunningBestIsMonotone) {
  const DensityMatrix rho(oracle::random_mixed(4, 3, 5), {2, 2});
  const auto res = maximize_assistance(rho, AssistanceObjective::entropy(), quick());
  ASSERT_EQ(res.running_best.size(), 6u);
  for (std::size_t k = 1; k < res.running_best.size(); ++k) EXPECT_GE(res.running_best[k], res.running_best[k - 1]);
  EXPECT_EQ(res.running_best.back(), res.value);
}

TEST(MaximizeAssistance, DeterministicAcrossThreadCounts) {
  const DensityMatrix rho(oracle::random_mixed(4, 2, 6), {2, 2});
  auto s1 = quick(3);
  auto s2 = quick(3);
  s2.threads = 4;
  const auto a = maximize_assistance(rho, AssistanceObjective::entropy(), s1);
  const auto b = maximize_assistance(rho, AssistanceObjective::entropy(), s2);
  EXPECT_EQ(a.value, b.value);
}

TEST(MaximizeAssistance, ConcaveUnderMixing) {
  // E_a(p rho + (1-p) sigma) >= p E_a(rho) + (1-p) E_a(sigma).
  const PureState x = haar_random_pure({2, 2}, 21), y = haar_random_pure({2, 2}, 22);
  const DensityMatrix rx = DensityMatrix::from_pure(x), ry = DensityMatrix::from_pure(y);
  const DensityMatrix mix(0.3 * rx.mat() + 0.7 * ry.mat(), {2, 2});
  const auto res = maximize_assistance(mix, AssistanceObjective::entropy(), quick());
  EXPECT_GE(res.value, 0.3 * entanglement_pure(x, 0) + 0.7 * entanglement_pure(y, 0) - 1e-9);
}

TEST(MaximizeAssistance, Validation) {
  const DensityMatrix rho = w3_pair();
  auto s = quick();
  s.restarts = 0;
  EXPECT_THROW(maximize_assistance(rho, AssistanceObjective::entropy(), s), std::invalid_argument);
  s = quick();
  s.ensemble_size = 1;
  EXPECT_THROW(maximize_assistance(rho, AssistanceObjective::entropy(), s), std::invalid_argument);
  EXPECT_THROW(maximize_assistance(reduced_state(build("w3"), {0}), AssistanceObjective::entropy(), quick()),
               std::invalid_argument);
}

TEST(GridOracle, RejectsHighRank) {
  const DensityMatrix rho(oracle::random_mixed(4, 3, 1), {2, 2});
  EXPECT_THROW(grid_oracle(rho, AssistanceObjective::concurrence(), 10), std::invalid_argument);
}

TEST(GridOracle, NeverExceedsClosedForm) {
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho(oracle::random_mixed(4, 2, 500 + i), {2, 2});
    EXPECT_LE(grid_oracle(rho, AssistanceObjective::concurrence(), 30), ca_two_qubit(rho).value + 1e-9);
  }
}
