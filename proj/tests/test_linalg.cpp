#include <polyent/linalg.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace polyent;

namespace {

Vector vec(std::initializer_list<cplx> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

PureState bell() { return PureState::normalized(vec({1, 0, 0, 1}), {2, 2}); }

PureState w3() { return PureState::normalized(vec({0, 1, 1, 0, 1, 0, 0, 0}), {2, 2, 2}); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(PureState, RejectsBadInput) {
  EXPECT_THROW(PureState(vec({1, 0, 0}), {2, 2}), std::invalid_argument);
  EXPECT_THROW(PureState(vec({1, 1}), {2}), std::invalid_argument);
  EXPECT_THROW(PureState(vec({1}), {0}), std::invalid_argument);
  EXPECT_THROW(PureState::normalized(Vector::Zero(2), {2}), std::invalid_argument);
  EXPECT_NO_THROW(PureState(vec({1, 0}), {2}));
}

TEST(DensityMatrix, Validation) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(0, 0) = m(1, 1) = 0.5;
  EXPECT_THROW(DensityMatrix(m, {2}), std::invalid_argument);  // not Hermitian
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(neg, {2}), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(Matrix::Identity(2, 2), {2}), std::invalid_argument);  // trace 2
  EXPECT_THROW(DensityMatrix(Matrix::Identity(2, 2) / 2.0, {3}), std::invalid_argument);
  const auto half = DensityMatrix::unnormalized(Matrix::Identity(2, 2) / 4.0, {2});
  EXPECT_TRUE(half.is_unnormalized());
  EXPECT_NEAR(half.trace(), 0.5, 1e-15);
}

TEST(Kron, Dimensions) {
  Matrix a = Matrix::Random(2, 3), b = Matrix::Random(4, 5);
  const Matrix k = kron(a, b);
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(k.cols(), 15);
  EXPECT_EQ(k(1 * 4 + 2, 2 * 5 + 3), a(1, 2) * b(2, 3));
}

TEST(Kron, Associative) {
  Matrix a = Matrix::Random(2, 2), b = Matrix::Random(3, 3), c = Matrix::Random(2, 2);
  EXPECT_LT(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-14);
}

TEST(Kron, PureStatesAreBigEndian) {
  const PureState one = PureState(vec({0, 1}), {2});
  const PureState zero3 = product_zero({3});
  const PureState k = kron(one, zero3);
  EXPECT_EQ(k.dims(), (Dims{2, 3}));
  EXPECT_EQ(k.amps()(3), cplx(1.0));
}

TEST(PartialTrace, Bell) {
  const auto rho = DensityMatrix::from_pure(bell());
  EXPECT_LT(max_abs(partial_trace(rho, {0}).mat() - Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LT(max_abs(partial_trace(rho, {1}).mat() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, Product) {
  const PureState a = PureState::normalized(vec({1, cplx(0, 2)}), {2});
  const PureState b = PureState::normalized(vec({1, 1, 1}), {3});
  const auto rho = DensityMatrix::from_pure(kron(a, b));
  const Matrix ra = a.amps() * a.amps().adjoint();
  EXPECT_LT(max_abs(partial_trace(rho, {0}).mat() - ra), 1e-14);
}

TEST(PartialTrace, WStateMarginal) {
  const auto r = reduced_state(w3(), {0}).mat();
  EXPECT_NEAR(r(0, 0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r(1, 1).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-15);
}

TEST(PartialTrace, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Dims dims{2, 3, 2};
    const PureState psi = haar_random_pure(dims, seed);
    const auto grid = oracle::outer(psi.amps());
    for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}}) {
      const auto want = oracle::partial_trace(grid, dims, keep);
      const auto got = reduced_state(psi, keep).mat();
      const auto via_rho = partial_trace(DensityMatrix::from_pure(psi), keep).mat();
      for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t j = 0; j < want.size(); ++j) {
          ASSERT_LT(std::abs(got(i, j) - want[i][j]), 1e-13);
          ASSERT_LT(std::abs(via_rho(i, j) - want[i][j]), 1e-13);
        }
    }
  }
}

TEST(PartialTrace, RejectsBadKeep) {
  const auto rho = DensityMatrix::from_pure(w3());
  EXPECT_THROW(partial_trace(rho, {3}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST(HermEig, KnownSpectra) {
  Matrix px = Matrix::Zero(2, 2);
  px(0, 1) = px(1, 0) = 1.0;
  const auto es = herm_eig(px);
  EXPECT_NEAR(es.values(0), 1.0, 1e-14);
  EXPECT_NEAR(es.values(1), -1.0, 1e-14);
  Matrix py = Matrix::Zero(2, 2);
  py(0, 1) = cplx(0, -1);
  py(1, 0) = cplx(0, 1);
  EXPECT_NEAR(herm_eig(py).values(0), 1.0, 1e-14);
  EXPECT_THROW(herm_eig(Matrix::Random(3, 3)), std::invalid_argument);
}

TEST(HermEig, ReconstructsRandomHermitian) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g(9, 9);
    for (int c = 0; c < 9; ++c) g.col(c) = complex_gaussian(9, rng);
    const Matrix h = 0.5 * (g + g.adjoint());
    const auto es = herm_eig(h);
    for (int i = 0; i + 1 < 9; ++i) EXPECT_GE(es.values(i), es.values(i + 1));
    const Matrix back = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LT(max_abs(back - h), 1e-12);
    EXPECT_LT(max_abs(es.vectors.adjoint() * es.vectors - Matrix::Identity(9, 9)), 1e-12);
  }
}

TEST(PsdSqrt, SquaresBack) {
  const Matrix m = oracle::random_mixed(6, 3, 11);
  const Matrix s = psd_sqrt(m);
  EXPECT_LT(max_abs(s * s - m), 1e-12);
  EXPECT_LT(max_abs(s - s.adjoint()), 1e-14);
}

TEST(PsdSqrt, RejectsNegative) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -0.1;
  EXPECT_THROW(psd_sqrt(m), NumericError);
  m(1, 1) = -1e-9;  // round-off is clamped
  EXPECT_NO_THROW(psd_sqrt(m));
}

TEST(Purify, MarginalRecoversState) {
  const DensityMatrix rho(oracle::random_mixed(4, 2, 3), {2, 2});
  const PureState p = purify(rho);
  EXPECT_EQ(p.dims(), (Dims{4, 2}));
  EXPECT_LT(max_abs(reduced_state(p, {0}).mat() - rho.mat()), 1e-12);
}

TEST(Haar, DeterministicPerSeed) {
  const auto a = haar_random_pure({2, 3}, 42), b = haar_random_pure({2, 3}, 42), c = haar_random_pure({2, 3}, 43);
  EXPECT_EQ(a.amps(), b.amps());
  EXPECT_NE(a.amps(), c.amps());
  EXPECT_NEAR(a.amps().norm(), 1.0, 1e-14);
}

TEST(Haar, UnitaryIsUnitary) {
  Rng rng(5);
  const Matrix u = haar_unitary(5, rng);
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(5, 5)), 1e-13);
}

TEST(Haar, PurityMoment) {
  constexpr int kSamples = 20000;
  double mean = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const auto r = reduced_state(haar_random_pure({2, 2}, derive_seed(99, i)), {0}).mat();
    mean += (r * r).trace().real();
  }
  mean /= kSamples;
  EXPECT_NEAR(oracle::haar_purity_mean(2, 2), 0.8, 1e-15);
  EXPECT_NEAR(mean, oracle::haar_purity_mean(2, 2), 0.01);
  EXPECT_NEAR(oracle::haar_purity_sample_mean(2, 2, 5000, 3), oracle::haar_purity_mean(2, 2), 0.02);
}

TEST(DeriveSeed, SpreadsIndices) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}

TEST(PartitionSpec, Validation) {
  EXPECT_NO_THROW(PartitionSpec({0, {1, 2}}).validate(3));
  EXPECT_THROW(PartitionSpec({0, {}}).validate(3), std::invalid_argument);
  EXPECT_THROW(PartitionSpec({0, {0}}).validate(3), std::invalid_argument);
  EXPECT_THROW(PartitionSpec({0, {1, 1}}).validate(3), std::invalid_argument);
  EXPECT_THROW(PartitionSpec({3, {1}}).validate(3), std::invalid_argument);
  EXPECT_FALSE(PartitionSpec({0, {1}}).covers(3));
  EXPECT_EQ(PartitionSpec::all_against(4, 2).partners, (std::vector<int>{0, 1, 3}));
}
