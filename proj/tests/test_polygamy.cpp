#include <polyent/polygamy.hpp>
#include <polyent/states.hpp>

#include <gtest/gtest.h>

using namespace polyent;

namespace {

const double kLog3 = std::log2(3.0);

PureState gsd_equal() { return build("gsd3:1/2,1/2,r6,r6,r6"); }

AssistanceOptions exact_w3_terms() {
  AssistanceOptions o;
  o.overrides = {2.0 / 3.0, 2.0 / 3.0};
  return o;
}

TermSet make_terms(std::vector<double> values) {
  TermSet t;
  for (std::size_t i = 0; i < values.size(); ++i) {
    t.labels.push_back("A" + party_label(static_cast<int>(i) + 1));
    t.tentative.push_back(false);
  }
  t.values = std::move(values);
  return t;
}

OptimizerSettings quick() {
  OptimizerSettings s;
  s.restarts = 4;
  s.threads = 1;
  return s;
}

}  // namespace

TEST(Hamming, Weights) {
  EXPECT_EQ(hamming_weight(0), 0);
  EXPECT_EQ(hamming_weight(1), 1);
  EXPECT_EQ(hamming_weight(6), 2);
  EXPECT_EQ(hamming_weight(7), 3);
  EXPECT_EQ(hamming_weight(1024), 1);
  const auto b = binary_index_vector(6);
  EXPECT_EQ(b.bits, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(b.weight, 2);
}

TEST(WeightCoeff, Values) {
  EXPECT_EQ(weight_coeff(0.5, 0, WeightScheme::hamming), 1.0);
  EXPECT_NEAR(weight_coeff(0.5, 3, WeightScheme::hamming), std::pow(std::sqrt(2.0) - 1, 2), 1e-15);
  EXPECT_NEAR(weight_coeff(0.5, 3, WeightScheme::linear), std::pow(std::sqrt(2.0) - 1, 3), 1e-15);
  EXPECT_EQ(weight_coeff(1.0, 5, WeightScheme::hamming), 1.0);
  EXPECT_EQ(weight_coeff(0.0, 5, WeightScheme::linear), 0.0);
  EXPECT_THROW(weight_coeff(1.5, 1, WeightScheme::hamming), std::invalid_argument);
}

TEST(WeightCoeff, LinearNeverExceedsHamming) {
  for (double x = 0.0; x <= 1.0; x += 0.05)
    for (std::uint64_t j = 0; j < 64; ++j)
      EXPECT_LE(weight_coeff(x, j, WeightScheme::linear), weight_coeff(x, j, WeightScheme::hamming) + 1e-15);
}

TEST(Lemma1, Grid) {
  double min_res = 1.0;
  for (int i = 0; i <= 100; ++i)
    for (int k = 0; k <= 100; ++k) min_res = std::min(min_res, lemma1(i / 100.0, k / 100.0).residual);
  EXPECT_GE(min_res, -1e-12);
  for (int k = 0; k <= 100; ++k) EXPECT_NEAR(lemma1(1.0, k / 100.0).residual, 0.0, 1e-12);
  for (int i = 0; i <= 100; ++i) EXPECT_NEAR(lemma1(i / 100.0, 1.0).residual, 0.0, 1e-12);
  EXPECT_THROW(lemma1(-0.1, 0.5), std::invalid_argument);
}

TEST(MeasurePower, ZeroToTheZero) {
  EXPECT_EQ(measure_power(0.0, 0.0), 0.0);
  EXPECT_EQ(measure_power(1e-12, 0.0), 0.0);
  EXPECT_EQ(measure_power(0.3, 0.0), 1.0);
  EXPECT_NEAR(measure_power(0.25, 0.5), 0.5, 1e-15);
}

TEST(Theorem1, GsdExample) {
  const auto r = check_theorem1(gsd_equal(), PartitionSpec::all_against(3), 1.0);
  EXPECT_NEAR(r.lhs, std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_NEAR(r.rhs, std::sqrt(6.0) / 3.0, 1e-9);
  EXPECT_NEAR(r.slack, std::sqrt(6.0) / 3.0 - std::sqrt(2.0) / 2.0, 1e-9);
  EXPECT_NEAR(r.slack, 0.10939, 5e-4);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.mode_flags.front(), "lhs:pure-concurrence");
}

TEST(Theorem1, BlockSumLhsOnGsdExceedsBound) {
  CheckOptions opt;
  opt.lhs_mode = GlobalCutMode::block_sum;
  const auto r = check_theorem1(gsd_equal(), PartitionSpec::all_against(3), 1.0, opt);
  EXPECT_NEAR(r.lhs, std::sqrt(6.0) / 2.0, 1e-12);
  EXPECT_FALSE(r.holds);
}

TEST(Eq4, GsdExample) {
  const auto r = check_baseline(gsd_equal(), PartitionSpec::all_against(3), Baseline::tau_sq_eq4);
  EXPECT_NEAR(r.slack, 1.0 / 6.0, 1e-9);
}

TEST(Theorem1, ProductStateIsTrivial) {
  const auto r = check_theorem1(build("product:2,2,3"), PartitionSpec::all_against(3), 1.5);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_NEAR(r.rhs, 0.0, 1e-9);
  EXPECT_TRUE(r.holds);
}

TEST(Theorem1, HoldsOnHaarStates) {
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{2, 2, 3}, Dims{2, 2, 2, 2}}) {
    for (int i = 0; i < 60; ++i) {
      const PureState psi = haar_random_pure(dims, derive_seed(31, i));
      for (double a : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const auto r = check_theorem1(psi, PartitionSpec::all_against(psi.num_subsystems()), a);
        ASSERT_TRUE(r.holds) << "alpha " << a << " slack " << r.slack;
      }
    }
  }
}

TEST(Theorem1, SortedByValue) {
  const auto r = theorem1_from_terms(0.5, make_terms({0.1, 0.4, 0.2}), 1.0);
  EXPECT_EQ(r.permutation, (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(r.terms[0].weight, 1.0);
}

TEST(Theorem1, PartnerOrderIrrelevant) {
  const PureState psi = haar_random_pure({2, 2, 2, 2}, 8);
  const auto a = check_theorem1(psi, {0, {1, 2, 3}}, 1.2);
  const auto b = check_theorem1(psi, {0, {3, 1, 2}}, 1.2);
  EXPECT_NEAR(a.rhs, b.rhs, 1e-12);
}

TEST(Theorem2, W4ConditionGates) {
  const auto part = PartitionSpec::all_against(4);
  const auto good = check_theorem2(build("w4:r6,r2,r6,r6"), part, 1.0);
  ASSERT_TRUE(good.condition_status.has_value());
  EXPECT_TRUE(*good.condition_status);
  EXPECT_TRUE(good.holds);
  const auto bad = check_theorem2(build("w4:r6,r6,r2,r6"), part, 1.0);
  EXPECT_FALSE(*bad.condition_status);
  CheckOptions sorted;
  sorted.sort_for_condition = true;
  EXPECT_TRUE(*check_theorem2(build("w4:r6,r6,r2,r6"), part, 1.0, sorted).condition_status);
}

TEST(Theorem2, W4PairValues) {
  const double a = 1 / std::sqrt(6.0), b = 1 / std::sqrt(2.0);
  const TermSet t = pair_terms(build("w4:r6,r2,r6,r6"), PartitionSpec::all_against(4), PairMeasure::tau_a);
  EXPECT_NEAR(t.values[0], 2 * a * b, 1e-9);
  EXPECT_NEAR(t.values[1], 2 * a * a, 1e-9);
  EXPECT_NEAR(t.values[2], 2 * a * a, 1e-9);
}

TEST(Theorem2, NotAboveTheorem1) {
  for (int i = 0; i < 50; ++i) {
    const PureState psi = haar_random_pure({2, 2, 2, 2}, derive_seed(41, i));
    const auto part = PartitionSpec::all_against(4);
    CheckOptions sorted;
    sorted.sort_for_condition = true;
    for (double a : {0.5, 1.0, 2.0}) {
      const auto t1 = check_theorem1(psi, part, a);
      const auto t2 = check_theorem2(psi, part, a, sorted);
      EXPECT_LE(t2.rhs, t1.rhs + 1e-12);
      if (*t2.condition_status) EXPECT_TRUE(t2.holds);
    }
  }
}

TEST(Theorem3, W3ExactTerms) {
  for (double beta : {0.0, 0.25, 0.5, 1.0}) {
    const auto r = check_theorem3(build("w3"), PartitionSpec::all_against(3), beta, exact_w3_terms());
    EXPECT_NEAR(r.lhs_measure, kLog3 - 2.0 / 3.0, 1e-9);
    EXPECT_NEAR(r.rhs, std::pow(2.0, beta) * std::pow(2.0 / 3.0, beta), 1e-12);
    EXPECT_TRUE(r.holds);
  }
}

TEST(Theorem3, OrderingAgainstPriorAndLinear) {
  const auto terms = make_terms({0.5, 0.3, 0.2, 0.1});
  for (double beta = 0.0; beta <= 1.0; beta += 0.1) {
    const double th4 = theorem4_from_terms(0.6, terms, beta, true).rhs;
    const double th3 = theorem3_from_terms(0.6, terms, beta).rhs;
    const double e19 = eq19_from_terms(0.6, terms, beta).rhs;
    const double c2 = corollary2_from_terms(0.6, terms, beta).rhs;
    EXPECT_LE(th4, th3 + 1e-12);
    EXPECT_LE(th3, e19 + 1e-12);
    EXPECT_LE(e19, c2 + 1e-12);
  }
}

TEST(Theorem4, EqualsTheorem3ForTwoPartners) {
  const auto terms = make_terms({0.4, 0.7});
  for (double beta : {0.2, 0.6, 1.0}) {
    EXPECT_NEAR(theorem4_from_terms(1.0, terms, beta, true).rhs, theorem3_from_terms(1.0, terms, beta).rhs, 1e-15);
  }
}

TEST(Theorem3, OptimizerTermsOnW3) {
  AssistanceOptions opt;
  opt.optimizer = quick();
  const auto r = check_theorem3(build("w3"), PartitionSpec::all_against(3), 0.5, opt);
  EXPECT_TRUE(r.tentative);
  for (const auto& t : r.terms) EXPECT_GE(t.value, 2.0 / 3.0 - 1e-2);
}

TEST(Corollary1, UnitWeightsDominate) {
  const PureState psi = haar_random_pure({2, 2, 3}, 5);
  const auto part = PartitionSpec::all_against(3);
  for (double a : {0.5, 1.0, 2.0}) {
    EXPECT_LE(check_theorem1(psi, part, a).rhs, check_corollary1(psi, part, a).rhs + 1e-12);
  }
}

TEST(Baselines, CkwOnGhzAndW) {
  const auto ghz = check_baseline(build("ghz:3"), PartitionSpec::all_against(3), Baseline::ckw_eq1);
  EXPECT_EQ(ghz.direction, Direction::lower);
  EXPECT_NEAR(ghz.lhs, 1.0, 1e-12);
  EXPECT_NEAR(ghz.rhs, 0.0, 1e-9);
  const auto w = check_baseline(build("w3"), PartitionSpec::all_against(3), Baseline::ckw_eq1);
  EXPECT_NEAR(w.slack, 0.0, 1e-8);
  EXPECT_TRUE(w.holds);
}

TEST(Baselines, DualCaOnQubitHaarStates) {
  for (int i = 0; i < 100; ++i) {
    const PureState psi = haar_random_pure({2, 2, 2}, derive_seed(51, i));
    ASSERT_TRUE(check_baseline(psi, PartitionSpec::all_against(3), Baseline::dual_ca_eq2).holds);
  }
  EXPECT_THROW(check_baseline(haar_random_pure({2, 3, 2}, 1), PartitionSpec::all_against(3), Baseline::dual_ca_eq2),
               std::invalid_argument);
}

TEST(Baselines, Eq18OnW3) {
  CheckOptions opt;
  opt.assistance = exact_w3_terms();
  const auto r = check_baseline(build("w3"), PartitionSpec::all_against(3), Baseline::ea_eq18, opt);
  EXPECT_NEAR(r.slack, 4.0 / 3.0 - (kLog3 - 2.0 / 3.0), 1e-9);
}

TEST(Checks, RejectIncompletePartition) {
  EXPECT_THROW(check_theorem1(build("w3"), {0, {1}}, 1.0), std::invalid_argument);
  EXPECT_THROW(check_theorem1(build("w3"), PartitionSpec::all_against(3), 2.5), std::invalid_argument);
  EXPECT_THROW(check_theorem3(build("w3"), PartitionSpec::all_against(3), 1.5), std::invalid_argument);
}

TEST(Checks, NonzeroFocus) {
  const PureState psi = haar_random_pure({2, 2, 2}, 13);
  const auto r = check_theorem1(psi, PartitionSpec::all_against(3, 1), 1.0);
  EXPECT_NEAR(r.lhs_measure, concurrence_pure(psi, 1).value, 1e-12);
  EXPECT_EQ(r.terms.size(), 2u);
  EXPECT_TRUE(r.holds);
}

TEST(PairState, FocusIsFirstFactor) {
  const PureState psi = haar_random_pure({2, 3, 2}, 3);
  const DensityMatrix ba = pair_state(psi, 1, 0);
  EXPECT_EQ(ba.dims(), (Dims{3, 2}));
  EXPECT_LT((partial_trace(ba, {0}).mat() - reduced_state(psi, {1}).mat()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Padding, InvariantOnHaarStates) {
  for (int i = 0; i < 20; ++i) {
    const PureState psi = haar_random_pure({2, 2, 2}, derive_seed(61, i));
    const auto pc = padding_invariance_test(psi, PartitionSpec::all_against(3), {3});
    EXPECT_TRUE(pc.invariant);
    ASSERT_EQ(pc.new_terms.size(), 1u);
    EXPECT_LT(pc.new_terms[0], 1e-9);
  }
}

TEST(Dispatch, NamesRoundTrip) {
  for (const auto& [id, name] : inequality_names()) EXPECT_EQ(parse_inequality(name), id);
  EXPECT_THROW(parse_inequality("th9"), std::invalid_argument);
  EXPECT_FALSE(uses_exponent(Inequality::tau_sq_eq4));
  EXPECT_EQ(max_exponent(Inequality::theorem2), 2.0);
  EXPECT_EQ(max_exponent(Inequality::theorem3), 1.0);
}
