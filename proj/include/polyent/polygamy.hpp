#pragma once

#include <polyent/linalg.hpp>
#include <polyent/measures.hpp>
#include <polyent/roof_optimizer.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polyent {

// ---------------------------------------------------------------------------
// Hamming-weight machinery

inline int hamming_weight(std::uint64_t j) { return std::popcount(j); }

/// j = sum_i bits[i] 2^i, least-significant bit first.
struct BinaryIndexVector {
  std::uint64_t j = 0;
  std::vector<int> bits;
  int weight = 0;
};

inline BinaryIndexVector binary_index_vector(std::uint64_t j) {
  BinaryIndexVector out{j, {}, hamming_weight(j)};
  for (std::uint64_t rest = j; rest != 0; rest >>= 1) out.bits.push_back(static_cast<int>(rest & 1u));
  if (out.bits.empty()) out.bits.push_back(0);
  return out;
}

enum class WeightScheme { hamming, linear };

/// (2^x - 1)^{w_H(j)} (hamming) or (2^x - 1)^j (linear); always 1 at j = 0.
inline double weight_coeff(double x, std::uint64_t j, WeightScheme scheme) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("weight exponent must lie in [0, 1]");
  if (j == 0) return 1.0;
  const double base = std::exp2(x) - 1.0;
  const double power = scheme == WeightScheme::hamming ? hamming_weight(j) : static_cast<double>(j);
  return std::pow(base, power);
}

struct Lemma1Check {
  bool holds = true;
  double residual = 0.0;  // 1 + (2^x - 1) t^x - (1 + t)^x
};

/// (1 + t)^x <= 1 + (2^x - 1) t^x on [0,1]^2.
inline Lemma1Check lemma1(double x, double t) {
  if (!(x >= 0.0 && x <= 1.0) || !(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("lemma1 domain is x, t in [0, 1]");
  }
  const double t_pow = (x == 0.0) ? 1.0 : std::pow(t, x);
  const double residual = 1.0 + (std::exp2(x) - 1.0) * t_pow - std::pow(1.0 + t, x);
  return {residual >= -1e-12, residual};
}

// ---------------------------------------------------------------------------
// Reports

enum class Inequality {
  theorem1,     // tau_a^a  <= sum (2^{a/2}-1)^{w_H(j)} tau_a^a
  theorem2,     // tau_a^a  <= sum (2^{a/2}-1)^j tau_a^a, under the ordering condition
  theorem3,     // E_a^b    <= sum (2^b-1)^{w_H(j)} E_a^b
  theorem4,     // E_a^b    <= sum (2^b-1)^j E_a^b, under the ordering condition
  eq19_prior,   // E_a^b    <= sum b^{w_H(j)} E_a^b
  corollary1,   // tau_a^a  <= sum tau_a^a
  corollary2,   // E_a^b    <= sum E_a^b
  ckw_eq1,      // C^2      >= sum C^2(rho_ABj), qubits
  dual_ca_eq2,  // C_a^2    <= sum C_a^2(rho_ABj), qubits
  tau_sq_eq4,   // tau_a^2  <= sum tau_a^2(rho_ABj)
  ea_eq18,      // E_a      <= sum E_a(rho_ABj)
};

inline const std::vector<std::pair<Inequality, std::string>>& inequality_names() {
  static const std::vector<std::pair<Inequality, std::string>> names{
      {Inequality::theorem1, "th1"},     {Inequality::theorem2, "th2"},   {Inequality::theorem3, "th3"},
      {Inequality::theorem4, "th4"},     {Inequality::eq19_prior, "eq19"}, {Inequality::corollary1, "cor1"},
      {Inequality::corollary2, "cor2"},  {Inequality::ckw_eq1, "ckw"},    {Inequality::dual_ca_eq2, "eq2"},
      {Inequality::tau_sq_eq4, "eq4"},   {Inequality::ea_eq18, "eq18"}};
  return names;
}

inline std::string to_string(Inequality id) {
  for (const auto& [k, v] : inequality_names()) {
    if (k == id) return v;
  }
  return "?";
}

inline Inequality parse_inequality(const std::string& s) {
  for (const auto& [k, v] : inequality_names()) {
    if (v == s) return k;
  }
  throw std::invalid_argument("unknown inequality '" + s + "'");
}

/// upper: polygamy form lhs <= rhs. lower: monogamy form lhs >= rhs.
enum class Direction { upper, lower };

struct PolygamyTerm {
  std::string label;
  double value = 0.0;   // raw measure
  double weight = 1.0;  // coefficient at the sorted position
  bool tentative = false;
};

struct PolygamyReport {
  Inequality id = Inequality::theorem1;
  double exponent = 1.0;
  Direction direction = Direction::upper;
  double lhs_measure = 0.0;  // raw A|rest measure
  double lhs = 0.0;          // lhs_measure raised to the exponent
  std::vector<PolygamyTerm> terms;  // in weighting order
  double rhs = 0.0;                 // sum weight * value^exponent
  double slack = 0.0;               // rhs - lhs (upper) or lhs - rhs (lower)
  bool holds = true;
  std::vector<int> permutation;     // permutation[pos] = original partner position
  std::optional<bool> condition_status;
  std::vector<std::string> mode_flags;
  bool tentative = false;
  bool escalated = false;
  double tol = 1e-8;
};

/// v^e with 0^0 := 0, so vanishing measures add no mass at exponent 0.
inline double measure_power(double v, double e, const NumericPolicy& pol = default_policy()) {
  if (e == 0.0) return v > pol.zero_measure ? 1.0 : 0.0;
  return std::pow(std::max(v, 0.0), e);
}

/// Pairwise measure values for the partners, in partner order.
struct TermSet {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<bool> tentative;
  std::vector<std::string> modes;

  bool any_tentative() const { return std::find(tentative.begin(), tentative.end(), true) != tentative.end(); }
};

/// Weight at ordered position j.
using WeightRule = std::function<double(std::uint64_t)>;

inline WeightRule hamming_rule(double x) {
  return [x](std::uint64_t j) { return weight_coeff(x, j, WeightScheme::hamming); };
}
inline WeightRule linear_rule(double x) {
  return [x](std::uint64_t j) { return weight_coeff(x, j, WeightScheme::linear); };
}
inline WeightRule prior_rule(double beta) {
  return [beta](std::uint64_t j) { return j == 0 ? 1.0 : std::pow(beta, hamming_weight(j)); };
}
inline WeightRule unit_rule() {
  return [](std::uint64_t) { return 1.0; };
}

/// Indices of `values` in descending order (stable).
inline std::vector<int> descending_order(const std::vector<double>& values) {
  std::vector<int> perm(values.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return values[a] > values[b]; });
  return perm;
}

/// Squared-sum ordering condition: v_i^2 >= sum_{j>i} v_j^2 (within tol) in
/// the given order.
inline bool squared_tail_condition(const std::vector<double>& ordered, double tol) {
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    double tail = 0.0;
    for (std::size_t j = i + 1; j < ordered.size(); ++j) tail += ordered[j] * ordered[j];
    if (ordered[i] * ordered[i] < tail - tol) return false;
  }
  return true;
}

struct AssembleSpec {
  Inequality id;
  double exponent;
  WeightRule weight;
  bool sort_descending = true;
  Direction direction = Direction::upper;
};

inline PolygamyReport assemble_report(const AssembleSpec& spec, double lhs_measure, const TermSet& terms,
                                      const NumericPolicy& pol = default_policy()) {
  PolygamyReport r;
  r.id = spec.id;
  r.exponent = spec.exponent;
  r.direction = spec.direction;
  r.tol = pol.slack_tol;
  r.lhs_measure = lhs_measure;
  r.lhs = measure_power(lhs_measure, spec.exponent, pol);
  if (spec.sort_descending) {
    r.permutation = descending_order(terms.values);
  } else {
    r.permutation.resize(terms.values.size());
    std::iota(r.permutation.begin(), r.permutation.end(), 0);
  }
  for (std::size_t pos = 0; pos < r.permutation.size(); ++pos) {
    const int src = r.permutation[pos];
    PolygamyTerm t{terms.labels[src], terms.values[src], spec.weight(pos),
                   src < static_cast<int>(terms.tentative.size()) && terms.tentative[src]};
    r.rhs += t.weight * measure_power(t.value, spec.exponent, pol);
    r.terms.push_back(std::move(t));
  }
  r.slack = spec.direction == Direction::upper ? r.rhs - r.lhs : r.lhs - r.rhs;
  r.holds = r.slack >= -pol.slack_tol;
  r.tentative = terms.any_tentative();
  r.mode_flags = terms.modes;
  return r;
}

inline std::vector<double> ordered_values(const PolygamyReport& r) {
  std::vector<double> v;
  for (const auto& t : r.terms) v.push_back(t.value);
  return v;
}

// ---------------------------------------------------------------------------
// Term evaluation

inline std::string party_label(int index) { return std::string(1, static_cast<char>('A' + index)); }

/// Two-party reduced state with the focus as first factor.
inline DensityMatrix pair_state(const PureState& psi, int focus, int partner) {
  const DensityMatrix sorted = reduced_state(psi, {focus, partner});
  if (focus < partner) return sorted;
  const int d0 = sorted.dims()[0], d1 = sorted.dims()[1];
  Matrix swapped(sorted.dim(), sorted.dim());
  for (int a = 0; a < d0; ++a)
    for (int b = 0; b < d1; ++b)
      for (int c = 0; c < d0; ++c)
        for (int d = 0; d < d1; ++d) swapped(b * d0 + a, d * d0 + c) = sorted.mat()(a * d1 + b, c * d1 + d);
  return DensityMatrix(std::move(swapped), Dims{d1, d0});
}

enum class PairMeasure { tau_a, ca_two_qubit, wootters };

inline TermSet pair_terms(const PureState& psi, const PartitionSpec& part, PairMeasure which,
                          const NumericPolicy& pol = default_policy()) {
  TermSet ts;
  for (int b : part.partners) {
    const DensityMatrix rho = pair_state(psi, part.focus, b);
    double v = 0.0;
    std::string mode;
    switch (which) {
      case PairMeasure::tau_a: v = tau_a(rho, pol).value; mode = "block-sum"; break;
      case PairMeasure::ca_two_qubit: v = ca_two_qubit(rho, pol).value; mode = "exact-closed-form"; break;
      case PairMeasure::wootters: v = wootters_concurrence(rho, pol); mode = "exact-closed-form"; break;
    }
    ts.labels.push_back(party_label(part.focus) + party_label(b));
    ts.values.push_back(v);
    ts.tentative.push_back(false);
    ts.modes.push_back(ts.labels.back() + ":" + mode);
  }
  return ts;
}

/// Sources for pairwise entanglement of assistance.
struct AssistanceOptions {
  OptimizerSettings optimizer{};
  std::vector<std::optional<double>> overrides;  // by partner position; exact values to inject
  bool escalate = true;                          // rerun with restarts x4 once on a tentative violation
};

inline TermSet assistance_terms(const PureState& psi, const PartitionSpec& part, const AssistanceOptions& opt,
                                const NumericPolicy& pol = default_policy()) {
  TermSet ts;
  for (std::size_t pos = 0; pos < part.partners.size(); ++pos) {
    const int b = part.partners[pos];
    ts.labels.push_back(party_label(part.focus) + party_label(b));
    if (pos < opt.overrides.size() && opt.overrides[pos]) {
      ts.values.push_back(*opt.overrides[pos]);
      ts.tentative.push_back(false);
      ts.modes.push_back(ts.labels.back() + ":exact-closed-form");
      continue;
    }
    const DensityMatrix rho = pair_state(psi, part.focus, b);
    const AssistanceResult res = maximize_assistance(rho, AssistanceObjective::entropy(), opt.optimizer, pol);
    const bool pure = res.best.members.size() == 1;
    ts.values.push_back(res.value);
    ts.tentative.push_back(!pure);
    ts.modes.push_back(ts.labels.back() + (pure ? ":exact-closed-form" : ":optimizer-lower-bound"));
  }
  return ts;
}

namespace detail {

inline void require_pure_cover(const PureState& psi, const PartitionSpec& part) {
  part.validate(psi.num_subsystems());
  if (!part.covers(psi.num_subsystems())) {
    throw std::invalid_argument("partners must cover every subsystem other than the focus");
  }
}

inline void require_range(double v, double hi, const char* name) {
  if (!(v >= 0.0 && v <= hi)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, " + std::to_string(hi) + "]");
  }
}

inline void require_qubits(const PureState& psi) {
  for (int d : psi.dims()) {
    if (d != 2) throw std::invalid_argument("this inequality is stated for qubit systems only");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weighted bounds from precomputed terms. Used by the checkers below and by
// callers comparing several bounds on identical term values.

inline PolygamyReport theorem1_from_terms(double lhs_measure, const TermSet& terms, double alpha,
                                          const NumericPolicy& pol = default_policy()) {
  detail::require_range(alpha, 2.0, "alpha");
  return assemble_report({Inequality::theorem1, alpha, hamming_rule(alpha / 2.0)}, lhs_measure, terms, pol);
}

inline PolygamyReport theorem2_from_terms(double lhs_measure, const TermSet& terms, double alpha,
                                          bool sort_first = false, const NumericPolicy& pol = default_policy()) {
  detail::require_range(alpha, 2.0, "alpha");
  auto r = assemble_report({Inequality::theorem2, alpha, linear_rule(alpha / 2.0), sort_first}, lhs_measure,
                           terms, pol);
  r.condition_status = squared_tail_condition(ordered_values(r), pol.slack_tol);
  return r;
}

inline PolygamyReport corollary1_from_terms(double lhs_measure, const TermSet& terms, double alpha,
                                            const NumericPolicy& pol = default_policy()) {
  detail::require_range(alpha, 2.0, "alpha");
  return assemble_report({Inequality::corollary1, alpha, unit_rule()}, lhs_measure, terms, pol);
}

inline PolygamyReport theorem3_from_terms(double lhs_measure, const TermSet& terms, double beta,
                                          const NumericPolicy& pol = default_policy()) {
  detail::require_range(beta, 1.0, "beta");
  return assemble_report({Inequality::theorem3, beta, hamming_rule(beta)}, lhs_measure, terms, pol);
}

inline PolygamyReport theorem4_from_terms(double lhs_measure, const TermSet& terms, double beta,
                                          bool sort_first = false, const NumericPolicy& pol = default_policy()) {
  detail::require_range(beta, 1.0, "beta");
  auto r = assemble_report({Inequality::theorem4, beta, linear_rule(beta), sort_first}, lhs_measure, terms, pol);
  r.condition_status = squared_tail_condition(ordered_values(r), pol.slack_tol);
  return r;
}

inline PolygamyReport eq19_from_terms(double lhs_measure, const TermSet& terms, double beta,
                                      const NumericPolicy& pol = default_policy()) {
  detail::require_range(beta, 1.0, "beta");
  return assemble_report({Inequality::eq19_prior, beta, prior_rule(beta)}, lhs_measure, terms, pol);
}

inline PolygamyReport corollary2_from_terms(double lhs_measure, const TermSet& terms, double beta,
                                            const NumericPolicy& pol = default_policy()) {
  detail::require_range(beta, 1.0, "beta");
  return assemble_report({Inequality::corollary2, beta, unit_rule()}, lhs_measure, terms, pol);
}

// ---------------------------------------------------------------------------
// Checkers on pure global states

struct CheckOptions {
  GlobalCutMode lhs_mode = GlobalCutMode::pure_concurrence;
  bool sort_for_condition = false;  // Theorems 2/4: evaluate condition and weights after sorting
  AssistanceOptions assistance{};
};

namespace detail {

inline PolygamyReport with_lhs_flag(PolygamyReport r, const std::string& flag) {
  r.mode_flags.insert(r.mode_flags.begin(), flag);
  return r;
}

inline PolygamyReport tau_family(const PureState& psi, const PartitionSpec& part, double alpha,
                                 const CheckOptions& opt, const NumericPolicy& pol,
                                 PolygamyReport (*build)(double, const TermSet&, double, const NumericPolicy&)) {
  require_pure_cover(psi, part);
  require_range(alpha, 2.0, "alpha");
  const double lhs = tau_a_global(psi, part.focus, opt.lhs_mode, pol).value;
  const TermSet terms = pair_terms(psi, part, PairMeasure::tau_a, pol);
  return with_lhs_flag(build(lhs, terms, alpha, pol), std::string("lhs:") + to_string(opt.lhs_mode));
}

// Evaluates an E_a-based bound; a violation with optimizer-backed terms is
// retried once with four times the restarts before it is reported.
template <typename Build>
PolygamyReport assistance_family(const PureState& psi, const PartitionSpec& part, double beta,
                                 const AssistanceOptions& opt, const NumericPolicy& pol, Build&& build) {
  require_pure_cover(psi, part);
  require_range(beta, 1.0, "beta");
  const double lhs = entanglement_pure(psi, part.focus, pol);
  PolygamyReport r = build(lhs, assistance_terms(psi, part, opt, pol));
  if (!r.holds && r.tentative && opt.escalate) {
    AssistanceOptions more = opt;
    more.optimizer.restarts *= 4;
    r = build(lhs, assistance_terms(psi, part, more, pol));
    r.escalated = true;
  }
  return with_lhs_flag(std::move(r), "lhs:entropy-exact");
}

}  // namespace detail

inline PolygamyReport check_theorem1(const PureState& psi, const PartitionSpec& part, double alpha,
                                     const CheckOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  return detail::tau_family(psi, part, alpha, opt, pol, &theorem1_from_terms);
}

inline PolygamyReport check_corollary1(const PureState& psi, const PartitionSpec& part, double alpha,
                                       const CheckOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  return detail::tau_family(psi, part, alpha, opt, pol, &corollary1_from_terms);
}

inline PolygamyReport check_theorem2(const PureState& psi, const PartitionSpec& part, double alpha,
                                     const CheckOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  detail::require_pure_cover(psi, part);
  detail::require_range(alpha, 2.0, "alpha");
  const double lhs = tau_a_global(psi, part.focus, opt.lhs_mode, pol).value;
  const TermSet terms = pair_terms(psi, part, PairMeasure::tau_a, pol);
  return detail::with_lhs_flag(theorem2_from_terms(lhs, terms, alpha, opt.sort_for_condition, pol),
                               std::string("lhs:") + to_string(opt.lhs_mode));
}

inline PolygamyReport check_theorem3(const PureState& psi, const PartitionSpec& part, double beta,
                                     const AssistanceOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  return detail::assistance_family(psi, part, beta, opt, pol, [&](double lhs, const TermSet& t) {
    return theorem3_from_terms(lhs, t, beta, pol);
  });
}

inline PolygamyReport check_theorem4(const PureState& psi, const PartitionSpec& part, double beta,
                                     const AssistanceOptions& opt = {}, bool sort_first = false,
                                     const NumericPolicy& pol = default_policy()) {
  return detail::assistance_family(psi, part, beta, opt, pol, [&](double lhs, const TermSet& t) {
    return theorem4_from_terms(lhs, t, beta, sort_first, pol);
  });
}

inline PolygamyReport check_eq19_prior(const PureState& psi, const PartitionSpec& part, double beta,
                                       const AssistanceOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  return detail::assistance_family(psi, part, beta, opt, pol, [&](double lhs, const TermSet& t) {
    return eq19_from_terms(lhs, t, beta, pol);
  });
}

inline PolygamyReport check_corollary2(const PureState& psi, const PartitionSpec& part, double beta,
                                       const AssistanceOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  return detail::assistance_family(psi, part, beta, opt, pol, [&](double lhs, const TermSet& t) {
    return corollary2_from_terms(lhs, t, beta, pol);
  });
}

enum class Baseline { ckw_eq1, dual_ca_eq2, tau_sq_eq4, ea_eq18 };

/// The unweighted inequalities the weighted bounds refine.
inline PolygamyReport check_baseline(const PureState& psi, const PartitionSpec& part, Baseline which,
                                     const CheckOptions& opt = {}, const NumericPolicy& pol = default_policy()) {
  detail::require_pure_cover(psi, part);
  switch (which) {
    case Baseline::ckw_eq1: {
      detail::require_qubits(psi);
      const double lhs = concurrence_pure(psi, part.focus, pol).value;
      return detail::with_lhs_flag(
          assemble_report({Inequality::ckw_eq1, 2.0, unit_rule(), true, Direction::lower}, lhs,
                          pair_terms(psi, part, PairMeasure::wootters, pol), pol),
          "lhs:pure-concurrence");
    }
    case Baseline::dual_ca_eq2: {
      detail::require_qubits(psi);
      const double lhs = concurrence_pure(psi, part.focus, pol).value;
      return detail::with_lhs_flag(assemble_report({Inequality::dual_ca_eq2, 2.0, unit_rule()}, lhs,
                                                   pair_terms(psi, part, PairMeasure::ca_two_qubit, pol), pol),
                                   "lhs:pure-concurrence");
    }
    case Baseline::tau_sq_eq4: {
      const double lhs = tau_a_global(psi, part.focus, opt.lhs_mode, pol).value;
      return detail::with_lhs_flag(assemble_report({Inequality::tau_sq_eq4, 2.0, unit_rule()}, lhs,
                                                   pair_terms(psi, part, PairMeasure::tau_a, pol), pol),
                                   std::string("lhs:") + to_string(opt.lhs_mode));
    }
    case Baseline::ea_eq18:
      return detail::assistance_family(psi, part, 1.0, opt.assistance, pol, [&](double lhs, const TermSet& t) {
        return assemble_report({Inequality::ea_eq18, 1.0, unit_rule()}, lhs, t, pol);
      });
  }
  throw std::invalid_argument("unknown baseline");
}

/// Generic dispatch used by the CLI and campaigns. `exponent` is alpha for the
/// tau_a family and beta for the E_a family; fixed-exponent baselines ignore it.
inline PolygamyReport check_inequality(const PureState& psi, const PartitionSpec& part, Inequality id,
                                       double exponent, const CheckOptions& opt = {},
                                       const NumericPolicy& pol = default_policy()) {
  switch (id) {
    case Inequality::theorem1: return check_theorem1(psi, part, exponent, opt, pol);
    case Inequality::theorem2: return check_theorem2(psi, part, exponent, opt, pol);
    case Inequality::corollary1: return check_corollary1(psi, part, exponent, opt, pol);
    case Inequality::theorem3: return check_theorem3(psi, part, exponent, opt.assistance, pol);
    case Inequality::theorem4: return check_theorem4(psi, part, exponent, opt.assistance, opt.sort_for_condition, pol);
    case Inequality::eq19_prior: return check_eq19_prior(psi, part, exponent, opt.assistance, pol);
    case Inequality::corollary2: return check_corollary2(psi, part, exponent, opt.assistance, pol);
    case Inequality::ckw_eq1: return check_baseline(psi, part, Baseline::ckw_eq1, opt, pol);
    case Inequality::dual_ca_eq2: return check_baseline(psi, part, Baseline::dual_ca_eq2, opt, pol);
    case Inequality::tau_sq_eq4: return check_baseline(psi, part, Baseline::tau_sq_eq4, opt, pol);
    case Inequality::ea_eq18: return check_baseline(psi, part, Baseline::ea_eq18, opt, pol);
  }
  throw std::invalid_argument("unknown inequality");
}

inline bool uses_exponent(Inequality id) {
  switch (id) {
    case Inequality::ckw_eq1:
    case Inequality::dual_ca_eq2:
    case Inequality::tau_sq_eq4:
    case Inequality::ea_eq18: return false;
    default: return true;
  }
}

inline double max_exponent(Inequality id) {
  switch (id) {
    case Inequality::theorem1:
    case Inequality::theorem2:
    case Inequality::corollary1: return 2.0;
    default: return 1.0;
  }
}

// ---------------------------------------------------------------------------
// Product padding

struct PaddingCheck {
  bool invariant = true;
  double block_sum_before = 0.0, block_sum_after = 0.0;
  double concurrence_before = 0.0, concurrence_after = 0.0;
  std::vector<double> new_terms;        // tau_a(rho_{A,new}) for each appended subsystem
  double max_existing_term_shift = 0.0; // |tau_a(sigma_ABj) - tau_a(rho_ABj)| over old partners
};

/// Appends |0...0> on `extra_dims` as new partners and compares the global-cut
/// measure (both modes) and the pairwise terms against the unpadded state.
inline PaddingCheck padding_invariance_test(const PureState& psi, const PartitionSpec& part, const Dims& extra_dims,
                                            double tol = 1e-9, const NumericPolicy& pol = default_policy()) {
  detail::require_pure_cover(psi, part);
  const PureState padded = kron(psi, product_zero(extra_dims));
  PartitionSpec padded_part = part;
  for (std::size_t i = 0; i < extra_dims.size(); ++i) {
    padded_part.partners.push_back(psi.num_subsystems() + static_cast<int>(i));
  }
  PaddingCheck out;
  out.block_sum_before = tau_a_global(psi, part.focus, GlobalCutMode::block_sum, pol).value;
  out.block_sum_after = tau_a_global(padded, part.focus, GlobalCutMode::block_sum, pol).value;
  out.concurrence_before = tau_a_global(psi, part.focus, GlobalCutMode::pure_concurrence, pol).value;
  out.concurrence_after = tau_a_global(padded, part.focus, GlobalCutMode::pure_concurrence, pol).value;
  const TermSet before = pair_terms(psi, part, PairMeasure::tau_a, pol);
  const TermSet after = pair_terms(padded, padded_part, PairMeasure::tau_a, pol);
  for (std::size_t i = 0; i < before.values.size(); ++i) {
    out.max_existing_term_shift = std::max(out.max_existing_term_shift, std::abs(after.values[i] - before.values[i]));
  }
  out.new_terms.assign(after.values.begin() + static_cast<std::ptrdiff_t>(before.values.size()), after.values.end());
  out.invariant = std::abs(out.block_sum_after - out.block_sum_before) <= tol &&
                  std::abs(out.concurrence_after - out.concurrence_before) <= tol &&
                  out.max_existing_term_shift <= tol &&
                  std::all_of(out.new_terms.begin(), out.new_terms.end(), [&](double v) { return v < tol; });
  return out;
}

}  // namespace polyent
