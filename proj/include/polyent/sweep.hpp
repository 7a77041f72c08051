#pragma once

#include <polyent/polygamy.hpp>
#include <polyent/report_io.hpp>

#include <ostream>

namespace polyent {

/// One row of the beta sweep. Marginals subtract the unpowered E_a(A|rest),
/// i.e. rhs(beta) - E_a, which is the quantity plotted for the W state.
struct SweepRow {
  double beta = 0.0;
  double lhs_ea = 0.0;
  double rhs_th3 = 0.0;
  double rhs_eq19 = 0.0;
  double marginal_th3 = 0.0;
  double marginal_eq19 = 0.0;
};

/// Pairwise terms are evaluated once and reused across the grid.
inline std::vector<SweepRow> sweep_beta(const PureState& psi, const PartitionSpec& part, double from, double to,
                                        int steps, const AssistanceOptions& opt = {},
                                        const NumericPolicy& pol = default_policy()) {
  if (!(from >= 0.0 && from < to && to <= 1.0)) throw std::invalid_argument("sweep needs 0 <= from < to <= 1");
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  detail::require_pure_cover(psi, part);
  const double lhs = entanglement_pure(psi, part.focus, pol);
  const TermSet terms = assistance_terms(psi, part, opt, pol);
  std::vector<SweepRow> rows;
  for (int i = 0; i < steps; ++i) {
    const double beta = i == steps - 1 ? to : from + (to - from) * i / (steps - 1);
    const double th3 = theorem3_from_terms(lhs, terms, beta, pol).rhs;
    const double e19 = eq19_from_terms(lhs, terms, beta, pol).rhs;
    rows.push_back({beta, lhs, th3, e19, th3 - lhs, e19 - lhs});
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "beta,lhs_ea,rhs_th3,rhs_eq19,marginal_th3,marginal_eq19\n";
  for (const auto& r : rows) {
    os << format_number(r.beta) << ',' << format_number(r.lhs_ea) << ',' << format_number(r.rhs_th3) << ','
       << format_number(r.rhs_eq19) << ',' << format_number(r.marginal_th3) << ','
       << format_number(r.marginal_eq19) << '\n';
  }
}

}  // namespace polyent
