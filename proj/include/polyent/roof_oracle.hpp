#pragma once

// Exhaustive grid over two-member decompositions of a rank <= 2 state. Shares
// no code with the optimizer's search: members are built as PureStates and
// scored through the measures module.

#include <polyent/roof_optimizer.hpp>

#include <numbers>

namespace polyent {

/// Up to member phases every two-member decomposition of a rank-2 state comes
/// from the isometry rows (cos t, e^{id} sin t), (-sin t, e^{id} cos t),
/// t in [0, pi/2], d in [0, 2 pi). The grid visits (resolution + 1) x resolution points.
inline double grid_oracle(const DensityMatrix& rho, const AssistanceObjective& objective, int resolution,
                          const NumericPolicy& pol = default_policy()) {
  if (rho.num_subsystems() != 2) throw std::invalid_argument("grid_oracle needs a bipartite state");
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  const EigenSystem es = herm_eig(rho.mat(), pol);
  const int rank = numerical_rank(es.values, pol);
  if (rank > 2) throw std::invalid_argument("grid_oracle supports rank <= 2 only");
  if (rank <= 1) return objective.of_state(PureState::normalized(Vector(es.vectors.col(0)), rho.dims()));

  const Vector e0 = std::sqrt(es.values(0)) * es.vectors.col(0);
  const Vector e1 = std::sqrt(es.values(1)) * es.vectors.col(1);
  auto member_term = [&](const Vector& w) {
    const double p = w.squaredNorm();
    if (p < 1e-300) return 0.0;
    return p * objective.of_state(PureState::normalized(w, rho.dims()));
  };

  double best = 0.0;
  for (int a = 0; a <= resolution; ++a) {
    const double t = 0.5 * std::numbers::pi * a / resolution;
    for (int b = 0; b < resolution; ++b) {
      const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * b / resolution);
      const Vector w0 = std::cos(t) * e0 + phase * std::sin(t) * e1;
      const Vector w1 = -std::sin(t) * e0 + phase * std::cos(t) * e1;
      best = std::max(best, member_term(w0) + member_term(w1));
    }
  }
  return best;
}

}  // namespace polyent
