#pragma once

#include <polyent/linalg.hpp>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace polyent {

enum class MeasureMode { exact_closed_form, block_sum, optimizer_lower_bound };

inline const char* to_string(MeasureMode m) {
  switch (m) {
    case MeasureMode::exact_closed_form: return "exact-closed-form";
    case MeasureMode::block_sum: return "block-sum";
    case MeasureMode::optimizer_lower_bound: return "optimizer-lower-bound";
  }
  return "?";
}

struct MeasureResult {
  double value = 0.0;
  MeasureMode mode = MeasureMode::exact_closed_form;
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// How the A|rest quantity of a pure global state is evaluated.
///   block_sum        - literal sum over local 2x2 subspace pairs
///   pure_concurrence - C_a = C on pure states, sqrt(2(1 - Tr rho_A^2))
enum class GlobalCutMode { block_sum, pure_concurrence };

inline const char* to_string(GlobalCutMode m) {
  return m == GlobalCutMode::block_sum ? "block-sum" : "pure-concurrence";
}

/// Local antisymmetric generators on the subspace pair span{|i>,|j>} x span{|k>,|l>}.
struct SubspacePairOps {
  std::pair<int, int> a_pair;
  std::pair<int, int> b_pair;
  Eigen::MatrixXd l_a;
  Eigen::MatrixXd l_b;

  Matrix generator() const { return kron(l_a.cast<cplx>(), l_b.cast<cplx>()); }

  std::string label() const {
    return "(" + std::to_string(a_pair.first) + "," + std::to_string(a_pair.second) + "|" +
           std::to_string(b_pair.first) + "," + std::to_string(b_pair.second) + ")";
  }
};

inline Eigen::MatrixXd antisymmetric_generator(int d, int i, int j) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d, d);
  l(i, j) = -1.0;
  l(j, i) = 1.0;
  return l;
}

/// All d_a(d_a-1)/2 * d_b(d_b-1)/2 generator pairs, A pairs outermost, each
/// side in lexicographic (i<j) order.
inline std::vector<SubspacePairOps> build_subspace_ops(int d_a, int d_b) {
  if (d_a < 2 || d_b < 2) throw std::invalid_argument("subspace ops need local dimensions >= 2");
  std::vector<SubspacePairOps> ops;
  ops.reserve(static_cast<std::size_t>(d_a * (d_a - 1) / 2) * (d_b * (d_b - 1) / 2));
  for (int i = 0; i < d_a; ++i) {
    for (int j = i + 1; j < d_a; ++j) {
      for (int k = 0; k < d_b; ++k) {
        for (int l = k + 1; l < d_b; ++l) {
          ops.push_back({{i, j}, {k, l}, antisymmetric_generator(d_a, i, j),
                         antisymmetric_generator(d_b, k, l)});
        }
      }
    }
  }
  return ops;
}

inline double entropy_of_spectrum(const RealVector& spectrum, const NumericPolicy& pol = default_policy()) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l > pol.eig_clamp) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

/// Base-2 von Neumann entropy.
inline double von_neumann_entropy(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  return entropy_of_spectrum(herm_eig(rho.mat(), pol).values, pol);
}

/// Entropy of entanglement of the focus subsystem against everything else.
inline double entanglement_pure(const PureState& psi, int focus, const NumericPolicy& pol = default_policy()) {
  const DensityMatrix rho_a = reduced_state(psi, {focus});
  const double s = von_neumann_entropy(rho_a, pol);
  const int d = std::min(rho_a.dim(), psi.dim() / rho_a.dim());
  if (s > std::log2(static_cast<double>(d)) + pol.agreement_tol) {
    throw NumericError("entropy exceeds log2 of the smaller cut dimension");
  }
  return s;
}

/// Pure-state concurrence of focus|rest, cross-checked against the 2x2 minor
/// (determinant) form.
inline MeasureResult concurrence_pure(const PureState& psi, int focus,
                                      const NumericPolicy& pol = default_policy()) {
  const Matrix m = bipartite_amplitudes(psi, {focus});
  const Matrix rho_a = m * m.adjoint();
  const double purity = (rho_a * rho_a).trace().real();
  const double c2_trace = std::max(0.0, 2.0 * (1.0 - purity));

  double minors = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        for (Eigen::Index l = k + 1; l < m.cols(); ++l) {
          minors += std::norm(m(i, k) * m(j, l) - m(i, l) * m(j, k));
        }
      }
    }
  }
  const double c2_minors = 4.0 * minors;
  if (std::abs(c2_trace - c2_minors) > pol.agreement_tol) {
    throw NumericError("concurrence forms disagree: " + std::to_string(c2_trace) + " vs " +
                       std::to_string(c2_minors));
  }
  const double value = std::sqrt(c2_trace);
  const double d = static_cast<double>(std::min(m.rows(), m.cols()));
  if (value > std::sqrt(2.0 * (d - 1.0) / d) + pol.agreement_tol) {
    throw NumericError("concurrence exceeds its maximum for the cut dimension");
  }
  return {value, MeasureMode::exact_closed_form,
          {{"purity", purity}, {"c2_trace_form", c2_trace}, {"c2_minor_form", c2_minors}}};
}

inline MeasureResult concurrence_pure(const PureState& psi, const PartitionSpec& cut,
                                      const NumericPolicy& pol = default_policy()) {
  cut.validate(psi.num_subsystems());
  return concurrence_pure(psi, cut.focus, pol);
}

namespace detail {

inline void require_bipartite(const DensityMatrix& rho) {
  if (rho.num_subsystems() != 2) throw std::invalid_argument("expected a bipartite density matrix");
}

// sqrt of the spectrum of sqrt(rho) S rho^* S^T sqrt(rho), descending. Same
// spectrum as rho * rho~ but Hermitian, so it is real and nonnegative.
inline RealVector assistance_roots(const Matrix& sqrt_rho, const Matrix& rho, const Matrix& s,
                                   const NumericPolicy& pol) {
  const Matrix flipped = s * rho.conjugate() * s.adjoint();
  Matrix r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
  RealVector mu = es.eigenvalues().reverse();
  return mu.unaryExpr([&](double x) { return x < pol.eig_clamp ? 0.0 : std::sqrt(x); });
}

}  // namespace detail

/// Assistance of one subspace block: sum_i sqrt(mu_i), mu the spectrum of
/// rho * (L_A (x) L_B) rho^* (L_A (x) L_B)^T.
inline double ca_block(const DensityMatrix& rho, const SubspacePairOps& op,
                       const NumericPolicy& pol = default_policy()) {
  detail::require_bipartite(rho);
  if (rho.dims()[0] != op.l_a.rows() || rho.dims()[1] != op.l_b.rows()) {
    throw std::invalid_argument("subspace ops do not match the state dimensions");
  }
  return detail::assistance_roots(psd_sqrt(rho.mat(), pol), rho.mat(), op.generator(), pol).sum();
}

/// Two-qubit concurrence of assistance (closed form). Accepts unnormalized blocks.
inline MeasureResult ca_two_qubit(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  if (rho.dims() != Dims{2, 2}) throw std::invalid_argument("ca_two_qubit needs dims (2,2)");
  const auto op = build_subspace_ops(2, 2).front();
  const RealVector roots = detail::assistance_roots(psd_sqrt(rho.mat(), pol), rho.mat(), op.generator(), pol);
  MeasureResult out{roots.sum(), MeasureMode::exact_closed_form, {}};
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    out.diagnostics.emplace_back("sqrt_mu_" + std::to_string(i), roots(i));
  }
  return out;
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.
inline double wootters_concurrence(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  if (rho.dims() != Dims{2, 2}) throw std::invalid_argument("wootters_concurrence needs dims (2,2)");
  const auto op = build_subspace_ops(2, 2).front();
  const RealVector l = detail::assistance_roots(psd_sqrt(rho.mat(), pol), rho.mat(), op.generator(), pol);
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

/// Block-sum bound: sum of ca_block over every subspace pair.
inline MeasureResult tau_a(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  detail::require_bipartite(rho);
  const auto ops = build_subspace_ops(rho.dims()[0], rho.dims()[1]);
  const Matrix sqrt_rho = psd_sqrt(rho.mat(), pol);
  MeasureResult out{0.0, MeasureMode::block_sum, {}};
  for (const auto& op : ops) {
    const double v = detail::assistance_roots(sqrt_rho, rho.mat(), op.generator(), pol).sum();
    out.value += v;
    out.diagnostics.emplace_back("block" + op.label(), v);
  }
  return out;
}

/// |<phi|(L_A (x) L_B)|phi^*>| for every block of the focus|rest cut of a pure
/// state, i.e. 2|a_ik a_jl - a_il a_jk|.
inline std::vector<double> pure_block_terms(const PureState& psi, int focus) {
  const Matrix m = bipartite_amplitudes(psi, {focus});
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        for (Eigen::Index l = k + 1; l < m.cols(); ++l) {
          terms.push_back(2.0 * std::abs(m(i, k) * m(j, l) - m(i, l) * m(j, k)));
        }
      }
    }
  }
  return terms;
}

/// The A|rest quantity of a pure global state in the requested mode.
inline MeasureResult tau_a_global(const PureState& psi, int focus, GlobalCutMode mode,
                                  const NumericPolicy& pol = default_policy()) {
  if (mode == GlobalCutMode::pure_concurrence) return concurrence_pure(psi, focus, pol);
  const auto terms = pure_block_terms(psi, focus);
  MeasureResult out{0.0, MeasureMode::block_sum, {}};
  for (double t : terms) out.value += t;
  out.diagnostics.emplace_back("blocks", static_cast<double>(terms.size()));
  return out;
}

}  // namespace polyent
