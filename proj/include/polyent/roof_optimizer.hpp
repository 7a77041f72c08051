#pragma once

// Maximization of the average of a pure-state quantity over all ensemble
// decompositions of a bipartite density matrix. Every decomposition with M
// members is W = E diag(sqrt(mu)) V^T for an M x r isometry V acting on the
// eigen-ensemble {mu_j, e_j}; the search moves through isometries with
// two-member unitary mixings.

#include <polyent/linalg.hpp>
#include <polyent/measures.hpp>
#include <polyent/parallel.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

namespace polyent {

struct EnsembleDecomposition {
  std::vector<double> probs;
  std::vector<PureState> members;

  Matrix reconstruct() const {
    Matrix out = Matrix::Zero(members.front().dim(), members.front().dim());
    for (std::size_t i = 0; i < members.size(); ++i) {
      out += probs[i] * members[i].amps() * members[i].amps().adjoint();
    }
    return out;
  }

  double residual(const DensityMatrix& target) const { return (reconstruct() - target.mat()).norm(); }
};

/// The pure-state quantity averaged over a decomposition.
class AssistanceObjective {
 public:
  enum class Kind { entropy_of_marginal, concurrence, subspace_block };

  static AssistanceObjective entropy() { return AssistanceObjective(Kind::entropy_of_marginal); }
  static AssistanceObjective concurrence() { return AssistanceObjective(Kind::concurrence); }
  static AssistanceObjective block(const SubspacePairOps& op) {
    AssistanceObjective o(Kind::subspace_block);
    o.generator_ = op.generator();
    return o;
  }

  Kind kind() const { return kind_; }

  /// p * f(w / sqrt(p)) with p = |w|^2, for an unnormalized member vector w
  /// over (d_a, d_b). Hot path of the optimizer.
  double weighted(const Vector& w, int d_a, int d_b) const {
    const double p = w.squaredNorm();
    if (p < 1e-300) return 0.0;
    if (kind_ == Kind::subspace_block) return bilinear_abs(w);
    using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> m(w.data(), d_a, d_b);
    const Matrix g = d_a <= d_b ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
    if (kind_ == Kind::concurrence) {
      const double tr2 = (g * g).trace().real();
      return std::sqrt(std::max(0.0, 2.0 * (p * p - tr2)));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    return p * entropy_of_spectrum(es.eigenvalues() / p);
  }

  /// f on a normalized bipartite state, evaluated through the measures module.
  double of_state(const PureState& psi) const {
    switch (kind_) {
      case Kind::entropy_of_marginal: return entanglement_pure(psi, 0);
      case Kind::concurrence: return concurrence_pure(psi, 0).value;
      case Kind::subspace_block: return bilinear_abs(psi.amps());
    }
    return 0.0;
  }

 private:
  explicit AssistanceObjective(Kind k) : kind_(k) {}

  // |w^T S w| = |<w|S|w^*>|
  double bilinear_abs(const Vector& w) const { return std::abs(w.conjugate().dot(generator_ * w)); }

  Kind kind_;
  Matrix generator_;
};

struct OptimizerSettings {
  int ensemble_size = 0;  // 0 selects 2 * rank
  int restarts = 16;
  int max_iters = 200;    // sweeps per restart
  double step_tolerance = 1e-7;
  std::uint64_t seed = 0;
  int threads = 0;        // 0 defers to POLYENT_THREADS / hardware
};

struct AssistanceResult {
  double value = 0.0;
  EnsembleDecomposition best;
  bool converged = true;       // false: some restart hit max_iters (best-so-far returned)
  int restarts = 0;
  std::vector<double> running_best;  // max over restarts [0..k], nondecreasing
};

namespace detail {

struct EigenEnsemble {
  Matrix base;  // D x r, columns sqrt(mu_j) e_j
  int rank = 0;
};

inline EigenEnsemble eigen_ensemble(const DensityMatrix& rho, const NumericPolicy& pol) {
  const EigenSystem es = herm_eig(rho.mat(), pol);
  const int r = std::max(1, numerical_rank(es.values, pol));
  Matrix base(rho.dim(), r);
  for (int j = 0; j < r; ++j) base.col(j) = std::sqrt(std::max(es.values(j), 0.0)) * es.vectors.col(j);
  return {std::move(base), r};
}

inline EnsembleDecomposition decomposition_from_columns(const Matrix& w, const Dims& dims) {
  EnsembleDecomposition out;
  Eigen::Index fallback = 0;
  w.colwise().squaredNorm().maxCoeff(&fallback);
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const double p = w.col(i).squaredNorm();
    out.probs.push_back(p);
    const Vector& v = p > 1e-300 ? Vector(w.col(i)) : Vector(w.col(fallback));
    out.members.push_back(PureState::normalized(v, dims));
  }
  return out;
}

template <typename F>
double golden_max(F&& f, double lo, double hi, double& arg, int iters = 40) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters && b - a > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a); f1 = f(x1);
    }
  }
  if (f1 >= f2) { arg = x1; return f1; }
  arg = x2;
  return f2;
}

struct RestartOutcome {
  double value = 0.0;
  Matrix w;
  bool converged = false;
};

inline RestartOutcome optimize_restart(const Matrix& start, const AssistanceObjective& obj, int d_a, int d_b,
                                       const OptimizerSettings& s) {
  RestartOutcome out{0.0, start, false};
  Matrix& w = out.w;
  const int m = static_cast<int>(w.cols());
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) g[i] = obj.weighted(w.col(i), d_a, d_b);
  double total = std::accumulate(g.begin(), g.end(), 0.0);

  auto mixed = [&](int i, int k, double theta, double phi, Vector& wi, Vector& wk) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    wi = c * w.col(i) + sn * e * w.col(k);
    wk = -sn * std::conj(e) * w.col(i) + c * w.col(k);
  };
  Vector wi, wk;
  auto pair_value = [&](int i, int k, double theta, double phi) {
    mixed(i, k, theta, phi, wi, wk);
    return obj.weighted(wi, d_a, d_b) + obj.weighted(wk, d_a, d_b);
  };

  constexpr double pi = std::numbers::pi;
  constexpr int coarse = 8;
  for (int sweep = 0; sweep < s.max_iters; ++sweep) {
    const double before = total;
    for (int i = 0; i < m; ++i) {
      for (int k = i + 1; k < m; ++k) {
        const double current = g[i] + g[k];
        double best = current, bt = 0.0, bp = 0.0;
        for (int a = 0; a < coarse; ++a) {
          for (int b = 0; b < coarse; ++b) {
            const double t = pi * a / coarse, p = 2.0 * pi * b / coarse;
            const double v = pair_value(i, k, t, p);
            if (v > best) { best = v; bt = t; bp = p; }
          }
        }
        for (int round = 0; round < 2; ++round) {
          double t = bt, p = bp;
          const double vt = golden_max([&](double x) { return pair_value(i, k, x, bp); },
                                       bt - pi / coarse, bt + pi / coarse, t);
          if (vt > best) { best = vt; bt = t; }
          const double vp = golden_max([&](double x) { return pair_value(i, k, bt, x); },
                                       bp - pi / coarse, bp + pi / coarse, p);
          if (vp > best) { best = vp; bp = p; }
        }
        if (best > current) {
          mixed(i, k, bt, bp, wi, wk);
          w.col(i) = wi;
          w.col(k) = wk;
          g[i] = obj.weighted(w.col(i), d_a, d_b);
          g[k] = obj.weighted(w.col(k), d_a, d_b);
        }
      }
    }
    total = std::accumulate(g.begin(), g.end(), 0.0);
    if (total - before < s.step_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.value = total;
  return out;
}

}  // namespace detail

/// Members sqrt(p_i)|psi_i> = sum_j v_ij sqrt(mu_j)|e_j> for an M x r isometry v.
inline EnsembleDecomposition decomposition_from_isometry(const DensityMatrix& rho, const Matrix& v,
                                                         const NumericPolicy& pol = default_policy()) {
  const auto ens = detail::eigen_ensemble(rho, pol);
  if (v.cols() != ens.rank) {
    throw std::invalid_argument("isometry needs rank(rho) = " + std::to_string(ens.rank) + " columns");
  }
  const Matrix gram = v.adjoint() * v;
  if ((gram - Matrix::Identity(ens.rank, ens.rank)).cwiseAbs().maxCoeff() > pol.isometry_tol) {
    throw std::invalid_argument("matrix columns are not orthonormal");
  }
  return detail::decomposition_from_columns(ens.base * v.transpose(), rho.dims());
}

/// Largest average of `objective` found over decompositions: a lower bound on
/// the assistance quantity.
inline AssistanceResult maximize_assistance(const DensityMatrix& rho, const AssistanceObjective& objective,
                                            const OptimizerSettings& settings = {},
                                            const NumericPolicy& pol = default_policy()) {
  if (rho.num_subsystems() != 2) throw std::invalid_argument("maximize_assistance needs a bipartite state");
  if (settings.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const int d_a = rho.dims()[0], d_b = rho.dims()[1];
  const auto ens = detail::eigen_ensemble(rho, pol);
  const int r = ens.rank;

  AssistanceResult out;
  if (r == 1) {
    const PureState psi = PureState::normalized(Vector(ens.base.col(0)), rho.dims());
    out.value = objective.of_state(psi);
    out.best = {{1.0}, {psi}};
    out.restarts = 1;
    out.running_best = {out.value};
    return out;
  }
  const int m = settings.ensemble_size == 0 ? 2 * r : settings.ensemble_size;
  if (m < r) throw std::invalid_argument("ensemble size must be >= rank(rho)");

  std::vector<detail::RestartOutcome> outcomes(settings.restarts);
  parallel_for(settings.restarts, settings.threads, [&](int k) {
    Matrix v = Matrix::Zero(m, r);
    if (k == 0) {
      v.topRows(r) = Matrix::Identity(r, r);
    } else {
      Rng rng(derive_seed(settings.seed, static_cast<std::uint64_t>(k)));
      v = haar_unitary(m, rng).leftCols(r);
    }
    outcomes[k] = detail::optimize_restart(ens.base * v.transpose(), objective, d_a, d_b, settings);
  });

  int best = 0;
  for (int k = 0; k < settings.restarts; ++k) {
    if (outcomes[k].value > outcomes[best].value) best = k;
    out.running_best.push_back(outcomes[best].value);
    out.converged = out.converged && outcomes[k].converged;
  }
  out.value = outcomes[best].value;
  out.best = detail::decomposition_from_columns(outcomes[best].w, rho.dims());
  out.restarts = settings.restarts;
  return out;
}

/// min(S(rho_A), S(rho_B)): no decomposition averages above this.
inline double assistance_entropy_cap(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  if (rho.num_subsystems() != 2) throw std::invalid_argument("entropy cap needs a bipartite state");
  return std::min(von_neumann_entropy(partial_trace(rho, {0}), pol),
                  von_neumann_entropy(partial_trace(rho, {1}), pol));
}

}  // namespace polyent
