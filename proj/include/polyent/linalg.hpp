#pragma once

// Dense complex kernel shared by every other header. Subsystem 0 is the most
// significant tensor factor (big-endian, row-major), everywhere.

#include <polyent/numeric_policy.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyent {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

inline int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

inline void validate_dims(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimensions must be positive");
  }
}

/// Unit-norm amplitude vector over a list of subsystem dimensions.
class PureState {
 public:
  PureState(Vector amps, Dims dims, const NumericPolicy& pol = default_policy())
      : amps_(std::move(amps)), dims_(std::move(dims)) {
    validate_dims(dims_);
    if (total_dim(dims_) != amps_.size()) {
      throw std::invalid_argument("amplitude count does not match product of dims");
    }
    if (std::abs(amps_.norm() - 1.0) > pol.norm_tol) {
      throw std::invalid_argument("pure state is not normalized (norm " +
                                  std::to_string(amps_.norm()) + ")");
    }
  }

  /// Rescales to unit norm; a zero vector is rejected.
  static PureState normalized(Vector amps, Dims dims) {
    const double n = amps.norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    amps /= n;
    return PureState(std::move(amps), std::move(dims));
  }

  const Vector& amps() const { return amps_; }
  const Dims& dims() const { return dims_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(amps_.size()); }

 private:
  Vector amps_;
  Dims dims_;
};

/// Hermitian PSD operator with subsystem dimensions. Unit trace unless
/// constructed through `unnormalized`, which admits 0 <= trace <= 1 (projected
/// blocks of a state).
class DensityMatrix {
 public:
  DensityMatrix(Matrix mat, Dims dims, const NumericPolicy& pol = default_policy())
      : DensityMatrix(std::move(mat), std::move(dims), false, pol) {}

  static DensityMatrix unnormalized(Matrix mat, Dims dims,
                                    const NumericPolicy& pol = default_policy()) {
    return DensityMatrix(std::move(mat), std::move(dims), true, pol);
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint(), psi.dims());
  }

  const Matrix& mat() const { return mat_; }
  const Dims& dims() const { return dims_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(mat_.rows()); }
  bool is_unnormalized() const { return unnormalized_; }
  double trace() const { return mat_.trace().real(); }

 private:
  DensityMatrix(Matrix mat, Dims dims, bool unnormalized, const NumericPolicy& pol)
      : mat_(std::move(mat)), dims_(std::move(dims)), unnormalized_(unnormalized) {
    validate_dims(dims_);
    if (mat_.rows() != mat_.cols() || mat_.rows() != total_dim(dims_)) {
      throw std::invalid_argument("density matrix shape does not match dims");
    }
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > pol.hermitian_tol) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    const double tr = mat_.trace().real();
    if (unnormalized_) {
      if (tr > 1.0 + pol.trace_tol) throw std::invalid_argument("block trace exceeds 1");
    } else if (std::abs(tr - 1.0) > pol.trace_tol) {
      throw std::invalid_argument("density matrix trace is not 1 (" + std::to_string(tr) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -pol.psd_tol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }

  Matrix mat_;
  Dims dims_;
  bool unnormalized_ = false;
};

/// Focus subsystem A and the ordered partner list B_0 ... B_{N-1}.
struct PartitionSpec {
  int focus = 0;
  std::vector<int> partners;

  void validate(int num_subsystems) const {
    if (partners.empty()) throw std::invalid_argument("partition needs at least one partner");
    if (focus < 0 || focus >= num_subsystems) throw std::invalid_argument("focus index out of range");
    std::vector<bool> seen(num_subsystems, false);
    seen[focus] = true;
    for (int p : partners) {
      if (p < 0 || p >= num_subsystems) throw std::invalid_argument("partner index out of range");
      if (seen[p]) throw std::invalid_argument("partition indices must be distinct");
      seen[p] = true;
    }
  }

  bool covers(int num_subsystems) const {
    return static_cast<int>(partners.size()) + 1 == num_subsystems;
  }

  /// Focus 0 against every other subsystem, in index order.
  static PartitionSpec all_against(int num_subsystems, int focus = 0) {
    PartitionSpec p{focus, {}};
    for (int i = 0; i < num_subsystems; ++i) {
      if (i != focus) p.partners.push_back(i);
    }
    return p;
  }
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline PureState kron(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Matrix prod = kron(Matrix(a.amps()), Matrix(b.amps()));
  return PureState::normalized(Vector(prod.col(0)), std::move(dims));
}

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.mat(), b.mat()), std::move(dims));
}

namespace detail {

inline std::vector<int> strides(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

inline std::vector<int> checked_keep(std::vector<int> keep, int n) {
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("keep set has duplicate indices");
  }
  if (keep.front() < 0 || keep.back() >= n) throw std::invalid_argument("keep index out of range");
  return keep;
}

// table[t][k]: full index of (kept multi-index k, traced multi-index t).
inline std::vector<std::vector<int>> split_table(const Dims& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;
  int dk = 1, dt = 1;
  for (int i = 0; i < n; ++i) (kept[i] ? dk : dt) *= dims[i];
  std::vector<std::vector<int>> table(dt, std::vector<int>(dk, 0));
  const int total = dk * dt;
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int k = 0, t = 0;
    for (int i = 0; i < n; ++i) {
      if (kept[i]) k = k * dims[i] + digit[i];
      else t = t * dims[i] + digit[i];
    }
    table[t][k] = idx;
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return table;
}

}  // namespace detail

/// Reduced state on `keep` (subsystem order preserved).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  keep = detail::checked_keep(std::move(keep), rho.num_subsystems());
  const auto table = detail::split_table(rho.dims(), keep);
  const int dk = static_cast<int>(table.front().size());
  Matrix red = Matrix::Zero(dk, dk);
  for (const auto& row : table) {
    for (int a = 0; a < dk; ++a) {
      for (int b = 0; b < dk; ++b) red(a, b) += rho.mat()(row[a], row[b]);
    }
  }
  Dims dims;
  for (int k : keep) dims.push_back(rho.dims()[k]);
  red = 0.5 * (red + red.adjoint()).eval();
  if (rho.is_unnormalized()) return DensityMatrix::unnormalized(std::move(red), std::move(dims));
  return DensityMatrix(std::move(red), std::move(dims));
}

/// Amplitudes reshaped as a (kept x traced) matrix; kept and traced
/// subsystems each keep their original relative order.
inline Matrix bipartite_amplitudes(const PureState& psi, std::vector<int> keep) {
  keep = detail::checked_keep(std::move(keep), psi.num_subsystems());
  const auto table = detail::split_table(psi.dims(), keep);
  const int dt = static_cast<int>(table.size());
  const int dk = static_cast<int>(table.front().size());
  Matrix m(dk, dt);
  for (int t = 0; t < dt; ++t) {
    for (int k = 0; k < dk; ++k) m(k, t) = psi.amps()(table[t][k]);
  }
  return m;
}

inline DensityMatrix reduced_state(const PureState& psi, std::vector<int> keep) {
  keep = detail::checked_keep(std::move(keep), psi.num_subsystems());
  const Matrix m = bipartite_amplitudes(psi, keep);
  Matrix red = m * m.adjoint();
  red = 0.5 * (red + red.adjoint()).eval();
  Dims dims;
  for (int k : keep) dims.push_back(psi.dims()[k]);
  return DensityMatrix(std::move(red), std::move(dims));
}

/// Collapses the subsystems of `rho` into the two-party split (first | rest).
inline DensityMatrix as_bipartite(const DensityMatrix& rho) {
  if (rho.num_subsystems() < 2) throw std::invalid_argument("need at least two subsystems");
  Dims dims{rho.dims().front(), rho.dim() / rho.dims().front()};
  if (rho.is_unnormalized()) return DensityMatrix::unnormalized(rho.mat(), std::move(dims));
  return DensityMatrix(rho.mat(), std::move(dims));
}

struct EigenSystem {
  RealVector values;  // descending
  Matrix vectors;     // columns match `values`
};

inline EigenSystem herm_eig(const Matrix& m, const NumericPolicy& pol = default_policy()) {
  if (m.rows() != m.cols()) throw std::invalid_argument("herm_eig needs a square matrix");
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > pol.hermitian_tol) {
    throw std::invalid_argument("herm_eig input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  return {es.eigenvalues().reverse(), es.eigenvectors().rowwise().reverse()};
}

inline Matrix psd_sqrt(const Matrix& m, const NumericPolicy& pol = default_policy()) {
  const EigenSystem es = herm_eig(m, pol);
  if (es.values.size() > 0 && es.values.minCoeff() < -pol.sqrt_fail) {
    throw NumericError("psd_sqrt: significantly negative eigenvalue " +
                       std::to_string(es.values.minCoeff()));
  }
  RealVector s = es.values.unaryExpr([&](double x) { return x < pol.eig_clamp ? 0.0 : std::sqrt(x); });
  return es.vectors * s.asDiagonal() * es.vectors.adjoint();
}

inline int numerical_rank(const RealVector& spectrum, const NumericPolicy& pol = default_policy()) {
  return static_cast<int>((spectrum.array() > pol.eig_clamp).count());
}

/// Purification with ancilla dimension rank(rho); dims are {dim(rho), rank}.
inline PureState purify(const DensityMatrix& rho, const NumericPolicy& pol = default_policy()) {
  const EigenSystem es = herm_eig(rho.mat(), pol);
  const int r = std::max(1, numerical_rank(es.values, pol));
  const int d = rho.dim();
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(d) * r);
  for (int j = 0; j < r; ++j) {
    const double w = std::sqrt(std::max(es.values(j), 0.0));
    for (int a = 0; a < d; ++a) amps(a * r + j) = w * es.vectors(a, j);
  }
  return PureState::normalized(std::move(amps), Dims{d, r});
}

/// splitmix64 finalizer; derives independent per-item seeds from a master.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Vector complex_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases fixed.
inline Matrix haar_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int c = 0; c < n; ++c) g.col(c) = complex_gaussian(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

inline PureState haar_random_pure(const Dims& dims, std::uint64_t seed) {
  validate_dims(dims);
  Rng rng(seed);
  return PureState::normalized(complex_gaussian(total_dim(dims), rng), dims);
}

/// |0...0> over the given dims.
inline PureState product_zero(const Dims& dims) {
  validate_dims(dims);
  Vector v = Vector::Zero(total_dim(dims));
  v(0) = 1.0;
  return PureState(std::move(v), dims);
}

}  // namespace polyent
