#pragma once

#include <stdexcept>
#include <string>

namespace polyent {

/// Every tolerance used across the library, in one place. Defaults are the
/// values the test suites pin; the CLI overrides individual fields.
struct NumericPolicy {
  double norm_tol = 1e-10;        // | ||amps|| - 1 | for PureState
  double hermitian_tol = 1e-10;   // max-abs entry of (M - M^dagger)
  double trace_tol = 1e-10;       // |Tr rho - 1| for DensityMatrix
  double psd_tol = 1e-9;          // smallest admissible eigenvalue is -psd_tol
  double eig_clamp = 1e-12;       // eigenvalues below this are treated as 0
  double sqrt_fail = 1e-6;        // psd_sqrt refuses eigenvalues below -sqrt_fail
  double isometry_tol = 1e-9;     // column orthonormality of decomposition isometries
  double agreement_tol = 1e-9;    // internal dual-route agreement checks
  double slack_tol = 1e-8;        // report verdict: holds == slack >= -slack_tol
  double zero_measure = 1e-9;     // measure values below this count as 0 for 0^0
  double file_norm_tol = 1e-6;    // state files are renormalized within this band
};

inline const NumericPolicy& default_policy() {
  static const NumericPolicy policy{};
  return policy;
}

/// Raised when a numerically required property fails beyond tolerance.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polyent
