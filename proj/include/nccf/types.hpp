#pragma once

#include <complex>
#include <compare>

#include <Eigen/Dense>

namespace nccf {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Half-integer spin label, stored as 2j to keep arithmetic exact.
class Spin {
public:
  constexpr Spin() = default;
  static constexpr Spin from_twice(int twice_j) { return Spin(twice_j); }
  /// Construct from a real j; throws InvalidSpinError unless 2j is a
  /// non-negative integer (within 1e-9).
  static Spin from_value(double j);

  constexpr int twice() const { return twice_; }
  constexpr int dim() const { return twice_ + 1; }  // 2j+1
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr auto operator<=>(Spin, Spin) = default;

private:
  explicit constexpr Spin(int t) : twice_(t) {}
  int twice_ = 0;
};

/// Default numerical tolerances. Every operation that bakes one of these in
/// also accepts an override parameter.
namespace tol {
inline constexpr double construction = 1e-12;    // unit norm, weight sums
inline constexpr double quadrature = 1e-11;      // Peter-Weyl residual
inline constexpr double rep_check = 1e-11;       // unitarity / homomorphism
inline constexpr double irreducibility = 1e-9;   // character norm
inline constexpr double transform = 1e-10;       // round trips, block sync
inline constexpr double psd_scale = 1e-9;        // min eigenvalue, times dim
inline constexpr double hermitian = 1e-11;
inline constexpr double trace_one = 1e-11;
}  // namespace tol

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double hermiticity_error(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

/// Kronecker product with the fixed convention used throughout: the left
/// factor varies slowest, (A ⊗ B)[(i·p+k),(j·q+l)] = A[i,j]·B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

/// Transpose of the left tensor factor of a dl·dr square matrix.
Matrix partial_transpose_left(const Matrix& m, int dim_left, int dim_right);

}  // namespace nccf
