#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nccf/groups.hpp"
#include "nccf/representations.hpp"
#include "nccf/types.hpp"

namespace nccf {

/// Signed PSD report. is_psd <=> min_eigenvalue >= -tolerance; `marginal`
/// flags |min_eigenvalue| within 10x tolerance of zero; `exact` is false for
/// sampled (necessary-condition-only) tests.
struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool marginal = false;
  bool exact = true;
};

/// Eigenvalue verdict for a Hermitian matrix. Tolerance <= 0 selects the
/// default tol::psd_scale * dim. A matrix whose hermiticity error exceeds
/// the tolerance is reported not PSD via the Hermitian part's spectrum.
PsdVerdict psd_verdict_of(const Matrix& m, double tolerance = 0.0,
                          bool exact = true);

/// Complex Hermitian, trace-one, positive semidefinite matrix; validated on
/// construction.
class DensityMatrix {
public:
  explicit DensityMatrix(Matrix rho);
  static DensityMatrix from_pure(const Vector& psi);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

private:
  Matrix rho_;
};

// ---------------------------------------------------------------------------
// Characteristic functions on SU(2)

/// Band-limited function on SU(2) stored in canonical irrep-block form:
/// phi(g) = sum_j tr(B_j tau_j(g)). A block equal to a density matrix makes
/// phi the characteristic function of that state.
class SU2CharFunc {
public:
  SU2CharFunc() = default;
  explicit SU2CharFunc(std::map<Spin, Matrix> blocks);

  Cplx evaluate(const SU2Element& g) const;
  const std::map<Spin, Matrix>& blocks() const { return blocks_; }
  Matrix block(Spin j) const;  // zero matrix when j is not in the support
  /// Max polynomial degree 2j over the support (0 for the empty function).
  int band_limit() const;
  std::vector<Spin> support() const;

private:
  std::map<Spin, Matrix> blocks_;
};

/// phi_A(g) = tr[A tau_j(g)]; the block for j is A itself.
SU2CharFunc forward_transform(const Matrix& a, Spin j);

/// A = integral of d_tau phi(g) tau_j(g)^dagger dg over the quadrature.
/// Requires quad degree >= band_limit(phi) + 2j (QuadratureTooCoarseError);
/// returns zero when j is outside the block support of a pure single-spin
/// function only through the integral itself.
Matrix inverse_transform(const SU2CharFunc& phi, Spin j,
                         const HaarQuadrature& quad);

/// phi_{AB} from phi_A and phi_B: block-wise product (the convolution
/// integral tau-block equals B_A B_B / d, and the d_tau prefactor restores
/// the operator product). Supports must coincide.
SU2CharFunc convolve(const SU2CharFunc& a, const SU2CharFunc& b);

struct PurityReport {
  bool pure = false;
  double deviation = 0.0;  // max-norm idempotency defect
};

/// Pure iff the single supported block is idempotent (B^2 = B).
/// Throws MultiIrrepSupportError for multi-block functions.
PurityReport is_pure(const SU2CharFunc& phi, double tolerance = tol::psd_scale);

/// Exact criterion: every block PSD.
PsdVerdict is_positive_definite(const SU2CharFunc& phi, double tolerance = 0.0);

/// Necessary condition only: PSD test of the Gram matrix phi(g_a^{-1} g_b)
/// over the given node set. The verdict carries exact = false.
PsdVerdict is_positive_definite_sampled(
    const std::function<Cplx(const SU2Element&)>& phi,
    const std::vector<SU2Element>& nodes, double tolerance = 0.0);

// ---------------------------------------------------------------------------
// Characteristic functions on finite groups

/// Function on a finite group stored as its value vector (index = element).
/// The irrep-block picture is recovered exactly by block_decompose.
class FiniteCharFunc {
public:
  FiniteCharFunc(FiniteGroup group, Vector values);

  Cplx evaluate(int element) const { return values_[element]; }
  const Vector& values() const { return values_; }
  const FiniteGroup& group() const { return group_; }

private:
  FiniteGroup group_;
  Vector values_;
};

FiniteCharFunc forward_transform(const Matrix& a, const FiniteIrrep& rep);

/// Exact finite-sum inverse: A = (d/N) sum_g phi(g) tau(g)^dagger.
Matrix inverse_transform(const FiniteCharFunc& phi, const FiniteIrrep& rep);

/// Fourier blocks B_k = (d_k/N) sum_g phi(g) tau_k(g)^dagger for a complete
/// irrep list (sum d_k^2 = N, else IncompleteIrrepListError). The inverse
/// identity phi(g) = sum_k tr(B_k tau_k(g)) is verified to tol::transform.
std::vector<Matrix> block_decompose(const FiniteCharFunc& phi,
                                    const std::vector<FiniteIrrep>& irreps);

/// N x N matrix Phi[a][b] = phi(g_a^{-1} g_b) = values[sigma(a,b)], carrying
/// positive definiteness of phi as ordinary matrix positivity.
struct PhiMatrix {
  FiniteGroup group;
  Matrix matrix;
};

/// Requires phi(e) = 1 (NotNormalizedError) and the conjugation symmetry
/// phi(g^{-1}) = conj phi(g) so that Phi is Hermitian with unit diagonal.
PhiMatrix build_phi_matrix(const FiniteCharFunc& phi,
                           double tolerance = tol::transform);

/// Exact criterion on finite groups: eigenvalue test of the (unnormalized)
/// Gram matrix values[sigma(a,b)].
PsdVerdict is_positive_definite(const FiniteCharFunc& phi,
                                double tolerance = 0.0);

/// Pure iff Phi^2 = (N/d) Phi with d the dimension of the single supported
/// irrep (MultiIrrepSupportError otherwise). The reported deviation is the
/// max-norm of (d/N)Phi^2 - Phi.
PurityReport is_pure(const FiniteCharFunc& phi,
                     const std::vector<FiniteIrrep>& irreps,
                     double tolerance = tol::psd_scale);

/// d_tau * (phi_a * phi_b) through the exact finite convolution sum
/// (1/N) sum_h phi_a(h) phi_b(g h^{-1}).
FiniteCharFunc convolve(const FiniteCharFunc& a, const FiniteCharFunc& b,
                        const FiniteIrrep& rep);

// ---------------------------------------------------------------------------
// Product-group characteristic functions (bipartite systems)

/// Which factor of a product representation a transform slot evaluates;
/// conjugated = true selects the entrywise-conjugate representation.
struct SpinSlot {
  Spin j;
  bool conjugated = false;
  int dim() const { return j.dim(); }
  Matrix eval(const SU2Element& g) const;
};

/// Band-limited function on SU(2) x SU(2), blocks labelled by spin pairs:
/// phi(g1,g2) = sum tr[B^{(j1,j2)} tau_{j1}(g1) ⊗ tau_{j2}(g2)].
class SU2ProductCharFunc {
public:
  using Key = std::pair<Spin, Spin>;

  SU2ProductCharFunc() = default;
  explicit SU2ProductCharFunc(std::map<Key, Matrix> blocks);

  Cplx evaluate(const SU2Element& g1, const SU2Element& g2) const;
  const std::map<Key, Matrix>& blocks() const { return blocks_; }
  /// Max 2j per slot over the support.
  std::pair<int, int> band_limits() const;

private:
  std::map<Key, Matrix> blocks_;
};

SU2ProductCharFunc forward_transform(const Matrix& rho, Spin j1, Spin j2);

/// Double-integral inverse against sigma1(g1) ⊗ sigma2(g2); evaluated through
/// per-slot Peter-Weyl kernels so the cost is linear in the node count.
Matrix inverse_transform(const SU2ProductCharFunc& phi, SpinSlot sigma1,
                         SpinSlot sigma2, const HaarQuadrature& quad);

/// Exact criterion: every block PSD.
PsdVerdict is_positive_definite(const SU2ProductCharFunc& phi,
                                double tolerance = 0.0);

/// Function on G x G for finite G, stored as the N x N value table
/// values(a,b) = phi(g_a, g_b).
class FiniteProductCharFunc {
public:
  FiniteProductCharFunc(FiniteGroup group, Matrix values);

  static FiniteProductCharFunc from_operator(const Matrix& rho,
                                             const FiniteIrrep& pi,
                                             const FiniteIrrep& tau);

  Cplx evaluate(int a, int b) const { return values_(a, b); }
  const Matrix& values() const { return values_; }
  const FiniteGroup& group() const { return group_; }

  /// N^2 x N^2 Gram matrix of phi over G x G, indexed (a*N+a', b*N+b') =
  /// phi(g_a^{-1} g_b, g_{a'}^{-1} g_{b'}).
  Matrix big_phi() const;

private:
  FiniteGroup group_;
  Matrix values_;
};

/// Exact finite-sum inverse against conjugatable slots.
Matrix inverse_transform(const FiniteProductCharFunc& phi,
                         const FiniteIrrep& sigma1, bool conj1,
                         const FiniteIrrep& sigma2, bool conj2);

/// Exact criterion on G x G: eigenvalue test of the N^2 x N^2 Gram matrix.
PsdVerdict is_positive_definite(const FiniteProductCharFunc& phi,
                                double tolerance = 0.0);

}  // namespace nccf
