#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nccf/types.hpp"

namespace nccf {

/// Element of SU(2) in its defining parametrization
///
///     g = [ alpha  -conj(beta) ]        |alpha|^2 + |beta|^2 = 1.
///         [ beta    conj(alpha) ]
///
/// The pair is renormalized on construction; inputs further than 1e-6 from
/// the unit sphere are rejected as garbage.
class SU2Element {
public:
  SU2Element() : alpha_(1.0, 0.0), beta_(0.0, 0.0) {}
  SU2Element(Cplx alpha, Cplx beta);

  static SU2Element identity() { return SU2Element(); }

  /// Euler-angle constructor. Phase convention (fixed here once):
  ///   alpha = cos(theta/2) e^{-i(phi+psi)/2},
  ///   beta  = sin(theta/2) e^{-i(phi-psi)/2},
  /// with phi in [0,2pi), theta in [0,pi], psi in [0,4pi) covering the group
  /// once. Angles outside those ranges wrap.
  static SU2Element from_euler(double phi, double theta, double psi);

  Cplx alpha() const { return alpha_; }
  Cplx beta() const { return beta_; }

  SU2Element inverse() const { return SU2Element(std::conj(alpha_), -beta_); }
  SU2Element operator*(const SU2Element& h) const;

  Eigen::Matrix2cd matrix() const;

  /// Angles (phi, theta, psi) in the from_euler convention; the round trip
  /// from_euler(euler_angles(g)) reproduces g exactly up to rounding.
  std::array<double, 3> euler_angles() const;

  /// max(|alpha-alpha'|, |beta-beta'|)
  double distance(const SU2Element& h) const;

private:
  Cplx alpha_, beta_;
};

/// The intertwiner u = -i sigma_y, i.e. (alpha, beta) = (0, 1); satisfies
/// conj(g) = u g u^{-1} for every g in SU(2).
inline SU2Element su2_conjugation_element() {
  return SU2Element(Cplx(0.0, 0.0), Cplx(1.0, 0.0));
}

/// Finite group defined by its Cayley table. Elements are indexed 0..N-1
/// with index 0 the identity (file format below uses 1-based indices).
/// Construction verifies all group axioms and derives the inverse table and
/// the cocycle table sigma, defined by  g_{sigma(a,b)} = g_a^{-1} g_b.
class FiniteGroup {
public:
  /// Build from a 0-based Cayley table (table[a][b] = index of g_a g_b).
  /// Throws NotAGroupError naming the violated axiom and witness indices.
  static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table);

  /// Parse the group-spec text format: first line N, then N lines of N
  /// space-separated 1-based element indices. Rejects non-groups.
  static FiniteGroup parse(std::istream& in);
  static FiniteGroup parse_text(const std::string& text);
  std::string to_text() const;  // same format, 1-based

  int order() const { return order_; }
  int multiply(int a, int b) const { return cayley_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  int sigma(int a, int b) const { return sigma_[a][b]; }
  static constexpr int identity = 0;

  /// Relabel elements through a permutation with perm[new_index] = old_index;
  /// perm[0] must be 0 so that the identity keeps index 0.
  FiniteGroup relabel(const std::vector<int>& perm) const;

  bool operator==(const FiniteGroup& other) const {
    return cayley_ == other.cayley_;
  }

private:
  FiniteGroup() = default;
  int order_ = 0;
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> sigma_;
};

/// Mean of a value vector over a finite group, (1/N) sum_a f(g_a) — the
/// normalized Haar integral. Throws DimensionMismatchError on length mismatch.
Cplx finite_haar_average(const FiniteGroup& group, const Vector& values);

/// Quadrature on SU(2) exact for band-limited integrands: a product grid of
/// uniform phi in [0,2pi), Gauss-Legendre nodes in cos(theta), and uniform
/// psi in [0,4pi), with weights summing to one. "Exact to degree D" means
/// every product tau^j_{mn} conj(tau^j'_{m'n'}) with 2j+2j' <= D integrates
/// to the Peter-Weyl value delta/(2j+1) within 1e-11; this is validated at
/// construction and the worst residual is kept.
class HaarQuadrature {
public:
  /// Node counts: 2D+2 in each angle, D+1 Gauss-Legendre points in cos theta.
  /// Throws QuadratureValidationError if the orthogonality residual exceeds
  /// the tolerance (default tol::quadrature).
  static HaarQuadrature build(int exactness_degree,
                              double validation_tol = tol::quadrature);

  int degree() const { return degree_; }
  const std::vector<SU2Element>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double max_orthogonality_residual() const { return residual_; }

  template <typename F>
  Cplx integrate(F&& f) const {
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

private:
  HaarQuadrature() = default;
  int degree_ = 0;
  std::vector<SU2Element> nodes_;
  std::vector<double> weights_;
  double residual_ = 0.0;
};

}  // namespace nccf
