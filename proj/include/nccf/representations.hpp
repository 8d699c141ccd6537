#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nccf/groups.hpp"
#include "nccf/types.hpp"

namespace nccf {

/// Unitary spin-j matrix for g in SU(2), indexed by magnetic quantum numbers
/// ascending, row = mu+j, column = nu+j. Entries are the binomial expansion
/// of the generating polynomial (alpha z + beta)^{j-nu} (-conj(beta) z +
/// conj(alpha))^{j+nu}, rescaled to the orthonormal monomial basis by
/// sqrt(C(2j,j-nu)/C(2j,j-mu)) so that the matrix is exactly unitary. Entries
/// are homogeneous polynomials of degree 2j in (alpha, beta) and their
/// conjugates.
Matrix spin_matrix(Spin j, const SU2Element& g);

/// Entrywise conjugate, equal to C_j spin_matrix(j,g) C_j^dagger with
/// C_j = spin_matrix(j, u), u = -i sigma_y.
Matrix spin_matrix_conj(Spin j, const SU2Element& g);

/// The intertwiner C_j = tau_j(u) between tau_j and its conjugate.
Matrix spin_conjugation_intertwiner(Spin j);

namespace detail {
/// Raw generating-polynomial evaluation without the unit-norm constraint;
/// used by the homogeneity (degree-2j scaling) checks.
Matrix spin_matrix_poly(int twice_j, Cplx alpha, Cplx beta);
}  // namespace detail

/// Unitary irreducible representation of a finite group, one matrix per
/// element. Construction verifies unitarity, the homomorphism property
/// against the Cayley table, and irreducibility via the character norm
/// (1/N) sum |chi(g)|^2 = 1.
class FiniteIrrep {
public:
  FiniteIrrep(FiniteGroup group, std::vector<Matrix> matrices,
              std::string label = "");

  int dim() const { return static_cast<int>(matrices_[0].rows()); }
  const Matrix& at(int element) const { return matrices_[element]; }
  Cplx character(int element) const { return matrices_[element].trace(); }
  const FiniteGroup& group() const { return group_; }
  const std::string& label() const { return label_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

private:
  FiniteGroup group_;
  std::vector<Matrix> matrices_;
  std::string label_;
};

/// Entrywise-conjugated representation (revalidated on construction).
FiniteIrrep conjugate_rep(const FiniteIrrep& rep);

struct BuiltinGroup {
  std::string name;
  FiniteGroup group;
  std::vector<FiniteIrrep> irreps;  // complete up to equivalence
};

/// Built-in groups with their complete irrep lists:
///   "Zn" for n >= 1 (e.g. "Z2", "Z6"): n characters;
///   "S3": trivial, sign, and the 2-dim standard representation;
///   "D4": four 1-dim characters and the 2-dim defining representation.
/// Throws UnknownGroupError otherwise. sum(d_k^2) = N is verified.
BuiltinGroup builtin_group(const std::string& name);

/// T(g1,g2) = pi(g1) ⊗ tau(g2), Kronecker with the left factor slowest.
struct ProductSpinRep {
  Spin left;
  Spin right;
  int dim() const { return left.dim() * right.dim(); }
  Matrix eval(const SU2Element& g1, const SU2Element& g2) const;
};

struct ProductFiniteRep {
  FiniteIrrep left;
  FiniteIrrep right;
  int dim() const { return left.dim() * right.dim(); }
  Matrix eval(int a, int b) const { return kron(left.at(a), right.at(b)); }
};

inline ProductSpinRep tensor_rep(Spin j1, Spin j2) { return {j1, j2}; }
ProductFiniteRep tensor_rep(const FiniteIrrep& pi, const FiniteIrrep& tau);

}  // namespace nccf
