#include "nccf/charfunc.hpp"

#include <algorithm>
#include <cmath>

#include "nccf/errors.hpp"

namespace nccf {

PsdVerdict psd_verdict_of(const Matrix& m, double tolerance, bool exact) {
  if (m.rows() != m.cols())
    throw DimensionMismatchError("psd_verdict_of: matrix not square");
  if (tolerance <= 0.0) tolerance = tol::psd_scale * static_cast<double>(m.rows());
  PsdVerdict v;
  v.tolerance = tolerance;
  v.exact = exact;
  const double herm = hermiticity_error(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.is_psd = herm <= tolerance && v.min_eigenvalue >= -tolerance;
  v.marginal = std::abs(v.min_eigenvalue) <= 10.0 * tolerance;
  return v;
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw DimensionMismatchError("density matrix must be square");
  const double herm = hermiticity_error(rho_);
  if (herm > tol::hermitian)
    throw ParameterOutOfRangeError("density matrix: hermiticity error " +
                                   std::to_string(herm));
  const double tr_err = std::abs(rho_.trace() - Cplx(1.0, 0.0));
  if (tr_err > tol::trace_one)
    throw ParameterOutOfRangeError("density matrix: trace error " +
                                   std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10 * static_cast<double>(rho_.rows()))
    throw ParameterOutOfRangeError("density matrix: min eigenvalue " +
                                   std::to_string(min_eig));
}

DensityMatrix DensityMatrix::from_pure(const Vector& psi) {
  double n = psi.norm();
  if (n < 1e-12)
    throw ParameterOutOfRangeError("from_pure: zero state vector");
  Vector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

// ---------------------------------------------------------------------------
// SU2CharFunc

SU2CharFunc::SU2CharFunc(std::map<Spin, Matrix> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto& [j, b] : blocks_)
    if (b.rows() != j.dim() || b.cols() != j.dim())
      throw DimensionMismatchError("SU2CharFunc: block for 2j=" +
                                   std::to_string(j.twice()) + " is " +
                                   std::to_string(b.rows()) + "x" +
                                   std::to_string(b.cols()));
}

Cplx SU2CharFunc::evaluate(const SU2Element& g) const {
  Cplx acc = 0.0;
  for (const auto& [j, b] : blocks_)
    acc += (b * spin_matrix(j, g)).trace();
  return acc;
}

Matrix SU2CharFunc::block(Spin j) const {
  auto it = blocks_.find(j);
  if (it != blocks_.end()) return it->second;
  return Matrix::Zero(j.dim(), j.dim());
}

int SU2CharFunc::band_limit() const {
  int b = 0;
  for (const auto& [j, m] : blocks_) b = std::max(b, j.twice());
  return b;
}

std::vector<Spin> SU2CharFunc::support() const {
  std::vector<Spin> s;
  for (const auto& [j, m] : blocks_) s.push_back(j);
  return s;
}

SU2CharFunc forward_transform(const Matrix& a, Spin j) {
  if (a.rows() != j.dim() || a.cols() != j.dim())
    throw DimensionMismatchError(
        "forward_transform: operator is " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " but dim(tau_j) = " +
        std::to_string(j.dim()));
  std::map<Spin, Matrix> blocks;
  blocks.emplace(j, a);
  return SU2CharFunc(std::move(blocks));
}

Matrix inverse_transform(const SU2CharFunc& phi, Spin j,
                         const HaarQuadrature& quad) {
  const int needed = phi.band_limit() + j.twice();
  if (quad.degree() < needed)
    throw QuadratureTooCoarseError(
        "inverse_transform: quadrature degree " +
        std::to_string(quad.degree()) + " < band limit " +
        std::to_string(phi.band_limit()) + " + 2j = " + std::to_string(needed));
  const int d = j.dim();
  Matrix acc = Matrix::Zero(d, d);
  const auto& nodes = quad.nodes();
  const auto& weights = quad.weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Cplx v = phi.evaluate(nodes[i]);
    acc += (weights[i] * double(d) * v) * spin_matrix(j, nodes[i]).adjoint();
  }
  return acc;
}

SU2CharFunc convolve(const SU2CharFunc& a, const SU2CharFunc& b) {
  if (a.support() != b.support())
    throw DimensionMismatchError(
        "convolve: block supports differ between the two functions");
  std::map<Spin, Matrix> blocks;
  for (const auto& [j, ba] : a.blocks()) blocks.emplace(j, ba * b.block(j));
  return SU2CharFunc(std::move(blocks));
}

PurityReport is_pure(const SU2CharFunc& phi, double tolerance) {
  const auto& blocks = phi.blocks();
  if (blocks.size() != 1)
    throw MultiIrrepSupportError(
        "is_pure: purity is defined against a single representation, support "
        "size is " +
        std::to_string(blocks.size()));
  const Matrix& b = blocks.begin()->second;
  PurityReport r;
  r.deviation = max_abs(b * b - b);
  r.pure = r.deviation <= tolerance;
  return r;
}

namespace {

// conjunction of per-block PSD verdicts, carrying the worst block's numbers
template <typename BlockMap>
PsdVerdict combine_block_verdicts(const BlockMap& blocks, double tolerance) {
  PsdVerdict worst;
  worst.is_psd = true;
  worst.exact = true;
  worst.min_eigenvalue = std::numeric_limits<double>::infinity();
  if (blocks.empty()) {
    worst.min_eigenvalue = 0.0;
    worst.tolerance = tolerance > 0 ? tolerance : tol::psd_scale;
    worst.marginal = true;
    return worst;
  }
  for (const auto& [key, b] : blocks) {
    PsdVerdict v = psd_verdict_of(b, tolerance);
    if (v.min_eigenvalue < worst.min_eigenvalue) {
      const bool all_psd = worst.is_psd && v.is_psd;
      worst = v;
      worst.is_psd = all_psd;
    } else {
      worst.is_psd = worst.is_psd && v.is_psd;
    }
  }
  return worst;
}

}  // namespace

PsdVerdict is_positive_definite(const SU2CharFunc& phi, double tolerance) {
  return combine_block_verdicts(phi.blocks(), tolerance);
}

PsdVerdict is_positive_definite(const SU2ProductCharFunc& phi,
                                double tolerance) {
  return combine_block_verdicts(phi.blocks(), tolerance);
}

PsdVerdict is_positive_definite(const FiniteProductCharFunc& phi,
                                double tolerance) {
  return psd_verdict_of(phi.big_phi(), tolerance, /*exact=*/true);
}

PsdVerdict is_positive_definite_sampled(
    const std::function<Cplx(const SU2Element&)>& phi,
    const std::vector<SU2Element>& nodes, double tolerance) {
  const int n = static_cast<int>(nodes.size());
  Matrix gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      gram(a, b) = phi(nodes[a].inverse() * nodes[b]);
  return psd_verdict_of(gram, tolerance, /*exact=*/false);
}

// ---------------------------------------------------------------------------
// FiniteCharFunc

FiniteCharFunc::FiniteCharFunc(FiniteGroup group, Vector values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order())
    throw DimensionMismatchError(
        "FiniteCharFunc: " + std::to_string(values_.size()) +
        " values for group of order " + std::to_string(group_.order()));
}

FiniteCharFunc forward_transform(const Matrix& a, const FiniteIrrep& rep) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim())
    throw DimensionMismatchError(
        "forward_transform: operator dim " + std::to_string(a.rows()) +
        " != rep dim " + std::to_string(rep.dim()));
  const int n = rep.group().order();
  Vector values(n);
  for (int g = 0; g < n; ++g) values[g] = (a * rep.at(g)).trace();
  return FiniteCharFunc(rep.group(), std::move(values));
}

Matrix inverse_transform(const FiniteCharFunc& phi, const FiniteIrrep& rep) {
  if (!(phi.group() == rep.group()))
    throw DimensionMismatchError("inverse_transform: group mismatch");
  const int n = phi.group().order();
  const int d = rep.dim();
  Matrix acc = Matrix::Zero(d, d);
  for (int g = 0; g < n; ++g)
    acc += phi.evaluate(g) * rep.at(g).adjoint();
  return acc * (double(d) / n);
}

std::vector<Matrix> block_decompose(const FiniteCharFunc& phi,
                                    const std::vector<FiniteIrrep>& irreps) {
  const int n = phi.group().order();
  int sum = 0;
  for (const FiniteIrrep& r : irreps) {
    if (!(r.group() == phi.group()))
      throw DimensionMismatchError("block_decompose: irrep group mismatch");
    sum += r.dim() * r.dim();
  }
  if (sum != n)
    throw IncompleteIrrepListError(
        "block_decompose: sum of d_k^2 = " + std::to_string(sum) +
        " != N = " + std::to_string(n));
  std::vector<Matrix> blocks;
  blocks.reserve(irreps.size());
  for (const FiniteIrrep& r : irreps)
    blocks.push_back(inverse_transform(phi, r));
  // inversion-identity sync: the blocks must reproduce the value vector.
  double worst = 0.0;
  for (int g = 0; g < n; ++g) {
    Cplx rec = 0.0;
    for (std::size_t k = 0; k < irreps.size(); ++k)
      rec += (blocks[k] * irreps[k].at(g)).trace();
    worst = std::max(worst, std::abs(rec - phi.evaluate(g)));
  }
  if (worst > tol::transform)
    throw IncompleteIrrepListError(
        "block_decompose: reconstruction residual " + std::to_string(worst) +
        "; irrep list is not complete-and-inequivalent");
  return blocks;
}

namespace {

Matrix finite_gram(const FiniteCharFunc& phi) {
  const int n = phi.group().order();
  Matrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m(a, b) = phi.evaluate(phi.group().sigma(a, b));
  return m;
}

}  // namespace

PhiMatrix build_phi_matrix(const FiniteCharFunc& phi, double tolerance) {
  const double norm_err = std::abs(phi.evaluate(FiniteGroup::identity) - 1.0);
  if (norm_err > tolerance)
    throw NotNormalizedError("build_phi_matrix: phi(e) deviates from 1 by " +
                             std::to_string(norm_err));
  Matrix m = finite_gram(phi);
  const double herm = hermiticity_error(m);
  if (herm > tolerance)
    throw ParameterOutOfRangeError(
        "build_phi_matrix: phi(g^{-1}) != conj phi(g); hermiticity error " +
        std::to_string(herm));
  return {phi.group(), std::move(m)};
}

PsdVerdict is_positive_definite(const FiniteCharFunc& phi, double tolerance) {
  return psd_verdict_of(finite_gram(phi), tolerance, /*exact=*/true);
}

PurityReport is_pure(const FiniteCharFunc& phi,
                     const std::vector<FiniteIrrep>& irreps, double tolerance) {
  std::vector<Matrix> blocks = block_decompose(phi, irreps);
  int support = -1;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (max_abs(blocks[k]) > tolerance) {
      if (support >= 0)
        throw MultiIrrepSupportError(
            "is_pure: support spans more than one irrep");
      support = static_cast<int>(k);
    }
  }
  if (support < 0)
    throw MultiIrrepSupportError("is_pure: function has empty irrep support");
  const int n = phi.group().order();
  const int d = irreps[support].dim();
  Matrix m = finite_gram(phi);
  PurityReport r;
  r.deviation = max_abs((double(d) / n) * (m * m) - m);
  r.pure = r.deviation <= tolerance;
  return r;
}

FiniteCharFunc convolve(const FiniteCharFunc& a, const FiniteCharFunc& b,
                        const FiniteIrrep& rep) {
  if (!(a.group() == b.group()) || !(a.group() == rep.group()))
    throw DimensionMismatchError("convolve: group mismatch");
  const int n = a.group().order();
  Vector out(n);
  for (int g = 0; g < n; ++g) {
    Cplx acc = 0.0;
    for (int h = 0; h < n; ++h)
      acc += a.evaluate(h) *
             b.evaluate(a.group().multiply(g, a.group().inverse(h)));
    out[g] = acc * (double(rep.dim()) / n);
  }
  return FiniteCharFunc(a.group(), std::move(out));
}

// ---------------------------------------------------------------------------
// SU2ProductCharFunc

Matrix SpinSlot::eval(const SU2Element& g) const {
  return conjugated ? spin_matrix_conj(j, g) : spin_matrix(j, g);
}

SU2ProductCharFunc::SU2ProductCharFunc(std::map<Key, Matrix> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto& [key, b] : blocks_) {
    const int d = key.first.dim() * key.second.dim();
    if (b.rows() != d || b.cols() != d)
      throw DimensionMismatchError("SU2ProductCharFunc: block dim mismatch");
  }
}

Cplx SU2ProductCharFunc::evaluate(const SU2Element& g1,
                                  const SU2Element& g2) const {
  Cplx acc = 0.0;
  for (const auto& [key, b] : blocks_)
    acc += (b * kron(spin_matrix(key.first, g1), spin_matrix(key.second, g2)))
               .trace();
  return acc;
}

std::pair<int, int> SU2ProductCharFunc::band_limits() const {
  int b1 = 0, b2 = 0;
  for (const auto& [key, m] : blocks_) {
    b1 = std::max(b1, key.first.twice());
    b2 = std::max(b2, key.second.twice());
  }
  return {b1, b2};
}

SU2ProductCharFunc forward_transform(const Matrix& rho, Spin j1, Spin j2) {
  const int d = j1.dim() * j2.dim();
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionMismatchError(
        "forward_transform: operator dim " + std::to_string(rho.rows()) +
        " != " + std::to_string(d));
  std::map<SU2ProductCharFunc::Key, Matrix> blocks;
  blocks.emplace(std::make_pair(j1, j2), rho);
  return SU2ProductCharFunc(std::move(blocks));
}

namespace {

// Per-slot Peter-Weyl kernel: K[q*d+p] = d_sigma * int tau_{qp}(g)
// sigma(g)^dagger dg, so that the product double integral contracts to
// sum_B B[(p r),(q s)] K1[q,p] ⊗ K2[s,r].
std::vector<Matrix> slot_kernel(Spin source, const SpinSlot& sigma,
                                const HaarQuadrature& quad) {
  const int d = source.dim();
  const int ds = sigma.dim();
  std::vector<Matrix> kernel(static_cast<std::size_t>(d) * d,
                             Matrix::Zero(ds, ds));
  const auto& nodes = quad.nodes();
  const auto& weights = quad.weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Matrix t = spin_matrix(source, nodes[i]);
    Matrix s = sigma.eval(nodes[i]).adjoint() * (weights[i] * double(ds));
    for (int q = 0; q < d; ++q)
      for (int p = 0; p < d; ++p) kernel[q * d + p] += t(q, p) * s;
  }
  return kernel;
}

}  // namespace

Matrix inverse_transform(const SU2ProductCharFunc& phi, SpinSlot sigma1,
                         SpinSlot sigma2, const HaarQuadrature& quad) {
  const auto [b1, b2] = phi.band_limits();
  const int needed =
      std::max(b1 + sigma1.j.twice(), b2 + sigma2.j.twice());
  if (quad.degree() < needed)
    throw QuadratureTooCoarseError(
        "inverse_transform: quadrature degree " +
        std::to_string(quad.degree()) + " < required " +
        std::to_string(needed));
  const int d_out = sigma1.dim() * sigma2.dim();
  Matrix out = Matrix::Zero(d_out, d_out);
  for (const auto& [key, block] : phi.blocks()) {
    const int da = key.first.dim();
    const int db = key.second.dim();
    std::vector<Matrix> k1 = slot_kernel(key.first, sigma1, quad);
    std::vector<Matrix> k2 = slot_kernel(key.second, sigma2, quad);
    for (int p = 0; p < da; ++p)
      for (int r = 0; r < db; ++r)
        for (int q = 0; q < da; ++q)
          for (int s = 0; s < db; ++s) {
            Cplx c = block(p * db + r, q * db + s);
            if (c == Cplx(0.0, 0.0)) continue;
            out += c * kron(k1[q * da + p], k2[s * db + r]);
          }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FiniteProductCharFunc

FiniteProductCharFunc::FiniteProductCharFunc(FiniteGroup group, Matrix values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.rows() != group_.order() || values_.cols() != group_.order())
    throw DimensionMismatchError("FiniteProductCharFunc: value table is " +
                                 std::to_string(values_.rows()) + "x" +
                                 std::to_string(values_.cols()));
}

FiniteProductCharFunc FiniteProductCharFunc::from_operator(
    const Matrix& rho, const FiniteIrrep& pi, const FiniteIrrep& tau) {
  if (!(pi.group() == tau.group()))
    throw DimensionMismatchError("from_operator: irreps over different groups");
  const int d = pi.dim() * tau.dim();
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionMismatchError("from_operator: operator dim " +
                                 std::to_string(rho.rows()) + " != " +
                                 std::to_string(d));
  const int n = pi.group().order();
  Matrix values(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      values(a, b) = (rho * kron(pi.at(a), tau.at(b))).trace();
  return FiniteProductCharFunc(pi.group(), std::move(values));
}

Matrix FiniteProductCharFunc::big_phi() const {
  const int n = group_.order();
  Matrix m(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap)
      for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp)
          m(a * n + ap, b * n + bp) =
              values_(group_.sigma(a, b), group_.sigma(ap, bp));
  return m;
}

Matrix inverse_transform(const FiniteProductCharFunc& phi,
                         const FiniteIrrep& sigma1, bool conj1,
                         const FiniteIrrep& sigma2, bool conj2) {
  if (!(phi.group() == sigma1.group()) || !(phi.group() == sigma2.group()))
    throw DimensionMismatchError("inverse_transform: group mismatch");
  const int n = phi.group().order();
  const int d1 = sigma1.dim();
  const int d2 = sigma2.dim();
  const double scale = double(d1) * double(d2) / (double(n) * double(n));
  Matrix out = Matrix::Zero(d1 * d2, d1 * d2);
  for (int a = 0; a < n; ++a) {
    Matrix m1 = conj1 ? sigma1.at(a).conjugate() : sigma1.at(a);
    for (int b = 0; b < n; ++b) {
      Matrix m2 = conj2 ? sigma2.at(b).conjugate() : sigma2.at(b);
      out += phi.evaluate(a, b) * kron(m1.adjoint(), m2.adjoint());
    }
  }
  return out * scale;
}

}  // namespace nccf
