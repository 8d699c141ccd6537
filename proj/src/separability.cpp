#include "nccf/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nccf/errors.hpp"

namespace nccf {

BipartiteState::BipartiteState(DensityMatrix r, int dim_left, int dim_right)
    : rho(std::move(r)),
      j1(Spin::from_twice(dim_left - 1)),
      j2(Spin::from_twice(dim_right - 1)) {
  if (dim_left < 1 || dim_right < 1)
    throw ParameterOutOfRangeError("BipartiteState: dims must be positive");
  if (rho.dim() != dim_left * dim_right)
    throw DimensionMismatchError(
        "BipartiteState: rho dim " + std::to_string(rho.dim()) + " != " +
        std::to_string(dim_left) + "*" + std::to_string(dim_right));
}

Matrix partial_trace_left(const Matrix& rho, int dl, int dr) {
  Matrix out = Matrix::Zero(dr, dr);
  for (int i = 0; i < dl; ++i)
    out += rho.block(i * dr, i * dr, dr, dr);
  return out;
}

Matrix partial_trace_right(const Matrix& rho, int dl, int dr) {
  Matrix out = Matrix::Zero(dl, dl);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j)
      out(i, j) = rho.block(i * dr, j * dr, dr, dr).trace();
  return out;
}

// ---------------------------------------------------------------------------
// tilde

SU2ProductCharFunc tilde(const SU2ProductCharFunc& phi) {
  std::map<SU2ProductCharFunc::Key, Matrix> out;
  for (const auto& [key, b] : phi.blocks()) {
    const int d1 = key.first.dim();
    const int d2 = key.second.dim();
    const Matrix c = spin_conjugation_intertwiner(key.first);
    const Matrix ci = kron(c, Matrix::Identity(d2, d2));
    out.emplace(key, ci.adjoint() * partial_transpose_left(b, d1, d2) * ci);
  }
  return SU2ProductCharFunc(std::move(out));
}

FiniteProductCharFunc tilde(const FiniteProductCharFunc& phi) {
  const int n = phi.group().order();
  Matrix values(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      values(a, b) = phi.evaluate(phi.group().inverse(a), b);
  return FiniteProductCharFunc(phi.group(), std::move(values));
}

// ---------------------------------------------------------------------------
// PPT

PsdVerdict matrix_ppt_test(const Matrix& rho, int dl, int dr, double tolerance) {
  return psd_verdict_of(partial_transpose_left(rho, dl, dr), tolerance);
}

PptReport group_ppt_test(const BipartiteState& state,
                         const HaarQuadrature& quad, double psd_tolerance) {
  const int dl = state.dim_left();
  const int dr = state.dim_right();
  SU2ProductCharFunc phi =
      forward_transform(state.rho.matrix(), state.j1, state.j2);
  SU2ProductCharFunc phit = tilde(phi);
  Matrix recon = inverse_transform(phit, SpinSlot{state.j1, true},
                                   SpinSlot{state.j2, false}, quad);
  Matrix direct = partial_transpose_left(state.rho.matrix(), dl, dr);
  PptReport r;
  r.reconstruction_deviation = max_abs(recon - direct);
  r.group_verdict = psd_verdict_of(recon, psd_tolerance);
  r.direct_verdict = psd_verdict_of(direct, psd_tolerance);
  r.agree = r.group_verdict.is_psd == r.direct_verdict.is_psd;
  return r;
}

PptReport group_ppt_test(const DensityMatrix& rho, const FiniteIrrep& pi,
                         const FiniteIrrep& tau, double psd_tolerance) {
  FiniteProductCharFunc phi =
      FiniteProductCharFunc::from_operator(rho.matrix(), pi, tau);
  FiniteProductCharFunc phit = tilde(phi);
  Matrix recon = inverse_transform(phit, pi, /*conj1=*/true, tau,
                                   /*conj2=*/false);
  Matrix direct = partial_transpose_left(rho.matrix(), pi.dim(), tau.dim());
  PptReport r;
  r.reconstruction_deviation = max_abs(recon - direct);
  r.group_verdict = psd_verdict_of(recon, psd_tolerance);
  r.direct_verdict = psd_verdict_of(direct, psd_tolerance);
  r.agree = r.group_verdict.is_psd == r.direct_verdict.is_psd;
  return r;
}

// ---------------------------------------------------------------------------
// pure products

PureProductReport pure_product_test(const Vector& psi, Spin j1, Spin j2,
                                    const HaarQuadrature& quad,
                                    double tolerance) {
  const int dl = j1.dim();
  const int dr = j2.dim();
  if (psi.size() != dl * dr)
    throw DimensionMismatchError("pure_product_test: psi has dim " +
                                 std::to_string(psi.size()) + " != " +
                                 std::to_string(dl * dr));
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw ParameterOutOfRangeError("pure_product_test: psi not normalized");
  const int needed = std::max(2 * j1.twice(), 2 * j2.twice());
  if (quad.degree() < needed)
    throw QuadratureTooCoarseError(
        "pure_product_test: quadrature degree " +
        std::to_string(quad.degree()) + " < 4j = " + std::to_string(needed));

  Matrix rho = psi * psi.adjoint();
  SU2ProductCharFunc phi = forward_transform(rho, j1, j2);
  const SU2Element e = SU2Element::identity();
  double i1 = 0.0, i2 = 0.0;
  const auto& nodes = quad.nodes();
  const auto& weights = quad.weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    i1 += weights[i] * double(dl) * std::norm(phi.evaluate(nodes[i], e));
    i2 += weights[i] * double(dr) * std::norm(phi.evaluate(e, nodes[i]));
  }

  PureProductReport r;
  r.i1 = i1;
  r.i2 = i2;
  Matrix red_l = partial_trace_right(rho, dl, dr);
  Matrix red_r = partial_trace_left(rho, dl, dr);
  r.purity_left = (red_l * red_l).trace().real();
  r.purity_right = (red_r * red_r).trace().real();
  r.is_product =
      std::abs(i1 - 1.0) <= tolerance && std::abs(i2 - 1.0) <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// abelian restriction

double AbelianSpectrum::sum() const {
  double s = 0.0;
  for (const auto& [kl, v] : coefficients) s += v;
  return s;
}

double AbelianSpectrum::min_coefficient() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [kl, v] : coefficients) m = std::min(m, v);
  return m;
}

double AbelianSpectrum::at(int k, int l) const {
  for (const auto& [kl, v] : coefficients)
    if (kl.first == k && kl.second == l) return v;
  return 0.0;
}

namespace {

SU2Element torus_element(double theta) {
  return SU2Element(std::exp(Cplx(0.0, -theta)), 0.0);
}

}  // namespace

AbelianSpectrum abelian_restriction(const SU2ProductCharFunc& phi) {
  const auto [b1, b2] = phi.band_limits();
  // grids large enough to resolve every integer frequency up to the band
  const int n1 = 2 * b1 + 3;
  const int n2 = 2 * b2 + 3;
  const double two_pi = 2.0 * std::numbers::pi;
  Matrix vals(n1, n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      vals(a, b) = phi.evaluate(torus_element(two_pi * a / n1),
                                torus_element(two_pi * b / n2));
  auto coefficient = [&](int k, int l) {
    Cplx acc = 0.0;
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        acc += vals(a, b) * std::exp(Cplx(0.0, two_pi * (k * a / double(n1) +
                                                         l * b / double(n2))));
    return acc / (double(n1) * double(n2));
  };

  AbelianSpectrum s;
  s.twice_j1 = b1;
  s.twice_j2 = b2;
  for (int k = -b1; k <= b1; ++k)
    for (int l = -b2; l <= b2; ++l) {
      Cplx c = coefficient(k, l);
      const bool on_lattice =
          ((k + b1) % 2 == 0) && ((l + b2) % 2 == 0);
      if (!on_lattice) {
        s.off_lattice_max = std::max(s.off_lattice_max, std::abs(c));
        continue;
      }
      s.max_imag_residue = std::max(s.max_imag_residue, std::abs(c.imag()));
      double v = c.real();
      if (v < -1e-10)
        throw NegativeCoefficientError(
            "abelian_restriction: coefficient (" + std::to_string(k) + "," +
                std::to_string(l) + ") = " + std::to_string(v) +
                " is negative; input is not positive definite",
            k, l, v);
      s.coefficients.push_back({{k, l}, v});
    }
  const double total = s.sum();
  if (std::abs(total - 1.0) > 1e-10)
    throw NotNormalizedError(
        "abelian_restriction: coefficients sum to " + std::to_string(total));
  return s;
}

// ---------------------------------------------------------------------------
// separable decompositions

void SeparableDecomposition::validate(double tolerance) const {
  if (weights.size() != left.size() || weights.size() != right.size())
    throw DimensionMismatchError(
        "decomposition: weights/left/right lengths differ");
  if (weights.empty())
    throw ParameterOutOfRangeError("decomposition: no terms");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12)
      throw ParameterOutOfRangeError("decomposition: negative weight " +
                                     std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > tolerance)
    throw NotNormalizedError("decomposition: weights sum to " +
                             std::to_string(sum));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (left[i].size() != left[0].size() || right[i].size() != right[0].size())
      throw DimensionMismatchError("decomposition: ragged vector dimensions");
    if (std::abs(left[i].norm() - 1.0) > 1e-8 ||
        std::abs(right[i].norm() - 1.0) > 1e-8)
      throw ParameterOutOfRangeError("decomposition: vectors must be unit norm");
  }
}

namespace {

// <u| R(g) |u> evaluated on a node list
Vector extreme_point_values(const Vector& u, Spin j,
                            const std::vector<SU2Element>& nodes) {
  Vector out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out[i] = (u.adjoint() * spin_matrix(j, nodes[i]) * u)(0, 0);
  return out;
}

Vector extreme_point_values(const Vector& u, const FiniteIrrep& rep) {
  Vector out(rep.group().order());
  for (int g = 0; g < rep.group().order(); ++g)
    out[g] = (u.adjoint() * rep.at(g) * u)(0, 0);
  return out;
}

std::vector<std::size_t> stride_sample(std::size_t n, std::size_t cap) {
  std::vector<std::size_t> idx;
  const std::size_t stride = std::max<std::size_t>(1, n / cap);
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  return idx;
}

}  // namespace

DecompositionCheck verify_separable_decomposition(
    const SU2ProductCharFunc& phi, const SeparableDecomposition& dec, Spin j1,
    Spin j2, const HaarQuadrature& quad, double tolerance) {
  dec.validate();
  if (dec.left[0].size() != j1.dim() || dec.right[0].size() != j2.dim())
    throw DimensionMismatchError(
        "verify_separable_decomposition: vector dims do not match the spins");
  // grid: pairs from a stride-thinned copy of the quadrature nodes
  std::vector<std::size_t> idx = stride_sample(quad.size(), 140);
  std::vector<SU2Element> nodes;
  nodes.reserve(idx.size());
  for (std::size_t i : idx) nodes.push_back(quad.nodes()[i]);

  std::vector<Vector> kappas, etas;
  for (std::size_t t = 0; t < dec.term_count(); ++t) {
    kappas.push_back(extreme_point_values(dec.left[t], j1, nodes));
    etas.push_back(extreme_point_values(dec.right[t], j2, nodes));
  }
  DecompositionCheck c;
  c.term_count = dec.term_count();
  const std::size_t m = j1.dim(), n = j2.dim();
  c.caratheodory_bound = m * m * n * n;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      Cplx rec = 0.0;
      for (std::size_t t = 0; t < dec.term_count(); ++t)
        rec += dec.weights[t] * kappas[t][a] * etas[t][b];
      c.max_deviation = std::max(
          c.max_deviation, std::abs(rec - phi.evaluate(nodes[a], nodes[b])));
    }
  c.matches = c.max_deviation <= tolerance;
  return c;
}

DecompositionCheck verify_separable_decomposition(
    const FiniteProductCharFunc& phi, const SeparableDecomposition& dec,
    const FiniteIrrep& pi, const FiniteIrrep& tau, double tolerance) {
  dec.validate();
  if (dec.left[0].size() != pi.dim() || dec.right[0].size() != tau.dim())
    throw DimensionMismatchError(
        "verify_separable_decomposition: vector dims do not match the irreps");
  const int n = phi.group().order();
  std::vector<Vector> kappas, etas;
  for (std::size_t t = 0; t < dec.term_count(); ++t) {
    kappas.push_back(extreme_point_values(dec.left[t], pi));
    etas.push_back(extreme_point_values(dec.right[t], tau));
  }
  DecompositionCheck c;
  c.term_count = dec.term_count();
  const std::size_t m = pi.dim(), nn = tau.dim();
  c.caratheodory_bound = m * m * nn * nn;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Cplx rec = 0.0;
      for (std::size_t t = 0; t < dec.term_count(); ++t)
        rec += dec.weights[t] * kappas[t][a] * etas[t][b];
      c.max_deviation =
          std::max(c.max_deviation, std::abs(rec - phi.evaluate(a, b)));
    }
  c.matches = c.max_deviation <= tolerance;
  return c;
}

EmbeddingReport phi_matrix_embedding(const SeparableDecomposition& dec,
                                     const FiniteIrrep& pi,
                                     const FiniteIrrep& tau, double tolerance) {
  dec.validate();
  if (!(pi.group() == tau.group()))
    throw DimensionMismatchError("phi_matrix_embedding: group mismatch");
  const FiniteGroup& group = pi.group();
  const int n = group.order();

  std::vector<Vector> kappas, etas;
  for (std::size_t t = 0; t < dec.term_count(); ++t) {
    kappas.push_back(extreme_point_values(dec.left[t], pi));
    etas.push_back(extreme_point_values(dec.right[t], tau));
  }
  Matrix values = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < dec.term_count(); ++t)
    values += dec.weights[t] * (kappas[t] * etas[t].transpose());
  FiniteProductCharFunc phi(group, values);

  EmbeddingReport rep;
  rep.big_phi = phi.big_phi();
  Matrix sum = Matrix::Zero(n * n, n * n);
  auto gram = [&](const Vector& v) {
    Matrix m(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(a, b) = v[group.sigma(a, b)];
    return m;
  };
  for (std::size_t t = 0; t < dec.term_count(); ++t) {
    Matrix k = gram(kappas[t]);
    Matrix nn = gram(etas[t]);
    rep.left_psd.push_back(psd_verdict_of(k));
    rep.right_psd.push_back(psd_verdict_of(nn));
    sum += dec.weights[t] * kron(k, nn);
  }
  rep.max_deviation = max_abs(rep.big_phi - sum);
  rep.equal = rep.max_deviation <= tolerance;
  rep.trace_error =
      std::abs(rep.big_phi.trace() / (double(n) * double(n)) - Cplx(1.0, 0.0));
  return rep;
}

PsdVerdict phi_partial_transpose_test(const FiniteProductCharFunc& phi,
                                      double tolerance) {
  const int n = phi.group().order();
  Matrix big = phi.big_phi();
  Matrix big_tilde = tilde(phi).big_phi();
  // the tilde matrix must equal the left partial transpose entry for entry
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap)
      for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp)
          if (big_tilde(a * n + ap, b * n + bp) != big(b * n + ap, a * n + bp))
            throw Error(
                "phi_partial_transpose_test: tilde/index-swap identity "
                "violated (internal invariant)");
  return psd_verdict_of(big_tilde, tolerance);
}

// ---------------------------------------------------------------------------
// LHV-form probabilities

LhvReport lhv_probability(const SU2ProductCharFunc& phi,
                          const std::vector<Matrix>& left_projectors,
                          const std::vector<Matrix>& right_projectors,
                          Spin j1, Spin j2, const HaarQuadrature& quad) {
  const int dl = j1.dim();
  const int dr = j2.dim();
  auto check_family = [](const std::vector<Matrix>& ps, int dim,
                         const char* side) {
    if (ps.empty())
      throw IncompleteProjectorFamilyError(std::string(side) +
                                           " projector family is empty");
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& p : ps) {
      if (p.rows() != dim || p.cols() != dim)
        throw DimensionMismatchError(std::string(side) +
                                     " projector has wrong dimension");
      if (hermiticity_error(p) > 1e-10 || max_abs(p * p - p) > 1e-10)
        throw IncompleteProjectorFamilyError(
            std::string(side) + " family contains a non-projector");
      sum += p;
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        if (max_abs(ps[i] * ps[j]) > 1e-10)
          throw IncompleteProjectorFamilyError(
              std::string(side) + " family is not mutually orthogonal");
    if (max_abs(sum - Matrix::Identity(dim, dim)) > 1e-10)
      throw IncompleteProjectorFamilyError(std::string(side) +
                                           " family does not sum to identity");
  };
  check_family(left_projectors, dl, "left");
  check_family(right_projectors, dr, "right");
  const auto [b1, b2] = phi.band_limits();
  const int needed = std::max(b1 + j1.twice(), b2 + j2.twice());
  if (quad.degree() < needed)
    throw QuadratureTooCoarseError("lhv_probability: quadrature degree " +
                                   std::to_string(quad.degree()) +
                                   " < required " + std::to_string(needed));

  // response-function kernels K(mu)[q,p] = d * int tau_{qp}(g) R(mu,g) dg,
  // R(mu,g) = tr[P_mu tau(g)^dagger]
  auto kernels = [&](const std::vector<Matrix>& ps, Spin j) {
    const int d = j.dim();
    std::vector<Matrix> ks(ps.size(), Matrix::Zero(d, d));
    for (std::size_t i = 0; i < quad.size(); ++i) {
      Matrix t = spin_matrix(j, quad.nodes()[i]);
      Matrix tdag = t.adjoint();
      for (std::size_t mu = 0; mu < ps.size(); ++mu) {
        Cplx response = (ps[mu] * tdag).trace();
        ks[mu] += (quad.weights()[i] * double(d) * response) * t;
      }
    }
    return ks;
  };
  std::vector<Matrix> k_left = kernels(left_projectors, j1);
  std::vector<Matrix> k_right = kernels(right_projectors, j2);

  LhvReport rep;
  rep.table.resize(left_projectors.size(), right_projectors.size());
  for (std::size_t mu = 0; mu < left_projectors.size(); ++mu)
    for (std::size_t nu = 0; nu < right_projectors.size(); ++nu) {
      Cplx acc = 0.0;
      for (const auto& [key, block] : phi.blocks()) {
        if (key.first != j1 || key.second != j2)
          throw DimensionMismatchError(
              "lhv_probability: phi block support does not match the given "
              "representations");
        const int da = key.first.dim();
        const int db = key.second.dim();
        for (int p = 0; p < da; ++p)
          for (int r = 0; r < db; ++r)
            for (int q = 0; q < da; ++q)
              for (int s = 0; s < db; ++s)
                acc += block(p * db + r, q * db + s) * k_left[mu](q, p) *
                       k_right[nu](s, r);
      }
      rep.max_imag_residue =
          std::max(rep.max_imag_residue, std::abs(acc.imag()));
      rep.table(mu, nu) = acc.real();
    }
  rep.row_marginals = rep.table.rowwise().sum();
  rep.col_marginals = rep.table.colwise().sum();
  rep.total = rep.table.sum();
  return rep;
}

}  // namespace nccf
