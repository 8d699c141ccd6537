#include "nccf/representations.hpp"

#include <cmath>
#include <numbers>

#include "nccf/errors.hpp"

namespace nccf {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

namespace detail {

Matrix spin_matrix_poly(int twice_j, Cplx alpha, Cplx beta) {
  const int dim = twice_j + 1;
  Matrix m(dim, dim);
  const Cplx ac = std::conj(alpha);
  const Cplx bc = std::conj(beta);
  // powers up to 2j of each parameter
  std::vector<Cplx> pa(dim + 1, 1.0), pb(dim + 1, 1.0), pac(dim + 1, 1.0),
      pmbc(dim + 1, 1.0);
  for (int i = 1; i <= twice_j; ++i) {
    pa[i] = pa[i - 1] * alpha;
    pb[i] = pb[i - 1] * beta;
    pac[i] = pac[i - 1] * ac;
    pmbc[i] = pmbc[i - 1] * (-bc);
  }
  for (int r = 0; r < dim; ++r) {    // r = mu + j
    for (int c = 0; c < dim; ++c) {  // c = nu + j
      const int a = twice_j - c;     // j - nu
      const int b = c;               // j + nu
      const int mm = twice_j - r;    // j - mu
      Cplx s = 0.0;
      const int p_lo = std::max(0, mm - b);
      const int p_hi = std::min(a, mm);
      for (int p = p_lo; p <= p_hi; ++p)
        s += binomial(a, p) * binomial(b, mm - p) * pa[p] * pb[a - p] *
             pmbc[mm - p] * pac[b - mm + p];
      // orthonormal-basis rescaling makes the matrix unitary
      m(r, c) = s * std::sqrt(binomial(twice_j, c) / binomial(twice_j, r));
    }
  }
  return m;
}

}  // namespace detail

Matrix spin_matrix(Spin j, const SU2Element& g) {
  return detail::spin_matrix_poly(j.twice(), g.alpha(), g.beta());
}

Matrix spin_matrix_conj(Spin j, const SU2Element& g) {
  return spin_matrix(j, g).conjugate();
}

Matrix spin_conjugation_intertwiner(Spin j) {
  return spin_matrix(j, su2_conjugation_element());
}

Matrix ProductSpinRep::eval(const SU2Element& g1, const SU2Element& g2) const {
  return kron(spin_matrix(left, g1), spin_matrix(right, g2));
}

// ---------------------------------------------------------------------------
// FiniteIrrep

FiniteIrrep::FiniteIrrep(FiniteGroup group, std::vector<Matrix> matrices,
                         std::string label)
    : group_(std::move(group)),
      matrices_(std::move(matrices)),
      label_(std::move(label)) {
  const int n = group_.order();
  if (static_cast<int>(matrices_.size()) != n)
    throw DimensionMismatchError("irrep: " + std::to_string(matrices_.size()) +
                                 " matrices for group of order " +
                                 std::to_string(n));
  const Eigen::Index d = matrices_[0].rows();
  for (const Matrix& m : matrices_) {
    if (m.rows() != d || m.cols() != d)
      throw DimensionMismatchError("irrep: inconsistent matrix dimensions");
    double u = max_abs(m * m.adjoint() - Matrix::Identity(d, d));
    if (u > tol::rep_check)
      throw ParameterOutOfRangeError(
          "irrep: matrix not unitary, deviation " + std::to_string(u));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double h =
          max_abs(matrices_[group_.multiply(a, b)] - matrices_[a] * matrices_[b]);
      if (h > tol::rep_check)
        throw ParameterOutOfRangeError(
            "irrep: homomorphism fails at (" + std::to_string(a) + "," +
            std::to_string(b) + "), deviation " + std::to_string(h));
    }
  double norm = 0.0;
  for (int a = 0; a < n; ++a) norm += std::norm(character(a));
  norm /= n;
  if (std::abs(norm - 1.0) > tol::irreducibility)
    throw ParameterOutOfRangeError(
        "irrep: reducible, character norm " + std::to_string(norm));
}

FiniteIrrep conjugate_rep(const FiniteIrrep& rep) {
  std::vector<Matrix> mats;
  mats.reserve(rep.matrices().size());
  for (const Matrix& m : rep.matrices()) mats.push_back(m.conjugate());
  std::string label = rep.label().empty() ? "" : rep.label() + "~conj";
  return FiniteIrrep(rep.group(), std::move(mats), std::move(label));
}

ProductFiniteRep tensor_rep(const FiniteIrrep& pi, const FiniteIrrep& tau) {
  if (!(pi.group() == tau.group()))
    throw DimensionMismatchError("tensor_rep: irreps over different groups");
  return {pi, tau};
}

// ---------------------------------------------------------------------------
// Built-in groups

namespace {

BuiltinGroup make_cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  FiniteGroup g = FiniteGroup::from_cayley(table);
  std::vector<FiniteIrrep> irreps;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < n; ++k) {
    std::vector<Matrix> mats(n, Matrix(1, 1));
    for (int a = 0; a < n; ++a)
      mats[a](0, 0) = std::exp(Cplx(0.0, -two_pi * k * a / n));
    irreps.emplace_back(g, std::move(mats), "chi" + std::to_string(k));
  }
  return {"Z" + std::to_string(n), std::move(g), std::move(irreps)};
}

BuiltinGroup make_s3() {
  // permutations of {0,1,2} in lexicographic one-line order; composition
  // convention (g*h)(x) = g(h(x))
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      table[a][b] = index_of(c);
    }
  FiniteGroup g = FiniteGroup::from_cayley(table);

  std::vector<FiniteIrrep> irreps;
  std::vector<Matrix> triv(6, Matrix::Identity(1, 1));
  irreps.emplace_back(g, std::move(triv), "trivial");

  std::vector<Matrix> sign(6, Matrix(1, 1));
  for (int a = 0; a < 6; ++a) {
    int inversions = 0;
    for (int x = 0; x < 3; ++x)
      for (int y = x + 1; y < 3; ++y)
        if (perms[a][x] > perms[a][y]) ++inversions;
    sign[a](0, 0) = (inversions % 2) ? -1.0 : 1.0;
  }
  irreps.emplace_back(g, std::move(sign), "sign");

  // standard 2-dim representation: permutation action restricted to the
  // orthogonal complement of (1,1,1)
  Eigen::Matrix<double, 3, 2> basis;
  basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),  //
      -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),      //
      0.0, -2.0 / std::sqrt(6.0);
  std::vector<Matrix> std2(6);
  for (int a = 0; a < 6; ++a) {
    Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
    for (int x = 0; x < 3; ++x) p(perms[a][x], x) = 1.0;
    std2[a] = (basis.transpose() * p * basis).cast<Cplx>();
  }
  irreps.emplace_back(g, std::move(std2), "standard");
  return {"S3", std::move(g), std::move(irreps)};
}

BuiltinGroup make_d4() {
  // elements r^k s^m, ordered e, r, r2, r3, s, rs, r2s, r3s; r = quarter-turn,
  // s = reflection, realized as integer 2x2 matrices
  auto matmul = [](const std::array<int, 4>& x, const std::array<int, 4>& y) {
    return std::array<int, 4>{x[0] * y[0] + x[1] * y[2],  //
                              x[0] * y[1] + x[1] * y[3],  //
                              x[2] * y[0] + x[3] * y[2],  //
                              x[2] * y[1] + x[3] * y[3]};
  };
  const std::array<int, 4> e{1, 0, 0, 1}, r{0, -1, 1, 0}, s{1, 0, 0, -1};
  std::vector<std::array<int, 4>> elems;
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < 4; ++k) {
      std::array<int, 4> v = e;
      for (int i = 0; i < k; ++i) v = matmul(r, v);
      if (m) v = matmul(v, s);
      elems.push_back(v);
    }
  auto index_of = [&](const std::array<int, 4>& v) {
    for (int i = 0; i < 8; ++i)
      if (elems[i] == v) return i;
    return -1;
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a][b] = index_of(matmul(elems[a], elems[b]));
  FiniteGroup g = FiniteGroup::from_cayley(table);

  std::vector<FiniteIrrep> irreps;
  const std::array<std::pair<int, int>, 4> signs = {
      {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  for (int i = 0; i < 4; ++i) {
    std::vector<Matrix> mats(8, Matrix(1, 1));
    for (int m = 0; m < 2; ++m)
      for (int k = 0; k < 4; ++k) {
        double v = std::pow(double(signs[i].first), k) *
                   std::pow(double(signs[i].second), m);
        mats[m * 4 + k](0, 0) = v;
      }
    irreps.emplace_back(g, std::move(mats), "chi" + std::to_string(i));
  }
  std::vector<Matrix> def(8);
  for (int a = 0; a < 8; ++a) {
    Matrix m(2, 2);
    m << double(elems[a][0]), double(elems[a][1]), double(elems[a][2]),
        double(elems[a][3]);
    def[a] = m;
  }
  irreps.emplace_back(g, std::move(def), "defining");
  return {"D4", std::move(g), std::move(irreps)};
}

}  // namespace

BuiltinGroup builtin_group(const std::string& name) {
  auto build = [&]() -> BuiltinGroup {
    if (name == "S3") return make_s3();
    if (name == "D4") return make_d4();
    if (name.size() >= 2 && name[0] == 'Z') {
      int n = 0;
      try {
        n = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        throw UnknownGroupError("unknown group '" + name + "'");
      }
      if (n < 1)
        throw UnknownGroupError("cyclic order must be >= 1 in '" + name + "'");
      return make_cyclic(n);
    }
    throw UnknownGroupError("unknown group '" + name +
                            "' (builtins: Zn, S3, D4)");
  };
  BuiltinGroup out = build();
  int sum = 0;
  for (const FiniteIrrep& r : out.irreps) sum += r.dim() * r.dim();
  if (sum != out.group.order())
    throw IncompleteIrrepListError("builtin " + name +
                                   ": sum d^2 != N");  // unreachable by design
  return out;
}

}  // namespace nccf
