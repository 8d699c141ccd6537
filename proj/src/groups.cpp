#include "nccf/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nccf/errors.hpp"
#include "nccf/representations.hpp"

namespace nccf {

Spin Spin::from_value(double j) {
  double twice = 2.0 * j;
  double rounded = std::round(twice);
  if (j < -1e-9 || std::abs(twice - rounded) > 1e-9)
    throw InvalidSpinError("spin must be a non-negative half-integer, got " +
                           std::to_string(j));
  return Spin(static_cast<int>(rounded));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_transpose_left(const Matrix& m, int dim_left, int dim_right) {
  if (m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_left) * dim_right)
    throw DimensionMismatchError("partial_transpose_left: matrix is " +
                                 std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", dims are " +
                                 std::to_string(dim_left) + "x" +
                                 std::to_string(dim_right));
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_left; ++i)
    for (int j = 0; j < dim_left; ++j)
      out.block(j * dim_right, i * dim_right, dim_right, dim_right) =
          m.block(i * dim_right, j * dim_right, dim_right, dim_right);
  return out;
}

// ---------------------------------------------------------------------------
// SU2Element

SU2Element::SU2Element(Cplx alpha, Cplx beta) : alpha_(alpha), beta_(beta) {
  double n2 = std::norm(alpha_) + std::norm(beta_);
  if (std::abs(n2 - 1.0) > 1e-6)
    throw ParameterOutOfRangeError(
        "SU2Element: |alpha|^2+|beta|^2 = " + std::to_string(n2) +
        " is too far from 1 to renormalize");
  // keep already-normalized pairs bitwise intact (inverse and products of
  // unit pairs stay exact); renormalize only genuine drift
  if (std::abs(n2 - 1.0) > 1e-14) {
    double n = std::sqrt(n2);
    alpha_ /= n;
    beta_ /= n;
  }
}

SU2Element SU2Element::from_euler(double phi, double theta, double psi) {
  const Cplx i(0.0, 1.0);
  Cplx alpha = std::cos(theta / 2.0) * std::exp(-i * (phi + psi) / 2.0);
  Cplx beta = std::sin(theta / 2.0) * std::exp(-i * (phi - psi) / 2.0);
  return SU2Element(alpha, beta);
}

SU2Element SU2Element::operator*(const SU2Element& h) const {
  // product of the defining 2x2 matrices, read back off the first column
  return SU2Element(alpha_ * h.alpha_ - std::conj(beta_) * h.beta_,
                    beta_ * h.alpha_ + std::conj(alpha_) * h.beta_);
}

Eigen::Matrix2cd SU2Element::matrix() const {
  Eigen::Matrix2cd m;
  m << alpha_, -std::conj(beta_), beta_, std::conj(alpha_);
  return m;
}

std::array<double, 3> SU2Element::euler_angles() const {
  double theta = 2.0 * std::atan2(std::abs(beta_), std::abs(alpha_));
  double arg_a = std::abs(alpha_) > 0 ? std::arg(alpha_) : 0.0;
  double arg_b = std::abs(beta_) > 0 ? std::arg(beta_) : 0.0;
  // arg(alpha) = -(phi+psi)/2, arg(beta) = -(phi-psi)/2
  double phi = -(arg_a + arg_b);
  double psi = -(arg_a - arg_b);
  return {phi, theta, psi};
}

double SU2Element::distance(const SU2Element& h) const {
  return std::max(std::abs(alpha_ - h.alpha_), std::abs(beta_ - h.beta_));
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_cayley(
    const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroupError("empty Cayley table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw NotAGroupError("Cayley table is not square: row " +
                           std::to_string(a) + " has " +
                           std::to_string(table[a].size()) + " entries");
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n)
        throw NotAGroupError("entry out of range at [" + std::to_string(a) +
                             "][" + std::to_string(b) + "]");
  }
  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      if (row[table[a][b]])
        throw NotAGroupError("not a Latin square: repeated value in row " +
                             std::to_string(a));
      row[table[a][b]] = true;
      if (col[table[b][a]])
        throw NotAGroupError("not a Latin square: repeated value in column " +
                             std::to_string(a));
      col[table[b][a]] = true;
    }
  }
  // identity row/column at index 0
  for (int b = 0; b < n; ++b) {
    if (table[0][b] != b)
      throw NotAGroupError("element 0 is not a left identity: 0*" +
                           std::to_string(b) + " = " +
                           std::to_string(table[0][b]));
    if (table[b][0] != b)
      throw NotAGroupError("element 0 is not a right identity: " +
                           std::to_string(b) + "*0 = " +
                           std::to_string(table[b][0]));
  }
  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw NotAGroupError("associativity fails at (" + std::to_string(a) +
                               "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
  FiniteGroup g;
  g.order_ = n;
  g.cayley_ = table;
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0) {
        g.inverse_[a] = b;
        break;
      }
    if (g.inverse_[a] < 0)
      throw NotAGroupError("element " + std::to_string(a) + " has no inverse");
  }
  g.sigma_.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.sigma_[a][b] = table[g.inverse_[a]][b];
  // sigma diagonal and the cocycle law g_{s(a,b)} g_{s(b,c)} = g_{s(a,c)};
  // both follow from the axioms above, checked here so every published
  // invariant is verified before the object escapes
  for (int a = 0; a < n; ++a) {
    if (g.sigma_[a][a] != 0)
      throw NotAGroupError("cocycle diagonal broken at " + std::to_string(a));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[g.sigma_[a][b]][g.sigma_[b][c]] != g.sigma_[a][c])
          throw NotAGroupError("cocycle law broken at (" + std::to_string(a) +
                               "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
  }
  return g;
}

FiniteGroup FiniteGroup::parse(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n <= 0)
    throw ParseError("group file: expected positive order on first line", 1);
  std::vector<std::vector<int>> table(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v = 0;
      if (!(in >> v))
        throw ParseError("group file: expected " + std::to_string(n) +
                             " entries on table line " + std::to_string(a + 1),
                         a + 2, b + 1);
      if (v < 1 || v > n)
        throw ParseError("group file: entry " + std::to_string(v) +
                             " outside 1.." + std::to_string(n),
                         a + 2, b + 1);
      table[a][b] = v - 1;
    }
  return from_cayley(table);
}

FiniteGroup FiniteGroup::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

std::string FiniteGroup::to_text() const {
  std::ostringstream out;
  out << order_ << "\n";
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b)
      out << (b ? " " : "") << cayley_[a][b] + 1;
    out << "\n";
  }
  return out.str();
}

FiniteGroup FiniteGroup::relabel(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != order_)
    throw DimensionMismatchError("relabel: permutation length " +
                                 std::to_string(perm.size()) + " != order " +
                                 std::to_string(order_));
  if (perm[0] != 0)
    throw ParameterOutOfRangeError("relabel: identity must keep index 0");
  std::vector<int> seen(order_, 0), inv_perm(order_, 0);
  for (int i = 0; i < order_; ++i) {
    if (perm[i] < 0 || perm[i] >= order_ || seen[perm[i]]++)
      throw ParameterOutOfRangeError("relabel: not a permutation");
    inv_perm[perm[i]] = i;
  }
  std::vector<std::vector<int>> table(order_, std::vector<int>(order_, 0));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      table[a][b] = inv_perm[cayley_[perm[a]][perm[b]]];
  return from_cayley(table);
}

Cplx finite_haar_average(const FiniteGroup& group, const Vector& values) {
  if (values.size() != group.order())
    throw DimensionMismatchError(
        "finite_haar_average: " + std::to_string(values.size()) +
        " values for group of order " + std::to_string(group.order()));
  return values.sum() / static_cast<double>(group.order());
}

// ---------------------------------------------------------------------------
// HaarQuadrature

namespace {

// Golub-Welsch via the symmetric tridiagonal Jacobi matrix; plenty for the
// node counts used here.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    double first = es.eigenvectors()(0, i);
    w[i] = 2.0 * first * first;
  }
}

}  // namespace

HaarQuadrature HaarQuadrature::build(int exactness_degree,
                                     double validation_tol) {
  if (exactness_degree < 0)
    throw ParameterOutOfRangeError("quadrature degree must be >= 0");
  const int d = exactness_degree;
  const int n_phi = 2 * d + 2;
  const int n_psi = 2 * d + 2;
  const int n_theta = d + 1;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);

  HaarQuadrature q;
  q.degree_ = d;
  q.nodes_.reserve(static_cast<std::size_t>(n_phi) * n_psi * n_theta);
  q.weights_.reserve(q.nodes_.capacity());
  for (int ip = 0; ip < n_phi; ++ip) {
    double phi = two_pi * ip / n_phi;
    for (int it = 0; it < n_theta; ++it) {
      double theta = std::acos(x[it]);
      // Gauss-Legendre in cos(theta) absorbs the sin(theta) Haar factor
      double wt = w[it] / 2.0 / n_phi / n_psi;
      for (int iq = 0; iq < n_psi; ++iq) {
        double psi = 2.0 * two_pi * iq / n_psi;
        q.nodes_.push_back(SU2Element::from_euler(phi, theta, psi));
        q.weights_.push_back(wt);
      }
    }
  }

  double wsum = 0.0;
  for (double v : q.weights_) {
    if (v < 0.0)
      throw QuadratureValidationError("negative quadrature weight", -v);
    wsum += v;
  }
  if (std::abs(wsum - 1.0) > tol::construction)
    throw QuadratureValidationError(
        "quadrature weights sum to " + std::to_string(wsum),
        std::abs(wsum - 1.0));

  // Peter-Weyl validation over all spin pairs with 2j+2j' <= D.
  double worst = 0.0;
  const std::size_t n_nodes = q.nodes_.size();
  std::vector<Matrix> stacked;  // stacked[2j] is n_nodes x (2j+1)^2
  for (int tj = 0; tj <= d; ++tj) {
    const int dim = tj + 1;
    Matrix v(n_nodes, dim * dim);
    for (std::size_t g = 0; g < n_nodes; ++g) {
      Matrix t = spin_matrix(Spin::from_twice(tj), q.nodes_[g]);
      double sw = std::sqrt(q.weights_[g]);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) v(g, r * dim + c) = sw * t(r, c);
    }
    stacked.push_back(std::move(v));
  }
  for (int tj = 0; tj <= d; ++tj)
    for (int tk = tj; tk + tj <= d; ++tk) {
      Matrix gram = stacked[tj].adjoint() * stacked[tk];
      if (tj == tk)
        gram -= Matrix::Identity(gram.rows(), gram.cols()) / (tj + 1.0);
      worst = std::max(worst, max_abs(gram));
    }
  q.residual_ = worst;
  if (worst > validation_tol)
    throw QuadratureValidationError(
        "Peter-Weyl residual " + std::to_string(worst) + " exceeds tolerance",
        worst);
  return q;
}

}  // namespace nccf
