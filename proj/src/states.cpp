#include "nccf/states.hpp"

#include <cmath>
#include <numbers>

#include "nccf/errors.hpp"

namespace nccf {

DensityMatrix horodecki_3x3(double a) {
  if (a < 0.0 || a > 1.0)
    throw ParameterOutOfRangeError("horodecki_3x3: a = " + std::to_string(a) +
                                   " outside [0,1]");
  Matrix m = Matrix::Zero(9, 9);
  for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = a;
  m(6, 6) = (1.0 + a) / 2.0;
  m(8, 8) = (1.0 + a) / 2.0;
  m(0, 4) = m(4, 0) = a;
  m(0, 8) = m(8, 0) = a;
  m(4, 8) = m(8, 4) = a;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  return DensityMatrix(m / (8.0 * a + 1.0));
}

Cplx horodecki_charfunc(double a, const SU2Element& g1, const SU2Element& g2,
                        HorodeckiReading reading) {
  if (a < 0.0 || a > 1.0)
    throw ParameterOutOfRangeError("horodecki_charfunc: a outside [0,1]");
  const Cplx a1 = g1.alpha(), b1 = g1.beta();
  const Cplx a2 = g2.alpha(), b2 = g2.beta();
  const Cplx a1c = std::conj(a1), b1c = std::conj(b1);
  const Cplx a2c = std::conj(a2), b2c = std::conj(b2);
  const double m1 = std::norm(a1) - std::norm(b1);
  const double m2 = std::norm(a2) - std::norm(b2);
  // bilinear terms carry coefficient 2 in the unitary normalization of the
  // spin-1 matrix elements
  const Cplx bracket = (a1 * a1 + 0.5 * a1c * a1c) * (a2 * a2 + a2c * a2c) +
                       (b1 * b2) * (b1 * b2) + (b1c * b2c) * (b1c * b2c) +
                       2.0 * a1 * b1 * a2 * b2 +
                       2.0 * std::conj(a1 * b1 * a2 * b2) +
                       2.0 * a1 * b1c * a2 * b2c + 2.0 * a1c * b1 * a2c * b2 +
                       (a1 * a1 + a1c * a1c) * m2 +
                       m1 * (a2 * a2 + a2c * a2c) + m1 * m2;
  const Cplx tail = std::sqrt(1.0 - a * a) / 2.0 * a1c * a1c *
                        (b2 * b2 + b2c * b2c) +
                    0.5 * a1c * a1c * (a2 * a2 + a2c * a2c);
  if (reading == HorodeckiReading::PrefactorScoped)
    return (a * bracket + tail) / (8.0 * a + 1.0);
  return a / (8.0 * a + 1.0) * bracket + tail;
}

// ---------------------------------------------------------------------------

Vector singlet_vector() { return bell_vector(3); }

DensityMatrix singlet() { return DensityMatrix::from_pure(singlet_vector()); }

Vector bell_vector(int which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case 0: v[0] = s; v[3] = s; break;        // phi+
    case 1: v[0] = s; v[3] = -s; break;       // phi-
    case 2: v[1] = s; v[2] = s; break;        // psi+
    case 3: v[1] = s; v[2] = -s; break;       // psi- (singlet)
    default:
      throw ParameterOutOfRangeError("bell_vector: index must be 0..3");
  }
  return v;
}

DensityMatrix werner(double p) {
  if (p < 0.0 || p > 1.0)
    throw ParameterOutOfRangeError("werner: p outside [0,1]");
  Vector s = singlet_vector();
  Matrix m = p * (s * s.adjoint()) + (1.0 - p) / 4.0 * Matrix::Identity(4, 4);
  return DensityMatrix(m);
}

DensityMatrix isotropic(double p, int d) {
  if (p < 0.0 || p > 1.0)
    throw ParameterOutOfRangeError("isotropic: p outside [0,1]");
  if (d < 2) throw ParameterOutOfRangeError("isotropic: d must be >= 2");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(double(d));
  Matrix m = p * (v * v.adjoint()) +
             (1.0 - p) / double(d * d) * Matrix::Identity(d * d, d * d);
  return DensityMatrix(m);
}

DensityMatrix product_pure(const Vector& u, const Vector& v) {
  if (u.size() == 0 || v.size() == 0)
    throw ParameterOutOfRangeError("product_pure: empty vector");
  Vector un = u / u.norm();
  Vector vn = v / v.norm();
  Vector w(un.size() * vn.size());
  for (Eigen::Index i = 0; i < un.size(); ++i)
    for (Eigen::Index k = 0; k < vn.size(); ++k)
      w[i * vn.size() + k] = un[i] * vn[k];
  return DensityMatrix::from_pure(w);
}

DensityMatrix max_mixed(int dim) {
  if (dim < 1) throw ParameterOutOfRangeError("max_mixed: dim must be >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / double(dim));
}

Vector schmidt_pair_vector(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw ParameterOutOfRangeError("schmidt_pair: lambda outside [0,1]");
  Vector v = Vector::Zero(4);
  v[0] = std::sqrt(lambda);
  v[3] = std::sqrt(1.0 - lambda);
  return v;
}

DensityMatrix schmidt_pair(double lambda) {
  return DensityMatrix::from_pure(schmidt_pair_vector(lambda));
}

// ---------------------------------------------------------------------------
// deterministic sampling

double GaussianRng::uniform01() {
  // 53-bit mantissa, shifted into (0,1]
  return (double(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u = uniform01();
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double t = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Cplx GaussianRng::complex_normal() {
  const double s = 1.0 / std::sqrt(2.0);
  double re = normal();
  double im = normal();
  return Cplx(s * re, s * im);
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim)
    throw ParameterOutOfRangeError("random_density: need 1 <= rank <= dim");
  GaussianRng rng(seed);
  Matrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < rank; ++k) g(i, k) = rng.complex_normal();
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()) / 2.0;  // scrub rounding asymmetry
  return DensityMatrix(m);
}

Vector random_pure(int dim, std::uint64_t seed) {
  if (dim < 1) throw ParameterOutOfRangeError("random_pure: dim must be >= 1");
  GaussianRng rng(seed);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1)
    throw ParameterOutOfRangeError("random_unitary: dim must be >= 1");
  GaussianRng rng(seed);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) g(i, k) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase convention so Q is unique given G
  for (int i = 0; i < dim; ++i) {
    Cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace nccf
