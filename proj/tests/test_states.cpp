#include <catch2/catch_amalgamated.hpp>

#include "nccf/errors.hpp"
#include "nccf/separability.hpp"
#include "nccf/states.hpp"
#include "test_support.hpp"

using namespace nccf;
using test::SU2Sampler;

TEST_CASE("horodecki state at the endpoints", "[states]") {
  // a = 0: rank-one projector onto (e7 + e9)/sqrt(2), a product vector
  DensityMatrix rho0 = horodecki_3x3(0.0);
  Vector psi = Vector::Zero(9);
  psi[6] = 1.0 / std::sqrt(2.0);
  psi[8] = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(rho0.matrix() - psi * psi.adjoint()) < 1e-14);
  // psi = |2> ⊗ (|0> + |2>)/sqrt(2): a product state
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      partial_trace_right(rho0.matrix(), 3, 3));
  CHECK(es.eigenvalues().maxCoeff() == Catch::Approx(1.0).margin(1e-12));

  // a = 1: the sqrt(1-a^2)/2 entries vanish
  DensityMatrix rho1 = horodecki_3x3(1.0);
  CHECK(std::abs(rho1.matrix()(6, 8)) < 1e-15);
  CHECK(std::abs(rho1.matrix().trace() - Cplx(1.0)) < 1e-14);

  CHECK_THROWS_AS(horodecki_3x3(-0.1), ParameterOutOfRangeError);
  CHECK_THROWS_AS(horodecki_3x3(1.1), ParameterOutOfRangeError);
}

TEST_CASE("horodecki state is PPT across the parameter range", "[states]") {
  for (double a = 0.1; a < 0.95; a += 0.1) {
    DensityMatrix rho = horodecki_3x3(a);
    PsdVerdict v = matrix_ppt_test(rho.matrix(), 3, 3);
    CHECK(v.min_eigenvalue >= -1e-12);
  }
}

TEST_CASE("horodecki entries are continuous in a", "[states]") {
  double prev_set = false;
  Matrix prev;
  for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.05) {
    Matrix m = horodecki_3x3(std::min(a, 1.0)).matrix();
    CHECK(m.allFinite());
    if (prev_set) CHECK(max_abs(m - prev) < 0.2);
    prev = m;
    prev_set = true;
  }
}

TEST_CASE("horodecki closed form matches the trace transform", "[states]") {
  SU2Sampler sample(61);
  const Spin one = Spin::from_twice(2);
  for (double a : {0.1, 0.5, 0.9}) {
    Matrix rho = horodecki_3x3(a).matrix();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      SU2Element g1 = sample(), g2 = sample();
      Cplx oracle = test::trace_oracle(rho, one, one, g1, g2);
      worst = std::max(worst,
                       std::abs(oracle - horodecki_charfunc(a, g1, g2)));
    }
    CHECK(worst < 1e-10);
  }
  // normalization phi(e,e) = 1
  CHECK(std::abs(horodecki_charfunc(0.3, SU2Element::identity(),
                                    SU2Element::identity()) -
                 1.0) < 1e-14);
}

TEST_CASE("the literal-tail reading disagrees with the transform",
          "[states]") {
  SU2Sampler sample(62);
  double worst = 0.0;
  Matrix rho = horodecki_3x3(0.5).matrix();
  for (int i = 0; i < 50; ++i) {
    SU2Element g1 = sample(), g2 = sample();
    Cplx oracle = test::trace_oracle(rho, Spin::from_twice(2),
                                     Spin::from_twice(2), g1, g2);
    worst = std::max(
        worst, std::abs(oracle - horodecki_charfunc(
                                     0.5, g1, g2,
                                     HorodeckiReading::LiteralTail)));
  }
  CHECK(worst > 0.01);  // the rejected transcription is pinned as wrong
}

TEST_CASE("horodecki charfunc conjugation symmetry", "[states]") {
  SU2Sampler sample(63);
  for (int i = 0; i < 100; ++i) {
    SU2Element g1 = sample(), g2 = sample();
    Cplx direct = horodecki_charfunc(0.4, g1, g2);
    Cplx inverted = horodecki_charfunc(0.4, g1.inverse(), g2.inverse());
    CHECK(std::abs(inverted - std::conj(direct)) < 1e-13);
  }
}

TEST_CASE("standard state recipes", "[states]") {
  CHECK(max_abs(max_mixed(3).matrix() - Matrix::Identity(3, 3) / 3.0) < 1e-15);

  Matrix w1 = werner(1.0).matrix();
  Vector s = singlet_vector();
  CHECK(max_abs(w1 - s * s.adjoint()) < 1e-14);
  CHECK_NOTHROW(werner(0.5));
  CHECK_THROWS_AS(werner(1.5), ParameterOutOfRangeError);

  // Bell vectors are orthonormal
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Cplx dot = bell_vector(i).adjoint() * bell_vector(k);
      CHECK(std::abs(dot - (i == k ? 1.0 : 0.0)) < 1e-14);
    }
  CHECK_THROWS_AS(bell_vector(4), ParameterOutOfRangeError);

  CHECK_NOTHROW(isotropic(0.7, 3));
  CHECK_THROWS_AS(isotropic(-0.1, 3), ParameterOutOfRangeError);

  // schmidt endpoints are products
  const HaarQuadrature& quad = test::quad_for_degree(2);
  for (double lambda : {0.0, 1.0}) {
    PureProductReport r = pure_product_test(
        schmidt_pair_vector(lambda), Spin::from_twice(1), Spin::from_twice(1),
        quad);
    CHECK(r.is_product);
  }
}

TEST_CASE("every recipe output is a valid density matrix", "[states]") {
  // constructors validate; reaching here without a throw is the assertion
  CHECK_NOTHROW(horodecki_3x3(0.37));
  CHECK_NOTHROW(werner(0.3));
  CHECK_NOTHROW(isotropic(0.9, 4));
  CHECK_NOTHROW(product_pure(random_pure(3, 640), random_pure(2, 641)));
  CHECK_NOTHROW(schmidt_pair(0.42));
  CHECK_NOTHROW(max_mixed(5));
  for (int d : {2, 3, 4, 5})
    for (int rank = 1; rank <= d; ++rank)
      CHECK_NOTHROW(random_density(d, rank, 642 + d * 10 + rank));
}

TEST_CASE("random density is reproducible and respects rank", "[states]") {
  Matrix a = random_density(4, 2, 7).matrix();
  Matrix b = random_density(4, 2, 7).matrix();
  CHECK(max_abs(a - b) == 0.0);  // bit-identical

  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) > 1e-12) ++rank;
  CHECK(rank == 2);

  Matrix c = random_density(4, 2, 8).matrix();
  CHECK(max_abs(a - c) > 1e-3);

  CHECK_THROWS_AS(random_density(2, 3, 1), ParameterOutOfRangeError);
}

TEST_CASE("random density golden values for seed 7", "[states]") {
  // regression anchor generated once from this implementation; guards the
  // generator against platform and refactoring drift
  Matrix a = random_density(4, 2, 7).matrix();
  CHECK(a(0, 0).real() == Catch::Approx(0.33164122669439433).epsilon(1e-12));
  CHECK(a(1, 0).real() == Catch::Approx(0.16558366902744748).epsilon(1e-12));
  CHECK(a(1, 0).imag() == Catch::Approx(0.067417200297914218).epsilon(1e-12));
  CHECK(a(3, 2).imag() == Catch::Approx(-0.11252379956938152).epsilon(1e-12));
}

TEST_CASE("random unitary is unitary and reproducible", "[states]") {
  Matrix u = random_unitary(3, 9);
  CHECK(max_abs(u * u.adjoint() - Matrix::Identity(3, 3)) < 1e-12);
  CHECK(max_abs(u - random_unitary(3, 9)) == 0.0);
}
