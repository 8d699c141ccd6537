#include <catch2/catch_amalgamated.hpp>

#include "nccf/errors.hpp"
#include "nccf/representations.hpp"
#include "test_support.hpp"

using namespace nccf;
using test::SU2Sampler;

TEST_CASE("spin matrix small cases", "[representations]") {
  SU2Sampler sample(31);
  SU2Element g = sample();

  CHECK(spin_matrix(Spin::from_twice(0), g)(0, 0) == Cplx(1.0));

  // j = 1/2 is the defining matrix itself
  Matrix half = spin_matrix(Spin::from_twice(1), g);
  CHECK((half - g.matrix()).cwiseAbs().maxCoeff() < 1e-14);

  // j = 1 in the unitary normalization, row by row
  const Cplx a = g.alpha(), b = g.beta();
  const double s2 = std::sqrt(2.0);
  Matrix one(3, 3);
  one << a * a, -s2 * a * std::conj(b), std::conj(b) * std::conj(b),  //
      s2 * a * b, std::norm(a) - std::norm(b), -s2 * std::conj(a * b),
      b * b, s2 * std::conj(a) * b, std::conj(a) * std::conj(a);
  CHECK((spin_matrix(Spin::from_twice(2), g) - one).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("spin 1 at alpha=0, beta=1", "[representations]") {
  SU2Element g(Cplx(0.0), Cplx(1.0));
  Matrix m = spin_matrix(Spin::from_twice(2), g);
  Matrix expected(3, 3);
  expected << 0, 0, 1, 0, -1, 0, 1, 0, 0;
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spin matrices are unitary and homomorphic", "[representations]") {
  SU2Sampler sample(32);
  for (int tj = 0; tj <= 5; ++tj) {
    Spin j = Spin::from_twice(tj);
    double worst_u = 0.0, worst_h = 0.0;
    for (int i = 0; i < 100; ++i) {
      SU2Element g = sample(), h = sample();
      Matrix mg = spin_matrix(j, g);
      worst_u = std::max(
          worst_u,
          max_abs(mg * mg.adjoint() - Matrix::Identity(j.dim(), j.dim())));
      worst_h = std::max(
          worst_h, max_abs(spin_matrix(j, g * h) - mg * spin_matrix(j, h)));
    }
    CHECK(worst_u < 1e-11);
    CHECK(worst_h < 1e-10);
  }
}

TEST_CASE("spin matrix entries are degree-2j homogeneous",
          "[representations]") {
  SU2Sampler sample(33);
  SU2Element g = sample();
  for (int tj : {1, 2, 3, 4}) {
    const double lambda = 1.7;
    Matrix scaled = detail::spin_matrix_poly(tj, lambda * g.alpha(),
                                             lambda * g.beta());
    Matrix base = detail::spin_matrix_poly(tj, g.alpha(), g.beta());
    CHECK(max_abs(scaled - std::pow(lambda, tj) * base) < 1e-10);
  }
}

TEST_CASE("conjugate representation intertwiner", "[representations]") {
  SU2Sampler sample(34);
  // u = -i sigma_y as an SU(2) element
  Eigen::Matrix2cd u_mat = su2_conjugation_element().matrix();
  Eigen::Matrix2cd expected_u;
  expected_u << 0, -1, 1, 0;
  CHECK((u_mat - expected_u).cwiseAbs().maxCoeff() < 1e-15);

  for (int tj = 0; tj <= 5; ++tj) {
    Spin j = Spin::from_twice(tj);
    Matrix c = spin_conjugation_intertwiner(j);
    for (int i = 0; i < 20; ++i) {
      SU2Element g = sample();
      Matrix lhs = spin_matrix(j, g).conjugate();
      Matrix rhs = c * spin_matrix(j, g) * c.adjoint();
      CHECK(max_abs(lhs - rhs) < 1e-12);
    }
    // measured sign of conj(C) C: +1 for integer spin, -1 for half-integer
    Matrix cc = c.conjugate() * c;
    double sign = (tj % 2 == 0) ? 1.0 : -1.0;
    CHECK(max_abs(cc - sign * Matrix::Identity(j.dim(), j.dim())) < 1e-13);
  }
}

TEST_CASE("builtin Z2", "[representations]") {
  const auto& z2 = test::builtin("Z2");
  REQUIRE(z2.irreps.size() == 2);
  CHECK(z2.irreps[0].character(0).real() == Catch::Approx(1.0));
  CHECK(z2.irreps[0].character(1).real() == Catch::Approx(1.0));
  CHECK(z2.irreps[1].character(0).real() == Catch::Approx(1.0));
  CHECK(z2.irreps[1].character(1).real() == Catch::Approx(-1.0));
}

TEST_CASE("builtin S3 structure", "[representations]") {
  const auto& s3 = test::builtin("S3");
  REQUIRE(s3.irreps.size() == 3);
  CHECK(s3.irreps[0].dim() == 1);
  CHECK(s3.irreps[1].dim() == 1);
  CHECK(s3.irreps[2].dim() == 2);
  // frozen Cayley table (permutation-composition oracle, see test_groups)
  const std::vector<std::vector<int>> expected = {
      {0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3}, {2, 3, 0, 1, 5, 4},
      {3, 2, 5, 4, 0, 1}, {4, 5, 1, 0, 3, 2}, {5, 4, 3, 2, 1, 0}};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(s3.group.multiply(a, b) == expected[a][b]);
  // frozen sample of the standard 2-dim irrep
  Matrix m1(2, 2);
  m1 << 0.5, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, -0.5;
  CHECK(max_abs(s3.irreps[2].at(1) - m1) < 1e-14);
  // irreducibility: character norm exactly 1
  double norm = 0.0;
  for (int g = 0; g < 6; ++g) norm += std::norm(s3.irreps[2].character(g));
  CHECK(norm / 6.0 == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("builtin D4 structure", "[representations]") {
  const auto& d4 = test::builtin("D4");
  REQUIRE(d4.irreps.size() == 5);
  int sum = 0;
  for (const auto& r : d4.irreps) sum += r.dim() * r.dim();
  CHECK(sum == 8);
  const std::vector<std::vector<int>> expected = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 0, 5, 6, 7, 4},
      {2, 3, 0, 1, 6, 7, 4, 5}, {3, 0, 1, 2, 7, 4, 5, 6},
      {4, 7, 6, 5, 0, 3, 2, 1}, {5, 4, 7, 6, 1, 0, 3, 2},
      {6, 5, 4, 7, 2, 1, 0, 3}, {7, 6, 5, 4, 3, 2, 1, 0}};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      CHECK(d4.group.multiply(a, b) == expected[a][b]);
}

TEST_CASE("builtin Zn characters and unknown groups", "[representations]") {
  const auto& z5 = test::builtin("Z5");
  CHECK(z5.irreps.size() == 5);
  CHECK_THROWS_AS(builtin_group("Q8"), UnknownGroupError);
  CHECK_THROWS_AS(builtin_group("Zx"), UnknownGroupError);
  CHECK_THROWS_AS(builtin_group("Z0"), UnknownGroupError);
}

TEST_CASE("finite Peter-Weyl orthogonality", "[representations]") {
  for (const char* name : {"S3", "D4"}) {
    const auto& bg = test::builtin(name);
    const int n = bg.group.order();
    double worst = 0.0;
    for (std::size_t k = 0; k < bg.irreps.size(); ++k)
      for (std::size_t k2 = 0; k2 < bg.irreps.size(); ++k2) {
        const auto& rk = bg.irreps[k];
        const auto& rk2 = bg.irreps[k2];
        for (int a = 0; a < rk.dim() * rk.dim(); ++a)
          for (int b = 0; b < rk2.dim() * rk2.dim(); ++b) {
            Cplx acc = 0.0;
            for (int g = 0; g < n; ++g)
              acc += rk.at(g)(a / rk.dim(), a % rk.dim()) *
                     std::conj(rk2.at(g)(b / rk2.dim(), b % rk2.dim()));
            acc *= double(rk.dim()) / n;
            Cplx expected = (k == k2 && a == b) ? Cplx(1.0) : Cplx(0.0);
            worst = std::max(worst, std::abs(acc - expected));
          }
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("conjugate_rep on finite irreps", "[representations]") {
  const auto& s3 = test::builtin("S3");
  // the standard rep is real, so its conjugate is itself
  FiniteIrrep conj2 = conjugate_rep(s3.irreps[2]);
  for (int g = 0; g < 6; ++g)
    CHECK(max_abs(conj2.at(g) - s3.irreps[2].at(g)) < 1e-14);
  // Z3: conj of chi_1 is chi_2
  const auto& z3 = test::builtin("Z3");
  FiniteIrrep conj1 = conjugate_rep(z3.irreps[1]);
  for (int g = 0; g < 3; ++g)
    CHECK(std::abs(conj1.at(g)(0, 0) - z3.irreps[2].at(g)(0, 0)) < 1e-14);
}

TEST_CASE("irrep construction rejects broken tables", "[representations]") {
  const auto& s3 = test::builtin("S3");
  std::vector<Matrix> mats = s3.irreps[2].matrices();
  mats[3](0, 0) += 0.5;  // breaks unitarity/homomorphism
  CHECK_THROWS_AS(FiniteIrrep(s3.group, mats), ParameterOutOfRangeError);
  // reducible: direct sum of trivial and sign
  std::vector<Matrix> red(6, Matrix::Zero(2, 2));
  for (int g = 0; g < 6; ++g) {
    red[g](0, 0) = s3.irreps[0].at(g)(0, 0);
    red[g](1, 1) = s3.irreps[1].at(g)(0, 0);
  }
  CHECK_THROWS_AS(FiniteIrrep(s3.group, red), ParameterOutOfRangeError);
}

TEST_CASE("tensor representation", "[representations]") {
  SU2Sampler sample(35);
  ProductSpinRep t = tensor_rep(Spin::from_twice(1), Spin::from_twice(2));
  CHECK(t.dim() == 6);
  Matrix at_identity = t.eval(SU2Element::identity(), SU2Element::identity());
  CHECK(max_abs(at_identity - Matrix::Identity(6, 6)) < 1e-14);

  // character multiplicativity
  SU2Element g1 = sample(), g2 = sample();
  Cplx chi = t.eval(g1, g2).trace();
  Cplx chi1 = spin_matrix(Spin::from_twice(1), g1).trace();
  Cplx chi2 = spin_matrix(Spin::from_twice(2), g2).trace();
  CHECK(std::abs(chi - chi1 * chi2) < 1e-12);

  // the singlet is invariant under T(g,g)
  ProductSpinRep half = tensor_rep(Spin::from_twice(1), Spin::from_twice(1));
  Vector singlet(4);
  singlet << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  for (int i = 0; i < 20; ++i) {
    SU2Element g = sample();
    Vector rotated = half.eval(g, g) * singlet;
    CHECK((rotated - singlet).cwiseAbs().maxCoeff() < 1e-12);
  }

  // finite product rep: unitarity and slot-wise homomorphism
  const auto& s3 = test::builtin("S3");
  ProductFiniteRep ft = tensor_rep(s3.irreps[2], s3.irreps[2]);
  CHECK(ft.dim() == 4);
  for (int a : {0, 2, 5})
    for (int b : {1, 3, 4}) {
      Matrix m = ft.eval(a, b);
      CHECK(max_abs(m * m.adjoint() - Matrix::Identity(4, 4)) < 1e-12);
      CHECK(max_abs(ft.eval(s3.group.multiply(a, b), s3.group.multiply(b, a)) -
                    ft.eval(a, b) * ft.eval(b, a)) < 1e-12);
    }
  const auto& z3 = test::builtin("Z3");
  CHECK_THROWS_AS(tensor_rep(s3.irreps[2], z3.irreps[0]),
                  DimensionMismatchError);
}
