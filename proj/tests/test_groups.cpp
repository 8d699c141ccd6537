#include <catch2/catch_amalgamated.hpp>

#include "nccf/errors.hpp"
#include "nccf/groups.hpp"
#include "nccf/representations.hpp"
#include "test_support.hpp"

using namespace nccf;
using test::SU2Sampler;

TEST_CASE("su2 element basics", "[groups]") {
  SU2Element e = SU2Element::identity();
  CHECK(e.alpha() == Cplx(1.0, 0.0));
  CHECK(e.beta() == Cplx(0.0, 0.0));

  SU2Element g0 = SU2Element::from_euler(0.0, 0.0, 0.0);
  CHECK(std::abs(g0.alpha() - Cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(g0.beta()) < 1e-15);

  SU2Element gpi = SU2Element::from_euler(0.0, std::numbers::pi, 0.0);
  CHECK(std::abs(gpi.alpha()) < 1e-15);
  CHECK(std::abs(std::abs(gpi.beta()) - 1.0) < 1e-15);

  CHECK_THROWS_AS(SU2Element(Cplx(2.0, 0.0), Cplx(0.0, 0.0)),
                  ParameterOutOfRangeError);
  // mild deviations renormalize
  SU2Element n(Cplx(1.0 + 1e-8, 0.0), Cplx(0.0, 0.0));
  CHECK(std::abs(std::norm(n.alpha()) + std::norm(n.beta()) - 1.0) < 1e-12);
}

TEST_CASE("su2 multiply matches 2x2 matrix product", "[groups]") {
  SU2Sampler sample(11);
  for (int i = 0; i < 50; ++i) {
    SU2Element g = sample(), h = sample();
    Eigen::Matrix2cd direct = g.matrix() * h.matrix();
    CHECK((direct - (g * h).matrix()).cwiseAbs().maxCoeff() < 1e-14);
    // unitary, det 1
    Eigen::Matrix2cd m = g.matrix();
    CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK(std::abs(m.determinant() - Cplx(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("su2 inverse is (conj alpha, -beta)", "[groups]") {
  SU2Sampler sample(12);
  for (int i = 0; i < 20; ++i) {
    SU2Element g = sample();
    SU2Element inv = g.inverse();
    CHECK(inv.alpha() == std::conj(g.alpha()));
    CHECK(inv.beta() == -g.beta());
    CHECK((inv * g).distance(SU2Element::identity()) < 1e-12);
    CHECK((g * inv).distance(SU2Element::identity()) < 1e-12);
  }
}

TEST_CASE("su2 associativity", "[groups]") {
  SU2Sampler sample(13);
  for (int i = 0; i < 50; ++i) {
    SU2Element a = sample(), b = sample(), c = sample();
    CHECK(((a * b) * c).distance(a * (b * c)) < 1e-12);
  }
}

TEST_CASE("euler angle round trip", "[groups]") {
  SU2Sampler sample(14);
  for (int i = 0; i < 50; ++i) {
    SU2Element g = sample();
    auto [phi, theta, psi] = g.euler_angles();
    CHECK(SU2Element::from_euler(phi, theta, psi).distance(g) < 1e-12);
  }
  // any angle triple lands on a unitary, det-1 defining matrix
  GaussianRng rng(15);
  for (int i = 0; i < 50; ++i) {
    Eigen::Matrix2cd m =
        SU2Element::from_euler(4.0 * rng.normal(), 4.0 * rng.normal(),
                               4.0 * rng.normal())
            .matrix();
    CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK(std::abs(m.determinant() - Cplx(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("Z2 table builds with derived tables", "[groups]") {
  FiniteGroup z2 = FiniteGroup::from_cayley({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inverse(0) == 0);
  CHECK(z2.inverse(1) == 1);
  CHECK(z2.sigma(0, 0) == 0);
  CHECK(z2.sigma(0, 1) == 1);
  CHECK(z2.sigma(1, 0) == 1);
  CHECK(z2.sigma(1, 1) == 0);
}

TEST_CASE("S3 table from permutation composition oracle", "[groups]") {
  // lexicographic one-line order of the permutations of {0,1,2},
  // composition (g*h)(x) = g(h(x)); table enumerated independently
  const std::vector<std::vector<int>> expected = {
      {0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3}, {2, 3, 0, 1, 5, 4},
      {3, 2, 5, 4, 0, 1}, {4, 5, 1, 0, 3, 2}, {5, 4, 3, 2, 1, 0}};
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int composed[3];
      for (int x = 0; x < 3; ++x) composed[x] = perms[a][perms[b][x]];
      int idx = -1;
      for (int i = 0; i < 6; ++i)
        if (composed[0] == perms[i][0] && composed[1] == perms[i][1] &&
            composed[2] == perms[i][2])
          idx = i;
      REQUIRE(idx == expected[a][b]);
    }
  FiniteGroup s3 = FiniteGroup::from_cayley(expected);
  CHECK(s3.order() == 6);
  for (int a = 0; a < 6; ++a) CHECK(s3.sigma(a, a) == 0);
  const std::vector<int> inv = {0, 1, 2, 4, 3, 5};
  for (int a = 0; a < 6; ++a) CHECK(s3.inverse(a) == inv[a]);
  // cocycle law g_{sigma(a,b)} g_{sigma(b,c)} = g_{sigma(a,c)}
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        CHECK(s3.multiply(s3.sigma(a, b), s3.sigma(b, c)) == s3.sigma(a, c));
}

TEST_CASE("group axiom violations are rejected with reasons", "[groups]") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_MATCHES(FiniteGroup::from_cayley({{0, 1}, {0, 1}}),
                       NotAGroupError, Catch::Matchers::MessageMatches(
                                           ContainsSubstring("Latin square")));
  CHECK_THROWS_MATCHES(
      FiniteGroup::from_cayley({{1, 0}, {0, 1}}), NotAGroupError,
      Catch::Matchers::MessageMatches(ContainsSubstring("identity")));
  // Latin square with identity but non-associative
  CHECK_THROWS_MATCHES(FiniteGroup::from_cayley({{0, 1, 2, 3, 4},
                                                 {1, 0, 3, 4, 2},
                                                 {2, 3, 4, 0, 1},
                                                 {3, 4, 1, 2, 0},
                                                 {4, 2, 0, 1, 3}}),
                       NotAGroupError, Catch::Matchers::MessageMatches(
                                           ContainsSubstring("associativity")));
  CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 5}, {1, 0}}), NotAGroupError);
}

TEST_CASE("group text format round trip", "[groups]") {
  FiniteGroup s3 = test::builtin("S3").group;
  FiniteGroup back = FiniteGroup::parse_text(s3.to_text());
  CHECK(back == s3);
  CHECK_THROWS_AS(FiniteGroup::parse_text("2\n1 2\n1 2\n"), NotAGroupError);
  CHECK_THROWS_AS(FiniteGroup::parse_text("x"), ParseError);
  CHECK_THROWS_AS(FiniteGroup::parse_text("2\n1 3\n2 1\n"), ParseError);
}

TEST_CASE("relabelling keeps the group structure", "[groups]") {
  FiniteGroup s3 = test::builtin("S3").group;
  FiniteGroup moved = s3.relabel({0, 2, 1, 5, 4, 3});
  CHECK(moved.order() == 6);  // from_cayley re-verified every axiom
  CHECK_THROWS_AS(s3.relabel({1, 0, 2, 3, 4, 5}), ParameterOutOfRangeError);
  CHECK_THROWS_AS(s3.relabel({0, 0, 2, 3, 4, 5}), ParameterOutOfRangeError);
  CHECK_THROWS_AS(s3.relabel({0, 1, 2}), DimensionMismatchError);
}

TEST_CASE("finite haar average", "[groups]") {
  FiniteGroup z2 = FiniteGroup::from_cayley({{0, 1}, {1, 0}});
  Vector ones = Vector::Ones(2);
  CHECK(std::abs(finite_haar_average(z2, ones) - 1.0) < 1e-15);
  Vector signs(2);
  signs << 1.0, -1.0;
  CHECK(std::abs(finite_haar_average(z2, signs)) < 1e-15);

  // sign character of S3 sums to zero (the 6 permutation signs)
  const auto& s3 = test::builtin("S3");
  Vector sign_char(6);
  for (int g = 0; g < 6; ++g) sign_char[g] = s3.irreps[1].character(g);
  CHECK(std::abs(finite_haar_average(s3.group, sign_char)) < 1e-15);

  CHECK_THROWS_AS(finite_haar_average(z2, Vector::Ones(3)),
                  DimensionMismatchError);
}

TEST_CASE("quadrature normalization and exactness", "[groups][quadrature]") {
  const HaarQuadrature& q0 = test::quad_for_degree(0);
  CHECK(std::abs(q0.integrate([](const SU2Element&) { return Cplx(1.0); }) -
                 1.0) < 1e-14);

  // independent Peter-Weyl checks (not the constructor's own bookkeeping)
  auto residual = [](const HaarQuadrature& q, int tj, int tk) {
    double worst = 0.0;
    const int dj = tj + 1, dk = tk + 1;
    for (int a = 0; a < dj * dj; ++a)
      for (int b = 0; b < dk * dk; ++b) {
        Cplx acc = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
          Matrix mj = spin_matrix(Spin::from_twice(tj), q.nodes()[i]);
          Matrix mk = spin_matrix(Spin::from_twice(tk), q.nodes()[i]);
          acc += q.weights()[i] * mj(a / dj, a % dj) *
                 std::conj(mk(b / dk, b % dk));
        }
        Cplx expected = (tj == tk && a == b) ? Cplx(1.0 / dj) : Cplx(0.0);
        worst = std::max(worst, std::abs(acc - expected));
      }
    return worst;
  };
  const HaarQuadrature& q2 = test::quad_for_degree(2);
  CHECK(residual(q2, 1, 1) < 1e-11);  // spin 1/2 vs 1/2
  const HaarQuadrature& q4 = test::quad_for_degree(4);
  CHECK(residual(q4, 2, 2) < 1e-11);  // spin 1 vs 1
  CHECK(residual(q4, 2, 1) < 1e-11);
  CHECK(residual(q4, 2, 0) < 1e-11);

  double wsum = 0.0;
  for (double w : q4.weights()) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-12);
  CHECK(q4.max_orthogonality_residual() < 1e-11);
}

TEST_CASE("quadrature inversion invariance dg = dg^{-1}", "[groups]") {
  const HaarQuadrature& q = test::quad_for_degree(4);
  // band-limited f: random combination of spin <= 1 matrix elements
  SU2Sampler sample(21);
  GaussianRng rng(22);
  Matrix a(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = rng.complex_normal();
  auto f = [&](const SU2Element& g) {
    return (a * spin_matrix(Spin::from_twice(2), g)).trace();
  };
  Cplx direct = q.integrate(f);
  Cplx inverted = q.integrate([&](const SU2Element& g) { return f(g.inverse()); });
  CHECK(std::abs(direct - inverted) < 1e-10);
}

TEST_CASE("quadrature validation failure reports the residual",
          "[groups]") {
  CHECK_THROWS_AS(HaarQuadrature::build(4, 1e-18), QuadratureValidationError);
  try {
    HaarQuadrature::build(4, 1e-18);
  } catch (const QuadratureValidationError& e) {
    CHECK(e.max_residual > 0.0);
    CHECK(e.max_residual < 1e-11);
  }
  CHECK_THROWS_AS(HaarQuadrature::build(-1), ParameterOutOfRangeError);
}

TEST_CASE("spin from_value validation", "[groups]") {
  CHECK(Spin::from_value(0.5).twice() == 1);
  CHECK(Spin::from_value(2.0).dim() == 5);
  CHECK_THROWS_AS(Spin::from_value(0.3), InvalidSpinError);
  CHECK_THROWS_AS(Spin::from_value(-0.5), InvalidSpinError);
}
