#include <catch2/catch_amalgamated.hpp>

#include "nccf/errors.hpp"
#include "nccf/io.hpp"
#include "nccf/states.hpp"
#include "test_support.hpp"

using namespace nccf;

TEST_CASE("density matrix json round trip", "[io]") {
  Matrix m = random_density(3, 2, 71).matrix();
  Matrix back = parse_density_matrix(format_density_matrix(m));
  CHECK(max_abs(back - m) < 1e-15);

  CHECK_THROWS_AS(parse_density_matrix("not json"), ParseError);
  CHECK_THROWS_AS(parse_density_matrix("[[[0.5,0],[0,0]],[[0,0]]]"),
                  ParseError);
  CHECK_THROWS_AS(parse_density_matrix("[[[0.5,0],[0,0],[0,0]]]"), ParseError);
  CHECK_THROWS_AS(parse_density_matrix("[[[0.5]]]"), ParseError);
}

TEST_CASE("group file round trip and rejection", "[io]") {
  const auto& d4 = test::builtin("D4");
  FiniteGroup back = FiniteGroup::parse_text(d4.group.to_text());
  CHECK(back == d4.group);
}

TEST_CASE("irrep file round trip with validation", "[io]") {
  const auto& s3 = test::builtin("S3");
  std::string text = format_irrep(s3.irreps[2]);
  FiniteIrrep back = parse_irrep(s3.group, text, "standard");
  for (int g = 0; g < 6; ++g)
    CHECK(max_abs(back.at(g) - s3.irreps[2].at(g)) < 1e-12);

  // corrupt one entry: loader must refuse (invariants fail)
  std::string broken = text;
  auto pos = broken.find("0.5");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 3, "0.7");
  CHECK_THROWS_AS(parse_irrep(s3.group, broken), ParameterOutOfRangeError);
  CHECK_THROWS_AS(parse_irrep(s3.group, "{}"), ParseError);
}

TEST_CASE("decomposition file round trip", "[io]") {
  SeparableDecomposition dec;
  dec.weights = {0.25, 0.75};
  dec.left = {random_pure(2, 72), random_pure(2, 73)};
  dec.right = {random_pure(3, 74), random_pure(3, 75)};
  SeparableDecomposition back = parse_decomposition(format_decomposition(dec));
  CHECK(back.term_count() == 2);
  CHECK((back.left[1] - dec.left[1]).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(back.weights[0] == Catch::Approx(0.25));

  CHECK_THROWS_AS(
      parse_decomposition(
          "{\"weights\":[0.5],\"left\":[[[1,0],[0,0]]],\"right\":[[[1,0],[0,"
          "0]]]}"),
      NotNormalizedError);
  CHECK_THROWS_AS(parse_decomposition("{\"weights\":[1.0]}"), ParseError);
}

TEST_CASE("charfunc csv schemas", "[io]") {
  const auto& z3 = test::builtin("Z3");
  Vector vals(3);
  vals << 1.0, Cplx(0.25, 0.1), Cplx(0.25, -0.1);
  std::string csv = charfunc_csv(FiniteCharFunc(z3.group, vals));
  CHECK(csv.rfind("element,re,im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  SU2CharFunc phi =
      forward_transform(max_mixed(2).matrix(), Spin::from_twice(1));
  test::SU2Sampler sample(76);
  std::vector<SU2Element> nodes = {sample(), sample()};
  std::string csv2 = charfunc_csv(phi, nodes);
  CHECK(csv2.rfind("phi,theta,psi,re,im\n", 0) == 0);

  // the angle triple in a row reproduces the sampled value
  std::istringstream in(csv2);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);
  double v[5];
  char comma;
  std::istringstream row(line);
  row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3] >> comma >>
      v[4];
  Cplx reeval = phi.evaluate(SU2Element::from_euler(v[0], v[1], v[2]));
  CHECK(std::abs(reeval - Cplx(v[3], v[4])) < 1e-12);
}

TEST_CASE("run report round trip", "[io]") {
  RunReport rep;
  rep.tool_version = "0.1.0";
  rep.command = "ppt";
  rep.input_digest = digest("werner:p=0.5");
  rep.timing_ms = 12.5;
  rep.metrics.emplace_back("reconstruction_deviation", 1e-12);
  rep.tolerances.emplace_back("psd", 4e-9);
  PsdVerdict v;
  v.is_psd = false;
  v.min_eigenvalue = -0.25;
  v.tolerance = 4e-9;
  v.exact = true;
  rep.verdicts.emplace_back("group", v);
  rep.flags.emplace_back("agree", true);
  rep.notes.emplace_back("rep", "su2:1/2x1/2");

  RunReport back = RunReport::from_json(rep.to_json());
  CHECK(back.schema_version == 1);
  CHECK(back.command == "ppt");
  CHECK(back.input_digest == rep.input_digest);
  CHECK(back.metrics[0].second == Catch::Approx(1e-12));
  CHECK(back.verdicts[0].second.min_eigenvalue == Catch::Approx(-0.25));
  CHECK(back.flags[0].second == true);
  CHECK(back.notes[0].second == "su2:1/2x1/2");
}

TEST_CASE("digest is the 64-bit fnv-1a", "[io]") {
  CHECK(digest("abc") == "e71fa2190541574b");
  CHECK(digest("") == "cbf29ce484222325");
}

TEST_CASE("recipe parsing", "[io]") {
  CHECK(make_recipe("max_mixed:3").dim() == 3);
  CHECK(make_recipe("max_mixed:d=4").dim() == 4);
  CHECK(make_recipe("werner:p=0.5").dim() == 4);
  CHECK(make_recipe("horodecki:a=0.3").dim() == 9);
  CHECK(make_recipe("singlet").dim() == 4);
  CHECK(make_recipe("bell:2").dim() == 4);
  CHECK(make_recipe("isotropic:p=0.5,d=3").dim() == 9);
  CHECK(make_recipe("schmidt:lambda=0.3").dim() == 4);
  CHECK(make_recipe("random:d=4,rank=2,seed=7").dim() == 4);
  CHECK(make_recipe("product").dim() == 4);
  CHECK_THROWS_AS(make_recipe("bogus:x=1"), ParseError);
  CHECK_THROWS_AS(make_recipe("werner:q=0.5"), ParseError);
  CHECK_THROWS_AS(make_recipe("werner:p=abc"), ParseError);
}

TEST_CASE("rep spec parsing", "[io]") {
  RepSpec r = parse_rep_spec("su2:j=1");
  CHECK(!r.product);
  CHECK(r.j1.twice() == 2);
  r = parse_rep_spec("su2:1/2x3/2");
  CHECK(r.product);
  CHECK(r.j1.twice() == 1);
  CHECK(r.j2.twice() == 3);
  r = parse_rep_spec("su2:1x1");
  CHECK(r.product);
  CHECK(r.j1.twice() == 2);
  CHECK(parse_spin("0.5").twice() == 1);
  CHECK(parse_spin("5/2").twice() == 5);
  CHECK_THROWS_AS(parse_rep_spec("su3:j=1"), ParseError);
  CHECK_THROWS_AS(parse_rep_spec("su2:k=1"), ParseError);
  CHECK_THROWS_AS(parse_spin("x"), ParseError);
  CHECK_THROWS_AS(parse_spin("0.3"), InvalidSpinError);
}
