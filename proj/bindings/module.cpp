#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nccf/errors.hpp"
#include "nccf/io.hpp"
#include "nccf/separability.hpp"
#include "nccf/states.hpp"

namespace py = pybind11;
using namespace nccf;

namespace {

Spin spin_of(double j) { return Spin::from_value(j); }

std::string psd_repr(const PsdVerdict& v) {
  std::ostringstream out;
  out << "PsdVerdict(is_psd=" << (v.is_psd ? "True" : "False")
      << ", min_eigenvalue=" << v.min_eigenvalue << ", tolerance="
      << v.tolerance << ", marginal=" << (v.marginal ? "True" : "False")
      << ", exact=" << (v.exact ? "True" : "False") << ")";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "non-commutative characteristic functions on compact groups";
  m.attr("__version__") = NCCF_VERSION;

  py::register_exception<NotAGroupError>(m, "NotAGroupError");
  py::register_exception<QuadratureValidationError>(
      m, "QuadratureValidationError");
  py::register_exception<InvalidSpinError>(m, "InvalidSpinError");
  py::register_exception<UnknownGroupError>(m, "UnknownGroupError");
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError");
  py::register_exception<IncompleteIrrepListError>(m,
                                                   "IncompleteIrrepListError");
  py::register_exception<NotNormalizedError>(m, "NotNormalizedError");
  py::register_exception<QuadratureTooCoarseError>(m,
                                                   "QuadratureTooCoarseError");
  py::register_exception<MultiIrrepSupportError>(m, "MultiIrrepSupportError");
  py::register_exception<ParameterOutOfRangeError>(m,
                                                   "ParameterOutOfRangeError");
  py::register_exception<NegativeCoefficientError>(m,
                                                   "NegativeCoefficientError");
  py::register_exception<IncompleteProjectorFamilyError>(
      m, "IncompleteProjectorFamilyError");
  py::register_exception<ParseError>(m, "FileParseError");

  // --- groups ---
  py::class_<SU2Element>(m, "SU2Element")
      .def(py::init<Cplx, Cplx>(), py::arg("alpha"), py::arg("beta"))
      .def_static("identity", &SU2Element::identity)
      .def_static("from_euler", &SU2Element::from_euler, py::arg("phi"),
                  py::arg("theta"), py::arg("psi"))
      .def_property_readonly("alpha", &SU2Element::alpha)
      .def_property_readonly("beta", &SU2Element::beta)
      .def("inverse", &SU2Element::inverse)
      .def("__mul__", &SU2Element::operator*)
      .def("matrix",
           [](const SU2Element& g) { return Matrix(g.matrix()); })
      .def("euler_angles", &SU2Element::euler_angles)
      .def("__repr__", [](const SU2Element& g) {
        std::ostringstream out;
        out << "SU2Element(alpha=" << g.alpha() << ", beta=" << g.beta()
            << ")";
        return out.str();
      });
  m.def("su2_conjugation_element", &su2_conjugation_element,
        "u = -i sigma_y, the conjugation intertwiner of SU(2)");

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_static("from_cayley", &FiniteGroup::from_cayley, py::arg("table"),
                  "0-based Cayley table with identity at index 0")
      .def_static("parse_text", &FiniteGroup::parse_text)
      .def("to_text", &FiniteGroup::to_text)
      .def_property_readonly("order", &FiniteGroup::order)
      .def("multiply", &FiniteGroup::multiply)
      .def("inverse", &FiniteGroup::inverse)
      .def("sigma", &FiniteGroup::sigma)
      .def("relabel", &FiniteGroup::relabel)
      .def("__eq__", &FiniteGroup::operator==);

  m.def("finite_haar_average", &finite_haar_average);

  py::class_<HaarQuadrature>(m, "HaarQuadrature")
      .def_static("build", &HaarQuadrature::build, py::arg("exactness_degree"),
                  py::arg("validation_tol") = tol::quadrature)
      .def_property_readonly("degree", &HaarQuadrature::degree)
      .def_property_readonly("nodes", &HaarQuadrature::nodes)
      .def_property_readonly("weights", &HaarQuadrature::weights)
      .def_property_readonly("max_orthogonality_residual",
                             &HaarQuadrature::max_orthogonality_residual)
      .def("__len__", &HaarQuadrature::size);

  // --- representations ---
  m.def(
      "spin_matrix",
      [](double j, const SU2Element& g) { return spin_matrix(spin_of(j), g); },
      py::arg("j"), py::arg("g"),
      "unitary spin-j matrix, magnetic indices ascending");
  m.def("spin_conjugation_intertwiner",
        [](double j) { return spin_conjugation_intertwiner(spin_of(j)); });

  py::class_<FiniteIrrep>(m, "FiniteIrrep")
      .def(py::init<FiniteGroup, std::vector<Matrix>, std::string>(),
           py::arg("group"), py::arg("matrices"), py::arg("label") = "")
      .def_property_readonly("dim", &FiniteIrrep::dim)
      .def_property_readonly("label", &FiniteIrrep::label)
      .def("at", &FiniteIrrep::at)
      .def("character", &FiniteIrrep::character)
      .def_property_readonly("group", &FiniteIrrep::group);
  m.def("conjugate_rep", &conjugate_rep);

  py::class_<BuiltinGroup>(m, "BuiltinGroup")
      .def_readonly("name", &BuiltinGroup::name)
      .def_readonly("group", &BuiltinGroup::group)
      .def_readonly("irreps", &BuiltinGroup::irreps);
  m.def("builtin_group", &builtin_group, py::arg("name"),
        "Zn, S3 or D4, with the complete irrep list");

  // --- charfunc ---
  py::class_<PsdVerdict>(m, "PsdVerdict")
      .def_readonly("is_psd", &PsdVerdict::is_psd)
      .def_readonly("min_eigenvalue", &PsdVerdict::min_eigenvalue)
      .def_readonly("tolerance", &PsdVerdict::tolerance)
      .def_readonly("marginal", &PsdVerdict::marginal)
      .def_readonly("exact", &PsdVerdict::exact)
      .def("__repr__", &psd_repr);
  m.def("psd_verdict_of", &psd_verdict_of, py::arg("matrix"),
        py::arg("tolerance") = 0.0, py::arg("exact") = true);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Matrix>())
      .def_static("from_pure", &DensityMatrix::from_pure)
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("matrix", &DensityMatrix::matrix);

  py::class_<SU2CharFunc>(m, "SU2CharFunc")
      .def("evaluate", &SU2CharFunc::evaluate)
      .def("block", [](const SU2CharFunc& f, double j) {
        return f.block(spin_of(j));
      })
      .def_property_readonly("band_limit", &SU2CharFunc::band_limit);

  py::class_<SU2ProductCharFunc>(m, "SU2ProductCharFunc")
      .def("evaluate", &SU2ProductCharFunc::evaluate)
      .def_property_readonly("band_limits",
                             &SU2ProductCharFunc::band_limits);

  py::class_<FiniteCharFunc>(m, "FiniteCharFunc")
      .def(py::init<FiniteGroup, Vector>())
      .def("evaluate", &FiniteCharFunc::evaluate)
      .def_property_readonly("values", &FiniteCharFunc::values)
      .def_property_readonly("group", &FiniteCharFunc::group);

  py::class_<FiniteProductCharFunc>(m, "FiniteProductCharFunc")
      .def(py::init<FiniteGroup, Matrix>())
      .def_static("from_operator", &FiniteProductCharFunc::from_operator)
      .def("evaluate", &FiniteProductCharFunc::evaluate)
      .def_property_readonly("values", &FiniteProductCharFunc::values)
      .def("big_phi", &FiniteProductCharFunc::big_phi);

  m.def(
      "forward_transform",
      [](const Matrix& a, double j) {
        return forward_transform(a, spin_of(j));
      },
      py::arg("operator"), py::arg("j"));
  m.def(
      "forward_transform_product",
      [](const Matrix& rho, double j1, double j2) {
        return forward_transform(rho, spin_of(j1), spin_of(j2));
      },
      py::arg("operator"), py::arg("j1"), py::arg("j2"));
  m.def("forward_transform_finite",
        py::overload_cast<const Matrix&, const FiniteIrrep&>(
            &forward_transform));
  m.def(
      "inverse_transform",
      [](const SU2CharFunc& phi, double j, const HaarQuadrature& quad) {
        return inverse_transform(phi, spin_of(j), quad);
      },
      py::arg("phi"), py::arg("j"), py::arg("quad"));
  m.def(
      "inverse_transform_product",
      [](const SU2ProductCharFunc& phi, double j1, bool conj1, double j2,
         bool conj2, const HaarQuadrature& quad) {
        return inverse_transform(phi, SpinSlot{spin_of(j1), conj1},
                                 SpinSlot{spin_of(j2), conj2}, quad);
      },
      py::arg("phi"), py::arg("j1"), py::arg("conj1"), py::arg("j2"),
      py::arg("conj2"), py::arg("quad"));
  m.def("inverse_transform_finite",
        py::overload_cast<const FiniteCharFunc&, const FiniteIrrep&>(
            &inverse_transform));
  m.def("block_decompose", &block_decompose);
  m.def("build_phi_matrix",
        [](const FiniteCharFunc& phi) {
          return build_phi_matrix(phi).matrix;
        });
  m.def("is_positive_definite",
        py::overload_cast<const SU2CharFunc&, double>(&is_positive_definite),
        py::arg("phi"), py::arg("tolerance") = 0.0);
  m.def("is_positive_definite",
        py::overload_cast<const SU2ProductCharFunc&, double>(
            &is_positive_definite),
        py::arg("phi"), py::arg("tolerance") = 0.0);
  m.def("is_positive_definite_finite",
        py::overload_cast<const FiniteCharFunc&, double>(&is_positive_definite),
        py::arg("phi"), py::arg("tolerance") = 0.0);
  m.def("is_positive_definite_finite",
        py::overload_cast<const FiniteProductCharFunc&, double>(
            &is_positive_definite),
        py::arg("phi"), py::arg("tolerance") = 0.0);

  py::class_<PurityReport>(m, "PurityReport")
      .def_readonly("pure", &PurityReport::pure)
      .def_readonly("deviation", &PurityReport::deviation);
  m.def("is_pure", py::overload_cast<const SU2CharFunc&, double>(&is_pure),
        py::arg("phi"), py::arg("tolerance") = tol::psd_scale);
  m.def("is_pure_finite",
        py::overload_cast<const FiniteCharFunc&,
                          const std::vector<FiniteIrrep>&, double>(&is_pure),
        py::arg("phi"), py::arg("irreps"), py::arg("tolerance") = tol::psd_scale);
  m.def("convolve",
        py::overload_cast<const SU2CharFunc&, const SU2CharFunc&>(&convolve));
  m.def("convolve_finite",
        py::overload_cast<const FiniteCharFunc&, const FiniteCharFunc&,
                          const FiniteIrrep&>(&convolve));

  // --- separability ---
  py::class_<PptReport>(m, "PptReport")
      .def_readonly("group_verdict", &PptReport::group_verdict)
      .def_readonly("direct_verdict", &PptReport::direct_verdict)
      .def_readonly("reconstruction_deviation",
                    &PptReport::reconstruction_deviation)
      .def_readonly("agree", &PptReport::agree);
  py::class_<PureProductReport>(m, "PureProductReport")
      .def_readonly("i1", &PureProductReport::i1)
      .def_readonly("i2", &PureProductReport::i2)
      .def_readonly("purity_left", &PureProductReport::purity_left)
      .def_readonly("purity_right", &PureProductReport::purity_right)
      .def_readonly("is_product", &PureProductReport::is_product);
  py::class_<AbelianSpectrum>(m, "AbelianSpectrum")
      .def_readonly("twice_j1", &AbelianSpectrum::twice_j1)
      .def_readonly("twice_j2", &AbelianSpectrum::twice_j2)
      .def_readonly("off_lattice_max", &AbelianSpectrum::off_lattice_max)
      .def_readonly("max_imag_residue", &AbelianSpectrum::max_imag_residue)
      .def("sum", &AbelianSpectrum::sum)
      .def("min_coefficient", &AbelianSpectrum::min_coefficient)
      .def("at", &AbelianSpectrum::at, py::arg("k"), py::arg("l"))
      .def_property_readonly("coefficients", [](const AbelianSpectrum& s) {
        py::dict out;
        for (const auto& [kl, v] : s.coefficients)
          out[py::make_tuple(kl.first, kl.second)] = v;
        return out;
      });
  py::class_<SeparableDecomposition>(m, "SeparableDecomposition")
      .def(py::init([](std::vector<double> weights, std::vector<Vector> left,
                       std::vector<Vector> right) {
             SeparableDecomposition dec{std::move(weights), std::move(left),
                                        std::move(right)};
             dec.validate();
             return dec;
           }),
           py::arg("weights"), py::arg("left"), py::arg("right"))
      .def_readonly("weights", &SeparableDecomposition::weights)
      .def_readonly("left", &SeparableDecomposition::left)
      .def_readonly("right", &SeparableDecomposition::right)
      .def("term_count", &SeparableDecomposition::term_count);
  py::class_<DecompositionCheck>(m, "DecompositionCheck")
      .def_readonly("matches", &DecompositionCheck::matches)
      .def_readonly("max_deviation", &DecompositionCheck::max_deviation)
      .def_readonly("term_count", &DecompositionCheck::term_count)
      .def_readonly("caratheodory_bound",
                    &DecompositionCheck::caratheodory_bound);
  py::class_<EmbeddingReport>(m, "EmbeddingReport")
      .def_readonly("equal", &EmbeddingReport::equal)
      .def_readonly("max_deviation", &EmbeddingReport::max_deviation)
      .def_readonly("trace_error", &EmbeddingReport::trace_error)
      .def_readonly("left_psd", &EmbeddingReport::left_psd)
      .def_readonly("right_psd", &EmbeddingReport::right_psd)
      .def_readonly("big_phi", &EmbeddingReport::big_phi);
  py::class_<LhvReport>(m, "LhvReport")
      .def_readonly("table", &LhvReport::table)
      .def_readonly("max_imag_residue", &LhvReport::max_imag_residue)
      .def_readonly("total", &LhvReport::total)
      .def_readonly("row_marginals", &LhvReport::row_marginals)
      .def_readonly("col_marginals", &LhvReport::col_marginals)
      .def_property_readonly_static("response_functions_complex",
                                    [](py::object) { return true; });

  m.def("partial_trace_left", &partial_trace_left);
  m.def("partial_trace_right", &partial_trace_right);
  m.def("partial_transpose_left", &partial_transpose_left);
  m.def("tilde",
        py::overload_cast<const SU2ProductCharFunc&>(&tilde));
  m.def("tilde_finite",
        py::overload_cast<const FiniteProductCharFunc&>(&tilde));
  m.def("matrix_ppt_test", &matrix_ppt_test, py::arg("rho"),
        py::arg("dim_left"), py::arg("dim_right"), py::arg("tolerance") = 0.0);
  m.def(
      "group_ppt_test",
      [](const Matrix& rho, int dl, int dr, const HaarQuadrature& quad) {
        return group_ppt_test(BipartiteState(DensityMatrix(rho), dl, dr),
                              quad);
      },
      py::arg("rho"), py::arg("dim_left"), py::arg("dim_right"),
      py::arg("quad"));
  m.def(
      "group_ppt_test_finite",
      [](const Matrix& rho, const FiniteIrrep& pi, const FiniteIrrep& tau) {
        return group_ppt_test(DensityMatrix(rho), pi, tau);
      },
      py::arg("rho"), py::arg("pi"), py::arg("tau"));
  m.def(
      "pure_product_test",
      [](const Vector& psi, double j1, double j2, const HaarQuadrature& quad,
         double tolerance) {
        return pure_product_test(psi, spin_of(j1), spin_of(j2), quad,
                                 tolerance);
      },
      py::arg("psi"), py::arg("j1"), py::arg("j2"), py::arg("quad"),
      py::arg("tolerance") = 1e-9);
  m.def("abelian_restriction", &abelian_restriction);
  m.def(
      "verify_separable_decomposition",
      [](const SU2ProductCharFunc& phi, const SeparableDecomposition& dec,
         double j1, double j2, const HaarQuadrature& quad, double tolerance) {
        return verify_separable_decomposition(phi, dec, spin_of(j1),
                                              spin_of(j2), quad, tolerance);
      },
      py::arg("phi"), py::arg("dec"), py::arg("j1"), py::arg("j2"),
      py::arg("quad"), py::arg("tolerance") = 1e-9);
  m.def("verify_separable_decomposition_finite",
        py::overload_cast<const FiniteProductCharFunc&,
                          const SeparableDecomposition&, const FiniteIrrep&,
                          const FiniteIrrep&, double>(
            &verify_separable_decomposition),
        py::arg("phi"), py::arg("dec"), py::arg("pi"), py::arg("tau"),
        py::arg("tolerance") = 1e-9);
  m.def("phi_matrix_embedding", &phi_matrix_embedding, py::arg("dec"),
        py::arg("pi"), py::arg("tau"), py::arg("tolerance") = 1e-10);
  m.def("phi_partial_transpose_test", &phi_partial_transpose_test,
        py::arg("phi"), py::arg("tolerance") = 0.0);
  m.def(
      "lhv_probability",
      [](const SU2ProductCharFunc& phi, const std::vector<Matrix>& ps,
         const std::vector<Matrix>& qs, double j1, double j2,
         const HaarQuadrature& quad) {
        return lhv_probability(phi, ps, qs, spin_of(j1), spin_of(j2), quad);
      },
      py::arg("phi"), py::arg("left_projectors"), py::arg("right_projectors"),
      py::arg("j1"), py::arg("j2"), py::arg("quad"));

  // --- states ---
  py::enum_<HorodeckiReading>(m, "HorodeckiReading")
      .value("PrefactorScoped", HorodeckiReading::PrefactorScoped)
      .value("LiteralTail", HorodeckiReading::LiteralTail);
  m.def("horodecki_3x3", &horodecki_3x3, py::arg("a"));
  m.def("horodecki_charfunc", &horodecki_charfunc, py::arg("a"), py::arg("g1"),
        py::arg("g2"),
        py::arg("reading") = HorodeckiReading::PrefactorScoped);
  m.def("singlet", &singlet);
  m.def("singlet_vector", &singlet_vector);
  m.def("bell_vector", &bell_vector, py::arg("which"));
  m.def("werner", &werner, py::arg("p"));
  m.def("isotropic", &isotropic, py::arg("p"), py::arg("d"));
  m.def("product_pure", &product_pure);
  m.def("max_mixed", &max_mixed, py::arg("dim"));
  m.def("schmidt_pair", &schmidt_pair, py::arg("lam"));
  m.def("schmidt_pair_vector", &schmidt_pair_vector, py::arg("lam"));
  m.def("random_density", &random_density, py::arg("dim"), py::arg("rank"),
        py::arg("seed"));
  m.def("random_pure", &random_pure, py::arg("dim"), py::arg("seed"));
  m.def("random_unitary", &random_unitary, py::arg("dim"), py::arg("seed"));

  // --- io ---
  m.def("parse_density_matrix", &parse_density_matrix);
  m.def("format_density_matrix", &format_density_matrix);
  m.def("make_recipe", &make_recipe, py::arg("spec"));
}
