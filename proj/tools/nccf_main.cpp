#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nccf/errors.hpp"
#include "nccf/io.hpp"
#include "nccf/separability.hpp"
#include "nccf/states.hpp"

using namespace nccf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitInputError = 2;

double default_tolerance() {
  if (const char* env = std::getenv("NCCF_DEFAULT_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw ParseError("NCCF_DEFAULT_TOL is not a number");
    }
  }
  return 1e-9;
}

struct CommonArgs {
  std::string recipe;
  std::string state_file;
  std::string rep_spec = "su2:j=1/2";
  std::string report_file;
  double tolerance = 0.0;      // 0 -> default_tolerance()
  double psd_tolerance = 0.0;  // 0 -> tol::psd_scale * dim

  double tol() const { return tolerance > 0 ? tolerance : default_tolerance(); }

  Matrix state(std::string& digest_src) const {
    if (!recipe.empty() && !state_file.empty())
      throw ParseError("give either --recipe or --state, not both");
    if (!recipe.empty()) {
      digest_src = recipe;
      return make_recipe(recipe).matrix();
    }
    if (!state_file.empty()) {
      std::string text = read_file(state_file);
      digest_src = text;
      return parse_density_matrix(text);
    }
    throw ParseError("missing --recipe or --state");
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--recipe", args.recipe,
                  "reference state, e.g. werner:p=0.5, horodecki:a=0.3");
  cmd->add_option("--state", args.state_file,
                  "density-matrix file (JSON [re,im] pairs)");
  cmd->add_option("--report", args.report_file, "write a JSON run report");
  cmd->add_option("--tolerance", args.tolerance,
                  "override the default check tolerance (env NCCF_DEFAULT_TOL)");
  cmd->add_option("--psd-tolerance", args.psd_tolerance,
                  "override the PSD verdict tolerance (default 1e-9 * dim)");
}

RunReport base_report(const std::string& command, const std::string& digest_src) {
  RunReport rep;
  rep.tool_version = NCCF_VERSION;
  rep.command = command;
  rep.input_digest = digest(digest_src);
  if (digest_src.rfind("horodecki", 0) == 0)
    rep.notes.emplace_back("horodecki_reading", "prefactor-scoped");
  return rep;
}

void finish_report(RunReport& rep,
                   std::chrono::steady_clock::time_point start,
                   const std::string& path) {
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  if (!path.empty()) write_file(path, rep.to_json());
}

const HaarQuadrature& quad_for(int degree) {
  static std::map<int, HaarQuadrature> cache;
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, HaarQuadrature::build(degree)).first;
  return it->second;
}

std::string psd_str(const PsdVerdict& v) {
  std::ostringstream out;
  out << (v.is_psd ? "PSD" : "not PSD") << " (min eig " << v.min_eigenvalue
      << ", tol " << v.tolerance << (v.marginal ? ", marginal" : "")
      << (v.exact ? "" : ", sampled/necessary-only") << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

int cmd_roundtrip(const CommonArgs& args) {
  auto start = std::chrono::steady_clock::now();
  std::string digest_src;
  Matrix rho = args.state(digest_src);
  RepSpec rep = parse_rep_spec(args.rep_spec);
  double deviation = 0.0;
  if (rep.product) {
    const int d = rep.j1.dim() * rep.j2.dim();
    if (rho.rows() != d)
      throw DimensionMismatchError("state dim " + std::to_string(rho.rows()) +
                                   " does not match rep dim " +
                                   std::to_string(d));
    SU2ProductCharFunc phi = forward_transform(rho, rep.j1, rep.j2);
    const int degree = 2 * std::max(rep.j1.twice(), rep.j2.twice());
    Matrix back = inverse_transform(phi, SpinSlot{rep.j1, false},
                                    SpinSlot{rep.j2, false}, quad_for(degree));
    deviation = max_abs(back - rho);
  } else {
    if (rho.rows() != rep.j1.dim())
      throw DimensionMismatchError("state dim " + std::to_string(rho.rows()) +
                                   " does not match rep dim " +
                                   std::to_string(rep.j1.dim()));
    SU2CharFunc phi = forward_transform(rho, rep.j1);
    Matrix back = inverse_transform(phi, rep.j1, quad_for(2 * rep.j1.twice()));
    deviation = max_abs(back - rho);
  }
  const bool ok = deviation <= args.tol();
  std::cout << "roundtrip: max deviation " << deviation << " (tol "
            << args.tol() << ") -> " << (ok ? "OK" : "FAIL") << "\n";
  RunReport report = base_report("roundtrip", digest_src);
  report.metrics.emplace_back("max_deviation", deviation);
  report.tolerances.emplace_back("roundtrip", args.tol());
  report.flags.emplace_back("ok", ok);
  report.notes.emplace_back("rep", args.rep_spec);
  finish_report(report, start, args.report_file);
  return ok ? kExitOk : kExitVerdictFailure;
}

int cmd_ppt(const CommonArgs& args, const std::string& dims) {
  auto start = std::chrono::steady_clock::now();
  std::string digest_src;
  Matrix rho = args.state(digest_src);
  int dl = 0, dr = 0;
  if (!dims.empty()) {
    auto x = dims.find('x');
    if (x == std::string::npos) throw ParseError("--dims must look like 2x3");
    dl = std::stoi(dims.substr(0, x));
    dr = std::stoi(dims.substr(x + 1));
  } else {
    // square split when the dimension is a perfect square
    int root = static_cast<int>(std::lround(std::sqrt(double(rho.rows()))));
    if (root * root != rho.rows())
      throw ParseError("state dim " + std::to_string(rho.rows()) +
                       " is not square; give --dims MxN");
    dl = dr = root;
  }
  BipartiteState state(DensityMatrix(rho), dl, dr);
  const int degree = 2 * std::max(state.j1.twice(), state.j2.twice());
  PptReport r = group_ppt_test(state, quad_for(degree), args.psd_tolerance);
  const bool recon_ok = r.reconstruction_deviation <= args.tol();
  const char* verdict = r.group_verdict.is_psd ? "PPT" : "NPT";
  std::cout << "group reconstruction: " << psd_str(r.group_verdict) << "\n"
            << "direct transpose:     " << psd_str(r.direct_verdict) << "\n"
            << "reconstruction deviation: " << r.reconstruction_deviation
            << "\n"
            << "verdict: " << verdict << ";" << (r.agree ? "AGREE" : "DISAGREE")
            << "\n";
  RunReport report = base_report("ppt", digest_src);
  report.verdicts.emplace_back("group", r.group_verdict);
  report.verdicts.emplace_back("direct", r.direct_verdict);
  report.metrics.emplace_back("reconstruction_deviation",
                              r.reconstruction_deviation);
  report.tolerances.emplace_back("reconstruction", args.tol());
  report.flags.emplace_back("agree", r.agree);
  finish_report(report, start, args.report_file);
  return (r.agree && recon_ok) ? kExitOk : kExitVerdictFailure;
}

int cmd_analyze(const CommonArgs& args, const std::string& csv_file) {
  auto start = std::chrono::steady_clock::now();
  std::string digest_src;
  Matrix rho = args.state(digest_src);
  RepSpec rep = parse_rep_spec(args.rep_spec);
  RunReport report = base_report("analyze", digest_src);
  report.notes.emplace_back("rep", args.rep_spec);
  bool ok = true;

  if (!rep.product) {
    if (rho.rows() != rep.j1.dim())
      throw DimensionMismatchError("state dim does not match rep dim");
    SU2CharFunc phi = forward_transform(rho, rep.j1);
    const double norm_err =
        std::abs(phi.evaluate(SU2Element::identity()) - 1.0);
    PurityReport purity = is_pure(phi);
    PsdVerdict psd = is_positive_definite(phi);
    ok = norm_err < 1e-10 && psd.is_psd;
    std::cout << "normalization |phi(e)-1| = " << norm_err << "\n"
              << "purity: " << (purity.pure ? "pure" : "mixed")
              << " (idempotency defect " << purity.deviation << ")\n"
              << "positive definiteness: " << psd_str(psd) << "\n";
    report.metrics.emplace_back("normalization_error", norm_err);
    report.metrics.emplace_back("purity_defect", purity.deviation);
    report.verdicts.emplace_back("positive_definite", psd);
    report.flags.emplace_back("pure", purity.pure);
    if (!csv_file.empty()) {
      const HaarQuadrature& q = quad_for(2 * rep.j1.twice());
      write_file(csv_file, charfunc_csv(phi, q.nodes()));
      std::cout << "wrote " << q.size() << " samples to " << csv_file << "\n";
    }
  } else {
    const int d = rep.j1.dim() * rep.j2.dim();
    if (rho.rows() != d)
      throw DimensionMismatchError("state dim does not match rep dim");
    SU2ProductCharFunc phi = forward_transform(rho, rep.j1, rep.j2);
    const double norm_err =
        std::abs(phi.evaluate(SU2Element::identity(), SU2Element::identity()) -
                 1.0);
    std::cout << "normalization |phi(e,e)-1| = " << norm_err << "\n";
    report.metrics.emplace_back("normalization_error", norm_err);
    ok = norm_err < 1e-10;

    // idempotency purity through the single product block
    PurityReport purity = is_pure(SU2CharFunc(
        std::map<Spin, Matrix>{{Spin::from_twice(int(rho.rows()) - 1), rho}}));
    std::cout << "purity: " << (purity.pure ? "pure" : "mixed")
              << " (idempotency defect " << purity.deviation << ")\n";
    report.metrics.emplace_back("purity_defect", purity.deviation);
    report.flags.emplace_back("pure", purity.pure);

    if (purity.pure) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
      Vector psi = es.eigenvectors().col(rho.rows() - 1);
      const int degree = 2 * std::max(rep.j1.twice(), rep.j2.twice());
      PureProductReport pp =
          pure_product_test(psi, rep.j1, rep.j2, quad_for(degree));
      std::cout << "pure-product integrals: I1 = " << pp.i1
                << ", I2 = " << pp.i2 << " -> "
                << (pp.is_product ? "product" : "entangled") << "\n";
      report.metrics.emplace_back("I1", pp.i1);
      report.metrics.emplace_back("I2", pp.i2);
      report.flags.emplace_back("product", pp.is_product);
    }

    AbelianSpectrum spec = abelian_restriction(phi);
    std::cout << "abelian spectrum: " << spec.coefficients.size()
              << " lattice coefficients, min " << spec.min_coefficient()
              << ", sum " << spec.sum() << ", off-lattice max "
              << spec.off_lattice_max << "\n";
    report.metrics.emplace_back("abelian_min", spec.min_coefficient());
    report.metrics.emplace_back("abelian_sum", spec.sum());
    report.metrics.emplace_back("abelian_off_lattice", spec.off_lattice_max);
    ok = ok && spec.min_coefficient() >= -1e-10;

    if (!csv_file.empty()) {
      const HaarQuadrature& q = quad_for(2);
      std::vector<std::pair<SU2Element, SU2Element>> pairs;
      for (std::size_t i = 0; i < q.size(); i += 7)
        for (std::size_t k = 0; k < q.size(); k += 23)
          pairs.emplace_back(q.nodes()[i], q.nodes()[k]);
      write_file(csv_file, charfunc_csv(phi, pairs));
      std::cout << "wrote " << pairs.size() << " samples to " << csv_file
                << "\n";
    }
  }
  finish_report(report, start, args.report_file);
  return ok ? kExitOk : kExitVerdictFailure;
}

int cmd_finite(const std::string& builtin_name, const std::string& group_file,
               const std::string& values_csv, const std::string& action,
               const std::string& state_file, const std::string& dec_file,
               const std::string& report_file, const std::string& csv_file) {
  auto start = std::chrono::steady_clock::now();
  std::optional<BuiltinGroup> bg;
  std::optional<FiniteGroup> custom;
  if (!builtin_name.empty())
    bg = builtin_group(builtin_name);
  else if (!group_file.empty())
    custom = load_group(group_file);
  else
    throw ParseError("missing --builtin or --group");
  const FiniteGroup& group = bg ? bg->group : *custom;
  const int n = group.order();
  RunReport report = base_report(
      "finite", builtin_name.empty() ? group_file : builtin_name);
  report.notes.emplace_back("action", action);
  bool ok = true;

  // the working charfunc: parsed --values, or a seeded pure state on the
  // highest-dimensional irrep
  auto the_values = [&]() -> Vector {
    if (!values_csv.empty()) {
      std::vector<double> vals;
      std::istringstream in(values_csv);
      std::string item;
      while (std::getline(in, item, ',')) {
        try {
          vals.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ParseError("--values: bad number '" + item + "'");
        }
      }
      if (static_cast<int>(vals.size()) != n)
        throw DimensionMismatchError(
            "--values has " + std::to_string(vals.size()) +
            " entries for a group of order " + std::to_string(n));
      Vector v(n);
      for (int i = 0; i < n; ++i) v[i] = vals[i];
      return v;
    }
    if (!bg) throw ParseError("--values is required for custom groups");
    const FiniteIrrep* top = &bg->irreps[0];
    for (const auto& r : bg->irreps)
      if (r.dim() > top->dim()) top = &r;
    Vector psi = random_pure(top->dim(), 1);
    return forward_transform((psi * psi.adjoint()).eval(), *top).values();
  };

  if (action == "phi-matrix") {
    FiniteCharFunc phi(group, the_values());
    PhiMatrix pm = build_phi_matrix(phi);
    PsdVerdict v = is_positive_definite(phi);
    std::cout << "Phi =\n" << pm.matrix << "\n" << psd_str(v) << "\n";
    report.verdicts.emplace_back("phi", v);
    if (!csv_file.empty()) write_file(csv_file, charfunc_csv(phi));
  } else if (action == "blocks") {
    if (!bg)
      throw IncompleteIrrepListError(
          "blocks action needs the builtin irrep list");
    FiniteCharFunc phi(group, the_values());
    auto blocks = block_decompose(phi, bg->irreps);
    Cplx trace_sum = 0.0;
    bool all_psd = true;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      PsdVerdict v = psd_verdict_of(blocks[k]);
      all_psd = all_psd && v.is_psd;
      trace_sum += blocks[k].trace();
      std::cout << "block " << bg->irreps[k].label() << " (d="
                << bg->irreps[k].dim() << "): " << psd_str(v) << "\n";
      report.verdicts.emplace_back("block_" + bg->irreps[k].label(), v);
    }
    std::cout << "trace sum = " << trace_sum.real() << "\n";
    report.metrics.emplace_back("trace_sum", trace_sum.real());
    ok = std::abs(trace_sum - Cplx(1.0)) < 1e-9;
    report.flags.emplace_back("blocks_psd", all_psd);
  } else if (action == "ppt-embed") {
    if (!bg) throw ParseError("ppt-embed needs --builtin");
    const FiniteIrrep* top = &bg->irreps[0];
    for (const auto& r : bg->irreps)
      if (r.dim() > top->dim()) top = &r;
    Matrix rho = state_file.empty()
                     ? werner(0.25).matrix()
                     : parse_density_matrix(read_file(state_file));
    if (rho.rows() != top->dim() * top->dim())
      throw DimensionMismatchError(
          "state dim does not match the square of the top irrep dimension");
    FiniteProductCharFunc phi =
        FiniteProductCharFunc::from_operator(rho, *top, *top);
    PsdVerdict phi_pt = phi_partial_transpose_test(phi);
    PptReport recon = group_ppt_test(DensityMatrix(rho), *top, *top);
    std::cout << "Phi^T1 criterion: " << psd_str(phi_pt) << "\n"
              << "group reconstruction: " << psd_str(recon.group_verdict)
              << "\nverdict: " << (recon.group_verdict.is_psd ? "PPT" : "NPT")
              << ";" << (recon.agree ? "AGREE" : "DISAGREE") << "\n";
    report.verdicts.emplace_back("phi_partial_transpose", phi_pt);
    report.verdicts.emplace_back("group", recon.group_verdict);
    report.flags.emplace_back("agree", recon.agree);
    ok = recon.agree;
    if (!dec_file.empty()) {
      SeparableDecomposition dec = load_decomposition(dec_file);
      EmbeddingReport emb = phi_matrix_embedding(dec, *top, *top);
      DecompositionCheck chk =
          verify_separable_decomposition(phi, dec, *top, *top);
      std::cout << "decomposition match: " << (chk.matches ? "yes" : "no")
                << " (deviation " << chk.max_deviation << ", terms "
                << chk.term_count << "/" << chk.caratheodory_bound << ")\n"
                << "embedding equality deviation: " << emb.max_deviation
                << "\n";
      report.metrics.emplace_back("decomposition_deviation",
                                  chk.max_deviation);
      report.metrics.emplace_back("embedding_deviation", emb.max_deviation);
      report.flags.emplace_back("decomposition_matches", chk.matches);
      ok = ok && chk.matches && emb.equal;
    }
  } else {
    throw ParseError("unknown --action '" + action +
                     "' (phi-matrix, blocks, ppt-embed)");
  }
  finish_report(report, start, report_file);
  return ok ? kExitOk : kExitVerdictFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-commutative characteristic functions on compact groups"};
  app.set_version_flag("--version", NCCF_VERSION);
  app.require_subcommand(1);

  CommonArgs rt_args, ppt_args, an_args;
  std::string ppt_dims, an_csv;

  CLI::App* rt = app.add_subcommand(
      "roundtrip", "density matrix -> characteristic function -> back");
  add_common(rt, rt_args);
  rt->add_option("--rep", rt_args.rep_spec, "su2:j=<spin> or su2:<j1>x<j2>");

  CLI::App* ppt = app.add_subcommand(
      "ppt", "group-theoretic PPT test against the direct partial transpose");
  add_common(ppt, ppt_args);
  ppt->add_option("--dims", ppt_dims, "bipartition, e.g. 2x2, 3x3");

  CLI::App* an = app.add_subcommand(
      "analyze",
      "normalization, purity, pure-product integrals, abelian spectrum");
  add_common(an, an_args);
  an->add_option("--rep", an_args.rep_spec, "su2:j=<spin> or su2:<j1>x<j2>");
  an->add_option("--csv", an_csv, "write phi samples as CSV");

  std::string fin_builtin, fin_group, fin_values, fin_action = "phi-matrix",
                                                  fin_state, fin_dec,
                                                  fin_report, fin_csv;
  CLI::App* fin = app.add_subcommand(
      "finite", "finite-group machinery: Phi matrix, blocks, PPT embedding");
  fin->add_option("--builtin", fin_builtin, "Zn, S3 or D4");
  fin->add_option("--group", fin_group, "group-spec file (Cayley table)");
  fin->add_option("--values", fin_values, "comma-separated phi values");
  fin->add_option("--action", fin_action, "phi-matrix | blocks | ppt-embed");
  fin->add_option("--state", fin_state, "density-matrix file for ppt-embed");
  fin->add_option("--decomposition", fin_dec, "decomposition file (JSON)");
  fin->add_option("--report", fin_report, "write a JSON run report");
  fin->add_option("--csv", fin_csv, "write the phi values as CSV");

  try {
    app.parse(argc, argv);
    if (rt->parsed()) return cmd_roundtrip(rt_args);
    if (ppt->parsed()) return cmd_ppt(ppt_args, ppt_dims);
    if (an->parsed()) return cmd_analyze(an_args, an_csv);
    if (fin->parsed())
      return cmd_finite(fin_builtin, fin_group, fin_values, fin_action,
                        fin_state, fin_dec, fin_report, fin_csv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what();
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    std::cerr << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
