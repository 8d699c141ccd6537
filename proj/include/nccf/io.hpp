#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nccf/charfunc.hpp"
#include "nccf/separability.hpp"

namespace nccf {

// Density-matrix file: JSON square array of [re, im] pairs.
Matrix parse_density_matrix(const std::string& text);
std::string format_density_matrix(const Matrix& m);
Matrix load_density_matrix(const std::string& path);
void save_density_matrix(const std::string& path, const Matrix& m);

// Group-spec file (text; order then 1-based Cayley rows).
FiniteGroup load_group(const std::string& path);

// Irrep file: JSON {"dimension": d, "matrices": [element-indexed d x d
// arrays of [re, im] pairs]}; all representation invariants are verified by
// the FiniteIrrep constructor on load.
FiniteIrrep parse_irrep(const FiniteGroup& group, const std::string& text,
                        const std::string& label = "");
std::string format_irrep(const FiniteIrrep& rep);
FiniteIrrep load_irrep(const FiniteGroup& group, const std::string& path);

// Decomposition file: JSON {"weights": [...], "left": [vectors of [re,im]],
// "right": [...]}; validated on parse.
SeparableDecomposition parse_decomposition(const std::string& text);
std::string format_decomposition(const SeparableDecomposition& dec);
SeparableDecomposition load_decomposition(const std::string& path);

// CharFunc export for plotting. Finite groups: "element,re,im" with 1-based
// element indices. SU(2): "phi,theta,psi,re,im" per node; products take
// explicit node pairs and emit both angle triples.
std::string charfunc_csv(const FiniteCharFunc& phi);
std::string charfunc_csv(const SU2CharFunc& phi,
                         const std::vector<SU2Element>& nodes);
std::string charfunc_csv(
    const SU2ProductCharFunc& phi,
    const std::vector<std::pair<SU2Element, SU2Element>>& node_pairs);

/// Versioned, machine-readable result document for one CLI command;
/// serializes to JSON with a stable key order and parses back.
struct RunReport {
  int schema_version = 1;
  std::string tool_version;
  std::string command;
  std::string input_digest;
  double timing_ms = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::pair<std::string, PsdVerdict>> verdicts;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::pair<std::string, std::string>> notes;

  std::string to_json() const;
  static RunReport from_json(const std::string& text);
};

/// FNV-1a hash in hex; used as the inputs digest in reports.
std::string digest(const std::string& canonical_input);

/// Reference-state recipes addressable from the CLI, e.g. "max_mixed:3",
/// "werner:p=0.5", "horodecki:a=0.3", "singlet", "bell:2", "product",
/// "isotropic:p=0.5,d=3", "schmidt:lambda=0.3", "random:d=4,rank=2,seed=7".
DensityMatrix make_recipe(const std::string& spec);

/// Representation spec: "su2:j=<spin>" for one factor or "su2:<j1>x<j2>" for
/// a product; spins accept "1", "1/2", "0.5".
struct RepSpec {
  bool product = false;
  Spin j1;
  Spin j2;
};
RepSpec parse_rep_spec(const std::string& spec);
Spin parse_spin(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nccf
