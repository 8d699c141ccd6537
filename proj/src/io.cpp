#include "nccf/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nccf/errors.hpp"
#include "nccf/states.hpp"

namespace nccf {

using nlohmann::json;

namespace {

json complex_to_json(Cplx v) { return json::array({v.real(), v.imag()}); }

Cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("expected [re, im] pair");
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("expected a non-empty array of rows");
  const auto nr = rows.size();
  const auto nc = rows[0].size();
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (!rows[r].is_array() || rows[r].size() != nc)
      throw ParseError("ragged matrix rows", static_cast<int>(r + 1));
    for (std::size_t c = 0; c < nc; ++c)
      m(r, c) = complex_from_json(rows[r][c]);
  }
  return m;
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

Matrix parse_density_matrix(const std::string& text) {
  Matrix m = matrix_from_json(parse_or_throw(text));
  if (m.rows() != m.cols()) throw ParseError("density matrix must be square");
  return m;
}

std::string format_density_matrix(const Matrix& m) {
  return matrix_to_json(m).dump(1);
}

Matrix load_density_matrix(const std::string& path) {
  return parse_density_matrix(read_file(path));
}

void save_density_matrix(const std::string& path, const Matrix& m) {
  write_file(path, format_density_matrix(m));
}

FiniteGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return FiniteGroup::parse(in);
}

FiniteIrrep parse_irrep(const FiniteGroup& group, const std::string& text,
                        const std::string& label) {
  json j = parse_or_throw(text);
  if (!j.contains("dimension") || !j.contains("matrices"))
    throw ParseError("irrep file needs 'dimension' and 'matrices'");
  const int d = j["dimension"].get<int>();
  std::vector<Matrix> mats;
  for (const json& mj : j["matrices"]) {
    Matrix m = matrix_from_json(mj);
    if (m.rows() != d || m.cols() != d)
      throw ParseError("irrep matrix has wrong dimension");
    mats.push_back(std::move(m));
  }
  return FiniteIrrep(group, std::move(mats), label);
}

std::string format_irrep(const FiniteIrrep& rep) {
  json j;
  j["dimension"] = rep.dim();
  json mats = json::array();
  for (const Matrix& m : rep.matrices()) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j.dump(1);
}

FiniteIrrep load_irrep(const FiniteGroup& group, const std::string& path) {
  return parse_irrep(group, read_file(path), path);
}

SeparableDecomposition parse_decomposition(const std::string& text) {
  json j = parse_or_throw(text);
  SeparableDecomposition dec;
  try {
    for (const json& w : j.at("weights"))
      dec.weights.push_back(w.get<double>());
    auto vectors = [](const json& arr) {
      std::vector<Vector> out;
      for (const json& vj : arr) {
        Vector v(vj.size());
        for (std::size_t i = 0; i < vj.size(); ++i)
          v[i] = complex_from_json(vj[i]);
        out.push_back(std::move(v));
      }
      return out;
    };
    dec.left = vectors(j.at("left"));
    dec.right = vectors(j.at("right"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("decomposition file: ") + e.what());
  }
  dec.validate();
  return dec;
}

std::string format_decomposition(const SeparableDecomposition& dec) {
  json j;
  j["weights"] = dec.weights;
  auto vectors = [](const std::vector<Vector>& vs) {
    json arr = json::array();
    for (const Vector& v : vs) {
      json vj = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        vj.push_back(complex_to_json(v[i]));
      arr.push_back(std::move(vj));
    }
    return arr;
  };
  j["left"] = vectors(dec.left);
  j["right"] = vectors(dec.right);
  return j.dump(1);
}

SeparableDecomposition load_decomposition(const std::string& path) {
  return parse_decomposition(read_file(path));
}

// ---------------------------------------------------------------------------
// CSV export

namespace {

void csv_value(std::ostringstream& out, Cplx v) {
  out << v.real() << "," << v.imag() << "\n";
}

void csv_angles(std::ostringstream& out, const SU2Element& g) {
  auto [phi, theta, psi] = g.euler_angles();
  out << phi << "," << theta << "," << psi << ",";
}

}  // namespace

std::string charfunc_csv(const FiniteCharFunc& phi) {
  std::ostringstream out;
  out.precision(17);
  out << "element,re,im\n";
  for (int g = 0; g < phi.group().order(); ++g) {
    out << g + 1 << ",";
    csv_value(out, phi.evaluate(g));
  }
  return out.str();
}

std::string charfunc_csv(const SU2CharFunc& phi,
                         const std::vector<SU2Element>& nodes) {
  std::ostringstream out;
  out.precision(17);
  out << "phi,theta,psi,re,im\n";
  for (const SU2Element& g : nodes) {
    csv_angles(out, g);
    csv_value(out, phi.evaluate(g));
  }
  return out.str();
}

std::string charfunc_csv(
    const SU2ProductCharFunc& phi,
    const std::vector<std::pair<SU2Element, SU2Element>>& node_pairs) {
  std::ostringstream out;
  out.precision(17);
  out << "phi1,theta1,psi1,phi2,theta2,psi2,re,im\n";
  for (const auto& [g1, g2] : node_pairs) {
    csv_angles(out, g1);
    csv_angles(out, g2);
    csv_value(out, phi.evaluate(g1, g2));
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// RunReport

std::string RunReport::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["timing_ms"] = timing_ms;
  json metrics_j = json::object();
  for (const auto& [k, v] : metrics) metrics_j[k] = v;
  j["metrics"] = std::move(metrics_j);
  json tol_j = json::object();
  for (const auto& [k, v] : tolerances) tol_j[k] = v;
  j["tolerances"] = std::move(tol_j);
  json verd_j = json::object();
  for (const auto& [k, v] : verdicts)
    verd_j[k] = {{"is_psd", v.is_psd},
                 {"min_eigenvalue", v.min_eigenvalue},
                 {"tolerance", v.tolerance},
                 {"marginal", v.marginal},
                 {"exact", v.exact}};
  j["verdicts"] = std::move(verd_j);
  json flags_j = json::object();
  for (const auto& [k, v] : flags) flags_j[k] = v;
  j["flags"] = std::move(flags_j);
  json notes_j = json::object();
  for (const auto& [k, v] : notes) notes_j[k] = v;
  j["notes"] = std::move(notes_j);
  return j.dump(1);
}

RunReport RunReport::from_json(const std::string& text) {
  json j = parse_or_throw(text);
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.timing_ms = j.at("timing_ms").get<double>();
  for (const auto& [k, v] : j.at("metrics").items())
    r.metrics.emplace_back(k, v.get<double>());
  for (const auto& [k, v] : j.at("tolerances").items())
    r.tolerances.emplace_back(k, v.get<double>());
  for (const auto& [k, v] : j.at("verdicts").items()) {
    PsdVerdict p;
    p.is_psd = v.at("is_psd").get<bool>();
    p.min_eigenvalue = v.at("min_eigenvalue").get<double>();
    p.tolerance = v.at("tolerance").get<double>();
    p.marginal = v.at("marginal").get<bool>();
    p.exact = v.at("exact").get<bool>();
    r.verdicts.emplace_back(k, p);
  }
  for (const auto& [k, v] : j.at("flags").items())
    r.flags.emplace_back(k, v.get<bool>());
  for (const auto& [k, v] : j.at("notes").items())
    r.notes.emplace_back(k, v.get<std::string>());
  return r;
}

std::string digest(const std::string& canonical_input) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_input) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// recipes

namespace {

std::map<std::string, std::string> parse_kv(const std::string& args) {
  std::map<std::string, std::string> kv;
  std::istringstream in(args);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      kv[""] = item;  // positional, e.g. max_mixed:3
    else
      kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double kv_num(const std::map<std::string, std::string>& kv,
              const std::string& key, const std::string& recipe) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    it = kv.find("");
    if (it == kv.end())
      throw ParseError("recipe '" + recipe + "' needs parameter '" + key + "'");
  }
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ParseError("recipe '" + recipe + "': bad number '" + it->second + "'");
  }
}

}  // namespace

DensityMatrix make_recipe(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto kv = parse_kv(args);
  if (name == "max_mixed") return max_mixed(int(kv_num(kv, "d", name)));
  if (name == "werner") return werner(kv_num(kv, "p", name));
  if (name == "isotropic")
    return isotropic(kv_num(kv, "p", name), int(kv_num(kv, "d", name)));
  if (name == "horodecki") return horodecki_3x3(kv_num(kv, "a", name));
  if (name == "singlet") return singlet();
  if (name == "bell")
    return DensityMatrix::from_pure(bell_vector(int(kv_num(kv, "which", name))));
  if (name == "schmidt") return schmidt_pair(kv_num(kv, "lambda", name));
  if (name == "product") {
    if (args.empty()) {  // |0> ⊗ |0> on 2x2
      Vector u = Vector::Zero(2), v = Vector::Zero(2);
      u[0] = 1.0;
      v[0] = 1.0;
      return product_pure(u, v);
    }
    const int dl = int(kv_num(kv, "dl", name));
    const int dr = int(kv_num(kv, "dr", name));
    const auto seed = std::uint64_t(kv_num(kv, "seed", name));
    return product_pure(random_pure(dl, seed), random_pure(dr, seed + 1));
  }
  if (name == "random") {
    const int d = int(kv_num(kv, "d", name));
    const int rank = int(kv_num(kv, "rank", name));
    const auto seed = std::uint64_t(kv_num(kv, "seed", name));
    return random_density(d, rank, seed);
  }
  throw ParseError("unknown recipe '" + name + "'");
}

Spin parse_spin(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash));
      const double den = std::stod(text.substr(slash + 1));
      return Spin::from_value(num / den);
    }
    return Spin::from_value(std::stod(text));
  } catch (const InvalidSpinError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad spin '" + text + "'");
  }
}

RepSpec parse_rep_spec(const std::string& spec) {
  if (spec.rfind("su2:", 0) != 0)
    throw ParseError("rep spec must start with 'su2:', got '" + spec + "'");
  std::string body = spec.substr(4);
  RepSpec out;
  if (body.rfind("j=", 0) == 0) {
    out.product = false;
    out.j1 = parse_spin(body.substr(2));
    return out;
  }
  const auto x = body.find('x');
  if (x == std::string::npos)
    throw ParseError("rep spec needs 'j=<spin>' or '<j1>x<j2>'");
  out.product = true;
  out.j1 = parse_spin(body.substr(0, x));
  out.j2 = parse_spin(body.substr(x + 1));
  return out;
}

}  // namespace nccf
