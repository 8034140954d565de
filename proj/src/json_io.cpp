#include "cstar/json_io.hpp"

#include <cmath>

namespace cstar {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string child(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

}  // namespace

Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Algebra& a) { return Json{{"blocks", a.block_dims()}}; }

Json to_json(const Element& e) {
  Json out = Json::array();
  for (const Matrix& b : e.blocks()) out.push_back(to_json(b));
  return out;
}

Json to_json(const StarMorphism& f) {
  return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"matrix", to_json(f.matrix())}};
}

Json to_json(const State& s) { return Json{{"algebra", to_json(s.algebra())}, {"coeffs", to_json(s.coeffs())}}; }

Json to_json(const MorphismReport& r) {
  return Json{{"adjoint_violation", number(r.adjoint_violation)},
              {"multiplicative_violation", number(r.multiplicative_violation)},
              {"unital_violation", number(r.unital_violation)},
              {"max_violation", number(r.max_violation())},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

Json to_json(const StateReport& r) {
  return Json{{"unitality_violation", number(r.unitality_violation)},
              {"hermitian_violation", number(r.hermitian_violation)},
              {"positivity_violation", number(r.positivity_violation)},
              {"cauchy_schwarz_violation", number(r.cauchy_schwarz_violation)},
              {"gram_min_eigenvalue", number(r.gram_min_eigenvalue)},
              {"cauchy_schwarz_pairs", r.cauchy_schwarz_pairs},
              {"max_violation", number(r.max_violation())},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

Json to_json(const IntertwinerCertificates& c) {
  return Json{{"intertwines", c.intertwines},
              {"isometry", c.isometry},
              {"unitary", c.unitary},
              {"preserves_point", c.preserves_point},
              {"intertwining_violation", number(c.intertwining_violation)},
              {"isometry_violation", number(c.isometry_violation)},
              {"coisometry_violation", number(c.coisometry_violation)},
              {"point_violation", number(c.point_violation)},
              {"tolerance", c.tolerance}};
}

Json to_json(const GnsCertificates& c) {
  return Json{{"orthonormality_violation", number(c.orthonormality_violation)},
              {"null_violation", number(c.null_violation)},
              {"omega_norm_violation", number(c.omega_norm_violation)},
              {"rest_recovery_violation", number(c.rest_recovery_violation)},
              {"cyclic", c.cyclic},
              {"orbit_rank", c.orbit_rank},
              {"dimensions_consistent", c.dimensions_consistent},
              {"pi", to_json(c.pi_report)},
              {"pass", c.pass}};
}

Json to_json(const LawReport& r) {
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses) {
    witnesses.push_back(Json{{"instance", w.instance},
                             {"instance_seed", w.instance_seed},
                             {"violation", number(w.violation)},
                             {"detail", w.detail}});
  }
  return Json{{"law_id", r.law_id},
              {"seed", r.seed},
              {"instances", r.instances_checked},
              {"max_violation", number(r.max_violation)},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"witnesses", std::move(witnesses)}};
}

Json to_json(const SweepReport& r) {
  Json laws = Json::array();
  for (const LawReport& l : r.laws) laws.push_back(to_json(l));
  Json def = Json::array();
  for (const LawReport& l : r.definition_519) def.push_back(to_json(l));
  return Json{{"seed", r.seed},
              {"instances", r.instances},
              {"pass", r.pass},
              {"laws", std::move(laws)},
              {"definition_519", std::move(def)}};
}

Json intertwiner_report(const Intertwiner& l) {
  return Json{{"L", to_json(l.map())}, {"certificates", to_json(l.certificates())}};
}

Json gns_report(const GnsRep& g, const GnsCertificates& c) {
  Json pi = Json::object();
  for (int k = 0; k < g.state.algebra().dim(); ++k) pi[std::to_string(k)] = to_json(g.rep.image(k));
  return Json{{"quotient_dim", g.quotient_dim()},
              {"null_dim", g.null_dim()},
              {"embed", to_json(g.embed)},
              {"null_basis", to_json(g.null_basis)},
              {"pi", std::move(pi)},
              {"omega", to_json(g.rep.omega())},
              {"certificates", to_json(c)}};
}

// ---- parsing ------------------------------------------------------------------------

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) fail(child(path, std::size_t{0}), "expected a row array");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(child(path, r), "expected a row of length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[r][c], child(child(path, r), c));
    }
  }
  return m;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of complex numbers");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i], child(path, i));
  return v;
}

Algebra algebra_from_json(const Json& j, const std::string& path) {
  const std::string blocks_path = child(path, "blocks");
  const Json& blocks = field(j, "blocks", path);
  if (!blocks.is_array() || blocks.empty()) fail(blocks_path, "expected a non-empty array of block sizes");
  std::vector<int> dims;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!blocks[i].is_number_integer() || blocks[i].get<int>() < 1) {
      fail(child(blocks_path, i), "block size must be a positive integer");
    }
    dims.push_back(blocks[i].get<int>());
  }
  return Algebra(std::move(dims));
}

Element element_from_json(const Json& j, const Algebra& algebra, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != algebra.num_blocks()) {
    fail(path, "expected " + std::to_string(algebra.num_blocks()) + " block matrices");
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < j.size(); ++b) {
    Matrix m = matrix_from_json(j[b], child(path, b));
    const int n = algebra.block_dim(static_cast<int>(b));
    if (m.rows() != n || m.cols() != n) fail(child(path, b), "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    blocks.push_back(std::move(m));
  }
  return Element(algebra, std::move(blocks));
}

StarMorphism morphism_from_json(const Json& j, const std::string& path) {
  Algebra source = algebra_from_json(field(j, "source", path), child(path, "source"));
  Algebra target = algebra_from_json(field(j, "target", path), child(path, "target"));
  Matrix m = matrix_from_json(field(j, "matrix", path), child(path, "matrix"));
  if (m.rows() != target.dim() || m.cols() != source.dim()) {
    fail(child(path, "matrix"), "expected shape " + std::to_string(target.dim()) + "x" + std::to_string(source.dim()));
  }
  return StarMorphism(std::move(source), std::move(target), std::move(m));
}

State state_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  // {"blocks": [...]} at the state level is accepted as shorthand for "algebra".
  const Algebra algebra = j.contains("algebra") ? algebra_from_json(j["algebra"], child(path, "algebra"))
                                                : algebra_from_json(j, path);
  if (j.contains("coeffs")) {
    Vector coeffs = vector_from_json(j["coeffs"], child(path, "coeffs"));
    if (coeffs.size() != algebra.dim()) {
      fail(child(path, "coeffs"), "expected " + std::to_string(algebra.dim()) + " coefficients");
    }
    return State(algebra, std::move(coeffs));
  }
  if (j.contains("density")) {
    if (!algebra.single_block()) fail(child(path, "density"), "density input needs a single-block algebra");
    Matrix rho = matrix_from_json(j["density"], child(path, "density"));
    const int n = algebra.block_dim(0);
    if (rho.rows() != n || rho.cols() != n) fail(child(path, "density"), "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    // Not validated here: an invalid rho surfaces in the state certificate.
    return state_from_block_densities(algebra, {rho});
  }
  fail(path, "expected \"coeffs\" or \"density\"");
}

}  // namespace cstar
