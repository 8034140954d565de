#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cstar/cli.hpp"
#include "cstar/golden.hpp"

namespace cstar::cli {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double lookup_tol(const TolOverrides& overrides, std::string_view key, double fallback) {
  if (auto it = overrides.find(key); it != overrides.end()) return it->second;
  if (auto it = overrides.find("all"); it != overrides.end()) return it->second;
  return fallback;
}

int rank_of(const Matrix& m, double tol) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * std::max(1.0, s(0))) ++rank;
  }
  return rank;
}

CommandResult qubit_example(double tol) {
  const PointedRep rep = golden::qubit_rep();
  const State omega = rest(rep);
  const GnsRep g = gns_construct(omega);

  // N should be span{e_{up,down}, e_{down,down}} = coordinates 1 and 3.
  Matrix expected_projector = Matrix::Zero(4, 4);
  expected_projector(1, 1) = 1.0;
  expected_projector(3, 3) = 1.0;
  const double null_distance = max_abs(Matrix(g.null_basis * g.null_basis.adjoint() - expected_projector));

  // <[a], [b]> = conj(a_uu) b_uu + conj(a_du) b_du on random representatives.
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  double inner_deviation = 0.0;
  for (int s = 0; s < 32; ++s) {
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a(i) = Complex(normal(rng), normal(rng));
      b(i) = Complex(normal(rng), normal(rng));
    }
    const Complex quotient = g.quotient_coords(a).dot(g.quotient_coords(b));
    const Complex formula = std::conj(a(0)) * b(0) + std::conj(a(2)) * b(2);
    inner_deviation = std::max(inner_deviation, std::abs(quotient - formula));
  }

  const Intertwiner m = modification_m(rep, tol);
  const GnsCertificates certs = certify_gns(g, tol);
  const bool pass = g.null_dim() == 2 && g.quotient_dim() == 2 && null_distance <= tol && inner_deviation <= tol &&
                    m.certificates().unitary && m.is_pointed_morphism() && certs.pass;

  Json report{{"example", "qubit"},
              {"tolerance", tol},
              {"state", to_json(omega)},
              {"null_dim", g.null_dim()},
              {"quotient_dim", g.quotient_dim()},
              {"null_space_distance", number(null_distance)},
              {"inner_product_gram", to_json(g.gram)},
              {"inner_product_deviation", number(inner_deviation)},
              {"gns_certificates", to_json(certs)},
              {"m", intertwiner_report(m)},
              {"m_unitary", m.certificates().unitary},
              {"pass", pass}};
  return {std::move(report), pass ? kExitPass : kExitFail};
}

CommandResult epr_example(double tol) {
  const PointedRep rep = golden::epr_rep();
  const StarMorphism i1 = golden::epr_inclusion();
  const State omega = rest(rep);
  const State omega1 = pullback_state(omega, i1);

  const Matrix rho1 = density_matrix_from_state(omega1).matrix();
  const double rho1_deviation = max_abs(Matrix(rho1 - 0.5 * Matrix::Identity(2, 2)));
  const double gram_deviation = max_abs(Matrix(gram_matrix(omega1) - 0.5 * Matrix::Identity(4, 4)));
  const GnsRep g1 = gns_construct(omega1);

  const Intertwiner l = gns_intertwiner(i1, omega, tol);
  const Intertwiner m = modification_m(rep, tol);
  const Intertwiner composite(l.source(), pullback_pointed(i1, rep), m.map() * l.map(), tol);
  const int composite_rank = rank_of(composite.map(), tol);

  // The composite sends [a] to pi(a (x) 1)|Psi>.
  double formula_deviation = 0.0;
  const Element one = Element::unit(Algebra::full(2));
  for (int k = 0; k < 4; ++k) {
    const Element a = Element::basis(Algebra::full(2), k);
    const Vector lhs = composite.map() * g1.quotient_coords(a.coords());
    const Vector rhs = kron(a, one).block(0) * golden::epr_singlet();
    formula_deviation = std::max(formula_deviation, max_abs(Matrix(lhs - rhs)));
  }

  const bool pass = rho1_deviation <= tol && gram_deviation <= tol && g1.null_dim() == 0 && g1.quotient_dim() == 4 &&
                    l.certificates().isometry && l.is_pointed_morphism() && m.certificates().unitary &&
                    composite.certificates().unitary && composite.is_pointed_morphism() && composite_rank == 4 &&
                    formula_deviation <= tol;

  Json report{{"example", "epr"},
              {"tolerance", tol},
              {"rho1", to_json(rho1)},
              {"rho1_deviation", number(rho1_deviation)},
              {"gram_deviation", number(gram_deviation)},
              {"null_dim", g1.null_dim()},
              {"quotient_dim", g1.quotient_dim()},
              {"L", intertwiner_report(l)},
              {"L_isometric", l.certificates().isometry},
              {"m", intertwiner_report(m)},
              {"m_unitary", m.certificates().unitary},
              {"composite", intertwiner_report(composite)},
              {"composite_unitary", composite.certificates().unitary},
              {"composite_rank", composite_rank},
              {"composite_surjective", composite_rank == 4},
              {"composite_formula_deviation", number(formula_deviation)},
              {"pass", pass}};
  return {std::move(report), pass ? kExitPass : kExitFail};
}

void append_text(std::ostringstream& out, const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) append_text(out, value, path.empty() ? key : path + "." + key);
    return;
  }
  out << path << ": " << j.dump() << "\n";
}

}  // namespace

CommandResult run_example(const std::string& id, const TolOverrides& tol_overrides) {
  const double tol = lookup_tol(tol_overrides, "example", kDefaultTol);
  if (id == "qubit") return qubit_example(tol);
  if (id == "epr") return epr_example(tol);
  throw CLI::ValidationError("example", "unknown example id '" + id + "' (expected qubit or epr)");
}

CommandResult run_gns(const Json& input) {
  const Json& state_json = input.contains("state") ? input["state"] : input;
  const std::string state_path = input.contains("state") ? "state" : "";
  const State omega = state_from_json(state_json, state_path);

  Json report = Json::object();
  const StateReport state_cert = verify_state(omega);
  report["state_certificate"] = to_json(state_cert);
  if (!state_cert.pass) {
    report["pass"] = false;
    return {std::move(report), kExitFail};
  }

  const GnsRep g = gns_construct(omega);
  const GnsCertificates certs = certify_gns(g);
  report["gns"] = gns_report(g, certs);
  bool pass = certs.pass;

  if (input.contains("morphism")) {
    const StarMorphism raw = morphism_from_json(input["morphism"], "morphism");
    if (raw.target() != omega.algebra()) {
      throw ParseError("field 'morphism.target': does not match the state's algebra");
    }
    const MorphismReport morph_cert = verify_morphism(raw);
    report["morphism_certificate"] = to_json(morph_cert);
    if (!morph_cert.pass) {
      report["pass"] = false;
      return {std::move(report), kExitFail};
    }
    const StarMorphism f = certified(raw);
    const Intertwiner l = gns_intertwiner(f, omega);
    const State pulled = pullback_state(omega, f);
    const GnsRep source = gns_construct(pulled);
    const GnsCertificates source_certs = certify_gns(source);
    report["pullback_state"] = to_json(pulled);
    report["pullback_gns"] = gns_report(source, source_certs);
    report["intertwiner"] = intertwiner_report(l);
    pass = pass && source_certs.pass && l.is_pointed_morphism();
  }
  report["pass"] = pass;
  return {std::move(report), pass ? kExitPass : kExitFail};
}

CommandResult run_gns_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  Json input;
  try {
    input = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return run_gns(input);
}

CommandResult run_sweep_command(std::uint64_t seed, int instances, const TolOverrides& tol_overrides,
                                Execution exec) {
  if (instances < 1) throw CLI::ValidationError("--instances", "must be >= 1");
  LawOptions opts;
  opts.exec = exec;
  for (const auto& [key, value] : tol_overrides) {
    if (key == "all") {
      for (const std::string& id : all_law_ids()) opts.tol_overrides.emplace(id, value);
    }
  }
  for (const auto& [key, value] : tol_overrides) {
    if (key != "all") opts.tol_overrides[key] = value;
  }
  const SweepReport sweep = run_sweep(InstanceGenerator(seed), instances, opts);
  return {to_json(sweep), sweep.pass ? kExitPass : kExitFail};
}

CommandResult execute(const RunConfig& config) {
  switch (config.command) {
    case Command::example:
      if (!config.example_id) throw CLI::ValidationError("example", "an example id is required");
      return run_example(*config.example_id, config.tol_overrides);
    case Command::gns:
      if (!config.input_path) throw CLI::ValidationError("gns", "--input is required");
      return run_gns_file(*config.input_path);
    case Command::sweep:
      return run_sweep_command(config.seed, config.instances, config.tol_overrides, config.exec);
  }
  throw CLI::ValidationError("command", "unknown command");
}

std::string format_text(const Json& report) {
  std::ostringstream out;
  if (report.contains("laws")) {
    out << "seed " << report["seed"].dump() << ", " << report["instances"].dump() << " instances per law\n";
    auto section = [&](const Json& list) {
      for (const Json& law : list) {
        out << (law["pass"].get<bool>() ? "PASS " : "FAIL ") << law["law_id"].get<std::string>()
            << "  max_violation=" << law["max_violation"].dump() << "  tol=" << law["tolerance"].dump() << "\n";
        for (const Json& w : law["witnesses"]) {
          out << "    witness instance=" << w["instance"].dump() << " seed=" << w["instance_seed"].dump()
              << " violation=" << w["violation"].dump() << "  " << w["detail"].get<std::string>() << "\n";
        }
      }
    };
    section(report["laws"]);
    section(report["definition_519"]);
    out << (report["pass"].get<bool>() ? "all laws passed" : "some laws FAILED") << "\n";
    return out.str();
  }
  append_text(out, report, "");
  return out.str();
}

std::pair<std::string, double> parse_tol_override(const std::string& text) {
  const auto eq = text.find('=');
  const std::string key = eq == std::string::npos ? "all" : text.substr(0, eq);
  const std::string value = eq == std::string::npos ? text : text.substr(eq + 1);
  std::size_t used = 0;
  double tol = 0.0;
  try {
    tol = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (key.empty() || used != value.size() || !(tol >= 0.0)) {
    throw CLI::ValidationError("--tol", "expected law=value or value with a non-negative number, got '" + text + "'");
  }
  return {key, tol};
}

int main(int argc, char** argv) {
  CLI::App app{"GNS construction for finite-dimensional C*-algebras, with law verification"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "json";
  std::vector<std::string> tols;
  bool serial = false;
  app.add_option("-o,--output", config.output, "Write the report to this file instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  auto* example = app.add_subcommand("example", "Reproduce a golden example (qubit or epr)");
  std::string example_id;
  example->add_option("id", example_id, "qubit | epr")->required()->check(CLI::IsMember({"qubit", "epr"}));
  example->add_option("--tol", tols, "Certificate tolerance, e.g. 1e-12 or example=1e-12");

  auto* gns = app.add_subcommand("gns", "Run the GNS construction on a state read from JSON");
  std::string input;
  gns->add_option("-i,--input", input, "Input JSON file")->required();

  auto* sweep = app.add_subcommand("sweep", "Run every law check over seeded random instances");
  sweep->add_option("--seed", config.seed, "Generator seed");
  sweep->add_option("--instances", config.instances, "Instances per law")->check(CLI::PositiveNumber);
  sweep->add_option("--tol", tols, "Tolerance override law=value (repeatable)");
  sweep->add_flag("--serial", serial, "Evaluate instances on one thread");

  try {
    app.parse(argc, argv);
    for (const std::string& t : tols) {
      const auto [key, value] = parse_tol_override(t);
      config.tol_overrides[key] = value;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  config.format = format == "text" ? Format::text : Format::json;
  config.exec = serial ? Execution::serial : Execution::parallel;
  if (example->parsed()) {
    config.command = Command::example;
    config.example_id = example_id;
  } else if (gns->parsed()) {
    config.command = Command::gns;
    config.input_path = input;
  } else {
    config.command = Command::sweep;
  }

  CommandResult result;
  try {
    result = execute(config);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = config.format == Format::json ? result.report.dump(2) + "\n" : format_text(result.report);
  if (config.output) {
    std::ofstream out(*config.output);
    if (!out) {
      std::cerr << "error: cannot write " << *config.output << "\n";
      return kExitUsage;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}

}  // namespace cstar::cli
