#include <array>
#include <utility>

#include "cstar/errors.hpp"
#include "cstar/laws.hpp"

namespace cstar {

namespace {

// Single-step identities get 1e-9, identities between composed matrices 1e-8.
constexpr std::array<std::pair<std::string_view, double>, 16> kTolerances{{
    {law_ids::states_functor, 1e-9},
    {law_ids::oplax_identity, 1e-9},
    {law_ids::oplax_composition, 1e-8},
    {law_ids::oplax_certificates, 1e-8},
    {law_ids::rest_naturality, 1e-9},
    {law_ids::rest_after_gns, 1e-8},
    {law_ids::modification_coherence, 1e-8},
    {law_ids::zigzag, 1e-9},
    {law_ids::universal_property, 1e-8},
    {"def519_a", 1e-8},
    {"def519_b", 1e-8},
    {"def519_c", 1e-9},
    {"def519_d", 1e-8},
    {"def519_e", 1e-8},
    {"def519_f", 1e-8},
    {"def519_g", 1e-9},
}};

}  // namespace

double default_tolerance(std::string_view law_id) {
  for (const auto& [id, tol] : kTolerances) {
    if (id == law_id) return tol;
  }
  throw ValidationError("unknown law id: " + std::string(law_id));
}

const std::vector<std::string>& all_law_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& entry : kTolerances) out.emplace_back(entry.first);
    return out;
  }();
  return ids;
}

double LawOptions::tolerance(std::string_view law_id) const {
  if (auto it = tol_overrides.find(law_id); it != tol_overrides.end()) return it->second;
  return default_tolerance(law_id);
}

SweepReport run_sweep(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  for (const auto& [id, tol] : opts.tol_overrides) {
    default_tolerance(id);  // rejects unknown ids
    if (!(tol >= 0.0)) throw ValidationError("tolerance for " + id + " must be non-negative");
  }
  SweepReport out;
  out.seed = gen.seed();
  out.instances = n;
  out.laws.push_back(check_states_functor(gen, n, opts));
  for (LawReport& r : check_oplax_gns(gen, n, opts)) out.laws.push_back(std::move(r));
  out.laws.push_back(check_rest_naturality(gen, n, opts));
  out.laws.push_back(check_rest_after_gns(gen, n, opts));
  out.laws.push_back(check_modification_coherence(gen, n, opts));
  out.laws.push_back(check_zigzag(gen, n, opts));
  out.laws.push_back(check_universal_property(gen, n, opts));
  out.definition_519 = check_definition_519(gen, n, opts);

  out.pass = true;
  for (const LawReport& r : out.laws) out.pass = out.pass && r.pass;
  for (const LawReport& r : out.definition_519) out.pass = out.pass && r.pass;
  return out;
}

}  // namespace cstar
