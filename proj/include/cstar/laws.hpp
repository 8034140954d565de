#pragma once

// Executable checks of the categorical laws satisfied by GNS and rest:
// functoriality of state pullback, oplax naturality of GNS (the L_f), rest
// naturality, rest o GNS = id, the coherence of m, the zig-zag identities,
// the seven defining conditions of a GNS left adjoint, and the universal
// property of GNS representations.  Every law is checked pointwise as a
// matrix identity over seeded random instances.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/gns.hpp"
#include "cstar/kernels.hpp"
#include "cstar/states.hpp"

namespace cstar {

struct Witness {
  int instance = 0;
  std::uint64_t instance_seed = 0;
  double violation = 0.0;
  std::string detail;
};

struct LawReport {
  std::string law_id;
  int instances_checked = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  /// Failing instances in index order (at most kMaxWitnesses); empty iff pass.
  std::vector<Witness> witnesses;
};

inline constexpr std::size_t kMaxWitnesses = 5;

/// Law ids and their default tolerances.
namespace law_ids {
inline constexpr std::string_view states_functor = "states_functor";
inline constexpr std::string_view oplax_identity = "oplax_identity";
inline constexpr std::string_view oplax_composition = "oplax_composition";
inline constexpr std::string_view oplax_certificates = "oplax_certificates";
inline constexpr std::string_view rest_naturality = "rest_naturality";
inline constexpr std::string_view rest_after_gns = "rest_after_gns";
inline constexpr std::string_view modification_coherence = "modification_coherence";
inline constexpr std::string_view zigzag = "zigzag";
inline constexpr std::string_view universal_property = "universal_property";
}  // namespace law_ids

double default_tolerance(std::string_view law_id);
/// All law ids a sweep reports, in report order (nine laws, then def519_a..g).
const std::vector<std::string>& all_law_ids();

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed);
  InstanceGenerator(std::uint64_t seed, std::vector<Algebra> menu, int max_depth = 3, int max_hilbert = 5);

  std::uint64_t seed() const { return seed_; }
  const std::vector<Algebra>& algebra_menu() const { return menu_; }
  int max_depth() const { return max_depth_; }
  int max_hilbert() const { return max_hilbert_; }

  /// Seed of instance `index` of the stream named `stream`; a pure function
  /// of (seed, stream, index), so any instance can be replayed on its own.
  std::uint64_t instance_seed(std::string_view stream, int index) const;
  std::mt19937_64 rng(std::string_view stream, int index) const {
    return std::mt19937_64(instance_seed(stream, index));
  }

 private:
  std::uint64_t seed_;
  std::vector<Algebra> menu_;
  int max_depth_;
  int max_hilbert_;
};

/// {B(C^1), B(C^2), B(C^3), B(C^2) (+) B(C^3)}
std::vector<Algebra> default_algebra_menu();

// ---- random instances ----------------------------------------------------------

Matrix random_gaussian(std::mt19937_64& rng, int rows, int cols);
/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
Matrix random_unitary(std::mt19937_64& rng, int n);
const Algebra& random_menu_algebra(const InstanceGenerator& gen, std::mt19937_64& rng);

/// rho_b = w_b B_b B_b^* / tr(B_b B_b^*) with Dirichlet(1,..,1) weights w and
/// complex Gaussian B_b of random rank (rank one gives pure blocks).
State random_state(const Algebra& algebra, std::mt19937_64& rng);

/// Random multiplicities, conjugated by a Haar unitary, with a random unit
/// vector (sometimes supported on a coordinate subspace).
PointedRep random_pointed_rep(const Algebra& algebra, std::mt19937_64& rng, int max_hilbert);

struct MorphismChain {
  Algebra source;
  std::vector<CatalogSpec> steps;
  std::vector<StarMorphism> morphisms;

  const Algebra& target() const { return morphisms.empty() ? source : morphisms.back().target(); }
  /// Composite of steps [begin, end); identity on the appropriate algebra if empty.
  StarMorphism composite(std::size_t begin, std::size_t end) const;
  StarMorphism composite() const { return composite(0, morphisms.size()); }
  std::string describe() const;
};

CatalogSpec random_catalog_step(const Algebra& source, std::mt19937_64& rng, int max_hilbert);
MorphismChain random_chain(const Algebra& source, int depth, std::mt19937_64& rng, int max_hilbert);

// ---- independent oracle ----------------------------------------------------------

struct LinearSolveOracle {
  int count = 0;
  bool consistent = false;
  bool isometric = false;
  Matrix map;
};

/// Solves L pi_s(e_k) = pi_t(e_k) L (all k), L Omega_s = Omega_t as one linear
/// system in the entries of L, then checks isometry.  count = 1 iff the
/// system is consistent and the solution is isometric.
LinearSolveOracle solve_pointed_morphism(const PointedRep& source, const PointedRep& target,
                                         double tol = kCompositeTol);

// ---- law checks ---------------------------------------------------------------------

struct LawOptions {
  Execution exec = Execution::parallel;
  std::map<std::string, double, std::less<>> tol_overrides;

  double tolerance(std::string_view law_id) const;
};

LawReport check_states_functor(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
/// oplax_identity, oplax_composition, oplax_certificates.
std::vector<LawReport> check_oplax_gns(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
LawReport check_rest_naturality(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
LawReport check_rest_after_gns(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
LawReport check_modification_coherence(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
LawReport check_zigzag(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
/// def519_a .. def519_g.
std::vector<LawReport> check_definition_519(const InstanceGenerator& gen, int n, const LawOptions& opts = {});
LawReport check_universal_property(const InstanceGenerator& gen, int n, const LawOptions& opts = {});

struct SweepReport {
  std::uint64_t seed = 0;
  int instances = 0;
  std::vector<LawReport> laws;
  std::vector<LawReport> definition_519;
  bool pass = false;
};

SweepReport run_sweep(const InstanceGenerator& gen, int n, const LawOptions& opts = {});

}  // namespace cstar
