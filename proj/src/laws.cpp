#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cstar/errors.hpp"
#include "cstar/laws.hpp"

namespace cstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// |a - b| with shape mismatch counted as an infinite violation.
double distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return kInf;
  return max_abs(a - b);
}

double state_distance(const State& a, const State& b) {
  if (a.algebra() != b.algebra()) return kInf;
  return max_abs(Matrix(a.coeffs() - b.coeffs()));
}

double identity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return kInf;
  return max_abs(Matrix(m - Matrix::Identity(m.rows(), m.cols())));
}

struct Outcome {
  std::vector<double> violations;
  std::string detail;
};

using InstanceFn = std::function<Outcome(std::mt19937_64&)>;

// Evaluates every instance independently (possibly concurrently) and merges
// by instance index, so reports do not depend on the execution policy.
std::vector<LawReport> run_group(std::string_view stream, const std::vector<std::string>& ids,
                                 const InstanceGenerator& gen, int n, const LawOptions& opts, const InstanceFn& fn) {
  if (n < 1) throw PreconditionError("law checks need at least one instance");
  std::vector<Outcome> outcomes(n);
  parallel_for(n, opts.exec, [&](std::int64_t i) {
    std::mt19937_64 rng = gen.rng(stream, static_cast<int>(i));
    try {
      outcomes[i] = fn(rng);
      if (outcomes[i].violations.size() != ids.size()) {
        outcomes[i] = {std::vector<double>(ids.size(), kInf), "internal: wrong number of violations"};
      }
    } catch (const std::exception& e) {
      outcomes[i] = {std::vector<double>(ids.size(), kInf), std::string("error: ") + e.what()};
    }
  });

  std::vector<LawReport> reports;
  for (std::size_t j = 0; j < ids.size(); ++j) {
    LawReport r;
    r.law_id = ids[j];
    r.instances_checked = n;
    r.tolerance = opts.tolerance(ids[j]);
    r.seed = gen.seed();
    for (int i = 0; i < n; ++i) {
      double v = outcomes[i].violations[j];
      if (std::isnan(v)) v = kInf;
      r.max_violation = std::max(r.max_violation, v);
      if (!(v <= r.tolerance) && r.witnesses.size() < kMaxWitnesses) {
        r.witnesses.push_back({i, gen.instance_seed(stream, i), v, outcomes[i].detail});
      }
    }
    r.pass = r.max_violation <= r.tolerance;
    reports.push_back(std::move(r));
  }
  return reports;
}

LawReport run_single(std::string_view stream, std::string_view id, const InstanceGenerator& gen, int n,
                     const LawOptions& opts, const InstanceFn& fn) {
  return run_group(stream, {std::string(id)}, gen, n, opts, fn).front();
}

// A chain A'' -f'-> A' -f-> A cut at a random point; either factor may be an
// identity.
struct ComposablePair {
  MorphismChain chain;
  StarMorphism inner;  // f'
  StarMorphism outer;  // f
  std::string describe() const { return chain.describe(); }
};

ComposablePair random_pair(const InstanceGenerator& gen, std::mt19937_64& rng) {
  const Algebra& start = random_menu_algebra(gen, rng);
  const int depth = std::uniform_int_distribution<int>(1, gen.max_depth())(rng);
  MorphismChain chain = random_chain(start, depth, rng, gen.max_hilbert());
  const auto cut = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, depth)(rng));
  StarMorphism inner = chain.composite(0, cut);
  StarMorphism outer = chain.composite(cut, chain.morphisms.size());
  return {std::move(chain), std::move(inner), std::move(outer)};
}

MorphismChain random_morphism(const InstanceGenerator& gen, std::mt19937_64& rng) {
  const Algebra& start = random_menu_algebra(gen, rng);
  const int depth = std::uniform_int_distribution<int>(1, gen.max_depth())(rng);
  return random_chain(start, depth, rng, gen.max_hilbert());
}

std::string pair_detail(const ComposablePair& p) {
  return "chain " + p.describe() + " | f' : " + p.inner.source().to_string() + " -> " +
         p.inner.target().to_string() + ", f : " + p.outer.source().to_string() + " -> " +
         p.outer.target().to_string();
}

}  // namespace

LawReport check_states_functor(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("states_functor", law_ids::states_functor, gen, n, opts, [&](std::mt19937_64& rng) {
    const ComposablePair p = random_pair(gen, rng);
    const State omega = random_state(p.outer.target(), rng);
    const double identity = state_distance(pullback_state(omega, identity_morphism(omega.algebra())), omega);
    const double composite = state_distance(pullback_state(omega, compose(p.outer, p.inner)),
                                            pullback_state(pullback_state(omega, p.outer), p.inner));
    return Outcome{{std::max(identity, composite)}, pair_detail(p)};
  });
}

std::vector<LawReport> check_oplax_gns(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  const std::vector<std::string> ids{std::string(law_ids::oplax_identity), std::string(law_ids::oplax_composition),
                                     std::string(law_ids::oplax_certificates)};
  return run_group("oplax_gns", ids, gen, n, opts, [&](std::mt19937_64& rng) {
    const ComposablePair p = random_pair(gen, rng);
    const State omega = random_state(p.outer.target(), rng);

    const Intertwiner l_id = gns_intertwiner(identity_morphism(omega.algebra()), omega);
    const Intertwiner l_f = gns_intertwiner(p.outer, omega);
    const Intertwiner l_inner = gns_intertwiner(p.inner, pullback_state(omega, p.outer));
    const Intertwiner l_comp = gns_intertwiner(compose(p.outer, p.inner), omega);

    double certs = 0.0;
    for (const Intertwiner* l : {&l_id, &l_f, &l_inner, &l_comp}) {
      const IntertwinerCertificates& c = l->certificates();
      certs = std::max({certs, c.isometry_violation, c.intertwining_violation, c.point_violation});
    }
    return Outcome{{identity_defect(l_id.map()), distance(l_comp.map(), l_f.map() * l_inner.map()), certs},
                   pair_detail(p)};
  });
}

LawReport check_rest_naturality(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("rest_naturality", law_ids::rest_naturality, gen, n, opts, [&](std::mt19937_64& rng) {
    const MorphismChain chain = random_morphism(gen, rng);
    const StarMorphism f = chain.composite();
    const PointedRep r = random_pointed_rep(f.target(), rng, gen.max_hilbert());
    const double v = state_distance(rest(pullback_pointed(f, r)), pullback_state(rest(r), f));
    return Outcome{{v}, "chain " + chain.describe() + " | rep dim " + std::to_string(r.hilbert_dim())};
  });
}

LawReport check_rest_after_gns(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("rest_after_gns", law_ids::rest_after_gns, gen, n, opts, [&](std::mt19937_64& rng) {
    const Algebra& a = random_menu_algebra(gen, rng);
    const State omega = random_state(a, rng);
    const GnsRep g = gns_construct(omega);
    return Outcome{{state_distance(rest(g.rep), omega)},
                   "algebra " + a.to_string() + " | quotient dim " + std::to_string(g.quotient_dim())};
  });
}

namespace {

// f^* m_A(R) o L_f(rest R)  vs  m_{A'}(f^* R)
double coherence_violation(const StarMorphism& f, const PointedRep& r) {
  const State omega = rest(r);
  const Matrix lhs = modification_m(r).map() * gns_intertwiner(f, omega).map();
  const Matrix rhs = modification_m(pullback_pointed(f, r)).map();
  return distance(lhs, rhs);
}

}  // namespace

LawReport check_modification_coherence(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("modification_coherence", law_ids::modification_coherence, gen, n, opts,
                    [&](std::mt19937_64& rng) {
                      const MorphismChain chain = random_morphism(gen, rng);
                      const StarMorphism f = chain.composite();
                      const PointedRep r = random_pointed_rep(f.target(), rng, gen.max_hilbert());
                      return Outcome{{coherence_violation(f, r)},
                                     "chain " + chain.describe() + " | rep dim " + std::to_string(r.hilbert_dim())};
                    });
}

LawReport check_zigzag(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("zigzag", law_ids::zigzag, gen, n, opts, [&](std::mt19937_64& rng) {
    const Algebra& a = random_menu_algebra(gen, rng);
    const State omega = random_state(a, rng);
    const GnsRep g = gns_construct(omega);
    // First identity: States(A) is discrete, so it reduces to rest o GNS = id.
    const double first = state_distance(rest(g.rep), omega);
    // Second identity: m at a GNS output is the identity intertwiner.
    const double second = identity_defect(modification_m(g.rep).map());
    return Outcome{{std::max(first, second)}, "algebra " + a.to_string()};
  });
}

std::vector<LawReport> check_definition_519(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  const std::vector<std::string> ids{"def519_a", "def519_b", "def519_c", "def519_d",
                                     "def519_e", "def519_f", "def519_g"};
  return run_group("definition_519", ids, gen, n, opts, [&](std::mt19937_64& rng) {
    const ComposablePair p = random_pair(gen, rng);
    const Algebra& a = p.outer.target();
    const State omega = random_state(a, rng);
    const PointedRep r = random_pointed_rep(a, rng, gen.max_hilbert());

    // (a) L_f(omega) : GNS(omega o f) -> f^* GNS(omega) isometric intertwiner
    const Intertwiner l_f = gns_intertwiner(p.outer, omega);
    const double cond_a = std::max({l_f.certificates().isometry_violation,
                                    l_f.certificates().intertwining_violation,
                                    l_f.certificates().point_violation});
    // (b) m_A(R) : GNS(rest R) -> R isometric intertwiner
    const Intertwiner m = modification_m(r);
    const double cond_b = std::max({m.certificates().isometry_violation, m.certificates().intertwining_violation,
                                    m.certificates().point_violation});
    // (c) GNS_id assigns identity intertwiners
    const double cond_c = identity_defect(gns_intertwiner(identity_morphism(a), omega).map());
    // (d) GNS_{f o f'}(w) = f'^* GNS_f(w) o GNS_{f'}(w o f)
    const Matrix composite = gns_intertwiner(compose(p.outer, p.inner), omega).map();
    const Matrix two_step = l_f.map() * gns_intertwiner(p.inner, pullback_state(omega, p.outer)).map();
    const double cond_d = distance(composite, two_step);
    // (e) f^* m_A(R) o GNS_f(rest R) = m_{A'}(f^* R)
    const double cond_e = coherence_violation(p.outer, r);
    // (f) rest o GNS = id,  (g) m(GNS(w)) = id
    const GnsRep g = gns_construct(omega);
    const double cond_f = state_distance(rest(g.rep), omega);
    const double cond_g = identity_defect(modification_m(g.rep).map());
    return Outcome{{cond_a, cond_b, cond_c, cond_d, cond_e, cond_f, cond_g},
                   pair_detail(p) + " | rep dim " + std::to_string(r.hilbert_dim())};
  });
}

LawReport check_universal_property(const InstanceGenerator& gen, int n, const LawOptions& opts) {
  return run_single("universal_property", law_ids::universal_property, gen, n, opts, [&](std::mt19937_64& rng) {
    const Algebra& a = random_menu_algebra(gen, rng);
    const PointedRep r = random_pointed_rep(a, rng, gen.max_hilbert());
    const bool matched = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const State omega = matched ? rest(r) : random_state(a, rng);
    const GnsRep g = gns_construct(omega);

    const HomCount hom = hom_count_pointed(g.rep, r, kCompositeTol);
    const LinearSolveOracle oracle = solve_pointed_morphism(g.rep, r, kCompositeTol);
    const bool states_agree = state_distance(rest(r), omega) <= kCompositeTol;

    double v = 0.0;
    if (hom.count != oracle.count) v = std::max(v, 1.0);
    if ((hom.count == 1) != states_agree) v = std::max(v, 1.0);
    if (hom.count == 1) {
      const Matrix& l = hom.morphism->map();
      v = std::max(v, distance(l, modification_m(r).map()));
      v = std::max(v, distance(l, oracle.map));
      if (g.quotient_dim() > r.hilbert_dim()) v = std::max(v, 1.0);
    }
    std::ostringstream detail;
    detail << "algebra " << a.to_string() << " | rep dim " << r.hilbert_dim() << " | omega "
           << (matched ? "= rest(R)" : "random") << " | hom " << hom.count << " oracle " << oracle.count;
    return Outcome{{v}, detail.str()};
  });
}

}  // namespace cstar
