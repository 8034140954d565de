#include <gtest/gtest.h>

#include "cstar/errors.hpp"
#include "cstar/gns.hpp"
#include "cstar/golden.hpp"
#include "cstar/laws.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

Matrix projector(const Matrix& orthonormal_cols) { return orthonormal_cols * orthonormal_cols.adjoint(); }

std::vector<State> sample_states(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const auto menu = default_algebra_menu();
  std::vector<State> out;
  for (int i = 0; i < count; ++i) out.push_back(random_state(menu[i % menu.size()], rng));
  return out;
}

}  // namespace

TEST(Gns, SpinUpNullSpaceAndQuotient) {
  const GnsRep g = gns_construct(golden::omega_up());
  EXPECT_EQ(g.null_dim(), 2);
  EXPECT_EQ(g.quotient_dim(), 2);
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;  // e_{up,down}
  expected(3, 3) = 1.0;  // e_{down,down}
  EXPECT_LT(oracle::max_abs(projector(g.null_basis) - expected), 1e-12);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Vector a = oracle::gaussian(rng, 4, 1);
    const Vector b = oracle::gaussian(rng, 4, 1);
    const Complex formula = std::conj(a(0)) * b(0) + std::conj(a(2)) * b(2);
    EXPECT_LT(std::abs(g.quotient_coords(a).dot(g.quotient_coords(b)) - formula), 1e-10);
  }
}

TEST(Gns, EprRestrictionIsMaximallyMixed) {
  const State w1 = pullback_state(rest(golden::epr_rep()), golden::epr_inclusion());
  EXPECT_LT(oracle::max_abs(density_matrix_from_state(w1).matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-12);
  const GnsRep g = gns_construct(w1);
  EXPECT_EQ(g.null_dim(), 0);
  EXPECT_EQ(g.quotient_dim(), 4);
  // Half the Frobenius inner product.
  std::mt19937_64 rng(32);
  const Matrix x = oracle::gaussian(rng, 2, 2);
  const Matrix y = oracle::gaussian(rng, 2, 2);
  const Complex half_hs = 0.5 * (x.adjoint() * y).trace();
  EXPECT_LT(std::abs(g.quotient_coords(vec_rows(x)).dot(g.quotient_coords(vec_rows(y))) - half_hs), 1e-12);
}

TEST(Gns, EprIntertwinerAndModification) {
  const PointedRep r = golden::epr_rep();
  const StarMorphism i1 = golden::epr_inclusion();
  const Intertwiner l = gns_intertwiner(i1, rest(r), 1e-9);
  EXPECT_TRUE(l.is_pointed_morphism());
  EXPECT_LT(oracle::max_abs(l.map().adjoint() * l.map() - Matrix::Identity(4, 4)), 1e-9);
  const Intertwiner m = modification_m(r, 1e-9);
  EXPECT_TRUE(m.certificates().unitary);
  const Matrix composite = m.map() * l.map();
  EXPECT_LT(oracle::max_abs(composite.adjoint() * composite - Matrix::Identity(4, 4)), 1e-9);
  EXPECT_LT(oracle::max_abs(composite * composite.adjoint() - Matrix::Identity(4, 4)), 1e-9);
  EXPECT_EQ(oracle::rank(composite), 4);
  // m(i1^* R) is the same map.
  const Intertwiner m1 = modification_m(pullback_pointed(i1, r), 1e-9);
  EXPECT_LT(oracle::max_abs(m1.map() - composite), 1e-9);
}

TEST(Gns, InvalidStateIsRejected) {
  Vector c = Vector::Zero(4);
  c(1) = 1.0;
  EXPECT_THROW(gns_construct(State(Algebra::full(2), c)), ValidationError);
}

TEST(Gns, QuotientInnerProductIsTheGramForm) {
  std::mt19937_64 rng(33);
  for (const State& w : sample_states(34, 12)) {
    const GnsRep g = gns_construct(w);
    const int dim = w.algebra().dim();
    EXPECT_EQ(g.quotient_dim() + g.null_dim(), dim);
    for (int t = 0; t < 5; ++t) {
      const Element x = oracle::random_element(w.algebra(), rng);
      const Element y = oracle::random_element(w.algebra(), rng);
      const Complex expected = evaluate(w, x.adjoint() * y);
      const Complex got = g.quotient_coords(x.coords()).dot(g.quotient_coords(y.coords()));
      EXPECT_LT(std::abs(got - expected), 1e-9 * (1.0 + std::abs(expected)));
    }
  }
}

TEST(Gns, NullSpaceIsLeftIdealAndActionIsWellDefined) {
  std::mt19937_64 rng(35);
  for (const State& w : sample_states(36, 12)) {
    const GnsRep g = gns_construct(w);
    const Algebra& a = w.algebra();
    // omega(n^* n) = 0 on null columns, and a n stays null.
    for (Eigen::Index c = 0; c < g.null_basis.cols(); ++c) {
      const Element n = Element::from_coords(a, g.null_basis.col(c));
      EXPECT_LT(std::abs(evaluate(w, n.adjoint() * n)), 1e-9);
      for (int k = 0; k < a.dim(); ++k) {
        const Element an = Element::basis(a, k) * n;
        EXPECT_LT(oracle::max_abs(g.quotient_coords(an.coords())), 1e-8);
      }
    }
    // pi(a)[b] = [ab] on random a, b.
    for (int t = 0; t < 3; ++t) {
      const Element x = oracle::random_element(a, rng);
      const Element y = oracle::random_element(a, rng);
      const Vector lhs = g.rep.image(x) * g.quotient_coords(y.coords());
      const Vector rhs = g.quotient_coords((x * y).coords());
      EXPECT_LT(oracle::max_abs(lhs - rhs), 1e-8 * (1.0 + oracle::max_abs(rhs)));
    }
  }
}

TEST(Gns, RepresentationIsBoundedCyclicAndRecoversState) {
  std::mt19937_64 rng(37);
  for (const State& w : sample_states(38, 12)) {
    const GnsRep g = gns_construct(w);
    EXPECT_TRUE(g.pi_report.pass);
    EXPECT_TRUE(certify_gns(g).pass);
    const CyclicityReport cyc = is_cyclic(g.rep);
    EXPECT_TRUE(cyc.cyclic);
    EXPECT_EQ(cyc.orbit_rank, g.quotient_dim());
    EXPECT_EQ(oracle::rank(g.rep.orbit(), 1e-7), g.quotient_dim());
    EXPECT_LT(oracle::max_abs(rest(g.rep).coeffs() - w.coeffs()), 1e-9);
    for (int t = 0; t < 3; ++t) {
      const Element x = oracle::random_element(w.algebra(), rng);
      EXPECT_LE(oracle::spectral_norm(g.rep.image(x)), x.operator_norm() * (1.0 + 1e-9));
    }
  }
}

TEST(Gns, ModificationIsIdentityOnDegenerateSpectra) {
  // Maximally mixed states have a fully degenerate Gram spectrum.
  for (int n = 1; n <= 3; ++n) {
    const State w = state_from_density_matrix(DensityMatrix(Matrix(Matrix::Identity(n, n) / double(n))));
    const GnsRep g = gns_construct(w);
    EXPECT_LT(oracle::max_abs(modification_m(g.rep).map() - Matrix::Identity(n * n, n * n)), 1e-12);
  }
  const State mixed = state_from_block_densities(Algebra({2, 3}), {Matrix::Identity(2, 2) / 5.0,
                                                                     Matrix::Identity(3, 3) / 5.0});
  const GnsRep g = gns_construct(mixed);
  EXPECT_LT(oracle::max_abs(modification_m(g.rep).map() - Matrix::Identity(13, 13)), 1e-12);
}

TEST(Gns, SerialAndParallelAgree) {
  for (const State& w : sample_states(39, 4)) {
    const GnsRep a = gns_construct(w, Execution::serial);
    const GnsRep b = gns_construct(w, Execution::parallel);
    EXPECT_EQ(a.embed, b.embed);
    EXPECT_EQ(a.rep.pi().matrix(), b.rep.pi().matrix());
  }
}

TEST(PointedRep, RejectsNonUnitVectorAndMultiBlockTarget) {
  Vector v = Vector::Zero(2);
  v(0) = 2.0;
  EXPECT_THROW(defining_rep(v), ValidationError);
  Vector u = Vector::Zero(3);
  u(0) = 1.0;
  EXPECT_THROW(PointedRep(identity_morphism(Algebra({1, 2})), u), ValidationError);
}

TEST(PointedRep, MultiplicityRepresentationMatchesBlockDiagonalOracle) {
  std::mt19937_64 rng(40);
  const Algebra a({1, 2});
  const StarMorphism pi = multiplicity_representation(a, {2, 1});
  EXPECT_TRUE(verify_morphism(pi).pass);
  const Element x = oracle::random_element(a, rng);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = x.block(0)(0, 0);
  expected(1, 1) = x.block(0)(0, 0);
  expected.bottomRightCorner(2, 2) = x.block(1);
  EXPECT_LT(oracle::max_abs(pi.apply(x).block(0) - expected), 1e-15);
  EXPECT_THROW(multiplicity_representation(a, {0, 0}), ValidationError);
}

TEST(Cyclicity, BlockEmbedPullbackIsNotCyclic) {
  // B(C^2) -> B(C^4), a -> diag(a, a), acting on e_0: the orbit is C^2 (+) 0.
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  const PointedRep r = pullback_pointed(block_embed(2, 2), defining_rep(e0));
  const CyclicityReport c = is_cyclic(r);
  EXPECT_FALSE(c.cyclic);
  EXPECT_EQ(c.orbit_rank, oracle::rank(r.orbit()));
  EXPECT_EQ(c.orbit_rank, 2);
  EXPECT_THROW(hom_count_pointed(r, r), PreconditionError);

  // A generic vector makes the same pullback cyclic.
  Vector psi(4);
  psi << 1.0, 0.0, 0.0, 1.0;
  const CyclicityReport d = is_cyclic(pullback_pointed(block_embed(2, 2), defining_rep(psi.normalized())));
  EXPECT_TRUE(d.cyclic);
  EXPECT_EQ(d.orbit_rank, 4);
}

TEST(HomCount, QubitExamples) {
  const PointedRep up = golden::qubit_rep();
  const PointedRep down = defining_rep(golden::spin_down());

  const HomCount self = hom_count_pointed(up, up);
  EXPECT_EQ(self.count, 1);
  ASSERT_TRUE(self.morphism.has_value());
  EXPECT_LT(oracle::max_abs(self.morphism->map() - Matrix::Identity(2, 2)), 1e-12);

  const HomCount none = hom_count_pointed(up, down);
  EXPECT_EQ(none.count, 0);
  EXPECT_FALSE(none.morphism.has_value());
  EXPECT_NEAR(none.state_distance, 1.0, 1e-12);
  EXPECT_EQ(solve_pointed_morphism(up, down).count, 0);

  // A phase on Omega changes nothing about the state; the morphism is the phase.
  const Complex phase = std::polar(1.0, 0.7);
  const PointedRep up_phase = defining_rep(phase * golden::spin_up());
  const HomCount ph = hom_count_pointed(up, up_phase);
  EXPECT_EQ(ph.count, 1);
  EXPECT_LT(oracle::max_abs(ph.morphism->map() - phase * Matrix::Identity(2, 2)), 1e-12);
}

TEST(HomCount, AgreesWithLinearSolveOracle) {
  InstanceGenerator gen(41);
  int matched = 0;
  for (int i = 0; i < 40; ++i) {
    auto rng = gen.rng("hom_count_test", i);
    const Algebra& a = random_menu_algebra(gen, rng);
    const PointedRep r = random_pointed_rep(a, rng, 5);
    const State w = (i % 2 == 0) ? rest(r) : random_state(a, rng);
    const GnsRep g = gns_construct(w);
    const HomCount h = hom_count_pointed(g.rep, r);
    const LinearSolveOracle o = solve_pointed_morphism(g.rep, r);
    EXPECT_EQ(h.count, o.count) << "instance " << i;
    if (h.count == 1) {
      ++matched;
      EXPECT_LT(oracle::max_abs(h.morphism->map() - o.map), 1e-8);
      EXPECT_LE(g.quotient_dim(), r.hilbert_dim());
    }
  }
  EXPECT_GE(matched, 20);
}

TEST(IsometryEquivalence, ThreeConditionsAgree) {
  std::mt19937_64 rng(42);
  Eigen::HouseholderQR<Matrix> qr(oracle::gaussian(rng, 5, 3));
  const Matrix iso = qr.householderQ() * Matrix::Identity(5, 3);
  const IsometryEquivalence a = isometry_equivalences(iso);
  EXPECT_TRUE(a.adjoint_identity);
  EXPECT_TRUE(a.consistent());

  const IsometryEquivalence b = isometry_equivalences(2.0 * iso);
  EXPECT_FALSE(b.adjoint_identity);
  EXPECT_TRUE(b.consistent());

  const IsometryEquivalence c = isometry_equivalences(oracle::gaussian(rng, 4, 4));
  EXPECT_FALSE(c.adjoint_identity);
  EXPECT_TRUE(c.consistent());

  for (const State& w : sample_states(43, 8)) {
    const IsometryEquivalence d = isometry_equivalences(modification_m(gns_construct(w).rep).map());
    EXPECT_TRUE(d.adjoint_identity);
    EXPECT_TRUE(d.consistent());
  }
}

TEST(GnsIntertwiner, RequiresVerifiedMorphism) {
  const StarMorphism raw(Algebra::full(2), Algebra::full(4), tensor_left_inclusion(2, 2).matrix());
  EXPECT_THROW(gns_intertwiner(raw, rest(golden::epr_rep())), StructuralError);
  EXPECT_THROW(pullback_pointed(raw, golden::epr_rep()), StructuralError);
}

TEST(Golden, EprExpectationClosedForm) {
  // w(a (x) b) = (a_uu b_dd - a_ud b_du - a_du b_ud + a_dd b_uu) / 2
  std::mt19937_64 rng(44);
  const State w = rest(golden::epr_rep());
  for (int t = 0; t < 10; ++t) {
    const Element a = oracle::random_element(Algebra::full(2), rng);
    const Element b = oracle::random_element(Algebra::full(2), rng);
    const Matrix& x = a.block(0);
    const Matrix& y = b.block(0);
    const Complex expected = 0.5 * (x(0, 0) * y(1, 1) - x(0, 1) * y(1, 0) - x(1, 0) * y(0, 1) + x(1, 1) * y(0, 0));
    EXPECT_LT(std::abs(evaluate(w, kron(a, b)) - expected), 1e-12);
  }
}
