#include <gtest/gtest.h>

#include "cstar/algebra.hpp"
#include "cstar/errors.hpp"
#include "oracles.hpp"

using namespace cstar;

TEST(Algebra, DimensionAndBasisOrder) {
  const Algebra a({2, 3});
  EXPECT_EQ(a.dim(), 13);
  EXPECT_EQ(a.offset(1), 4);
  EXPECT_EQ(a.basis_index(0, 1, 0), 2);
  EXPECT_EQ(a.basis_index(1, 2, 1), 4 + 7);
  for (int k = 0; k < a.dim(); ++k) {
    const BasisLabel l = a.label(k);
    EXPECT_EQ(a.basis_index(l.block, l.row, l.col), k);
  }
  EXPECT_EQ(a.to_string(), "M2+M3");
}

TEST(Algebra, RejectsEmptyOrNonPositiveBlocks) {
  EXPECT_THROW(Algebra(std::vector<int>{}), Error);
  EXPECT_THROW(Algebra({2, 0}), Error);
}

TEST(Element, CoordinatesRoundTrip) {
  std::mt19937_64 rng(1);
  const Algebra a({1, 2, 3});
  const Element x = oracle::random_element(a, rng);
  EXPECT_LT(max_abs_diff(Element::from_coords(a, x.coords()), x), 1e-15);
  const Element e = Element::basis(a, a.basis_index(2, 1, 2));
  EXPECT_EQ(e.block(2)(1, 2), Complex(1.0));
  EXPECT_EQ(e.coords().cwiseAbs().sum(), 1.0);
}

TEST(Element, AdjointIsInvolutiveAntiHomomorphism) {
  std::mt19937_64 rng(2);
  for (const Algebra& a : {Algebra({2}), Algebra({2, 3}), Algebra({1, 1, 4})}) {
    const Element x = oracle::random_element(a, rng);
    const Element y = oracle::random_element(a, rng);
    EXPECT_LT(max_abs_diff((x * y).adjoint(), y.adjoint() * x.adjoint()), 1e-12);
    EXPECT_LT(max_abs_diff(x.adjoint().adjoint(), x), 1e-15);
  }
}

TEST(Element, OperatorNormMatchesEigenvalueOracleAndCStarIdentity) {
  std::mt19937_64 rng(3);
  const Algebra a({2, 3});
  for (int t = 0; t < 20; ++t) {
    const Element x = oracle::random_element(a, rng);
    const double expected = std::max(oracle::spectral_norm(x.block(0)), oracle::spectral_norm(x.block(1)));
    EXPECT_NEAR(x.operator_norm(), expected, 1e-10 * expected);
    const double n = x.operator_norm();
    EXPECT_NEAR((x * x.adjoint()).operator_norm(), n * n, 1e-10 * n * n);
    EXPECT_NEAR((Complex(0.0, 2.5) * x).operator_norm(), 2.5 * n, 1e-10 * n);
  }
  EXPECT_DOUBLE_EQ(Element::unit(a).operator_norm(), 1.0);
  EXPECT_DOUBLE_EQ(Element::zero(a).operator_norm(), 0.0);
}

TEST(Element, ArithmeticMatchesBlockwiseMatrices) {
  std::mt19937_64 rng(4);
  const Algebra a({2, 2});
  const Element x = oracle::random_element(a, rng);
  const Element y = oracle::random_element(a, rng);
  const Element s = x + y;
  const Element p = x * y;
  for (int b = 0; b < 2; ++b) {
    EXPECT_LT(oracle::max_abs(s.block(b) - (x.block(b) + y.block(b))), 1e-15);
    EXPECT_LT(oracle::max_abs(p.block(b) - x.block(b) * y.block(b)), 1e-13);
  }
  EXPECT_LT(max_abs_diff(Element::unit(a) * x, x), 1e-15);
}

TEST(Element, LeftMultiplicationMatrix) {
  std::mt19937_64 rng(5);
  const Algebra a({3, 1});
  const Element x = oracle::random_element(a, rng);
  const Element y = oracle::random_element(a, rng);
  const Vector via_matrix = left_multiplication_matrix(x) * y.coords();
  EXPECT_LT(oracle::max_abs(via_matrix - (x * y).coords()), 1e-13);
}

TEST(StarMorphism, CatalogMorphismsVerify) {
  std::mt19937_64 rng(6);
  Eigen::HouseholderQR<Matrix> qr(oracle::gaussian(rng, 3, 3));
  const Matrix u = qr.householderQ();
  const std::vector<StarMorphism> catalog = {
      identity_morphism(Algebra({2, 3})), block_embed(2, 3), tensor_left_inclusion(2, 2),
      tensor_left_inclusion(3, 1), conjugate_by_unitary(u), direct_sum_inclusion(Algebra({1, 2}))};
  for (const StarMorphism& f : catalog) {
    EXPECT_TRUE(f.verified());
    const MorphismReport r = verify_morphism(f);
    EXPECT_TRUE(r.pass) << f.source().to_string() << " -> " << f.target().to_string();
    EXPECT_LT(r.max_violation(), 1e-13);
  }
}

TEST(StarMorphism, TransposeFailsMultiplicativity) {
  const Algebra a = Algebra::full(2);
  Matrix t = Matrix::Zero(4, 4);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) t(a.basis_index(0, q, p), a.basis_index(0, p, q)) = 1.0;
  const MorphismReport r = verify_morphism(StarMorphism(a, a, t));
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.adjoint_violation, 1e-15);
  EXPECT_LT(r.unital_violation, 1e-15);
  EXPECT_NEAR(r.multiplicative_violation, 1.0, 1e-15);
  EXPECT_FALSE(certified(StarMorphism(a, a, t)).verified());
}

TEST(StarMorphism, NonUnitalCornerEmbeddingFails) {
  // a -> diag(a, 0) is multiplicative and *-preserving but not unital.
  const Algebra src = Algebra::full(2);
  const Algebra tgt = Algebra::full(3);
  Matrix m = Matrix::Zero(9, 4);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) m(tgt.basis_index(0, p, q), src.basis_index(0, p, q)) = 1.0;
  const MorphismReport r = verify_morphism(StarMorphism(src, tgt, m));
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.multiplicative_violation, 1e-15);
  EXPECT_NEAR(r.unital_violation, 1.0, 1e-15);
}

TEST(StarMorphism, TensorLeftInclusionMatchesKroneckerOracle) {
  const StarMorphism f = tensor_left_inclusion(2, 3);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const Matrix expected = oracle::kron(oracle::unit(2, p, q), Matrix::Identity(3, 3));
      const Element img = f.image_of_basis(f.source().basis_index(0, p, q));
      EXPECT_LT(oracle::max_abs(img.block(0) - expected), 1e-15);
    }
}

TEST(StarMorphism, BlockEmbedAndDirectSumImages) {
  std::mt19937_64 rng(7);
  const Element a = oracle::random_element(Algebra::full(2), rng);
  const Element img = block_embed(2, 2).apply(a);
  Matrix expected = Matrix::Zero(4, 4);
  expected.topLeftCorner(2, 2) = a.block(0);
  expected.bottomRightCorner(2, 2) = a.block(0);
  EXPECT_LT(oracle::max_abs(img.block(0) - expected), 1e-15);

  const Algebra sum({1, 2});
  const Element x = oracle::random_element(sum, rng);
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = x.block(0)(0, 0);
  diag.bottomRightCorner(2, 2) = x.block(1);
  EXPECT_LT(oracle::max_abs(direct_sum_inclusion(sum).apply(x).block(0) - diag), 1e-15);
}

TEST(StarMorphism, ConjugationRejectsNonUnitary) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(conjugate_by_unitary(m), ValidationError);
}

TEST(StarMorphism, CompositionChecksTypesAndPropagatesCertificate) {
  const StarMorphism f = tensor_left_inclusion(2, 2);
  const StarMorphism g = block_embed(4, 1);
  const StarMorphism gf = compose(g, f);
  EXPECT_TRUE(gf.verified());
  EXPECT_EQ(gf.source(), Algebra::full(2));
  EXPECT_THROW(compose(f, g), StructuralError);
  const StarMorphism unverified(f.source(), f.target(), f.matrix());
  EXPECT_FALSE(compose(g, unverified).verified());

  std::mt19937_64 rng(8);
  const Element a = oracle::random_element(Algebra::full(2), rng);
  EXPECT_LT(max_abs_diff(gf.apply(a), g.apply(f.apply(a))), 1e-14);
}

TEST(TensorProduct, KronMatchesOracleAndRejectsMultiBlock) {
  std::mt19937_64 rng(9);
  const Element a = oracle::random_element(Algebra::full(2), rng);
  const Element b = oracle::random_element(Algebra::full(3), rng);
  const Element ab = kron(a, b);
  EXPECT_EQ(ab.algebra(), Algebra::full(6));
  EXPECT_LT(oracle::max_abs(ab.block(0) - oracle::kron(a.block(0), b.block(0))), 1e-14);
  EXPECT_NEAR(ab.operator_norm(), a.operator_norm() * b.operator_norm(), 1e-10 * ab.operator_norm());
  EXPECT_EQ(tensor_product(Algebra::full(2), Algebra::full(3)), Algebra::full(6));
  EXPECT_THROW(tensor_product(Algebra({1, 2}), Algebra::full(2)), UnsupportedStructure);
}

TEST(Catalog, SpecDescribeAndBuild) {
  CatalogSpec spec;
  spec.kind = CatalogKind::block_embed;
  spec.n = 2;
  spec.m = 2;
  const StarMorphism f = make_catalog_morphism(spec);
  EXPECT_EQ(f.target(), Algebra::full(4));
  EXPECT_FALSE(spec.describe().empty());
}
