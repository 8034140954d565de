#include <limits>
#include <sstream>

#include "cstar/algebra.hpp"
#include "cstar/errors.hpp"

namespace cstar {

namespace {

// Assemble the coordinate matrix of a linear map given on basis elements.
template <typename Fn>
Matrix tabulate(const Algebra& source, const Algebra& target, Fn&& fn) {
  Matrix out(target.dim(), source.dim());
  for (int i = 0; i < source.dim(); ++i) {
    const Element image = fn(Element::basis(source, i));
    out.col(i) = image.coords();
  }
  return out;
}

StarMorphism certify_catalog(const Algebra& source, const Algebra& target, Matrix matrix) {
  return certified(StarMorphism(source, target, std::move(matrix)), catalog_tolerance(target));
}

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw ValidationError(std::string(what) + " must be >= 1");
  }
}

}  // namespace

double catalog_tolerance(const Algebra& target) {
  return 10.0 * std::numeric_limits<double>::epsilon() * target.dim();
}

StarMorphism identity_morphism(const Algebra& algebra) {
  return StarMorphism(algebra, algebra, Matrix::Identity(algebra.dim(), algebra.dim()), true);
}

StarMorphism block_embed(int n, int copies) {
  require_positive(n, "block_embed n");
  require_positive(copies, "block_embed copies");
  const Algebra source = Algebra::full(n);
  const Algebra target = Algebra::full(n * copies);
  Matrix m = tabulate(source, target, [&](const Element& a) {
    Matrix big = Matrix::Zero(n * copies, n * copies);
    for (int c = 0; c < copies; ++c) big.block(c * n, c * n, n, n) = a.block(0);
    return Element(target, {big});
  });
  return certify_catalog(source, target, std::move(m));
}

StarMorphism tensor_left_inclusion(int n, int m) {
  require_positive(n, "tensor_left_inclusion n");
  require_positive(m, "tensor_left_inclusion m");
  const Algebra source = Algebra::full(n);
  const Element one = Element::unit(Algebra::full(m));
  Matrix mat = tabulate(source, Algebra::full(n * m), [&](const Element& a) { return kron(a, one); });
  return certify_catalog(source, Algebra::full(n * m), std::move(mat));
}

StarMorphism conjugate_by_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw ValidationError("conjugate_by_unitary needs a square matrix");
  }
  const auto n = u.rows();
  const double defect = (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "conjugate_by_unitary: matrix is not unitary (|u*u - 1| = " << defect << ")";
    throw ValidationError(msg.str());
  }
  const Algebra alg = Algebra::full(static_cast<int>(n));
  Matrix mat = tabulate(alg, alg, [&](const Element& a) {
    return Element(alg, {Matrix(u * a.block(0) * u.adjoint())});
  });
  return certify_catalog(alg, alg, std::move(mat));
}

StarMorphism direct_sum_inclusion(const Algebra& algebra) {
  int total = 0;
  for (int n : algebra.block_dims()) total += n;
  const Algebra target = Algebra::full(total);
  Matrix mat = tabulate(algebra, target, [&](const Element& a) {
    Matrix big = Matrix::Zero(total, total);
    int at = 0;
    for (int b = 0; b < algebra.num_blocks(); ++b) {
      const int n = algebra.block_dim(b);
      big.block(at, at, n, n) = a.block(b);
      at += n;
    }
    return Element(target, {big});
  });
  return certify_catalog(algebra, target, std::move(mat));
}

std::string CatalogSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case CatalogKind::identity:
      out << "identity(" << algebra.to_string() << ")";
      break;
    case CatalogKind::block_embed:
      out << "block_embed(n=" << n << ",copies=" << m << ")";
      break;
    case CatalogKind::tensor_left:
      out << "tensor_left(n=" << n << ",m=" << m << ")";
      break;
    case CatalogKind::conjugate:
      out << "conjugate(n=" << unitary.rows() << ")";
      break;
    case CatalogKind::direct_sum:
      out << "direct_sum(" << algebra.to_string() << ")";
      break;
  }
  return out.str();
}

StarMorphism make_catalog_morphism(const CatalogSpec& spec) {
  switch (spec.kind) {
    case CatalogKind::identity:
      return identity_morphism(spec.algebra);
    case CatalogKind::block_embed:
      return block_embed(spec.n, spec.m);
    case CatalogKind::tensor_left:
      return tensor_left_inclusion(spec.n, spec.m);
    case CatalogKind::conjugate:
      return conjugate_by_unitary(spec.unitary);
    case CatalogKind::direct_sum:
      return direct_sum_inclusion(spec.algebra);
  }
  throw ValidationError("unknown catalog kind");
}

}  // namespace cstar
