#include "cstar/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cstar/errors.hpp"

namespace cstar {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

Matrix gram(const Algebra& algebra, const Vector& coeffs, Execution exec) {
  if (coeffs.size() != algebra.dim()) {
    throw StructuralError("gram: coefficient vector length does not match algebra dimension");
  }
  const int dim = algebra.dim();
  Matrix g = Matrix::Zero(dim, dim);
  parallel_for(dim, exec, [&](std::int64_t i) {
    const BasisLabel row = algebra.label(static_cast<int>(i));
    const int n = algebra.block_dim(row.block);
    const int base = algebra.offset(row.block);
    // Only columns (b, p, s) with the same block and r == p are nonzero.
    for (int s = 0; s < n; ++s) {
      g(i, base + row.row * n + s) = coeffs(base + row.col * n + s);
    }
  });
  return g;
}

Matrix gram_reference(const Algebra& algebra, const Vector& coeffs) {
  if (coeffs.size() != algebra.dim()) {
    throw StructuralError("gram: coefficient vector length does not match algebra dimension");
  }
  const int dim = algebra.dim();
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Element ei_star = Element::basis(algebra, i).adjoint();
    for (int j = 0; j < dim; ++j) {
      g(i, j) = (ei_star * Element::basis(algebra, j)).coords().transpose() * coeffs;
    }
  }
  return g;
}

Matrix quotient_action(const Algebra& algebra, const Matrix& q, const Matrix& w, Execution exec) {
  const auto d = q.cols();
  Matrix out(d * d, algebra.dim());
  parallel_for(algebra.dim(), exec, [&](std::int64_t k) {
    const BasisLabel l = algebra.label(static_cast<int>(k));
    const int n = algebra.block_dim(l.block);
    const int base = algebra.offset(l.block);
    // e_{pq} X moves row q of X to row p, so L_{e_k} Q is supported on rows
    // (b, p, s) with values taken from rows (b, q, s) of Q.
    const Matrix image =
        w.middleRows(base + l.row * n, n).adjoint() * q.middleRows(base + l.col * n, n);
    out.col(k) = vec_rows(image);
  });
  return out;
}

Matrix quotient_action_reference(const Algebra& algebra, const Matrix& q, const Matrix& w) {
  const auto d = q.cols();
  Matrix out(d * d, algebra.dim());
  for (int k = 0; k < algebra.dim(); ++k) {
    const Matrix lk = left_multiplication_matrix(Element::basis(algebra, k));
    out.col(k) = vec_rows(w.adjoint() * lk * q);
  }
  return out;
}

}  // namespace kernels
}  // namespace cstar
