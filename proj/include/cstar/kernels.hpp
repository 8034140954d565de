#pragma once

// Data-parallel inner kernels.  Each kernel has an OpenMP implementation and
// a straightforward serial reference that is kept for testing and for the
// benchmark comparison in bench/.

#include <cstdint>

#include "cstar/algebra.hpp"

namespace cstar {

enum class Execution { serial, parallel };

/// Runs fn(i) for i in [0, n).  Iterations must be independent.
template <typename Fn>
void parallel_for(std::int64_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  }
}

int max_threads();

namespace kernels {

/// G_{ij} = omega(e_i^* e_j) using the matrix-unit product table
///   (e^b_{pq})^* e^b_{rs} = delta_{pr} e^b_{qs}.
Matrix gram(const Algebra& algebra, const Vector& coeffs, Execution exec = Execution::parallel);

/// Same matrix, built by forming every product e_i^* e_j explicitly and
/// evaluating omega on its coordinates.
Matrix gram_reference(const Algebra& algebra, const Vector& coeffs);

/// Images pi(e_k) = W^* L_{e_k} Q of all basis elements, where Q holds
/// quotient-basis coordinates (dim x d) and W = G Q.  Column k of the result
/// is vec_rows(pi(e_k)), i.e. the result is a (d^2 x dim) morphism matrix.
Matrix quotient_action(const Algebra& algebra, const Matrix& q, const Matrix& w,
                       Execution exec = Execution::parallel);

/// Reference: dense left-multiplication matrices for every basis element.
Matrix quotient_action_reference(const Algebra& algebra, const Matrix& q, const Matrix& w);

}  // namespace kernels
}  // namespace cstar
