#pragma once

#include <cstdint>

#include "cstar/algebra.hpp"

namespace cstar {

/// A linear functional given by its values omega(e_i) on the matrix-unit
/// basis.  Construction does not validate; use verify_state().  The minimum
/// eigenvalue of the Hermitian part of the Gram matrix is cached.
class State {
 public:
  State(Algebra algebra, Vector coeffs);

  const Algebra& algebra() const { return algebra_; }
  const Vector& coeffs() const { return coeffs_; }
  double gram_min_eigenvalue() const { return gram_min_eig_; }

 private:
  Algebra algebra_;
  Vector coeffs_;
  double gram_min_eig_ = 0.0;
};

/// rho: Hermitian, trace one, positive semidefinite (checked at 1e-9).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, double tol = kDefaultTol);

  int hilbert_dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

 private:
  Matrix rho_;
};

struct StateReport {
  double unitality_violation = 0.0;
  double hermitian_violation = 0.0;
  /// max(0, -lambda_min) of the Gram matrix's Hermitian part.
  double positivity_violation = 0.0;
  /// max over sampled unit-norm pairs of |w(b*a)|^2 - w(b*b) w(a*a), clipped at 0.
  double cauchy_schwarz_violation = 0.0;
  double gram_min_eigenvalue = 0.0;
  int cauchy_schwarz_pairs = 0;
  double tolerance = kDefaultTol;
  bool pass = false;

  double max_violation() const;
};

Complex evaluate(const State& omega, const Element& a);

StateReport verify_state(const State& omega, double tol = kDefaultTol, std::uint64_t seed = 0,
                         int cauchy_schwarz_pairs = 100);

/// omega o f on f.source.  Requires f verified and f.target == omega.algebra.
State pullback_state(const State& omega, const StarMorphism& f);

/// omega_rho(a) = tr(rho a) on B(C^n).
State state_from_density_matrix(const DensityMatrix& rho);
/// Inverse bridge; single-block algebras only.
DensityMatrix density_matrix_from_state(const State& omega);

/// States on a multi-block algebra from per-block positive matrices whose
/// traces sum to one: omega(a) = sum_b tr(rho_b a_b).
State state_from_block_densities(const Algebra& algebra, const std::vector<Matrix>& rhos);

/// Vector state a -> <psi, a psi> on B(C^n) for a unit vector psi.
State vector_state(const Vector& psi);

Matrix gram_matrix(const State& omega);

}  // namespace cstar
