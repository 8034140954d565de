#include "cstar/states.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cstar/errors.hpp"
#include "cstar/kernels.hpp"

namespace cstar {

namespace {

double hermitian_min_eigenvalue(const Matrix& g) {
  if (g.rows() == 0) return 0.0;
  const Matrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace

State::State(Algebra algebra, Vector coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_.dim()) {
    throw StructuralError("state coefficient vector length must equal algebra dimension");
  }
  gram_min_eig_ = hermitian_min_eigenvalue(kernels::gram(algebra_, coeffs_));
}

DensityMatrix::DensityMatrix(Matrix rho, double tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  const double trace = std::abs(rho_.trace() - Complex(1.0));
  const double min_eig = hermitian_min_eigenvalue(rho_);
  if (!(herm <= tol) || !(trace <= tol) || !(min_eig >= -tol)) {
    std::ostringstream msg;
    msg << "invalid density matrix: hermitian defect " << herm << ", trace defect " << trace
        << ", min eigenvalue " << min_eig;
    throw ValidationError(msg.str());
  }
}

double StateReport::max_violation() const {
  return std::max({unitality_violation, hermitian_violation, positivity_violation, cauchy_schwarz_violation});
}

Complex evaluate(const State& omega, const Element& a) {
  if (a.algebra() != omega.algebra()) {
    throw StructuralError("evaluate: element is not in the state's algebra");
  }
  return a.coords().transpose() * omega.coeffs();
}

StateReport verify_state(const State& omega, double tol, std::uint64_t seed, int cauchy_schwarz_pairs) {
  StateReport report;
  report.tolerance = tol;
  report.unitality_violation = std::abs(evaluate(omega, Element::unit(omega.algebra())) - Complex(1.0));

  const Matrix g = gram_matrix(omega);
  report.hermitian_violation = (g - g.adjoint()).cwiseAbs().maxCoeff();
  report.gram_min_eigenvalue = omega.gram_min_eigenvalue();
  report.positivity_violation = std::max(0.0, -report.gram_min_eigenvalue);

  // omega(b* a) = x_b^dagger G x_a on coordinates.
  std::mt19937_64 rng(seed);
  for (int k = 0; k < cauchy_schwarz_pairs; ++k) {
    const Vector xa = random_unit_vector(rng, g.rows());
    const Vector xb = random_unit_vector(rng, g.rows());
    const double cross = std::norm(xb.dot(g * xa));
    const double aa = xa.dot(g * xa).real();
    const double bb = xb.dot(g * xb).real();
    report.cauchy_schwarz_violation = std::max(report.cauchy_schwarz_violation, cross - aa * bb);
  }
  report.cauchy_schwarz_pairs = cauchy_schwarz_pairs;
  report.pass = report.max_violation() <= tol;
  return report;
}

State pullback_state(const State& omega, const StarMorphism& f) {
  if (f.target() != omega.algebra()) {
    throw StructuralError("pullback_state: morphism target does not match the state's algebra");
  }
  if (!f.verified()) {
    throw StructuralError("pullback_state: morphism is not verified");
  }
  // (omega o f)(e'_i) = sum_j F_{ji} omega(e_j)
  return State(f.source(), f.matrix().transpose() * omega.coeffs());
}

State state_from_density_matrix(const DensityMatrix& rho) {
  // omega(e_pq) = tr(rho e_pq) = rho_qp
  return State(Algebra::full(rho.hilbert_dim()), vec_rows(rho.matrix().transpose()));
}

DensityMatrix density_matrix_from_state(const State& omega) {
  if (!omega.algebra().single_block()) {
    throw UnsupportedStructure("density_matrix_from_state needs a single-block algebra");
  }
  return DensityMatrix(unvec_rows(omega.coeffs(), omega.algebra().block_dim(0)).transpose());
}

State state_from_block_densities(const Algebra& algebra, const std::vector<Matrix>& rhos) {
  if (static_cast<int>(rhos.size()) != algebra.num_blocks()) {
    throw StructuralError("one density block per algebra block expected");
  }
  Vector coeffs(algebra.dim());
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const int n = algebra.block_dim(b);
    if (rhos[b].rows() != n || rhos[b].cols() != n) {
      throw StructuralError("density block shape does not match algebra block");
    }
    coeffs.segment(algebra.offset(b), n * n) = vec_rows(rhos[b].transpose());
  }
  return State(algebra, std::move(coeffs));
}

State vector_state(const Vector& psi) {
  if (std::abs(psi.norm() - 1.0) > kDefaultTol) {
    throw ValidationError("vector_state needs a unit vector");
  }
  return state_from_density_matrix(DensityMatrix(psi * psi.adjoint()));
}

Matrix gram_matrix(const State& omega) { return kernels::gram(omega.algebra(), omega.coeffs()); }

}  // namespace cstar
