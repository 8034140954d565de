#pragma once

// Brute-force references shared by the tests.  They work on explicit
// matrices and never go through the library's coordinate tables.

#include <random>

#include <Eigen/Dense>

#include "cstar/algebra.hpp"

namespace oracle {

using cstar::Complex;
using cstar::Matrix;
using cstar::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix unit(int n, int p, int q) {
  Matrix e = Matrix::Zero(n, n);
  e(p, q) = 1.0;
  return e;
}

inline Matrix gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(normal(rng), normal(rng));
  return m;
}

inline cstar::Element random_element(const cstar::Algebra& a, std::mt19937_64& rng) {
  std::vector<Matrix> blocks;
  for (int n : a.block_dims()) blocks.push_back(gaussian(rng, n, n));
  return cstar::Element(a, std::move(blocks));
}

/// Largest singular value from the eigenvalues of m^* m.
inline double spectral_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline int rank(const Matrix& m, double tol = 1e-9) {
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Random density matrix of the given rank.
inline Matrix density(std::mt19937_64& rng, int n, int rank) {
  const Matrix b = gaussian(rng, n, rank);
  const Matrix rho = b * b.adjoint();
  return rho / rho.trace().real();
}

}  // namespace oracle
