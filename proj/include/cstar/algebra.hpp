#pragma once

// Finite-dimensional C*-algebras as direct sums of full matrix blocks
//   A = M_{n_1}(C) (+) ... (+) M_{n_k}(C)
// with the matrix-unit basis e^{(i)}_{pq} enumerated block-major, then
// row-major inside each block.  Every element has a coordinate vector of
// length dim(A) = sum n_i^2 in that basis, and *-homomorphisms are dense
// matrices acting on those coordinates.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

struct BasisLabel {
  int block;
  int row;
  int col;
};

class Algebra {
 public:
  explicit Algebra(std::vector<int> block_dims);

  /// Full matrix algebra B(C^n).
  static Algebra full(int n) { return Algebra({n}); }

  const std::vector<int>& block_dims() const { return block_dims_; }
  int num_blocks() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int block) const { return block_dims_[block]; }
  bool single_block() const { return block_dims_.size() == 1; }

  /// Linear dimension sum n_i^2.
  int dim() const { return dim_; }
  /// Coordinate offset of block i.
  int offset(int block) const { return offsets_[block]; }

  int basis_index(int block, int row, int col) const {
    return offsets_[block] + row * block_dims_[block] + col;
  }
  BasisLabel label(int index) const;
  std::string to_string() const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  std::vector<int> block_dims_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

class Element {
 public:
  Element(Algebra algebra, std::vector<Matrix> blocks);

  static Element zero(const Algebra& algebra);
  static Element unit(const Algebra& algebra);
  /// Matrix unit e_k in the fixed basis order.
  static Element basis(const Algebra& algebra, int index);
  static Element from_coords(const Algebra& algebra, const Vector& coords);

  const Algebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int i) const { return blocks_[i]; }

  Vector coords() const;
  Element adjoint() const;
  /// max over blocks of the largest singular value.
  double operator_norm() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex scalar);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator*(const Element& a, const Element& b);

 private:
  Algebra algebra_;
  std::vector<Matrix> blocks_;
};

/// Largest absolute entry of a - b over all blocks.
double max_abs_diff(const Element& a, const Element& b);

/// Left multiplication x -> a x as a (dim x dim) matrix on coordinates.
Matrix left_multiplication_matrix(const Element& a);

// Row-major vectorisation, matching the in-block basis order.
Vector vec_rows(const Matrix& m);
Matrix unvec_rows(const Vector& v, int n);

class StarMorphism {
 public:
  /// `matrix` has shape (target.dim x source.dim) and sends source
  /// coordinates to target coordinates.  The verified flag is a certificate,
  /// set only by certified() or by operations that preserve it.
  StarMorphism(Algebra source, Algebra target, Matrix matrix, bool verified = false);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  bool verified() const { return verified_; }

  Element apply(const Element& a) const;
  Element image_of_basis(int index) const;

 private:
  Algebra source_;
  Algebra target_;
  Matrix matrix_;
  bool verified_ = false;
};

struct MorphismReport {
  double adjoint_violation = 0.0;
  double multiplicative_violation = 0.0;
  double unital_violation = 0.0;
  double tolerance = kDefaultTol;
  bool pass = false;

  double max_violation() const;
};

MorphismReport verify_morphism(const StarMorphism& f, double tol = kDefaultTol);

/// Copy of f whose verified flag reflects verify_morphism(f, tol).
StarMorphism certified(const StarMorphism& f, double tol = kDefaultTol);

/// f o g  (apply g first).  Requires g.target == f.source.
StarMorphism compose(const StarMorphism& f, const StarMorphism& g);

// ---- catalog --------------------------------------------------------------

/// Tolerance catalog constructors certify against: 10 * eps * dim(target).
double catalog_tolerance(const Algebra& target);

StarMorphism identity_morphism(const Algebra& algebra);
/// B(C^n) -> B(C^{nm}),  a -> diag(a, ..., a)  (m copies).
StarMorphism block_embed(int n, int copies);
/// B(C^n) -> B(C^n) (x) B(C^m) = B(C^{nm}),  a -> a (x) 1_m.
StarMorphism tensor_left_inclusion(int n, int m);
/// B(C^n) -> B(C^n),  a -> u a u*.  Throws ValidationError if u is not unitary.
StarMorphism conjugate_by_unitary(const Matrix& u, double tol = kDefaultTol);
/// (+)_i B(C^{n_i}) -> B(C^{sum n_i}),  (a_1, ..., a_k) -> diag(a_1, ..., a_k).
StarMorphism direct_sum_inclusion(const Algebra& algebra);

enum class CatalogKind { identity, block_embed, tensor_left, conjugate, direct_sum };

struct CatalogSpec {
  CatalogKind kind = CatalogKind::identity;
  Algebra algebra = Algebra::full(1);  // identity / direct_sum
  int n = 1;
  int m = 1;
  Matrix unitary;  // conjugate

  std::string describe() const;
};

StarMorphism make_catalog_morphism(const CatalogSpec& spec);

// ---- tensor products ------------------------------------------------------

/// B(C^n) (x) B(C^m) identified with B(C^{nm}) under lexicographic ordering.
Algebra tensor_product(const Algebra& a, const Algebra& b);
Element kron(const Element& a, const Element& b);

}  // namespace cstar
