#include "cstar/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar {

Algebra::Algebra(std::vector<int> block_dims) : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) {
    throw ValidationError("algebra needs at least one block");
  }
  offsets_.reserve(block_dims_.size());
  for (int n : block_dims_) {
    if (n < 1) {
      throw ValidationError("algebra block dimensions must be >= 1");
    }
    offsets_.push_back(dim_);
    dim_ += n * n;
  }
}

BasisLabel Algebra::label(int index) const {
  if (index < 0 || index >= dim_) {
    throw StructuralError("basis index out of range");
  }
  int block = num_blocks() - 1;
  while (offsets_[block] > index) {
    --block;
  }
  const int local = index - offsets_[block];
  const int n = block_dims_[block];
  return {block, local / n, local % n};
}

std::string Algebra::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < block_dims_.size(); ++i) {
    if (i > 0) out << "+";
    out << "M" << block_dims_[i];
  }
  return out.str();
}

// ---- Element ----------------------------------------------------------------

namespace {

void require_same_algebra(const Algebra& a, const Algebra& b, const char* what) {
  if (a != b) {
    throw StructuralError(std::string(what) + ": algebra mismatch (" + a.to_string() + " vs " +
                          b.to_string() + ")");
  }
}

}  // namespace

Element::Element(Algebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.num_blocks()) {
    throw StructuralError("element has wrong number of blocks");
  }
  for (int i = 0; i < algebra_.num_blocks(); ++i) {
    const int n = algebra_.block_dim(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
      throw StructuralError("element block shape does not match algebra");
    }
  }
}

Element Element::zero(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(Matrix::Zero(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::unit(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(Matrix::Identity(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::basis(const Algebra& algebra, int index) {
  Element e = zero(algebra);
  const BasisLabel l = algebra.label(index);
  e.blocks_[l.block](l.row, l.col) = 1.0;
  return e;
}

Element Element::from_coords(const Algebra& algebra, const Vector& coords) {
  if (coords.size() != algebra.dim()) {
    throw StructuralError("coordinate vector length does not match algebra dimension");
  }
  std::vector<Matrix> blocks;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    blocks.push_back(unvec_rows(coords.segment(algebra.offset(b), algebra.block_dim(b) * algebra.block_dim(b)),
                                algebra.block_dim(b)));
  }
  return Element(algebra, std::move(blocks));
}

Vector Element::coords() const {
  Vector out(algebra_.dim());
  for (int b = 0; b < algebra_.num_blocks(); ++b) {
    const int n = algebra_.block_dim(b);
    out.segment(algebra_.offset(b), n * n) = vec_rows(blocks_[b]);
  }
  return out;
}

Element Element::adjoint() const {
  std::vector<Matrix> blocks;
  for (const Matrix& m : blocks_) blocks.push_back(m.adjoint());
  return Element(algebra_, std::move(blocks));
}

double Element::operator_norm() const {
  double norm = 0.0;
  for (const Matrix& m : blocks_) {
    Eigen::JacobiSVD<Matrix> svd(m);
    norm = std::max(norm, svd.singularValues()(0));
  }
  return norm;
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_, "add");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_, "subtract");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

Element& Element::operator*=(Complex scalar) {
  for (Matrix& m : blocks_) m *= scalar;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same_algebra(a.algebra_, b.algebra_, "multiply");
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] * b.blocks_[i]);
  return Element(a.algebra_, std::move(blocks));
}

double max_abs_diff(const Element& a, const Element& b) {
  require_same_algebra(a.algebra(), b.algebra(), "compare");
  double out = 0.0;
  for (int i = 0; i < a.algebra().num_blocks(); ++i) {
    out = std::max(out, (a.block(i) - b.block(i)).cwiseAbs().maxCoeff());
  }
  return out;
}

Matrix left_multiplication_matrix(const Element& a) {
  const Algebra& alg = a.algebra();
  Matrix out = Matrix::Zero(alg.dim(), alg.dim());
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_dim(b);
    // vec_rows(A X) = (A (x) I) vec_rows(X)
    Matrix block = Matrix::Zero(n * n, n * n);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        block.block(p * n, q * n, n, n) = a.block(b)(p, q) * Matrix::Identity(n, n);
      }
    }
    out.block(alg.offset(b), alg.offset(b), n * n, n * n) = block;
  }
  return out;
}

Vector vec_rows(const Matrix& m) {
  Vector out(m.rows() * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r * m.cols() + c) = m(r, c);
  }
  return out;
}

Matrix unvec_rows(const Vector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw StructuralError("vector length is not n^2");
  }
  Matrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(r, c) = v(r * n + c);
  }
  return out;
}

// ---- StarMorphism -------------------------------------------------------------

StarMorphism::StarMorphism(Algebra source, Algebra target, Matrix matrix, bool verified)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), verified_(verified) {
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
    throw StructuralError("morphism matrix shape must be (target.dim x source.dim)");
  }
}

Element StarMorphism::apply(const Element& a) const {
  require_same_algebra(a.algebra(), source_, "apply morphism");
  return Element::from_coords(target_, matrix_ * a.coords());
}

Element StarMorphism::image_of_basis(int index) const {
  return Element::from_coords(target_, matrix_.col(index));
}

double MorphismReport::max_violation() const {
  return std::max({adjoint_violation, multiplicative_violation, unital_violation});
}

MorphismReport verify_morphism(const StarMorphism& f, double tol) {
  const Algebra& src = f.source();
  MorphismReport report;
  report.tolerance = tol;

  std::vector<Element> images;
  images.reserve(src.dim());
  for (int i = 0; i < src.dim(); ++i) images.push_back(f.image_of_basis(i));

  for (int i = 0; i < src.dim(); ++i) {
    const BasisLabel l = src.label(i);
    const int star = src.basis_index(l.block, l.col, l.row);
    report.adjoint_violation = std::max(report.adjoint_violation, max_abs_diff(images[star], images[i].adjoint()));
  }

  // e^{b}_{pq} e^{b'}_{rs} = delta_{bb'} delta_{qr} e^{b}_{ps}
  const Element zero = Element::zero(f.target());
  for (int i = 0; i < src.dim(); ++i) {
    const BasisLabel li = src.label(i);
    for (int j = 0; j < src.dim(); ++j) {
      const BasisLabel lj = src.label(j);
      const Element product = images[i] * images[j];
      const bool nonzero = li.block == lj.block && li.col == lj.row;
      const Element& expected = nonzero ? images[src.basis_index(li.block, li.row, lj.col)] : zero;
      report.multiplicative_violation = std::max(report.multiplicative_violation, max_abs_diff(product, expected));
    }
  }

  report.unital_violation = max_abs_diff(f.apply(Element::unit(src)), Element::unit(f.target()));
  report.pass = report.max_violation() <= tol;
  return report;
}

StarMorphism certified(const StarMorphism& f, double tol) {
  const MorphismReport report = verify_morphism(f, tol);
  return StarMorphism(f.source(), f.target(), f.matrix(), report.pass);
}

StarMorphism compose(const StarMorphism& f, const StarMorphism& g) {
  if (g.target() != f.source()) {
    throw StructuralError("compose: codomain " + g.target().to_string() + " does not match domain " +
                          f.source().to_string());
  }
  return StarMorphism(g.source(), f.target(), f.matrix() * g.matrix(), f.verified() && g.verified());
}

// ---- tensor products ------------------------------------------------------------

Algebra tensor_product(const Algebra& a, const Algebra& b) {
  if (!a.single_block() || !b.single_block()) {
    throw UnsupportedStructure("tensor_product is only defined for single-block algebras");
  }
  return Algebra::full(a.block_dim(0) * b.block_dim(0));
}

Element kron(const Element& a, const Element& b) {
  const Algebra out = tensor_product(a.algebra(), b.algebra());
  const Matrix& x = a.block(0);
  const Matrix& y = b.block(0);
  Matrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Element(out, {k});
}

}  // namespace cstar
