#include <algorithm>
#include <sstream>

#include "cstar/errors.hpp"
#include "cstar/laws.hpp"

namespace cstar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Matrix kron_dense(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

std::vector<Algebra> default_algebra_menu() {
  return {Algebra({1}), Algebra({2}), Algebra({3}), Algebra({2, 3})};
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed) : InstanceGenerator(seed, default_algebra_menu()) {}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, std::vector<Algebra> menu, int max_depth, int max_hilbert)
    : seed_(seed), menu_(std::move(menu)), max_depth_(max_depth), max_hilbert_(max_hilbert) {
  if (menu_.empty()) throw ValidationError("instance generator needs a non-empty algebra menu");
  if (max_depth_ < 1) throw ValidationError("composition depth must be >= 1");
  int largest = 1;
  for (const Algebra& a : menu_) {
    int total = 0;
    for (int n : a.block_dims()) total += n;
    largest = std::max(largest, total);
  }
  if (max_hilbert_ < largest) throw ValidationError("max_hilbert is smaller than a menu algebra");
}

std::uint64_t InstanceGenerator::instance_seed(std::string_view stream, int index) const {
  return splitmix64(splitmix64(seed_ ^ fnv1a(stream)) + static_cast<std::uint64_t>(index));
}

Matrix random_gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  // Fill in a fixed order so streams are reproducible.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_unitary(std::mt19937_64& rng, int n) {
  const Matrix z = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

const Algebra& random_menu_algebra(const InstanceGenerator& gen, std::mt19937_64& rng) {
  const auto& menu = gen.algebra_menu();
  return menu[uniform_int(rng, 0, static_cast<int>(menu.size()) - 1)];
}

State random_state(const Algebra& algebra, std::mt19937_64& rng) {
  std::exponential_distribution<double> gamma1(1.0);
  std::vector<double> weights;
  double total = 0.0;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    weights.push_back(gamma1(rng));
    total += weights.back();
  }
  std::vector<Matrix> rhos;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const int n = algebra.block_dim(b);
    const int rank = uniform_int(rng, 1, n);
    const Matrix g = random_gaussian(rng, n, rank);
    const Matrix gg = g * g.adjoint();
    rhos.push_back(gg * (weights[b] / total / gg.trace().real()));
  }
  return state_from_block_densities(algebra, rhos);
}

PointedRep random_pointed_rep(const Algebra& algebra, std::mt19937_64& rng, int max_hilbert) {
  std::vector<int> mult(algebra.num_blocks());
  int dim = 0;
  do {
    dim = 0;
    for (int b = 0; b < algebra.num_blocks(); ++b) {
      mult[b] = uniform_int(rng, 0, 3);
      dim += mult[b] * algebra.block_dim(b);
    }
  } while (dim < 1 || dim > max_hilbert);

  const StarMorphism standard = multiplicity_representation(algebra, mult);
  const Matrix u = random_unitary(rng, dim);
  const StarMorphism pi = compose(conjugate_by_unitary(u), standard);

  Vector omega;
  if (uniform_int(rng, 0, 3) == 0) {
    // Supported on the first summand only: usually not cyclic.
    int first = 0;
    while (mult[first] == 0) ++first;
    const int n = algebra.block_dim(first);
    Vector v = Vector::Zero(dim);
    v.head(n) = random_gaussian(rng, n, 1).col(0);
    omega = u * v;
  } else {
    omega = random_gaussian(rng, dim, 1).col(0);
  }
  omega /= omega.norm();
  return PointedRep(pi, omega);
}

CatalogSpec random_catalog_step(const Algebra& source, std::mt19937_64& rng, int max_hilbert) {
  std::vector<CatalogSpec> options;
  CatalogSpec id;
  id.kind = CatalogKind::identity;
  id.algebra = source;
  options.push_back(id);

  if (!source.single_block()) {
    int total = 0;
    for (int n : source.block_dims()) total += n;
    if (total <= max_hilbert) {
      CatalogSpec s;
      s.kind = CatalogKind::direct_sum;
      s.algebra = source;
      options.push_back(s);
    }
  } else {
    const int n = source.block_dim(0);
    CatalogSpec conj;
    conj.kind = CatalogKind::conjugate;
    conj.n = n;
    options.push_back(conj);
    for (int m = 2; n * m <= max_hilbert; ++m) {
      CatalogSpec embed;
      embed.kind = CatalogKind::block_embed;
      embed.n = n;
      embed.m = m;
      options.push_back(embed);
      CatalogSpec tensor = embed;
      tensor.kind = CatalogKind::tensor_left;
      options.push_back(tensor);
    }
  }
  CatalogSpec pick = options[uniform_int(rng, 0, static_cast<int>(options.size()) - 1)];
  if (pick.kind == CatalogKind::conjugate) pick.unitary = random_unitary(rng, pick.n);
  return pick;
}

MorphismChain random_chain(const Algebra& source, int depth, std::mt19937_64& rng, int max_hilbert) {
  MorphismChain chain{source, {}, {}};
  for (int i = 0; i < depth; ++i) {
    chain.steps.push_back(random_catalog_step(chain.target(), rng, max_hilbert));
    chain.morphisms.push_back(make_catalog_morphism(chain.steps.back()));
  }
  return chain;
}

StarMorphism MorphismChain::composite(std::size_t begin, std::size_t end) const {
  const Algebra& start = begin == 0 ? source : morphisms[begin - 1].target();
  StarMorphism out = identity_morphism(start);
  for (std::size_t i = begin; i < end; ++i) out = compose(morphisms[i], out);
  return out;
}

std::string MorphismChain::describe() const {
  std::ostringstream out;
  out << source.to_string();
  for (const CatalogSpec& s : steps) out << " -> " << s.describe();
  return out.str();
}

LinearSolveOracle solve_pointed_morphism(const PointedRep& source, const PointedRep& target, double tol) {
  if (source.algebra() != target.algebra()) {
    throw StructuralError("solve_pointed_morphism: representations of different algebras");
  }
  const int ds = source.hilbert_dim();
  const int dt = target.hilbert_dim();
  const int dim = source.algebra().dim();
  const Eigen::Index unknowns = static_cast<Eigen::Index>(ds) * dt;

  // Column-major vec: vec(L P) = (P^T (x) I) vec L,  vec(P' L) = (I (x) P') vec L.
  Matrix system = Matrix::Zero(static_cast<Eigen::Index>(dim) * unknowns + dt, unknowns);
  Vector rhs = Vector::Zero(system.rows());
  const Matrix id_t = Matrix::Identity(dt, dt);
  const Matrix id_s = Matrix::Identity(ds, ds);
  for (int k = 0; k < dim; ++k) {
    system.middleRows(k * unknowns, unknowns) =
        kron_dense(source.image(k).transpose(), id_t) - kron_dense(id_s, target.image(k));
  }
  system.bottomRows(dt) = kron_dense(Matrix(source.omega().transpose()), id_t);
  rhs.tail(dt) = target.omega();

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
  const Vector x = cod.solve(rhs);
  LinearSolveOracle out;
  out.map = Eigen::Map<const Matrix>(x.data(), dt, ds);
  out.consistent = (system * x - rhs).cwiseAbs().maxCoeff() <= tol;
  out.isometric = (out.map.adjoint() * out.map - id_s).cwiseAbs().maxCoeff() <= tol;
  out.count = out.consistent && out.isometric ? 1 : 0;
  return out;
}

}  // namespace cstar
