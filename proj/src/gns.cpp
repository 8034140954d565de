#include "cstar/gns.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Greedy pivoted Cholesky on a projector P: picks columns of P that span its
// range.  Near-ties (within a relative 1e-6) go to the smallest index so the
// choice does not flip under rounding-level perturbations of P.
std::vector<int> select_spanning_columns(const Matrix& projector, int count) {
  Matrix residual = projector;
  std::vector<int> chosen;
  std::vector<bool> used(projector.rows(), false);
  for (int step = 0; step < count; ++step) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < residual.rows(); ++i) {
      if (!used[i]) best = std::max(best, residual(i, i).real());
    }
    int pick = -1;
    for (Eigen::Index i = 0; i < residual.rows(); ++i) {
      if (!used[i] && residual(i, i).real() >= (1.0 - 1e-6) * best) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0 || best <= 0.0) {
      throw ValidationError("gns: could not select a basis of the quotient space");
    }
    used[pick] = true;
    chosen.push_back(pick);
    const Vector col = residual.col(pick) / std::sqrt(residual(pick, pick).real());
    residual -= col * col.adjoint();
  }
  return chosen;
}

}  // namespace

// ---- PointedRep -------------------------------------------------------------------

PointedRep::PointedRep(StarMorphism pi, Vector omega) : pi_(std::move(pi)), omega_(std::move(omega)) {
  if (!pi_.target().single_block()) {
    throw ValidationError("pointed representation must act on a single Hilbert space B(C^d)");
  }
  if (pi_.target().block_dim(0) != omega_.size()) {
    throw StructuralError("pointed representation: vector length does not match Hilbert dimension");
  }
  const double defect = std::abs(omega_.norm() - 1.0);
  if (!(defect <= kDefaultTol)) {
    std::ostringstream msg;
    msg << "pointed representation needs a unit vector (| |Omega| - 1 | = " << defect << ")";
    throw ValidationError(msg.str());
  }
}

Matrix PointedRep::image(int basis_index) const {
  return unvec_rows(pi_.matrix().col(basis_index), hilbert_dim());
}

Matrix PointedRep::image(const Element& a) const { return pi_.apply(a).block(0); }

Matrix PointedRep::orbit() const {
  const int d = hilbert_dim();
  Matrix k(d, algebra().dim());
  for (int i = 0; i < algebra().dim(); ++i) k.col(i) = image(i) * omega_;
  return k;
}

StarMorphism multiplicity_representation(const Algebra& algebra, const std::vector<int>& multiplicity) {
  if (static_cast<int>(multiplicity.size()) != algebra.num_blocks()) {
    throw StructuralError("one multiplicity per block expected");
  }
  int total = 0;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    if (multiplicity[b] < 0) throw ValidationError("multiplicities must be non-negative");
    total += multiplicity[b] * algebra.block_dim(b);
  }
  if (total < 1) throw ValidationError("representation must act on a non-zero space");

  const Algebra target = Algebra::full(total);
  Matrix mat(target.dim(), algebra.dim());
  for (int k = 0; k < algebra.dim(); ++k) {
    const Element e = Element::basis(algebra, k);
    Matrix big = Matrix::Zero(total, total);
    int at = 0;
    for (int b = 0; b < algebra.num_blocks(); ++b) {
      const int n = algebra.block_dim(b);
      for (int c = 0; c < multiplicity[b]; ++c, at += n) big.block(at, at, n, n) = e.block(b);
    }
    mat.col(k) = vec_rows(big);
  }
  return certified(StarMorphism(algebra, target, std::move(mat)), catalog_tolerance(target));
}

PointedRep defining_rep(const Vector& omega) {
  return PointedRep(identity_morphism(Algebra::full(static_cast<int>(omega.size()))), omega);
}

// ---- GNS ---------------------------------------------------------------------------

Vector GnsRep::quotient_coords(const Vector& x) const { return embed.adjoint() * (gram * x); }

GnsRep gns_construct(const State& omega, Execution exec) {
  const StateReport validity = verify_state(omega);
  if (!validity.pass) {
    std::ostringstream msg;
    msg << "gns_construct: invalid state (max violation " << validity.max_violation() << ")";
    throw ValidationError(msg.str());
  }
  const Algebra& algebra = omega.algebra();
  const Matrix raw = kernels::gram(algebra, omega.coeffs(), exec);
  const Matrix g = 0.5 * (raw + raw.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = kNullThreshold * std::max(lambda(lambda.size() - 1), 1.0);

  // Eigenvalues come sorted ascending: the null block is a prefix.
  Eigen::Index null_dim = 0;
  while (null_dim < lambda.size() && lambda(null_dim) <= cutoff) ++null_dim;
  const Eigen::Index d = lambda.size() - null_dim;
  Matrix null_basis = eig.eigenvectors().leftCols(null_dim);
  const Matrix positive = eig.eigenvectors().rightCols(d);

  // Representatives: projector columns at pivots, then Loewdin
  // orthonormalisation under <x, y> = x^* G y.  The result depends only on
  // the positive eigenspace and G, not on the eigensolver's basis choice.
  const Matrix projector = positive * positive.adjoint();
  const std::vector<int> pivots = select_spanning_columns(projector, static_cast<int>(d));
  Matrix b(algebra.dim(), d);
  for (Eigen::Index j = 0; j < d; ++j) b.col(j) = projector.col(pivots[j]);
  const Matrix overlap = b.adjoint() * g * b;
  Eigen::SelfAdjointEigenSolver<Matrix> overlap_eig(0.5 * (overlap + overlap.adjoint()));
  const Matrix q = b * overlap_eig.operatorInverseSqrt();

  const Matrix w = g * q;
  Matrix images = kernels::quotient_action(algebra, q, w, exec);
  const Vector unit_coords = Element::unit(algebra).coords();
  Vector cyclic = w.adjoint() * unit_coords;

  const Algebra target = Algebra::full(static_cast<int>(d));
  StarMorphism pi(algebra, target, std::move(images));
  const MorphismReport pi_report = verify_morphism(pi, kCompositeTol);
  pi = StarMorphism(pi.source(), pi.target(), pi.matrix(), pi_report.pass);

  return GnsRep{omega, g, q, std::move(null_basis), PointedRep(std::move(pi), std::move(cyclic)), pi_report};
}

GnsCertificates certify_gns(const GnsRep& gns, double tol) {
  GnsCertificates c;
  const auto d = gns.quotient_dim();
  c.orthonormality_violation = max_abs(Matrix(gns.embed.adjoint() * gns.gram * gns.embed - Matrix::Identity(d, d)));
  c.null_violation = max_abs(Matrix(gns.gram * gns.null_basis));
  c.omega_norm_violation = std::abs(gns.rep.omega().norm() - 1.0);
  c.rest_recovery_violation = max_abs(Vector(rest(gns.rep).coeffs() - gns.state.coeffs()));
  const CyclicityReport cyc = is_cyclic(gns.rep);
  c.orbit_rank = cyc.orbit_rank;
  c.cyclic = cyc.cyclic;
  c.dimensions_consistent = gns.quotient_dim() + gns.null_dim() == gns.state.algebra().dim();
  c.pi_report = gns.pi_report;
  c.pass = c.orthonormality_violation <= tol && c.null_violation <= tol && c.omega_norm_violation <= tol &&
           c.rest_recovery_violation <= tol && c.cyclic && c.dimensions_consistent && c.pi_report.pass;
  return c;
}

// ---- Intertwiner --------------------------------------------------------------------

Intertwiner::Intertwiner(PointedRep source, PointedRep target, Matrix map, double tol)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (source_.algebra() != target_.algebra()) {
    throw StructuralError("intertwiner: representations of different algebras");
  }
  if (map_.rows() != target_.hilbert_dim() || map_.cols() != source_.hilbert_dim()) {
    throw StructuralError("intertwiner: map shape must be (target dim x source dim)");
  }
  certs_.tolerance = tol;
  for (int k = 0; k < source_.algebra().dim(); ++k) {
    certs_.intertwining_violation = std::max(
        certs_.intertwining_violation, max_abs(Matrix(map_ * source_.image(k) - target_.image(k) * map_)));
  }
  const auto ds = map_.cols();
  const auto dt = map_.rows();
  certs_.isometry_violation = max_abs(Matrix(map_.adjoint() * map_ - Matrix::Identity(ds, ds)));
  certs_.coisometry_violation = max_abs(Matrix(map_ * map_.adjoint() - Matrix::Identity(dt, dt)));
  certs_.point_violation = max_abs(Vector(map_ * source_.omega() - target_.omega()));
  certs_.intertwines = certs_.intertwining_violation <= tol;
  certs_.isometry = certs_.isometry_violation <= tol;
  certs_.unitary = certs_.isometry && certs_.coisometry_violation <= tol;
  certs_.preserves_point = certs_.point_violation <= tol;
}

// ---- representation operations ------------------------------------------------------

State rest(const PointedRep& rep) {
  // omega(e_k) = <Omega, pi(e_k) Omega>
  return State(rep.algebra(), rep.orbit().transpose() * rep.omega().conjugate());
}

PointedRep pullback_pointed(const StarMorphism& f, const PointedRep& rep) {
  if (f.target() != rep.algebra()) {
    throw StructuralError("pullback_pointed: morphism target does not match the representation's algebra");
  }
  if (!f.verified()) {
    throw StructuralError("pullback_pointed: morphism is not verified");
  }
  return PointedRep(compose(rep.pi(), f), rep.omega());
}

CyclicityReport is_cyclic(const PointedRep& rep, double tol) {
  const Matrix k = rep.orbit();
  Eigen::JacobiSVD<Matrix> svd(k);
  const Eigen::VectorXd& sigma = svd.singularValues();
  CyclicityReport report;
  if (sigma.size() == 0 || sigma(0) <= 0.0) return report;
  const double threshold = tol * sigma(0);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++report.orbit_rank;
  }
  report.cyclic = report.orbit_rank == rep.hilbert_dim();
  return report;
}

Intertwiner gns_intertwiner(const StarMorphism& f, const State& omega, double tol) {
  if (f.target() != omega.algebra()) {
    throw StructuralError("gns_intertwiner: morphism target does not match the state's algebra");
  }
  if (!f.verified()) {
    throw StructuralError("gns_intertwiner: morphism is not verified");
  }
  const GnsRep target = gns_construct(omega);
  const GnsRep source = gns_construct(pullback_state(omega, f));
  // [a'] -> [f(a')] in quotient coordinates: Q^* G F Q'
  Matrix l = target.embed.adjoint() * target.gram * f.matrix() * source.embed;
  return Intertwiner(source.rep, pullback_pointed(f, target.rep), std::move(l), tol);
}

Matrix segal_map(const GnsRep& gns, const PointedRep& rep) {
  if (gns.state.algebra() != rep.algebra()) {
    throw StructuralError("segal_map: GNS space and representation are over different algebras");
  }
  // column j = pi(a_j) Omega with a_j the j-th representative
  return rep.orbit() * gns.embed;
}

Intertwiner modification_m(const PointedRep& rep, double tol) {
  const GnsRep gns = gns_construct(rest(rep));
  Matrix m = segal_map(gns, rep);
  return Intertwiner(gns.rep, rep, std::move(m), tol);
}

HomCount hom_count_pointed(const PointedRep& source, const PointedRep& target, double tol) {
  if (source.algebra() != target.algebra()) {
    throw StructuralError("hom_count_pointed: representations of different algebras");
  }
  if (!is_cyclic(source).cyclic) {
    throw PreconditionError("hom_count_pointed: source representation is not cyclic");
  }
  const State source_state = rest(source);
  HomCount out;
  out.state_distance = max_abs(Vector(source_state.coeffs() - rest(target).coeffs()));
  if (!(out.state_distance <= tol)) return out;

  const GnsRep gns = gns_construct(source_state);
  // m(source) is unitary because the source is cyclic.
  Matrix l = segal_map(gns, target) * segal_map(gns, source).adjoint();
  out.count = 1;
  out.morphism.emplace(source, target, std::move(l), tol);
  return out;
}

IsometryEquivalence isometry_equivalences(const Matrix& map, double tol, std::uint64_t seed, int samples) {
  IsometryEquivalence out;
  const auto n = map.cols();
  out.adjoint_identity = max_abs(Matrix(map.adjoint() * map - Matrix::Identity(n, n))) <= tol;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto sample = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
    return Vector(v / v.norm());
  };
  double norm_defect = 0.0;
  double inner_defect = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector psi = sample();
    const Vector phi = sample();
    norm_defect = std::max(norm_defect, std::abs((map * psi).norm() - psi.norm()));
    inner_defect = std::max(inner_defect, std::abs((map * psi).dot(map * phi) - psi.dot(phi)));
  }
  out.preserves_norms = norm_defect <= tol;
  out.preserves_inner_products = inner_defect <= tol;
  return out;
}

}  // namespace cstar
