#pragma once

// The GNS construction for states on finite-dimensional C*-algebras, the
// comparison intertwiners L_f and m, and the pointed-representation
// operations (pullback, restriction to a vector state, cyclicity).
//
// Hilbert spaces are C^d with the Euclidean inner product.  For a GNS space
// A / N_omega the coordinates are taken in an orthonormal quotient basis
// whose representatives (coordinate vectors in A) are the columns of
// GnsRep::embed.

#include <cstdint>
#include <optional>

#include "cstar/algebra.hpp"
#include "cstar/kernels.hpp"
#include "cstar/states.hpp"

namespace cstar {

inline constexpr double kCompositeTol = 1e-8;

/// (pi, C^d, Omega).  pi is stored as a morphism A -> B(C^d).
class PointedRep {
 public:
  /// Throws ValidationError unless pi's target is a single block and
  /// |Omega| = 1 within 1e-9.
  PointedRep(StarMorphism pi, Vector omega);

  const Algebra& algebra() const { return pi_.source(); }
  int hilbert_dim() const { return static_cast<int>(omega_.size()); }
  const StarMorphism& pi() const { return pi_; }
  const Vector& omega() const { return omega_; }

  /// pi(e_k) as a d x d matrix.
  Matrix image(int basis_index) const;
  Matrix image(const Element& a) const;
  /// d x dim matrix with columns pi(e_k) Omega.
  Matrix orbit() const;

 private:
  StarMorphism pi_;
  Vector omega_;
};

/// a -> (+)_b diag(a_b, ..., a_b) with multiplicity[b] copies of block b.
/// Blocks with multiplicity 0 are dropped; the total size must be >= 1.
StarMorphism multiplicity_representation(const Algebra& algebra, const std::vector<int>& multiplicity);

/// The defining representation of B(C^n) on C^n with marked vector omega.
PointedRep defining_rep(const Vector& omega);

struct GnsRep {
  State state;
  /// Gram matrix G_{ij} = omega(e_i^* e_j) (Hermitian part).
  Matrix gram;
  /// (dim x d) representatives of an orthonormal basis of A / N_omega.
  Matrix embed;
  /// (dim x null_dim) Euclidean-orthonormal basis of N_omega.
  Matrix null_basis;
  PointedRep rep;
  MorphismReport pi_report;

  int quotient_dim() const { return static_cast<int>(embed.cols()); }
  int null_dim() const { return static_cast<int>(null_basis.cols()); }
  /// Quotient coordinates of [x] for a coordinate vector x in A.
  Vector quotient_coords(const Vector& x) const;
};

/// Eigenvalues at or below this fraction of max(lambda_max, 1) count as null.
inline constexpr double kNullThreshold = 1e-9;

GnsRep gns_construct(const State& omega, Execution exec = Execution::parallel);

struct IntertwinerCertificates {
  double intertwining_violation = 0.0;
  double isometry_violation = 0.0;    // |L^* L - 1|
  double coisometry_violation = 0.0;  // |L L^* - 1|
  double point_violation = 0.0;       // |L Omega - Omega'|
  double tolerance = kCompositeTol;
  bool intertwines = false;
  bool isometry = false;
  bool unitary = false;
  bool preserves_point = false;
};

class Intertwiner {
 public:
  /// Requires both reps on the same algebra and L of shape (d' x d).
  Intertwiner(PointedRep source, PointedRep target, Matrix map, double tol = kCompositeTol);

  const PointedRep& source() const { return source_; }
  const PointedRep& target() const { return target_; }
  const Matrix& map() const { return map_; }
  const IntertwinerCertificates& certificates() const { return certs_; }

  /// Intertwiner of pointed reps: isometric, intertwining, point-preserving.
  bool is_pointed_morphism() const {
    return certs_.isometry && certs_.intertwines && certs_.preserves_point;
  }

 private:
  PointedRep source_;
  PointedRep target_;
  Matrix map_;
  IntertwinerCertificates certs_;
};

/// rest(pi, H, Omega) = <Omega, pi( . ) Omega>.
State rest(const PointedRep& rep);

/// (pi o f, H, Omega).  Cyclicity is not preserved in general.
PointedRep pullback_pointed(const StarMorphism& f, const PointedRep& rep);

struct CyclicityReport {
  bool cyclic = false;
  int orbit_rank = 0;
};

/// Rank of {pi(e_i) Omega} at threshold tol * sigma_max.
CyclicityReport is_cyclic(const PointedRep& rep, double tol = kDefaultTol);

/// L_f : GNS(omega o f) -> f^* GNS(omega),  [a'] -> [f(a')].
Intertwiner gns_intertwiner(const StarMorphism& f, const State& omega, double tol = kCompositeTol);

/// Matrix of [a] -> pi(a) Omega from the quotient space of `gns` into rep's
/// Hilbert space.  This is m(rep) when gns = gns_construct(rest(rep)).
Matrix segal_map(const GnsRep& gns, const PointedRep& rep);

/// m(rep) : GNS(rest(rep)) -> rep.
Intertwiner modification_m(const PointedRep& rep, double tol = kCompositeTol);

struct HomCount {
  int count = 0;
  std::optional<Intertwiner> morphism;
  double state_distance = 0.0;
};

/// Morphisms of pointed reps out of a cyclic source: one iff the restricted
/// states agree within tol, built as m(target) o m(source)^{-1}.
/// Throws PreconditionError if the source is not cyclic.
HomCount hom_count_pointed(const PointedRep& source, const PointedRep& target, double tol = kCompositeTol);

/// The three equivalent isometry conditions checked independently: L^*L = 1,
/// norms preserved on sampled vectors, inner products preserved on sampled
/// pairs.
struct IsometryEquivalence {
  bool adjoint_identity = false;
  bool preserves_norms = false;
  bool preserves_inner_products = false;

  bool consistent() const {
    return adjoint_identity == preserves_norms && preserves_norms == preserves_inner_products;
  }
};

IsometryEquivalence isometry_equivalences(const Matrix& map, double tol = kCompositeTol, std::uint64_t seed = 0,
                                          int samples = 100);

/// Certificates of a GNS output, reported by the CLI.
struct GnsCertificates {
  double orthonormality_violation = 0.0;  // |Q^* G Q - 1|
  double null_violation = 0.0;            // |G N|
  double omega_norm_violation = 0.0;
  double rest_recovery_violation = 0.0;   // |rest(rep) - omega|
  int orbit_rank = 0;
  bool cyclic = false;
  bool dimensions_consistent = false;
  MorphismReport pi_report;
  bool pass = false;
};

GnsCertificates certify_gns(const GnsRep& gns, double tol = kCompositeTol);

}  // namespace cstar
