#include "cstar/golden.hpp"

#include <cmath>

namespace cstar::golden {

Vector spin_up() { return Vector::Unit(2, 0); }

Vector spin_down() { return Vector::Unit(2, 1); }

Vector epr_singlet() {
  Vector psi = Vector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);   // |up down>
  psi(2) = -1.0 / std::sqrt(2.0);  // |down up>
  return psi;
}

State omega_up() { return vector_state(spin_up()); }

PointedRep qubit_rep() { return defining_rep(spin_up()); }

PointedRep epr_rep() { return defining_rep(epr_singlet()); }

StarMorphism epr_inclusion() { return tensor_left_inclusion(2, 2); }

}  // namespace cstar::golden
