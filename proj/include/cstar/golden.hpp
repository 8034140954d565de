#pragma once

// Fixed fixtures: the spin-1/2 qubit and the EPR singlet on C^2 (x) C^2,
// with basis order (up, down) and lexicographic order on tensor products.

#include "cstar/gns.hpp"

namespace cstar::golden {

Vector spin_up();
Vector spin_down();
/// (|up down> - |down up>) / sqrt(2)
Vector epr_singlet();

/// Vector state <up| a |up> on B(C^2).
State omega_up();
/// Defining representation of B(C^2) with Omega = |up>.
PointedRep qubit_rep();
/// Defining representation of B(C^2) (x) B(C^2) = B(C^4) with the singlet.
PointedRep epr_rep();
/// i_1 : B(C^2) -> B(C^2) (x) B(C^2),  a -> a (x) 1.
StarMorphism epr_inclusion();

}  // namespace cstar::golden
