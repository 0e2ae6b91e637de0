#pragma once

namespace raqr::atoms {

// <l, ml; 1/2, ms | j, mj> for spin-1/2 coupling, mj = ml + ms. Exact
// closed form (square roots of small rationals), Condon-Shortley phases.
double cg_spin_half(int l, double j, double mj, double ms);

// <l1, ml | cos(theta) | l2, ml> for |l1 - l2| = 1, 0 otherwise.
double cos_theta_element(int l1, int l2, double ml);

// Angular factor of the z-dipole between fine-structure states at fixed mj:
//   <l1 j1 mj| cos(theta) |l2 j2 mj> = sum_ms CG1 * CG2 * <l1 ml|cos|l2 ml>.
// Zero unless |l1 - l2| = 1. Symmetric in the two states.
double stark_angular_factor(int l1, double j1, int l2, double j2, double mj);

} // namespace raqr::atoms
