#ifndef ATOMLIGHT_HAMILTONIAN_HPP
#define ATOMLIGHT_HAMILTONIAN_HPP

#include "atomlight/polarizability.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace atomlight {

/// Coupling coefficients of H = a SzJz + b (SxJx + SyJy), in units where
/// the common prefactor 2 g alpha0 / hbar is absorbed into the
/// dimensionless interaction strength kappa. `scale` records that common
/// positive factor (1 in alpha0*MHz^-1 units). The S0J0 pieces dropped
/// from the Hamiltonian are reported per unit S0*J0 for auditing.
struct HamiltonianCoefficients {
    double a = 0.0;
    double b = 0.0;
    double scale = 1.0;
    double dropped_scalar_shift = 0.0; // (4/3) alpha0 + (2/3) alpha2, per S0 J0
};

struct ClassicalVectors {
    Eigen::Vector3d S = Eigen::Vector3d::Zero(); // Stokes means, |S| <= N_ph/2
    Eigen::Vector3d J = Eigen::Vector3d::Zero(); // pseudo-spin means, |J| <= N_at/2
};

/// (a, b) = (alpha1, alpha2) at the given detuning.
HamiltonianCoefficients coefficients_at(const LevelScheme& scheme,
                                        double delta_ref_mhz);

/// a SzJz + b (SxJx + SyJy).
double mean_field_energy(const HamiltonianCoefficients& c,
                         const ClassicalVectors& v);

/// Rotation by `angle` about unit vector `axis` (Rodrigues).
Eigen::Matrix3d rotation_about(const Eigen::Vector3d& axis, double angle);

/// Max of |E(R S, R J) - E(S, J)| / max(|E|, 1) over `trials` random
/// (S, J, angle) samples, rotating both vectors about `axis`.
double check_rotation_symmetry(const HamiltonianCoefficients& c,
                               const Eigen::Vector3d& axis, int trials,
                               std::uint64_t seed = 0x5eed);

/// Residual of the barred-variable identity at the a = -b point:
/// max |E(S, J) - a * (Sbar . Jbar)| over random samples, with
/// Jbar = (-Jx, Jy, -Jz), Sbar = (Sx, -Sy, -Sz).
double barred_identity_residual(const HamiltonianCoefficients& c, int trials,
                                std::uint64_t seed = 0x5eed);

} // namespace atomlight

#endif
