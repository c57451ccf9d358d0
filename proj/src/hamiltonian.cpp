#include "atomlight/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace atomlight {

HamiltonianCoefficients coefficients_at(const LevelScheme& scheme,
                                        double delta_ref_mhz) {
    const auto c = irreducible_components(scheme, delta_ref_mhz);
    HamiltonianCoefficients h;
    h.a = c.alpha1;
    h.b = c.alpha2;
    h.scale = 1.0; // alpha0 * MHz^-1 units throughout
    h.dropped_scalar_shift = (4.0 / 3.0) * c.alpha0 + (2.0 / 3.0) * c.alpha2;
    return h;
}

double mean_field_energy(const HamiltonianCoefficients& c,
                         const ClassicalVectors& v) {
    return c.a * v.S.z() * v.J.z() +
           c.b * (v.S.x() * v.J.x() + v.S.y() * v.J.y());
}

Eigen::Matrix3d rotation_about(const Eigen::Vector3d& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

namespace {
Eigen::Vector3d random_vector(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng), u(rng)};
}
} // namespace

double check_rotation_symmetry(const HamiltonianCoefficients& c,
                               const Eigen::Vector3d& axis, int trials,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        ClassicalVectors v{random_vector(rng), random_vector(rng)};
        const double e0 = mean_field_energy(c, v);
        const Eigen::Matrix3d rot = rotation_about(axis, angle(rng));
        const ClassicalVectors rotated{rot * v.S, rot * v.J};
        const double e1 = mean_field_energy(c, rotated);
        worst = std::max(worst, std::abs(e1 - e0) / std::max(std::abs(e0), 1.0));
    }
    return worst;
}

double barred_identity_residual(const HamiltonianCoefficients& c, int trials,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        ClassicalVectors v{random_vector(rng), random_vector(rng)};
        const Eigen::Vector3d s_bar(v.S.x(), -v.S.y(), -v.S.z());
        const Eigen::Vector3d j_bar(-v.J.x(), v.J.y(), -v.J.z());
        const double e = mean_field_energy(c, v);
        worst = std::max(worst, std::abs(e - c.a * s_bar.dot(j_bar)));
    }
    return worst;
}

} // namespace atomlight
