#ifndef ATOMLIGHT_DYNAMICS_HPP
#define ATOMLIGHT_DYNAMICS_HPP

#include "atomlight/hamiltonian.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace atomlight {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// Joint state of probe polarization and collective pseudo-spin at the
/// level of means and Gaussian fluctuations. Component order is
/// (Sx, Sy, Sz, Jx, Jy, Jz).
struct JointGaussianState {
    Vector6d mean = Vector6d::Zero();
    Matrix6d cov = Matrix6d::Zero();
    double S0 = 0.0; // N_ph / 2
    double J0 = 0.0; // N_at / 2
};

/// Coherent (minimum-uncertainty) preparation: each block polarized
/// along its mean with transverse variances |mean|/2 and no cross-block
/// correlation.
JointGaussianState coherent_state(const Eigen::Vector3d& s_mean,
                                  const Eigen::Vector3d& j_mean, double S0,
                                  double J0);

/// Right-hand side of the mean-field flow in the dimensionless time
/// s in [0, kappa]: dS/ds = B_S x S, dJ/ds = B_J x J with effective
/// fields B_S = (b Jx, b Jy, a Jz), B_J = (b Sx, b Sy, a Sz). For a = b
/// this is the mutual precession dS/ds = a J x S, dJ/ds = a S x J.
Vector6d mean_field_rhs(const Vector6d& y, const HamiltonianCoefficients& c);

/// Jacobian of mean_field_rhs at y.
Matrix6d mean_field_jacobian(const Vector6d& y,
                             const HamiltonianCoefficients& c);

struct TrajectoryPoint {
    double s_fraction; // 0..1 of the total coupling kappa
    ClassicalVectors vectors;
};

/// Fixed-step RK4 integration of the mean-field flow over s in [0, kappa].
/// The returned trajectory has steps+1 points, the first being the input.
std::vector<TrajectoryPoint> evolve_mean_field(const ClassicalVectors& initial,
                                               const HamiltonianCoefficients& c,
                                               double kappa, int steps);

/// Exact solution of the a = b mutual precession: both vectors rotate
/// rigidly about u = (J+S)/|J+S| by phi = a * kappa * |J+S|. With
/// V = (J x S)/|J+S|,
///   J_out = u (u.J) - (V x u) cos(phi) - V sin(phi),
///   S_out = u (u.S) + (V x u) cos(phi) + V sin(phi).
/// At phi = pi with |J| = |S| the two vectors are exchanged.
ClassicalVectors closed_form_precession(const ClassicalVectors& initial,
                                        double phi);

/// Propagates the means along the nonlinear flow and the covariance with
/// the accumulated tangent map M of that flow: cov <- M cov M^T.
/// Throws DegenerateState when either block's mean is smaller than
/// 1e-12 times its shot-noise scale (linearization undefined); a run
/// with kappa = 0 is the identity and never throws.
JointGaussianState evolve_gaussian(const JointGaussianState& state,
                                   const HamiltonianCoefficients& c,
                                   double kappa, int steps);

/// Accumulated 6x6 tangent map of the mean-field flow (for property
/// checks on the linearized dynamics).
Matrix6d tangent_map(const Vector6d& mean0, const HamiltonianCoefficients& c,
                     double kappa, int steps);

enum class Observable { Sx = 0, Sy = 1, Sz = 2, Jx = 3, Jy = 4, Jz = 5 };

/// Gaussian conditional update after a homodyne readout of `observable`
/// with value `outcome` and detection noise `noise_floor` added to its
/// variance. Requires Var(observable) + noise_floor > 0.
JointGaussianState condition_on_homodyne(const JointGaussianState& state,
                                         Observable observable, double outcome,
                                         double noise_floor);

enum class Scenario {
    AtomNumber,
    QndSqueeze,
    Clone,
    MemorySwap,
    MemoryBeamsplitter,
};

std::string to_string(Scenario s);

struct ScenarioConfig {
    Scenario scenario = Scenario::QndSqueeze;
    HamiltonianCoefficients coeffs{};  // from coefficients_at or explicit
    double kappa = 0.0;                // dimensionless integrated coupling
    double n_atoms = 1e6;
    double n_photons = 1e8;
    int steps = 1000;
    // transverse displacement of the light quadratures (X_L, P_L) applied
    // on top of the preset, for memory/cloning input states
    Eigen::Vector2d light_displacement = Eigen::Vector2d::Zero();

    void validate() const; // throws InvalidRange
};

struct TimeSeriesRow {
    double t; // fraction of the pulse, 0..1
    Vector6d mean;
    std::vector<double> variances; // parallel to TimeSeries::variance_names
};

struct TimeSeries {
    std::vector<std::string> variance_names;
    std::vector<TimeSeriesRow> rows;
    std::map<std::string, double> summary; // scenario-specific outputs
};

/// Prepares the scenario preset, evolves it, and fills the
/// scenario-specific summary values (inferred atom number, conditioned
/// spin variance, quadrature gains, swap error, read-out mapping).
TimeSeries run_scenario(const ScenarioConfig& cfg);

/// CSV with header `t,Sx,Sy,Sz,Jx,Jy,Jz,<variance columns>`.
std::string time_series_to_csv(const TimeSeries& ts);

} // namespace atomlight

#endif
