#include "atomlight/dynamics.hpp"
#include "atomlight/errors.hpp"

#include <charconv>
#include <cmath>

namespace atomlight {

namespace {

Eigen::Matrix3d transverse_projector(const Eigen::Vector3d& mean) {
    const double norm = mean.norm();
    if (norm == 0.0)
        return Eigen::Matrix3d::Zero();
    const Eigen::Vector3d n = mean / norm;
    return Eigen::Matrix3d::Identity() - n * n.transpose();
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    return m;
}

} // namespace

JointGaussianState coherent_state(const Eigen::Vector3d& s_mean,
                                  const Eigen::Vector3d& j_mean, double S0,
                                  double J0) {
    JointGaussianState st;
    st.mean.head<3>() = s_mean;
    st.mean.tail<3>() = j_mean;
    st.S0 = S0;
    st.J0 = J0;
    st.cov.topLeftCorner<3, 3>() =
        0.5 * s_mean.norm() * transverse_projector(s_mean);
    st.cov.bottomRightCorner<3, 3>() =
        0.5 * j_mean.norm() * transverse_projector(j_mean);
    return st;
}

Vector6d mean_field_rhs(const Vector6d& y, const HamiltonianCoefficients& c) {
    const Eigen::Vector3d S = y.head<3>(), J = y.tail<3>();
    const Eigen::Vector3d b_s(c.b * J.x(), c.b * J.y(), c.a * J.z());
    const Eigen::Vector3d b_j(c.b * S.x(), c.b * S.y(), c.a * S.z());
    Vector6d out;
    out.head<3>() = b_s.cross(S);
    out.tail<3>() = b_j.cross(J);
    return out;
}

Matrix6d mean_field_jacobian(const Vector6d& y,
                             const HamiltonianCoefficients& c) {
    const Eigen::Vector3d S = y.head<3>(), J = y.tail<3>();
    const Eigen::Vector3d b_s(c.b * J.x(), c.b * J.y(), c.a * J.z());
    const Eigen::Vector3d b_j(c.b * S.x(), c.b * S.y(), c.a * S.z());
    const Eigen::Matrix3d coupling =
        Eigen::Vector3d(c.b, c.b, c.a).asDiagonal();

    Matrix6d a = Matrix6d::Zero();
    // d(B_S x S)/dS and the J-dependence through B_S = coupling * J
    a.topLeftCorner<3, 3>() = skew(b_s);
    a.topRightCorner<3, 3>() = -skew(S) * coupling;
    a.bottomRightCorner<3, 3>() = skew(b_j);
    a.bottomLeftCorner<3, 3>() = -skew(J) * coupling;
    return a;
}

namespace {

Vector6d rk4_step(const Vector6d& y, double h,
                  const HamiltonianCoefficients& c) {
    const Vector6d k1 = mean_field_rhs(y, c);
    const Vector6d k2 = mean_field_rhs(y + 0.5 * h * k1, c);
    const Vector6d k3 = mean_field_rhs(y + 0.5 * h * k2, c);
    const Vector6d k4 = mean_field_rhs(y + h * k3, c);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct MeanAndTangent {
    Vector6d y;
    Matrix6d m;
};

// RK4 on the combined system dy/ds = f(y), dM/ds = Df(y) M.
MeanAndTangent rk4_step_with_tangent(const MeanAndTangent& state, double h,
                                     const HamiltonianCoefficients& c) {
    const auto f = [&](const MeanAndTangent& s) {
        return MeanAndTangent{mean_field_rhs(s.y, c),
                              mean_field_jacobian(s.y, c) * s.m};
    };
    const auto advance = [](const MeanAndTangent& s, double w,
                            const MeanAndTangent& k) {
        return MeanAndTangent{s.y + w * k.y, s.m + w * k.m};
    };
    const MeanAndTangent k1 = f(state);
    const MeanAndTangent k2 = f(advance(state, 0.5 * h, k1));
    const MeanAndTangent k3 = f(advance(state, 0.5 * h, k2));
    const MeanAndTangent k4 = f(advance(state, h, k3));
    MeanAndTangent out;
    out.y = state.y + (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    out.m = state.m + (h / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    return out;
}

} // namespace

std::vector<TrajectoryPoint> evolve_mean_field(const ClassicalVectors& initial,
                                               const HamiltonianCoefficients& c,
                                               double kappa, int steps) {
    if (steps < 1)
        throw InvalidRange("evolve_mean_field: steps >= 1");
    std::vector<TrajectoryPoint> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);

    Vector6d y;
    y.head<3>() = initial.S;
    y.tail<3>() = initial.J;
    traj.push_back({0.0, initial});

    const double h = kappa / steps;
    for (int i = 1; i <= steps; ++i) {
        y = rk4_step(y, h, c);
        traj.push_back({static_cast<double>(i) / steps,
                        ClassicalVectors{y.head<3>(), y.tail<3>()}});
    }
    return traj;
}

ClassicalVectors closed_form_precession(const ClassicalVectors& initial,
                                        double phi) {
    const Eigen::Vector3d total = initial.J + initial.S;
    const double norm = total.norm();
    if (norm == 0.0)
        return initial; // J = -S: both fields vanish identically
    const Eigen::Vector3d u = total / norm;
    const Eigen::Vector3d v = initial.J.cross(initial.S) / norm;
    const Eigen::Vector3d vxu = v.cross(u);

    ClassicalVectors out;
    out.J = u * u.dot(initial.J) - vxu * std::cos(phi) - v * std::sin(phi);
    out.S = u * u.dot(initial.S) + vxu * std::cos(phi) + v * std::sin(phi);
    return out;
}

Matrix6d tangent_map(const Vector6d& mean0, const HamiltonianCoefficients& c,
                     double kappa, int steps) {
    MeanAndTangent state{mean0, Matrix6d::Identity()};
    const double h = kappa / steps;
    for (int i = 0; i < steps; ++i)
        state = rk4_step_with_tangent(state, h, c);
    return state.m;
}

JointGaussianState evolve_gaussian(const JointGaussianState& state,
                                   const HamiltonianCoefficients& c,
                                   double kappa, int steps) {
    if (steps < 1)
        throw InvalidRange("evolve_gaussian: steps >= 1");
    if (kappa == 0.0)
        return state;

    const double s_scale = std::max(state.S0, 1.0);
    const double j_scale = std::max(state.J0, 1.0);
    if (state.mean.head<3>().norm() < 1e-12 * s_scale ||
        state.mean.tail<3>().norm() < 1e-12 * j_scale)
        throw DegenerateState(
            "evolve_gaussian: block mean too small to linearize about");

    MeanAndTangent mt{state.mean, Matrix6d::Identity()};
    const double h = kappa / steps;
    for (int i = 0; i < steps; ++i)
        mt = rk4_step_with_tangent(mt, h, c);

    JointGaussianState out = state;
    out.mean = mt.y;
    const Matrix6d cov = mt.m * state.cov * mt.m.transpose();
    out.cov = 0.5 * (cov + cov.transpose());
    return out;
}

JointGaussianState condition_on_homodyne(const JointGaussianState& state,
                                         Observable observable, double outcome,
                                         double noise_floor) {
    const auto i = static_cast<Eigen::Index>(observable);
    const double denom = state.cov(i, i) + noise_floor;
    if (!(denom > 0.0))
        throw InvalidRange(
            "condition_on_homodyne: Var(observable) + noise_floor must be > 0");

    const Vector6d col = state.cov.col(i);
    JointGaussianState out = state;
    out.mean += col * ((outcome - state.mean(i)) / denom);
    const Matrix6d cov = state.cov - (col * col.transpose()) / denom;
    out.cov = 0.5 * (cov + cov.transpose());
    return out;
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::AtomNumber: return "atom-number";
        case Scenario::QndSqueeze: return "qnd";
        case Scenario::Clone: return "clone";
        case Scenario::MemorySwap: return "memory-swap";
        case Scenario::MemoryBeamsplitter: return "memory-bs";
    }
    return "?";
}

void ScenarioConfig::validate() const {
    if (!std::isfinite(kappa))
        throw InvalidRange("scenario: kappa must be finite");
    if (steps < 1)
        throw InvalidRange("scenario: steps >= 1");
    if (!(n_atoms > 0.0) || !(n_photons > 0.0))
        throw InvalidRange("scenario: n_atoms and n_photons must be positive");
}

namespace {

// per-scenario selected variances, in the row order of variance_names
std::vector<double> selected_variances(Scenario sc,
                                       const JointGaussianState& st) {
    const auto var = [&](Observable o) {
        const auto i = static_cast<Eigen::Index>(o);
        return st.cov(i, i);
    };
    switch (sc) {
        case Scenario::AtomNumber:
            return {var(Observable::Sy), var(Observable::Sz)};
        case Scenario::QndSqueeze:
            return {var(Observable::Jz), var(Observable::Sy),
                    var(Observable::Sz)};
        case Scenario::MemorySwap:
            return {var(Observable::Sy), var(Observable::Sz),
                    var(Observable::Jy), var(Observable::Jz)};
        case Scenario::Clone:
        case Scenario::MemoryBeamsplitter: {
            // quadrature variances; X/P assignment differs between the
            // two schemes but the diagonal pairs coincide
            const double s0 = std::abs(st.mean(2)) > 0 ? std::abs(st.mean(2))
                                                       : st.S0;
            const double j0 = std::abs(st.mean(5)) > 0 ? std::abs(st.mean(5))
                                                       : st.J0;
            if (sc == Scenario::Clone)
                return {var(Observable::Sy) / s0, var(Observable::Sx) / s0,
                        var(Observable::Jx) / j0, var(Observable::Jy) / j0};
            return {var(Observable::Sx) / s0, var(Observable::Sy) / s0,
                    var(Observable::Jx) / j0, var(Observable::Jy) / j0};
        }
    }
    return {};
}

std::vector<std::string> variance_names_for(Scenario sc) {
    switch (sc) {
        case Scenario::AtomNumber: return {"var_Sy", "var_Sz"};
        case Scenario::QndSqueeze: return {"var_Jz", "var_Sy", "var_Sz"};
        case Scenario::MemorySwap:
            return {"var_Sy", "var_Sz", "var_Jy", "var_Jz"};
        case Scenario::Clone:
        case Scenario::MemoryBeamsplitter:
            return {"var_XL", "var_PL", "var_XA", "var_PA"};
    }
    return {};
}

} // namespace

TimeSeries run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    const double S0 = cfg.n_photons / 2.0;
    const double J0 = cfg.n_atoms / 2.0;
    const double sqrt_s0 = std::sqrt(S0);

    JointGaussianState state;
    switch (cfg.scenario) {
        case Scenario::AtomNumber:
            state = coherent_state({0.0, 0.0, S0}, {J0, 0.0, 0.0}, S0, J0);
            break;
        case Scenario::QndSqueeze:
            state = coherent_state({S0, 0.0, 0.0}, {J0, 0.0, 0.0}, S0, J0);
            break;
        case Scenario::Clone:
            // (X_L, P_L) = (Sy, Sx)/sqrt(-<Sz>)
            state = coherent_state(
                {cfg.light_displacement.y() * sqrt_s0,
                 cfg.light_displacement.x() * sqrt_s0, -S0},
                {0.0, 0.0, J0}, S0, J0);
            break;
        case Scenario::MemorySwap:
            state = coherent_state({S0, 0.0, 0.0}, {0.0, 0.0, J0}, S0, J0);
            break;
        case Scenario::MemoryBeamsplitter:
            // (X_L, P_L) = (Sx, Sy)/sqrt(<Sz>)
            state = coherent_state(
                {cfg.light_displacement.x() * sqrt_s0,
                 cfg.light_displacement.y() * sqrt_s0, S0},
                {0.0, 0.0, J0}, S0, J0);
            break;
    }
    const JointGaussianState initial = state;

    TimeSeries ts;
    ts.variance_names = variance_names_for(cfg.scenario);
    ts.rows.push_back({0.0, state.mean,
                       selected_variances(cfg.scenario, state)});

    const double sub_kappa = cfg.kappa / cfg.steps;
    for (int i = 1; i <= cfg.steps; ++i) {
        state = evolve_gaussian(state, cfg.coeffs, sub_kappa, 1);
        ts.rows.push_back({static_cast<double>(i) / cfg.steps, state.mean,
                           selected_variances(cfg.scenario, state)});
    }

    switch (cfg.scenario) {
        case Scenario::AtomNumber: {
            const double sy_out = state.mean(1);
            ts.summary["Sy_out"] = sy_out;
            const double kappa_eff = cfg.kappa * cfg.coeffs.b;
            if (kappa_eff != 0.0)
                ts.summary["inferred_atoms"] =
                    -2.0 * sy_out / (kappa_eff * initial.mean(2));
            break;
        }
        case Scenario::QndSqueeze: {
            ts.summary["var_Jz_projection_noise"] = J0 / 2.0;
            // deterministic homodyne record at the mean outcome
            const JointGaussianState conditioned = condition_on_homodyne(
                state, Observable::Sy, state.mean(1), 0.0);
            ts.summary["var_Jz_conditioned"] =
                conditioned.cov(static_cast<int>(Observable::Jz),
                                static_cast<int>(Observable::Jz));
            break;
        }
        case Scenario::Clone: {
            const double sqrt_j0 = std::sqrt(J0);
            ts.summary["XL_out"] = state.mean(1) / sqrt_s0;
            ts.summary["PL_out"] = state.mean(0) / sqrt_s0;
            ts.summary["XA_out"] = state.mean(3) / sqrt_j0;
            ts.summary["PA_out"] = state.mean(4) / sqrt_j0;
            break;
        }
        case Scenario::MemorySwap: {
            const Eigen::Vector3d s_in = initial.mean.head<3>();
            const Eigen::Vector3d j_out = state.mean.tail<3>();
            ts.summary["swap_error"] = (j_out - s_in).norm() / s_in.norm();
            break;
        }
        case Scenario::MemoryBeamsplitter: {
            const double sqrt_j0 = std::sqrt(J0);
            ts.summary["XL_out"] = state.mean(0) / sqrt_s0;
            ts.summary["PL_out"] = state.mean(1) / sqrt_s0;
            ts.summary["XA_out"] = state.mean(3) / sqrt_j0;
            ts.summary["PA_out"] = state.mean(4) / sqrt_j0;
            break;
        }
    }
    return ts;
}

namespace {
std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}
} // namespace

std::string time_series_to_csv(const TimeSeries& ts) {
    std::string out = "t,Sx,Sy,Sz,Jx,Jy,Jz";
    for (const auto& name : ts.variance_names) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& row : ts.rows) {
        out += fmt(row.t);
        for (int i = 0; i < 6; ++i) {
            out += ',';
            out += fmt(row.mean(i));
        }
        for (double v : row.variances) {
            out += ',';
            out += fmt(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace atomlight
