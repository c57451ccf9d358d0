#include "atomlight/polarizability.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/wigner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace atomlight {

std::string to_string(MagicCondition c) {
    switch (c) {
        case MagicCondition::Rank1EqualsRank2: return "rank1-eq-rank2";
        case MagicCondition::Rank1EqualsMinusRank2: return "rank1-eq-minus-rank2";
        case MagicCondition::Rank1Zero: return "rank1-zero";
        case MagicCondition::Rank2Zero: return "rank2-zero";
    }
    return "?";
}

double line_factor(const LevelScheme& scheme, double delta_ffprime_mhz,
                   HalfInteger F, HalfInteger F_prime) {
    if (!scheme.has_level(F_prime))
        throw UnknownLevel("no excited level F'=" + F_prime.str() + " on " +
                           to_string(scheme.line_id));

    const double gamma = scheme.gamma_mhz;
    const double delta = delta_ffprime_mhz;
    const double dispersive = delta / (gamma * gamma / 4.0 + delta * delta);

    // (-1)^(J+J'+2I): the exponent is integral for alkali D lines.
    const int exp2 = scheme.J_ground.twice() + scheme.J_excited.twice() +
                     2 * scheme.I.twice(); // = 2*(J+J'+2I)
    const double sign = (exp2 / 2) % 2 == 0 ? 1.0 : -1.0;

    const double sixj = wigner6j(scheme.J_excited, F_prime, scheme.I, F,
                                 scheme.J_ground, HalfInteger{1});
    return dispersive * sign * (scheme.J_excited.twice() + 1.0) * sixj * sixj;
}

PolarizabilityComponents irreducible_components(const LevelScheme& scheme,
                                                double delta_ref_mhz) {
    const HalfInteger F = scheme.F_ground;
    const double f = F.value();
    const double sign_2f = F.is_integer() ? 1.0 : -1.0; // (-1)^(2F)

    PolarizabilityComponents out;
    for (const auto& level : scheme.excited_levels) {
        const int dt = level.F_prime.twice() - F.twice();
        if (std::abs(dt) > 2)
            continue; // outside F' = F-1..F+1, Kronecker deltas all vanish
        const double lf =
            line_factor(scheme, delta_ref_mhz - level.offset_mhz, F,
                        level.F_prime);
        double w0, w1, w2;
        if (dt == -2) { // F' = F - 1
            w0 = 2.0 * f - 1.0;
            w1 = -(2.0 * f - 1.0) / f;
            w2 = 1.0 / f;
        } else if (dt == 0) { // F' = F
            w0 = 2.0 * f + 1.0;
            w1 = -(2.0 * f + 1.0) / (f * (f + 1.0));
            w2 = -(2.0 * f + 1.0) / (f * (f + 1.0));
        } else { // F' = F + 1
            w0 = 2.0 * f + 3.0;
            w1 = (2.0 * f + 3.0) / (f + 1.0);
            w2 = 1.0 / (f + 1.0);
        }
        out.alpha0 += sign_2f * w0 * lf;
        out.alpha1 += sign_2f * w1 * lf;
        out.alpha2 += sign_2f * w2 * lf;
    }
    return out;
}

bool near_resonance(const LevelScheme& scheme, double delta_ref_mhz) {
    for (const auto& level : scheme.excited_levels) {
        if (!scheme.transition_allowed(level.F_prime))
            continue;
        if (std::abs(delta_ref_mhz - level.offset_mhz) <
            10.0 * scheme.gamma_mhz)
            return true;
    }
    return false;
}

std::vector<ScanRow> scan(const LevelScheme& scheme, double delta_min_mhz,
                          double delta_max_mhz, double step_mhz) {
    if (!(delta_min_mhz < delta_max_mhz) || !(step_mhz > 0.0))
        throw InvalidRange("scan: need delta_min < delta_max and step > 0");

    std::vector<ScanRow> rows;
    const auto n = static_cast<std::size_t>(
        std::floor((delta_max_mhz - delta_min_mhz) / step_mhz)) + 1;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = delta_min_mhz + static_cast<double>(i) * step_mhz;
        ScanRow row;
        row.delta_ref_mhz = delta;
        row.components = irreducible_components(scheme, delta);
        if (std::abs(row.components.alpha2) >= 1e-15)
            row.ratio_1_over_2 = row.components.alpha1 / row.components.alpha2;
        row.absorption_flag = near_resonance(scheme, delta);
        rows.push_back(row);
    }
    return rows;
}

double condition_residual(const LevelScheme& scheme, MagicCondition condition,
                          double delta_ref_mhz) {
    const auto c = irreducible_components(scheme, delta_ref_mhz);
    switch (condition) {
        case MagicCondition::Rank1EqualsRank2: return c.alpha1 - c.alpha2;
        case MagicCondition::Rank1EqualsMinusRank2: return c.alpha1 + c.alpha2;
        case MagicCondition::Rank1Zero: return c.alpha1;
        case MagicCondition::Rank2Zero: return c.alpha2;
    }
    return 0.0;
}

std::vector<MagicDetuning> find_magic_detunings(const LevelScheme& scheme,
                                                MagicCondition condition,
                                                double search_min_mhz,
                                                double search_max_mhz) {
    if (!(search_min_mhz < search_max_mhz))
        throw InvalidRange("find_magic_detunings: need min < max");

    const double grid = scheme.gamma_mhz / 10.0;
    // well below the 1 kHz requirement so the residual check holds even
    // at the steep near-resonance roots
    constexpr double kTolMhz = 1e-9;

    std::vector<MagicDetuning> roots;
    double x0 = search_min_mhz;
    double f0 = condition_residual(scheme, condition, x0);
    while (x0 < search_max_mhz) {
        const double x1 = std::min(x0 + grid, search_max_mhz);
        const double f1 = condition_residual(scheme, condition, x1);
        if (f0 == 0.0) {
            roots.push_back({x0, condition, near_resonance(scheme, x0)});
        } else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > kTolMhz) {
                const double mid = 0.5 * (lo + hi);
                const double fm = condition_residual(scheme, condition, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double root = 0.5 * (lo + hi);
            roots.push_back({root, condition, near_resonance(scheme, root)});
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

double asymptotic_ratio_slope(const LevelScheme& scheme) {
    constexpr double kMinGhz = 50.0, kMaxGhz = 100.0;
    constexpr int kSamples = 101;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < kSamples; ++i) {
        const double x_ghz =
            kMinGhz + (kMaxGhz - kMinGhz) * i / (kSamples - 1);
        const auto c = irreducible_components(scheme, x_ghz * 1e3);
        const double y = c.alpha1 / c.alpha2;
        sx += x_ghz;
        sy += y;
        sxx += x_ghz * x_ghz;
        sxy += x_ghz * y;
    }
    const double n = kSamples;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {
std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}
} // namespace

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "delta_ref_mhz,alpha0,alpha1,alpha2,ratio,absorption_flag\n";
    for (const auto& r : rows) {
        out += fmt(r.delta_ref_mhz);
        out += ',';
        out += fmt(r.components.alpha0);
        out += ',';
        out += fmt(r.components.alpha1);
        out += ',';
        out += fmt(r.components.alpha2);
        out += ',';
        if (r.ratio_1_over_2)
            out += fmt(*r.ratio_1_over_2);
        out += ',';
        out += r.absorption_flag ? "1" : "0";
        out += '\n';
    }
    return out;
}

} // namespace atomlight
