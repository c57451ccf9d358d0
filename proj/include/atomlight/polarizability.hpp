#ifndef ATOMLIGHT_POLARIZABILITY_HPP
#define ATOMLIGHT_POLARIZABILITY_HPP

#include "atomlight/level_scheme.hpp"

#include <optional>
#include <vector>

namespace atomlight {

/// Irreducible polarizability components at one detuning, in units of
/// alpha0 * MHz^-1. Finite for any finite detuning and -> 0 as
/// |Delta| -> infinity.
struct PolarizabilityComponents {
    double alpha0 = 0.0; // rank 0 (scalar)
    double alpha1 = 0.0; // rank 1 (vector)
    double alpha2 = 0.0; // rank 2 (tensor)
};

struct ScanRow {
    double delta_ref_mhz;
    PolarizabilityComponents components;
    std::optional<double> ratio_1_over_2; // empty where |alpha2| < 1e-15
    bool absorption_flag;
};

enum class MagicCondition {
    Rank1EqualsRank2,
    Rank1EqualsMinusRank2,
    Rank1Zero,
    Rank2Zero,
};

std::string to_string(MagicCondition c);

struct MagicDetuning {
    double delta_ref_mhz;
    MagicCondition condition;
    bool absorption_flag;
};

/// Per-transition line factor alpha_F^F' / alpha0:
///   [Delta / (Gamma^2/4 + Delta^2)] * (-1)^(J+J'+2I) * (2J'+1) * {6j}^2
/// with Delta the detuning from the F -> F' transition, both in MHz.
/// Throws UnknownLevel if F' is not in the scheme.
double line_factor(const LevelScheme& scheme, double delta_ffprime_mhz,
                   HalfInteger F, HalfInteger F_prime);

/// Rank-0/1/2 components for the scheme's ground manifold, summing the
/// line factors over F' = F-1, F, F+1 with the rank-dependent weights
/// and the (-1)^(2F) sign. Levels absent from the scheme contribute
/// nothing (the F'=0 term does not exist on D1).
PolarizabilityComponents irreducible_components(const LevelScheme& scheme,
                                                double delta_ref_mhz);

/// True iff the probe is within 10*Gamma of any allowed transition.
bool near_resonance(const LevelScheme& scheme, double delta_ref_mhz);

/// Uniform detuning scan; throws InvalidRange unless
/// delta_min < delta_max and step > 0.
std::vector<ScanRow> scan(const LevelScheme& scheme, double delta_min_mhz,
                          double delta_max_mhz, double step_mhz);

/// Locates every root of the condition residual in [search_min, search_max]
/// by bracketing sign changes on a grid of step <= Gamma/10 and bisecting
/// each bracket to 1 kHz. Roots within 10*Gamma of a resonance are
/// flagged, not suppressed. Throws InvalidRange.
std::vector<MagicDetuning> find_magic_detunings(const LevelScheme& scheme,
                                                MagicCondition condition,
                                                double search_min_mhz,
                                                double search_max_mhz);

double condition_residual(const LevelScheme& scheme, MagicCondition condition,
                          double delta_ref_mhz);

/// Least-squares slope of alpha1/alpha2 against detuning over the
/// asymptotic window [+50, +100] GHz, in GHz^-1.
double asymptotic_ratio_slope(const LevelScheme& scheme);

/// Writes the scan as CSV with header
/// `delta_ref_mhz,alpha0,alpha1,alpha2,ratio,absorption_flag`; floats in
/// round-trip precision, ratio empty where undefined.
std::string scan_to_csv(const std::vector<ScanRow>& rows);

} // namespace atomlight

#endif
