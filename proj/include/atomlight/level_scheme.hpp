#ifndef ATOMLIGHT_LEVEL_SCHEME_HPP
#define ATOMLIGHT_LEVEL_SCHEME_HPP

#include "atomlight/half_integer.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace atomlight {

enum class LineId { D1, D2 };

std::string to_string(LineId id);

struct ExcitedLevel {
    HalfInteger F_prime;
    double offset_mhz; // position relative to the reference transition
};

/// One D line of an alkali species: electronic momenta, linewidth,
/// wavelength, and the excited hyperfine levels with their offsets
/// from the line's reference transition.
struct LevelScheme {
    LineId line_id;
    HalfInteger J_ground;  // 1/2
    HalfInteger J_excited; // 1/2 (D1) or 3/2 (D2)
    HalfInteger I;         // 3/2 for 87Rb
    HalfInteger F_ground;  // probed ground manifold, F = 1
    double gamma_mhz;
    double lambda_nm;
    std::vector<ExcitedLevel> excited_levels; // sorted by F'

    bool has_level(HalfInteger F_prime) const;
    double offset_mhz(HalfInteger F_prime) const; // throws UnknownLevel

    /// True iff F_ground -> F' is dipole-allowed (triangle with the
    /// photon's unit angular momentum, excluding F = F' = 0).
    bool transition_allowed(HalfInteger F_prime) const;

    /// Throws ParseError if any structural invariant fails.
    void validate() const;
};

/// SI constants, used only for the optional report of alpha0 in SI.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;    // J s
    double epsilon0 = 8.8541878128e-12; // F/m
};

/// alpha0 = 3 eps0 hbar Gamma lambda^3 / (8 pi^2), in SI (C m^2 / V).
double alpha0_si(const LevelScheme& scheme,
                 const PhysicalConstants& constants = {});

/// Probe detuning from the F -> F' transition, given its detuning from
/// the scheme's reference transition. Throws UnknownLevel.
double detuning_of_transition(const LevelScheme& scheme, double delta_ref_mhz,
                              HalfInteger F_prime);

/// Parses the line-oriented key-value level-scheme format. Blank lines
/// and '#' comments are skipped; any unknown key is an error. Returns
/// every `line` block in the text, each validated.
std::vector<LevelScheme> parse_level_schemes(std::string_view text);

std::vector<LevelScheme> load_level_schemes(const std::string& path);

/// The compiled-in 87Rb D1/D2 reference data.
const std::vector<LevelScheme>& bundled_schemes();
std::string_view bundled_scheme_text();

const LevelScheme& scheme_for_line(const std::vector<LevelScheme>& schemes,
                                   LineId id); // throws UnknownLevel

} // namespace atomlight

#endif
