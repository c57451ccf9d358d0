#include "atomlight/level_scheme.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/wigner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace atomlight {

std::string to_string(LineId id) { return id == LineId::D1 ? "D1" : "D2"; }

bool LevelScheme::has_level(HalfInteger F_prime) const {
    return std::any_of(excited_levels.begin(), excited_levels.end(),
                       [&](const ExcitedLevel& l) { return l.F_prime == F_prime; });
}

double LevelScheme::offset_mhz(HalfInteger F_prime) const {
    for (const auto& l : excited_levels)
        if (l.F_prime == F_prime)
            return l.offset_mhz;
    throw UnknownLevel("no excited level F'=" + F_prime.str() + " on " +
                       to_string(line_id));
}

bool LevelScheme::transition_allowed(HalfInteger F_prime) const {
    if (F_ground.twice() == 0 && F_prime.twice() == 0)
        return false;
    return triangle_ok(F_ground, F_prime, HalfInteger{1});
}

void LevelScheme::validate() const {
    if (gamma_mhz <= 0.0)
        throw ParseError(to_string(line_id) + ": gamma_mhz must be positive");
    if (lambda_nm <= 0.0)
        throw ParseError(to_string(line_id) + ": lambda_nm must be positive");

    // the excited manifold must hold exactly |J'-I| .. J'+I
    const int lo = std::abs(J_excited.twice() - I.twice());
    const int hi = J_excited.twice() + I.twice();
    std::vector<int> expected;
    for (int t = lo; t <= hi; t += 2)
        expected.push_back(t);
    std::vector<int> present;
    for (const auto& l : excited_levels)
        present.push_back(l.F_prime.twice());
    if (present != expected)
        throw ParseError(to_string(line_id) +
                         ": excited levels must be exactly |J'-I|..J'+I, ascending");

    int zero_offsets = 0;
    for (std::size_t i = 0; i < excited_levels.size(); ++i) {
        if (excited_levels[i].offset_mhz == 0.0)
            ++zero_offsets;
        if (i > 0 &&
            excited_levels[i].offset_mhz <= excited_levels[i - 1].offset_mhz)
            throw ParseError(to_string(line_id) +
                             ": offsets must increase strictly with F'");
    }
    if (zero_offsets != 1)
        throw ParseError(to_string(line_id) +
                         ": exactly one level must carry offset_mhz=0");
}

double alpha0_si(const LevelScheme& scheme, const PhysicalConstants& c) {
    const double gamma = 2.0 * std::numbers::pi * scheme.gamma_mhz * 1e6; // rad/s
    const double lambda = scheme.lambda_nm * 1e-9;
    return 3.0 * c.epsilon0 * c.hbar * gamma * lambda * lambda * lambda /
           (8.0 * std::numbers::pi * std::numbers::pi);
}

double detuning_of_transition(const LevelScheme& scheme, double delta_ref_mhz,
                              HalfInteger F_prime) {
    return delta_ref_mhz - scheme.offset_mhz(F_prime);
}

namespace {

double parse_number(std::string_view token, int line_no) {
    double value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad number '" + std::string(token) + "'");
    return value;
}

HalfInteger parse_half_integer(std::string_view token, int line_no) {
    const double v = parse_number(token, line_no);
    const double tv = 2.0 * v;
    if (tv < 0.0 || std::round(tv) != tv)
        throw ParseError("line " + std::to_string(line_no) +
                         ": '" + std::string(token) +
                         "' is not a non-negative half-integer");
    return HalfInteger::from_twice(static_cast<int>(std::round(tv)));
}

} // namespace

std::vector<LevelScheme> parse_level_schemes(std::string_view text) {
    std::vector<LevelScheme> schemes;
    LevelScheme* current = nullptr;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::istringstream fields(raw);
        std::string key;
        if (!(fields >> key))
            continue;

        if (key == "line") {
            std::string name;
            if (!(fields >> name))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": 'line' needs a value");
            LevelScheme s{};
            if (name == "D1") {
                s.line_id = LineId::D1;
                s.J_excited = HalfInteger::from_twice(1);
            } else if (name == "D2") {
                s.line_id = LineId::D2;
                s.J_excited = HalfInteger::from_twice(3);
            } else {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unknown line id '" + name + "'");
            }
            s.J_ground = HalfInteger::from_twice(1);
            s.I = HalfInteger::from_twice(3);
            s.F_ground = HalfInteger{1};
            schemes.push_back(s);
            current = &schemes.back();
        } else if (key == "gamma_mhz" || key == "lambda_nm") {
            if (!current)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": '" + key + "' before any 'line'");
            std::string value;
            if (!(fields >> value))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": '" + key + "' needs a value");
            (key == "gamma_mhz" ? current->gamma_mhz : current->lambda_nm) =
                parse_number(value, line_no);
        } else if (key == "level") {
            if (!current)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": 'level' before any 'line'");
            std::string f_field, off_field;
            if (!(fields >> f_field >> off_field) ||
                !f_field.starts_with("F=") ||
                !off_field.starts_with("offset_mhz="))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'level F=<f> offset_mhz=<x>'");
            ExcitedLevel lvl;
            lvl.F_prime = parse_half_integer(f_field.substr(2), line_no);
            lvl.offset_mhz =
                parse_number(off_field.substr(11), line_no);
            current->excited_levels.push_back(lvl);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
        }
        std::string extra;
        if (fields >> extra)
            throw ParseError("line " + std::to_string(line_no) +
                             ": trailing token '" + extra + "'");
    }

    if (schemes.empty())
        throw ParseError("no 'line' blocks found");
    for (const auto& s : schemes)
        s.validate();
    return schemes;
}

std::vector<LevelScheme> load_level_schemes(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open level-scheme file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_level_schemes(buf.str());
}

const std::vector<LevelScheme>& bundled_schemes() {
    static const std::vector<LevelScheme> schemes =
        parse_level_schemes(bundled_scheme_text());
    return schemes;
}

const LevelScheme& scheme_for_line(const std::vector<LevelScheme>& schemes,
                                   LineId id) {
    for (const auto& s : schemes)
        if (s.line_id == id)
            return s;
    throw UnknownLevel("no scheme for line " + to_string(id));
}

} // namespace atomlight
