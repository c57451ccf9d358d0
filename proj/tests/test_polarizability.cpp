#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomlight/errors.hpp"
#include "atomlight/polarizability.hpp"
#include "atomlight/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using namespace atomlight;

namespace {

const LevelScheme& d1() { return scheme_for_line(bundled_schemes(), LineId::D1); }
const LevelScheme& d2() { return scheme_for_line(bundled_schemes(), LineId::D2); }

bool contains_root(const std::vector<MagicDetuning>& roots, double where,
                   double tol, bool flagged) {
    return std::any_of(roots.begin(), roots.end(), [&](const MagicDetuning& r) {
        return std::abs(r.delta_ref_mhz - where) < tol &&
               r.absorption_flag == flagged;
    });
}

} // namespace

TEST_CASE("F=1 weight sum rules are exact") {
    // rank-1: -(2F-1)/F - (2F+1)/(F(F+1)) + (2F+3)/(F+1) at F=1
    CHECK(-1.0 - 3.0 / 2.0 + 5.0 / 2.0 == 0.0);
    // rank-2: 1/F - (2F+1)/(F(F+1)) + 1/(F+1)
    CHECK(1.0 - 3.0 / 2.0 + 1.0 / 2.0 == 0.0);
}

TEST_CASE("line factor is odd in detuning and vanishes on resonance") {
    const HalfInteger F{1};
    CHECK(line_factor(d2(), 0.0, F, HalfInteger{0}) == 0.0);
    CHECK(line_factor(d1(), 0.0, F, HalfInteger{1}) == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> delta(-2000.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double x = delta(rng);
        CHECK(line_factor(d2(), x, F, HalfInteger{1}) ==
              doctest::Approx(-line_factor(d2(), -x, F, HalfInteger{1}))
                  .epsilon(1e-14));
    }

    CHECK_THROWS_AS(line_factor(d1(), 100.0, F, HalfInteger{0}), UnknownLevel);
}

TEST_CASE("line factor asymptotic form at large detuning") {
    const double delta = 1000.0 * d2().gamma_mhz;
    const double sixj = wigner6j(d2().J_excited, HalfInteger{0}, d2().I,
                                 HalfInteger{1}, d2().J_ground, HalfInteger{1});
    // (-1)^(J+J'+2I) = -1 on D2; asymptotically alpha_F^F' -> sign*(2J'+1)*{6j}^2/Delta
    const double expected = (1.0 / delta) * (-1.0) * 4.0 * sixj * sixj;
    const double actual = line_factor(d2(), delta, HalfInteger{1}, HalfInteger{0});
    CHECK(std::abs(actual - expected) < 1e-4 * std::abs(expected));
}

TEST_CASE("asymptotic decay exponents") {
    // The rank-2 component cancels once the hyperfine splitting is
    // unresolved (a J=1/2 ground state carries no alignment), so it
    // decays as Delta^-2. Rank 0 and rank 1 survive at the
    // fine-structure level and decay as Delta^-1; that one-power gap is
    // what makes the rank-1/rank-2 ratio grow linearly with detuning.
    const double big = 1e7, big2 = 2e7; // MHz
    const auto ca = irreducible_components(d2(), big);
    const auto cb = irreducible_components(d2(), big2);
    CHECK(ca.alpha0 / cb.alpha0 == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ca.alpha1 / cb.alpha1 == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ca.alpha2 / cb.alpha2 == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("components are finite everywhere and match the frozen oracle") {
    for (double delta : {0.0, 72.218, 229.165, -1e6, 1e6}) {
        const auto c = irreducible_components(d2(), delta);
        CHECK(std::isfinite(c.alpha0));
        CHECK(std::isfinite(c.alpha1));
        CHECK(std::isfinite(c.alpha2));
    }
    // frozen from an independent evaluation of the same formula
    // (sympy 6-j symbols + direct sum)
    const auto c = irreducible_components(d2(), -500.0);
    CHECK(c.alpha0 == doctest::Approx(0.0032657626134054533).epsilon(1e-12));
    CHECK(c.alpha1 == doctest::Approx(-0.0008233623946882774).epsilon(1e-12));
    CHECK(c.alpha2 == doctest::Approx(5.2785877768620135e-05).epsilon(1e-12));
    const auto c1 = irreducible_components(d1(), 300.0);
    CHECK(c1.alpha0 == doctest::Approx(-0.0010641403856790012).epsilon(1e-12));
    CHECK(c1.alpha1 == doctest::Approx(-0.001087574730703992).epsilon(1e-12));
    CHECK(c1.alpha2 == doctest::Approx(-0.0004397167612865949).epsilon(1e-12));
}

TEST_CASE("rank-2 crosses zero at 501.7 MHz on D2") {
    const double lo = condition_residual(d2(), MagicCondition::Rank2Zero, 501.2);
    const double hi = condition_residual(d2(), MagicCondition::Rank2Zero, 502.2);
    CHECK(lo * hi < 0.0);
}

TEST_CASE("scan basics") {
    CHECK_THROWS_AS(scan(d1(), 0.0, 0.0, 1.0), InvalidRange);
    CHECK_THROWS_AS(scan(d1(), 0.0, 10.0, -1.0), InvalidRange);

    const auto rows = scan(d2(), -100.0, 100.0, 1.0);
    CHECK(rows.size() == 201);
    CHECK(rows.front().delta_ref_mhz == -100.0);
    CHECK(rows.back().delta_ref_mhz == doctest::Approx(100.0));
    for (const auto& r : rows)
        if (std::abs(r.delta_ref_mhz) < 10.0 * d2().gamma_mhz)
            CHECK(r.absorption_flag);
}

TEST_CASE("each allowed transition shows a resonant feature") {
    // D1: F' in {1,2}; D2: F' in {0,1,2} (F'=3 dark from F=1)
    const struct {
        const LevelScheme& s;
        int expected;
    } cases[] = {{d1(), 2}, {d2(), 3}};
    for (const auto& [s, expected] : cases) {
        int allowed = 0;
        double far_scale = std::abs(
            irreducible_components(s, 2000.0).alpha0);
        for (const auto& lvl : s.excited_levels) {
            if (!s.transition_allowed(lvl.F_prime))
                continue;
            ++allowed;
            // peak of |alpha0| near the resonance dwarfs the far wings
            const double near = std::abs(
                irreducible_components(s, lvl.offset_mhz + s.gamma_mhz / 2.0)
                    .alpha0);
            CHECK(near > 10.0 * far_scale);
        }
        CHECK(allowed == expected);
    }
}

TEST_CASE("ratio has narrow dispersive features at the transition detunings") {
    for (const auto& lvl : d2().excited_levels) {
        if (!d2().transition_allowed(lvl.F_prime))
            continue;
        const double g = d2().gamma_mhz;
        double lo = 1e300, hi = -1e300;
        for (double x = lvl.offset_mhz - g; x <= lvl.offset_mhz + g; x += g / 10) {
            const auto c = irreducible_components(d2(), x);
            const double ratio = c.alpha1 / c.alpha2;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK(hi - lo > 1.0); // swings hard across the resonance
    }
}

TEST_CASE("ratio column undefined where alpha2 underflows") {
    // refine the rank-2 zero to machine precision, then scan exactly there
    double lo = 501.2, hi = 502.2;
    double flo = condition_residual(d2(), MagicCondition::Rank2Zero, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::abs(lo); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = condition_residual(d2(), MagicCondition::Rank2Zero, mid);
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    const auto rows = scan(d2(), lo, lo + 2.0, 1.0);
    CHECK_FALSE(rows[0].ratio_1_over_2.has_value());
    CHECK(rows[1].ratio_1_over_2.has_value());

    const std::string csv = scan_to_csv(rows);
    std::istringstream lines(csv);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "delta_ref_mhz,alpha0,alpha1,alpha2,ratio,absorption_flag");
    // ratio printed as an empty field
    CHECK(first.find(",,") != std::string::npos);
}

TEST_CASE("magic detunings at the documented operating points") {
    CHECK_THROWS_AS(
        find_magic_detunings(d2(), MagicCondition::Rank1Zero, 5.0, 5.0),
        InvalidRange);

    const auto a = find_magic_detunings(d2(), MagicCondition::Rank1EqualsRank2,
                                        100.0, 1400.0);
    CHECK(contains_root(a, 458.27, 2.0, false));

    const auto b1 = find_magic_detunings(d1(), MagicCondition::Rank1Zero,
                                         -1000.0, 1000.0);
    CHECK(contains_root(b1, -203.58, 2.0, false));

    const auto b2 = find_magic_detunings(d2(), MagicCondition::Rank1Zero, 0.0,
                                         1400.0);
    CHECK(contains_root(b2, 461.66, 2.0, false));
    CHECK(contains_root(b2, 35.87, 2.0, true)); // near resonance: flagged, kept

    const auto c = find_magic_detunings(d2(), MagicCondition::Rank2Zero, 100.0,
                                        1400.0);
    CHECK(contains_root(c, 501.72, 2.0, false));
}

TEST_CASE("rank1-eq-rank2 holds on every resonance, flagged") {
    const auto roots = find_magic_detunings(
        d2(), MagicCondition::Rank1EqualsRank2, 200.0, 260.0);
    REQUIRE_FALSE(roots.empty());
    CHECK(contains_root(roots, 229.165, 1.0, true));
}

TEST_CASE("root residuals are small after refinement") {
    for (auto condition :
         {MagicCondition::Rank1EqualsRank2, MagicCondition::Rank1EqualsMinusRank2,
          MagicCondition::Rank1Zero, MagicCondition::Rank2Zero}) {
        const auto roots =
            find_magic_detunings(d2(), condition, -1000.0, 1400.0);
        for (const auto& r : roots) {
            const auto c = irreducible_components(d2(), r.delta_ref_mhz);
            const double residual =
                std::abs(condition_residual(d2(), condition, r.delta_ref_mhz));
            const double scale = std::max(
                {std::abs(c.alpha1), std::abs(c.alpha2), 1e-30});
            CHECK(residual < 1e-6 * scale);
        }
    }
}

TEST_CASE("scaling invariance of roots and ratios") {
    auto scaled = d2();
    const double factor = 10.0;
    scaled.gamma_mhz *= factor;
    for (auto& lvl : scaled.excited_levels)
        lvl.offset_mhz *= factor;
    scaled.validate();

    const auto base =
        find_magic_detunings(d2(), MagicCondition::Rank1Zero, 300.0, 600.0);
    const auto big = find_magic_detunings(scaled, MagicCondition::Rank1Zero,
                                          300.0 * factor, 600.0 * factor);
    REQUIRE(base.size() == big.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(big[i].delta_ref_mhz ==
              doctest::Approx(base[i].delta_ref_mhz * factor).epsilon(1e-9));

    for (double delta : {-300.0, 150.0, 700.0}) {
        const auto c0 = irreducible_components(d2(), delta);
        const auto c1 = irreducible_components(scaled, delta * factor);
        CHECK(c1.alpha1 / c1.alpha2 ==
              doctest::Approx(c0.alpha1 / c0.alpha2).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic ratio slopes") {
    CHECK(asymptotic_ratio_slope(d1()) == doctest::Approx(4.911).epsilon(0.01));
    CHECK(asymptotic_ratio_slope(d2()) == doctest::Approx(30.32).epsilon(0.01));

    // linearity: an independent fit over [100, 200] GHz agrees to < 2%
    const auto slope_far = [&](const LevelScheme& s) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = 101;
        for (int i = 0; i < n; ++i) {
            const double x = 100.0 + 100.0 * i / (n - 1); // GHz
            const auto c = irreducible_components(s, x * 1e3);
            const double y = c.alpha1 / c.alpha2;
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    CHECK(slope_far(d1()) ==
          doctest::Approx(asymptotic_ratio_slope(d1())).epsilon(0.02));
    CHECK(slope_far(d2()) ==
          doctest::Approx(asymptotic_ratio_slope(d2())).epsilon(0.02));
}

#ifdef ATOMLIGHT_GOLDEN_SCAN
TEST_CASE("golden-file regression on the D2 scan") {
    std::ifstream f(ATOMLIGHT_GOLDEN_SCAN);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    const auto rows = scan(d2(), -1000.0, 1500.0, 25.0);
    CHECK(scan_to_csv(rows) == buf.str());
}
#endif
