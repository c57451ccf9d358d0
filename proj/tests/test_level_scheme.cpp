#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomlight/errors.hpp"
#include "atomlight/level_scheme.hpp"

using namespace atomlight;

TEST_CASE("bundled 87Rb data loads and validates") {
    const auto& schemes = bundled_schemes();
    REQUIRE(schemes.size() == 2);

    const auto& d1 = scheme_for_line(schemes, LineId::D1);
    CHECK(d1.J_excited.twice() == 1);
    CHECK(d1.excited_levels.size() == 2); // F' in {1, 2}
    CHECK(d1.offset_mhz(HalfInteger{1}) == 0.0);
    CHECK(d1.gamma_mhz > 0.0);

    const auto& d2 = scheme_for_line(schemes, LineId::D2);
    CHECK(d2.J_excited.twice() == 3);
    CHECK(d2.excited_levels.size() == 4); // F' in {0, 1, 2, 3}
    CHECK(d2.offset_mhz(HalfInteger{0}) == 0.0);

    // F = 1 couples to F' in {0, 1, 2} but never F' = 3
    CHECK(d2.transition_allowed(HalfInteger{0}));
    CHECK(d2.transition_allowed(HalfInteger{2}));
    CHECK_FALSE(d2.transition_allowed(HalfInteger{3}));
}

TEST_CASE("detuning bookkeeping") {
    const auto& d1 = scheme_for_line(bundled_schemes(), LineId::D1);
    const auto& d2 = scheme_for_line(bundled_schemes(), LineId::D2);

    CHECK(detuning_of_transition(d2, 0.0, HalfInteger{0}) == 0.0);
    // probe below a higher-lying level is red-detuned from it
    CHECK(detuning_of_transition(d2, 0.0, HalfInteger{1}) ==
          -d2.offset_mhz(HalfInteger{1}));
    CHECK(detuning_of_transition(d1, 500.0, HalfInteger{2}) ==
          doctest::Approx(500.0 - 814.5));

    CHECK_THROWS_AS(detuning_of_transition(d1, 0.0, HalfInteger{0}),
                    UnknownLevel);
}

TEST_CASE("parser accepts the documented schema") {
    const auto schemes = parse_level_schemes(
        "# comment\n"
        "line D1\n"
        "gamma_mhz 5.0\n"
        "lambda_nm 795.0\n"
        "level F=1 offset_mhz=0.0\n"
        "level F=2 offset_mhz=800.0\n");
    REQUIRE(schemes.size() == 1);
    CHECK(schemes[0].gamma_mhz == 5.0);
    CHECK(schemes[0].offset_mhz(HalfInteger{2}) == 800.0);
}

TEST_CASE("parser is strict") {
    CHECK_THROWS_AS(parse_level_schemes("frequency 5.0\n"), ParseError);
    CHECK_THROWS_AS(parse_level_schemes("line D3\n"), ParseError);
    CHECK_THROWS_AS(parse_level_schemes(""), ParseError);

    // missing F' level fails loudly
    CHECK_THROWS_AS(parse_level_schemes("line D2\n"
                                        "gamma_mhz 6.0\n"
                                        "lambda_nm 780.0\n"
                                        "level F=0 offset_mhz=0\n"
                                        "level F=1 offset_mhz=72\n"
                                        "level F=2 offset_mhz=229\n"),
                    ParseError);
    // no reference level
    CHECK_THROWS_AS(parse_level_schemes("line D1\n"
                                        "gamma_mhz 6.0\n"
                                        "lambda_nm 795.0\n"
                                        "level F=1 offset_mhz=1\n"
                                        "level F=2 offset_mhz=800\n"),
                    ParseError);
    // offsets not increasing
    CHECK_THROWS_AS(parse_level_schemes("line D1\n"
                                        "gamma_mhz 6.0\n"
                                        "lambda_nm 795.0\n"
                                        "level F=1 offset_mhz=0\n"
                                        "level F=2 offset_mhz=-800\n"),
                    ParseError);
    // nonpositive linewidth
    CHECK_THROWS_AS(parse_level_schemes("line D1\n"
                                        "gamma_mhz -6.0\n"
                                        "lambda_nm 795.0\n"
                                        "level F=1 offset_mhz=0\n"
                                        "level F=2 offset_mhz=800\n"),
                    ParseError);
    // trailing garbage on a line
    CHECK_THROWS_AS(parse_level_schemes("line D1 extra\n"), ParseError);
}

TEST_CASE("alpha0 in SI is positive and scales with lambda^3") {
    const auto& d1 = scheme_for_line(bundled_schemes(), LineId::D1);
    auto longer = d1;
    longer.lambda_nm *= 2.0;
    CHECK(alpha0_si(d1) > 0.0);
    CHECK(alpha0_si(longer) == doctest::Approx(8.0 * alpha0_si(d1)));
}
