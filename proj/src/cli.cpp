#include "atomlight/cli.hpp"
#include "atomlight/dynamics.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/hamiltonian.hpp"
#include "atomlight/level_scheme.hpp"
#include "atomlight/polarizability.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace atomlight {

namespace {

std::vector<LevelScheme> resolve_schemes(const std::string& data_flag) {
    if (!data_flag.empty())
        return load_level_schemes(data_flag);
    if (const char* env = std::getenv("ATOMLIGHT_LEVEL_DATA"); env && *env)
        return load_level_schemes(env);
    return bundled_schemes();
}

LineId parse_line_id(const std::string& s) {
    if (s == "d1" || s == "D1")
        return LineId::D1;
    if (s == "d2" || s == "D2")
        return LineId::D2;
    throw CLI::ValidationError("--line", "expected d1 or d2");
}

void write_output(std::ostream& out, const std::string& text,
                  const std::string& out_path) {
    out << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f)
            throw ParseError("cannot open output file: " + out_path);
        f << text;
    }
}

const std::map<std::string, MagicCondition> kConditionNames = {
    {"rank1-eq-rank2", MagicCondition::Rank1EqualsRank2},
    {"rank1-eq-minus-rank2", MagicCondition::Rank1EqualsMinusRank2},
    {"rank1-zero", MagicCondition::Rank1Zero},
    {"rank2-zero", MagicCondition::Rank2Zero},
};

const std::map<std::string, Scenario> kScenarioNames = {
    {"atom-number", Scenario::AtomNumber},
    {"qnd", Scenario::QndSqueeze},
    {"clone", Scenario::Clone},
    {"memory-swap", Scenario::MemorySwap},
    {"memory-bs", Scenario::MemoryBeamsplitter},
};

// idealized coefficient pair used when neither a detuning nor an
// explicit (a, b) is requested
HamiltonianCoefficients default_coeffs(Scenario sc) {
    switch (sc) {
        case Scenario::QndSqueeze: return {1.0, 0.0};
        case Scenario::MemorySwap: return {1.0, 1.0};
        case Scenario::AtomNumber:
        case Scenario::Clone:
        case Scenario::MemoryBeamsplitter: return {0.0, 1.0};
    }
    return {};
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"tensor polarizability and atom-light protocol toolbox "
                 "for the 87Rb D lines"};
    app.require_subcommand(1);
    std::string data_file;
    app.add_option("--data", data_file,
                   "level-scheme data file (overrides the bundled 87Rb data "
                   "and the ATOMLIGHT_LEVEL_DATA environment variable)");

    std::string line = "d2", out_path;
    double min_mhz = 0, max_mhz = 0, step_mhz = 1.0, detuning = 0;
    std::string condition = "rank1-eq-rank2";

    auto* scan_cmd = app.add_subcommand(
        "scan", "tabulate polarizability components over a detuning range "
                "(CSV; detunings relative to the line's reference transition)");
    scan_cmd->add_option("--line", line, "d1 or d2")->required();
    scan_cmd->add_option("--min", min_mhz, "start detuning, MHz")->required();
    scan_cmd->add_option("--max", max_mhz, "end detuning, MHz")->required();
    scan_cmd->add_option("--step", step_mhz, "grid step, MHz");
    scan_cmd->add_option("--out", out_path, "also write the CSV here");

    auto* find_cmd = app.add_subcommand(
        "find", "locate detunings where a polarizability condition holds");
    find_cmd->add_option("--line", line, "d1 or d2")->required();
    find_cmd
        ->add_option("--condition", condition,
                     "rank1-eq-rank2 | rank1-eq-minus-rank2 | rank1-zero | "
                     "rank2-zero")
        ->required()
        ->check(CLI::IsMember([] {
            std::vector<std::string> names;
            for (const auto& [k, v] : kConditionNames)
                names.push_back(k);
            return names;
        }()));
    find_cmd->add_option("--min", min_mhz, "search window start, MHz")
        ->required();
    find_cmd->add_option("--max", max_mhz, "search window end, MHz")
        ->required();

    auto* slope_cmd = app.add_subcommand(
        "slope", "asymptotic growth rate of alpha1/alpha2 with detuning");
    slope_cmd->add_option("--line", line, "d1 or d2")->required();

    auto* sym_cmd = app.add_subcommand(
        "check-symmetry",
        "rotation-symmetry residuals of the coupling at a detuning");
    sym_cmd->add_option("--line", line, "d1 or d2")->required();
    sym_cmd->add_option("--detuning", detuning,
                        "probe detuning from the reference transition, MHz")
        ->required();

    std::string scenario_name;
    double kappa = 1e-3, n_atoms = 1e6, n_photons = 1e8;
    double coeff_a = 0, coeff_b = 0, disp_x = 0, disp_p = 0;
    int steps = 1000;
    bool have_detuning = false;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "run one atom-light protocol at the level of means and "
                    "Gaussian fluctuations (CSV time series)");
    sim_cmd
        ->add_option("--scenario", scenario_name,
                     "atom-number | qnd | clone | memory-swap | memory-bs")
        ->required()
        ->check(CLI::IsMember([] {
            std::vector<std::string> names;
            for (const auto& [k, v] : kScenarioNames)
                names.push_back(k);
            return names;
        }()));
    sim_cmd->add_option("--kappa", kappa, "dimensionless integrated coupling");
    sim_cmd->add_option("--atoms", n_atoms, "atom number");
    sim_cmd->add_option("--photons", n_photons, "photon number");
    sim_cmd->add_option("--steps", steps, "RK4 steps");
    sim_cmd->add_option("--out", out_path, "also write the CSV here");
    auto* sim_line = sim_cmd->add_option("--line", line,
                                         "derive (a, b) from this line");
    auto* sim_det =
        sim_cmd->add_option("--detuning", detuning, "at this detuning, MHz")
            ->needs(sim_line);
    sim_line->needs(sim_det);
    auto* opt_a = sim_cmd->add_option("--a", coeff_a, "explicit SzJz coupling")
                      ->excludes(sim_line);
    sim_cmd->add_option("--b", coeff_b, "explicit SxJx+SyJy coupling")
        ->needs(opt_a)
        ->excludes(sim_line);
    sim_cmd->add_option("--displace-x", disp_x,
                        "input light displacement on X_L (clone/memory)");
    sim_cmd->add_option("--displace-p", disp_p,
                        "input light displacement on P_L (clone/memory)");
    sim_det->needs(sim_line);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const auto schemes = resolve_schemes(data_file);

        if (*scan_cmd) {
            const auto& scheme = scheme_for_line(schemes, parse_line_id(line));
            const auto rows = scan(scheme, min_mhz, max_mhz, step_mhz);
            write_output(out, scan_to_csv(rows), out_path);
        } else if (*find_cmd) {
            const auto& scheme = scheme_for_line(schemes, parse_line_id(line));
            const auto roots = find_magic_detunings(
                scheme, kConditionNames.at(condition), min_mhz, max_mhz);
            std::ostringstream table;
            table << "condition             delta_ref_mhz  absorption_flag\n";
            table << std::fixed << std::setprecision(3);
            for (const auto& r : roots)
                table << std::left << std::setw(22) << to_string(r.condition)
                      << std::right << std::setw(13) << r.delta_ref_mhz
                      << std::setw(17) << (r.absorption_flag ? "true" : "false")
                      << '\n';
            if (roots.empty())
                table << "(no roots in window)\n";
            out << table.str();
        } else if (*slope_cmd) {
            const auto& scheme = scheme_for_line(schemes, parse_line_id(line));
            std::ostringstream msg;
            msg << "asymptotic alpha1/alpha2 slope on " << line << ": "
                << std::setprecision(6) << asymptotic_ratio_slope(scheme)
                << " GHz^-1\n";
            out << msg.str();
        } else if (*sym_cmd) {
            const auto& scheme = scheme_for_line(schemes, parse_line_id(line));
            const auto c = coefficients_at(scheme, detuning);
            constexpr int kTrials = 1000;
            std::ostringstream table;
            table << "line " << line << "  detuning_mhz "
                  << std::setprecision(6) << detuning << "  a " << c.a
                  << "  b " << c.b << "\n";
            table << std::scientific << std::setprecision(3);
            table << "axis  max_energy_residual\n";
            const Eigen::Vector3d axes[3] = {
                {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
            const char* names[3] = {"x", "y", "z"};
            for (int i = 0; i < 3; ++i)
                table << names[i] << "     "
                      << check_rotation_symmetry(c, axes[i], kTrials) << '\n';
            table << "barred-variable dot-product residual (a = -b form): "
                  << barred_identity_residual(c, kTrials) << '\n';
            out << table.str();
        } else if (*sim_cmd) {
            ScenarioConfig cfg;
            cfg.scenario = kScenarioNames.at(scenario_name);
            if (*sim_line) {
                const auto& scheme =
                    scheme_for_line(schemes, parse_line_id(line));
                cfg.coeffs = coefficients_at(scheme, detuning);
            } else if (*opt_a) {
                cfg.coeffs = HamiltonianCoefficients{coeff_a, coeff_b};
            } else {
                cfg.coeffs = default_coeffs(cfg.scenario);
            }
            cfg.kappa = kappa;
            cfg.n_atoms = n_atoms;
            cfg.n_photons = n_photons;
            cfg.steps = steps;
            cfg.light_displacement = {disp_x, disp_p};
            const TimeSeries ts = run_scenario(cfg);
            write_output(out, time_series_to_csv(ts), out_path);
            std::ostringstream summary;
            summary << std::setprecision(17);
            for (const auto& [key, value] : ts.summary)
                summary << "# " << key << " = " << value << '\n';
            err << summary.str();
        }
    } catch (const InvalidRange& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace atomlight
