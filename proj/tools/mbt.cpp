#include "mbt/cli.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <string>

namespace {

// "start:stop:count" -> GridSpec
bool parse_grid(const std::string& text, mbt::cli::GridSpec& grid) {
    int consumed = 0;
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%d%n", &grid.start,
                                &grid.stop, &grid.count, &consumed);
    return got == 3 && consumed == static_cast<int>(text.size()) && grid.count >= 1;
}

void add_common(CLI::App* cmd, mbt::cli::RunConfig& config) {
    cmd->add_option("--lambda", config.lambda, "barrier width (w L)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n-barriers", config.n_barriers, "number of barriers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", config.out_path, "output file (default stdout)");
    cmd->add_option("--tol", config.tol, "quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-barrier tunnelling calculator"};
    app.require_subcommand(1);

    mbt::cli::RunConfig config;
    std::string delta_range_text;
    std::string chi_range_text;
    double delta = 0.0;
    double epsilon = 0.0;
    double tau = 0.0;

    CLI::App* scan = app.add_subcommand(
        "scan", "packet transmission over a separation grid (wave-particle transition)");
    scan->add_option("--epsilon0", config.epsilon0, "packet centre energy E0/V0")
        ->check(CLI::Range(1e-12, 1.0));
    scan->add_option("--packet-width", config.packet_widths,
                     "packet width(s) A = w a (repeatable)");
    scan->add_option("--delta-range", delta_range_text,
                     "separation grid start:stop:count (default 0.5:60:400)");
    scan->add_option("--delta", delta, "single separation instead of a grid");
    add_common(scan, config);

    CLI::App* profile = app.add_subcommand(
        "profile", "transmitted packet density |Psi(chi, tau)|^2 on a chi grid");
    profile->add_option("--epsilon0", config.epsilon0, "packet centre energy E0/V0")
        ->check(CLI::Range(1e-12, 1.0));
    profile->add_option("--packet-width", config.packet_widths, "packet width A = w a");
    profile->add_option("--delta", delta, "barrier separation (default 300)");
    profile->add_option("--tau", tau, "observation time V0 t / hbar (default 684)");
    profile->add_option("--chi-range", chi_range_text,
                        "position grid start:stop:count (default 200:1200:1001)");
    add_common(profile, config);

    CLI::App* paths = app.add_subcommand(
        "paths", "grouped bounce-path series T^t R^r e^{2ik(m lambda + p delta)}");
    paths->add_option("--epsilon", epsilon, "plane-wave energy E/V0")
        ->check(CLI::PositiveNumber);
    paths->add_option("--delta", delta, "barrier separation (default 1)");
    paths->add_option("--max-events", config.max_events,
                      "highest reflection order kept (<= 40)");
    add_common(paths, config);

    CLI::App* resonances = app.add_subcommand(
        "resonances", "transmission extrema in alpha and transparent separations");
    resonances->add_option("--epsilon", epsilon, "plane-wave energy E/V0")
        ->check(CLI::PositiveNumber);
    resonances->add_option("--n-max", config.n_max,
                           "transparent separations per branch");
    add_common(resonances, config);

    CLI::App* amplitudes = app.add_subcommand(
        "amplitudes", "single-barrier and chain amplitudes at one energy");
    amplitudes->add_option("--epsilon", epsilon, "plane-wave energy E/V0")
        ->check(CLI::PositiveNumber);
    amplitudes->add_option("--delta", delta, "barrier separation (default 0)");
    add_common(amplitudes, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mbt::cli::exit_usage;
    }

    CLI::App* active = app.get_subcommands().front();
    config.command = active->get_name();
    const auto given = [&](const char* name) {
        const CLI::Option* opt = active->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--delta")) config.delta = delta;
    if (given("--epsilon")) config.epsilon = epsilon;
    if (given("--tau")) config.tau = tau;
    if (!delta_range_text.empty()) {
        mbt::cli::GridSpec grid;
        if (!parse_grid(delta_range_text, grid)) {
            std::cerr << "bad --delta-range, expected start:stop:count\n";
            return mbt::cli::exit_usage;
        }
        config.delta_range = grid;
    }
    if (!chi_range_text.empty()) {
        mbt::cli::GridSpec grid;
        if (!parse_grid(chi_range_text, grid)) {
            std::cerr << "bad --chi-range, expected start:stop:count\n";
            return mbt::cli::exit_usage;
        }
        config.chi_range = grid;
    }

    return mbt::cli::run_command(config, std::cerr);
}
