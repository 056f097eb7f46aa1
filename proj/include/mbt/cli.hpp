#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace mbt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct RunConfig {
    std::string command;           // scan | profile | paths | resonances | amplitudes
    double epsilon0 = 0.5;         // packet centre energy
    std::optional<double> epsilon; // plane-wave energy (defaults to epsilon0)
    double lambda = 1.0;
    std::optional<double> delta;
    std::optional<GridSpec> delta_range;
    std::vector<double> packet_widths;
    int n_barriers = 2;
    std::optional<double> tau;
    int max_events = 16;
    int n_max = 5;
    std::optional<GridSpec> chi_range;
    std::string format = "csv";    // csv | json
    std::string out_path;          // empty = stdout
    double tol = 1e-8;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json metadata;
};

// Deterministic writers: 17 significant digits, '.' decimal separator,
// RFC-4180 quoting; the CSV carries the metadata as a leading '#' line.
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

// Executes one subcommand; diagnostics go to err.  Returns an exit code.
int run_command(const RunConfig& config, std::ostream& err);

} // namespace mbt::cli
