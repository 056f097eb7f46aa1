#include "mbt/cli.hpp"

#include "mbt/amplitudes.hpp"
#include "mbt/multibarrier.hpp"
#include "mbt/paths.hpp"
#include "mbt/quadrature.hpp"
#include "mbt/resonance.hpp"
#include "mbt/wavepacket.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

namespace mbt::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<double> grid_points(const GridSpec& grid) {
    if (grid.count < 1) throw std::domain_error("grid count must be >= 1");
    if (grid.count == 1) return {grid.start};
    std::vector<double> out;
    out.reserve(grid.count);
    const double step = (grid.stop - grid.start) / (grid.count - 1);
    for (int i = 0; i < grid.count; ++i) out.push_back(grid.start + i * step);
    return out;
}

nlohmann::json grid_json(const GridSpec& grid) {
    return {{"start", grid.start}, {"stop", grid.stop}, {"count", grid.count}};
}

nlohmann::json base_metadata(const RunConfig& config) {
    nlohmann::json m;
    m["tool"] = "mbt";
    m["command"] = config.command;
    m["lambda"] = config.lambda;
    m["n_barriers"] = config.n_barriers;
    m["tol"] = config.tol;
    return m;
}

Table run_scan(const RunConfig& config) {
    const std::vector<double> widths =
        config.packet_widths.empty() ? std::vector<double>{30.0} : config.packet_widths;
    std::vector<double> deltas;
    GridSpec range{0.5, 60.0, 400};
    if (config.delta_range) range = *config.delta_range;
    if (config.delta && !config.delta_range)
        range = {*config.delta, *config.delta, 1};
    deltas = grid_points(range);

    QuadratureOptions opts;
    opts.abs_tol = config.tol;

    Table table;
    table.columns = {"delta", "A", "probability"};
    for (const ScanRow& row : transition_scan(config.epsilon0, config.lambda,
                                              config.n_barriers, widths, deltas, opts))
        table.rows.push_back({row.delta, row.packet_width, row.probability});

    table.metadata = base_metadata(config);
    table.metadata["epsilon0"] = config.epsilon0;
    table.metadata["packet_widths"] = widths;
    table.metadata["delta_range"] = grid_json(range);
    if (config.epsilon0 < 1.0 && config.n_barriers >= 2 && config.n_barriers <= 4) {
        // Where the wave limit predicts unit resonances; scan maxima drift
        // toward these as A grows.
        table.metadata["resonance_distances"] = resonance_distances(
            config.n_barriers, config.epsilon0, config.lambda, config.n_max);
    }
    return table;
}

Table run_profile(const RunConfig& config, std::ostream& err) {
    PacketSpec packet;
    packet.epsilon0 = config.epsilon0;
    packet.width = config.packet_widths.empty() ? 60.0 : config.packet_widths.front();

    ScatterParams params;
    params.epsilon = config.epsilon0;
    params.lambda = config.lambda;
    params.delta = config.delta.value_or(300.0);
    params.n_barriers = config.n_barriers;

    const double tau = config.tau.value_or(684.0);
    const GridSpec chi = config.chi_range.value_or(GridSpec{200.0, 1200.0, 1001});
    const std::vector<double> chi_grid = grid_points(chi);

    QuadratureOptions opts;
    opts.abs_tol = config.tol;
    const std::vector<double> density = transmitted_profile(packet, params, chi_grid, tau, opts);

    Table table;
    table.columns = {"chi", "density"};
    // An off-target grid yields an empty table rather than rows of noise;
    // |psi| is only resolved to the quadrature tolerance, so any density
    // below tol^2 is indistinguishable from zero.  The metadata still says
    // where to look.
    double peak = 0.0;
    for (double d : density) peak = std::max(peak, d);
    if (peak < opts.abs_tol * opts.abs_tol) {
        err << "warning: chi grid misses the transmitted packets"
            << " (peak density " << peak << "); writing an empty table\n";
    } else {
        for (std::size_t i = 0; i < chi_grid.size(); ++i)
            table.rows.push_back({chi_grid[i], density[i]});
    }

    const SpmPrediction spm = spm_predictions(packet, params, tau);
    table.metadata = base_metadata(config);
    table.metadata["epsilon0"] = config.epsilon0;
    table.metadata["packet_width"] = packet.width;
    table.metadata["delta"] = params.delta;
    table.metadata["tau"] = tau;
    table.metadata["chi_range"] = grid_json(chi);
    table.metadata["stationary_phase"] = {
        {"x1", spm.x1},
        {"x2", spm.x2},
        {"v_g", spm.v_g},
        {"tunnelling_delay", spm.tunnelling_delay},
        {"resonance_exit_time", spm.resonance_exit_time}};
    return table;
}

Table run_paths(const RunConfig& config) {
    ScatterParams params;
    params.epsilon = config.epsilon.value_or(config.epsilon0);
    params.lambda = config.lambda;
    params.delta = config.delta.value_or(1.0);
    params.n_barriers = config.n_barriers;

    const BarrierAmplitudes amps = single_barrier(params.epsilon, params.lambda);
    const ChainAmplitudes chain = n_barrier_amplitudes(amps, params);

    Table table;
    table.columns = {"exit",   "r",      "t",          "p",
                     "m",      "count",  "amp_re",     "amp_im",
                     "partial_re", "partial_im", "residual"};
    // Terms arrive sorted by (exit, r, t); each side carries its own running
    // coherent sum, and residual measures the gap to the matrix answer.
    cplx running[2]{};
    const cplx reference[2] = {chain.Ts, chain.Rs};
    for (const GroupedTerm& g : grouped_series(params, amps, config.max_events)) {
        const int side = g.exit_side == ExitSide::Transmitted ? 0 : 1;
        running[side] += g.amplitude;
        table.rows.push_back(
            {std::string(side == 0 ? "transmitted" : "reflected"),
             static_cast<long long>(g.monomial.r), static_cast<long long>(g.monomial.t),
             static_cast<long long>(g.monomial.p), static_cast<long long>(g.monomial.m),
             g.coefficient, g.amplitude.real(), g.amplitude.imag(),
             running[side].real(), running[side].imag(),
             std::abs(running[side] - reference[side])});
    }

    table.metadata = base_metadata(config);
    table.metadata["epsilon"] = params.epsilon;
    table.metadata["delta"] = params.delta;
    table.metadata["max_events"] = config.max_events;
    table.metadata["transmitted_partial_sum"] = {running[0].real(), running[0].imag()};
    table.metadata["reflected_partial_sum"] = {running[1].real(), running[1].imag()};
    table.metadata["matrix_transmission"] = {chain.Ts.real(), chain.Ts.imag()};
    table.metadata["matrix_reflection"] = {chain.Rs.real(), chain.Rs.imag()};
    return table;
}

Table run_resonances(const RunConfig& config) {
    const double epsilon = config.epsilon.value_or(config.epsilon0);
    const BarrierAmplitudes amps = single_barrier(epsilon, config.lambda);

    Table table;
    table.columns = {"source", "alpha", "cos_alpha", "value", "kind", "tag"};
    const auto emit = [&](const char* source, const std::vector<Extremum>& list) {
        for (const Extremum& e : list)
            table.rows.push_back(
                {std::string(source), e.alpha, e.cos_alpha, e.value,
                 std::string(e.kind == ExtremumKind::Maximum ? "max" : "min"), e.tag});
    };
    emit("closed", extrema_closed_form(config.n_barriers, amps));
    emit("scan", extrema_numeric_scan(config.n_barriers, amps));

    table.metadata = base_metadata(config);
    table.metadata["epsilon"] = epsilon;
    table.metadata["n_max"] = config.n_max;
    if (epsilon < 1.0) {
        table.metadata["resonance_distances"] =
            resonance_distances(config.n_barriers, epsilon, config.lambda, config.n_max);
    }
    return table;
}

Table run_amplitudes(const RunConfig& config) {
    ScatterParams params;
    params.epsilon = config.epsilon.value_or(config.epsilon0);
    params.lambda = config.lambda;
    params.delta = config.delta.value_or(0.0);
    params.n_barriers = config.n_barriers;
    validate(params);

    const BarrierAmplitudes amps = single_barrier(params.epsilon, params.lambda);
    const ChainAmplitudes chain = n_barrier_amplitudes(amps, params);
    const InterferenceState state = interference_state(amps, params);
    const ParticleLimit particle = particle_limit_probabilities(amps);

    Table table;
    table.columns = {"epsilon", "lambda", "delta",  "n_barriers", "k",
                     "phi",     "alpha",  "mod_R_sq", "mod_T_sq", "R_re",
                     "R_im",    "T_re",   "T_im",   "Ts_re",      "Ts_im",
                     "Rs_re",   "Rs_im",  "chain_probability",
                     "particle_T_p", "particle_R_p"};
    std::vector<Cell> row = {params.epsilon,
                             params.lambda,
                             params.delta,
                             static_cast<long long>(params.n_barriers),
                             k_hat(params),
                             amps.phi,
                             state.alpha,
                             amps.mod_R_sq,
                             amps.mod_T_sq,
                             amps.R.real(),
                             amps.R.imag(),
                             amps.T.real(),
                             amps.T.imag(),
                             chain.Ts.real(),
                             chain.Ts.imag(),
                             chain.Rs.real(),
                             chain.Rs.imag(),
                             std::norm(chain.Ts),
                             particle.T_p,
                             particle.R_p};
    if (params.epsilon < 1.0) {
        const PhaseDerivatives d = phase_derivative(params.epsilon, params.lambda);
        table.columns.push_back("dphi_dk");
        table.columns.push_back("dphi_dE");
        row.push_back(d.dphi_dk);
        row.push_back(d.dphi_dE);
    }
    table.rows.push_back(std::move(row));

    table.metadata = base_metadata(config);
    table.metadata["epsilon"] = params.epsilon;
    table.metadata["delta"] = params.delta;
    return table;
}

} // namespace

void write_csv(const Table& table, std::ostream& os) {
    os << "# " << table.metadata.dump() << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(table.columns[i]);
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const double* d = std::get_if<double>(&row[i]))
                os << fmt(*d);
            else if (const long long* n = std::get_if<long long>(&row[i]))
                os << *n;
            else
                os << csv_escape(std::get<std::string>(row[i]));
        }
        os << "\n";
    }
}

void write_json(const Table& table, std::ostream& os) {
    nlohmann::json doc;
    doc["metadata"] = table.metadata;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i]))
                obj[table.columns[i]] = *d;
            else if (const long long* n = std::get_if<long long>(&row[i]))
                obj[table.columns[i]] = *n;
            else
                obj[table.columns[i]] = std::get<std::string>(row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << "\n";
}

int run_command(const RunConfig& config, std::ostream& err) {
    try {
        Table table;
        if (config.command == "scan")
            table = run_scan(config);
        else if (config.command == "profile")
            table = run_profile(config, err);
        else if (config.command == "paths")
            table = run_paths(config);
        else if (config.command == "resonances")
            table = run_resonances(config);
        else if (config.command == "amplitudes")
            table = run_amplitudes(config);
        else {
            err << "unknown command: " << config.command << "\n";
            return exit_usage;
        }

        std::ofstream file;
        if (!config.out_path.empty()) {
            file.open(config.out_path, std::ios::binary);
            if (!file) {
                err << "cannot open output file: " << config.out_path << "\n";
                return exit_usage;
            }
        }
        std::ostream& os = config.out_path.empty() ? std::cout : file;
        if (config.format == "json")
            write_json(table, os);
        else if (config.format == "csv")
            write_csv(table, os);
        else {
            err << "unknown format: " << config.format << "\n";
            return exit_usage;
        }
        os.flush();
        return exit_ok;
    } catch (const std::domain_error& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return exit_usage;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << " (best estimate "
            << fmt(e.estimate.real()) << " + " << fmt(e.estimate.imag())
            << "i, error bound " << fmt(e.error_bound) << ")\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace mbt::cli
