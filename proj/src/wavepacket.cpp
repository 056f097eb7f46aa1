#include "mbt/wavepacket.hpp"

#include "mbt/amplitudes.hpp"
#include "mbt/multibarrier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mbt {

namespace {

constexpr double two_pi = 6.28318530717958647692;

void check_packet(const PacketSpec& packet) {
    if (!(packet.epsilon0 > 0.0 && packet.epsilon0 < 1.0))
        throw std::domain_error("packet centre must satisfy 0 < epsilon0 < 1");
    if (!(packet.width > 0.0)) throw std::domain_error("packet width must be positive");
}

// Chain transmission at momentum u (energy u^2), geometry from params.
cplx chain_transmission(double u, const ScatterParams& params) {
    ScatterParams at = params;
    at.epsilon = u * u;
    const BarrierAmplitudes amps = single_barrier(at.epsilon, at.lambda);
    return n_barrier_amplitudes(amps, at).Ts;
}

// Panel seeds: the Gaussian support around u0, plus the point where
// rho*lambda shrinks to 1e-3 and the single-barrier series window begins.
// Keeping that seam a panel edge protects the error estimate near u = 1.
std::vector<double> momentum_breaks(const PacketSpec& packet, double lambda) {
    const double u0 = std::sqrt(packet.epsilon0);
    const double w = 8.0 / packet.width;
    std::vector<double> breaks{u0 - w, u0, u0 + w};
    const double r = 1e-3 / lambda;
    if (r < 1.0) breaks.push_back(std::sqrt(1.0 - r * r));
    return breaks;
}

} // namespace

double packet_tail_mass(const PacketSpec& packet) {
    check_packet(packet);
    const double u0 = std::sqrt(packet.epsilon0);
    return 0.5 * std::erfc(packet.width * (1.0 - u0) / std::sqrt(2.0));
}

double total_transmission_probability(const PacketSpec& packet,
                                      const ScatterParams& params,
                                      const QuadratureOptions& opts) {
    check_packet(packet);
    validate(params);
    if (params.n_barriers > 4)
        throw std::domain_error("packet probability quadrature covers 1 to 4 barriers");
    const double A = packet.width;
    const double u0 = std::sqrt(packet.epsilon0);
    const double norm = A / std::sqrt(two_pi);

    const auto integrand = [&](double u) {
        const cplx ts = chain_transmission(u, params);
        const double du = u - u0;
        return norm * std::norm(ts) * std::exp(-0.5 * A * A * du * du);
    };
    return integrate_or_throw(integrand, 0.0, 1.0, opts,
                              momentum_breaks(packet, params.lambda));
}

cplx transmitted_wave(const PacketSpec& packet, const ScatterParams& params,
                      double chi, double tau, const QuadratureOptions& opts) {
    check_packet(packet);
    validate(params);
    if (params.n_barriers != 2)
        throw std::domain_error("transmitted wave is computed for twin barriers only");
    const double A = packet.width;
    const double u0 = std::sqrt(packet.epsilon0);
    const double norm = std::sqrt(A) / std::pow(two_pi, 0.75);

    const auto integrand = [&](double u) {
        const cplx ts = chain_transmission(u, params);
        const double du = u - u0;
        const double envelope = std::exp(-0.25 * A * A * du * du);
        return norm * ts * envelope * std::polar(1.0, u * chi - u * u * tau);
    };
    return integrate_or_throw(integrand, 0.0, 1.0, opts,
                              momentum_breaks(packet, params.lambda));
}

std::vector<double> transmitted_profile(const PacketSpec& packet,
                                        const ScatterParams& params,
                                        const std::vector<double>& chi_grid,
                                        double tau, const QuadratureOptions& opts) {
    std::vector<double> out;
    out.reserve(chi_grid.size());
    for (double chi : chi_grid)
        out.push_back(std::norm(transmitted_wave(packet, params, chi, tau, opts)));
    return out;
}

double spatial_probability_integral(const PacketSpec& packet,
                                    const ScatterParams& params, double x_lower,
                                    double tau, const QuadratureOptions& opts) {
    check_packet(packet);
    validate(params);
    const SpmPrediction spm = spm_predictions(packet, params, tau);
    // Far cutoff: every emerged packet sits near x2 <= x1, spreads like
    // A/2 + 2 tau / A, and leaves a 1/chi^2 skirt from the u < 1 cutoff
    // whose weight is erfc-small in A.  40 spreads plus a fixed kilounit
    // pushes both residuals far below the quadrature tolerance.
    const double spread = 0.5 * packet.width + 2.0 * std::abs(tau) / packet.width;
    const double x_upper =
        std::max(spm.x1 + 40.0 * spread + 1000.0, x_lower + 10.0);

    std::vector<double> breaks{spm.x2 - 4.0 * spread, spm.x2,
                               0.5 * (spm.x1 + spm.x2), spm.x1,
                               spm.x1 + 4.0 * spread};
    std::erase_if(breaks,
                  [&](double b) { return b <= x_lower || b >= x_upper; });

    QuadratureOptions inner = opts;
    inner.abs_tol = std::max(opts.abs_tol * 1e-3, 1e-13);
    const auto density = [&](double chi) {
        return std::norm(transmitted_wave(packet, params, chi, tau, inner));
    };
    return integrate_or_throw(density, x_lower, x_upper, opts, breaks);
}

SpmPrediction spm_predictions(const PacketSpec& packet, const ScatterParams& params,
                              double tau) {
    check_packet(packet);
    validate(params);
    const double u0 = std::sqrt(packet.epsilon0);
    const PhaseDerivatives d = phase_derivative(packet.epsilon0, params.lambda);
    const int n = params.n_barriers;

    SpmPrediction out{};
    out.v_g = 2.0 * u0;
    out.tunnelling_delay = 2.0 * d.dphi_dk;
    // Leading bounce-free packet: phase n (phi - u lambda) + u chi - u^2 tau
    // is stationary at u0 when chi = n lambda - n dphi_dk + 2 u0 tau; one
    // gap round trip retards the next packet by 2 dphi_dk + 2 delta.
    out.x1 = n * (params.lambda - d.dphi_dk) + 2.0 * u0 * tau;
    out.x2 = out.x1 - 2.0 * d.dphi_dk - 2.0 * params.delta;
    out.resonance_exit_time = params.delta / out.v_g + 2.0 * d.dphi_dE;
    return out;
}

std::vector<ScanRow> transition_scan(double epsilon0, double lambda, int n_barriers,
                                     const std::vector<double>& widths,
                                     const std::vector<double>& deltas,
                                     const QuadratureOptions& opts) {
    std::vector<ScanRow> rows;
    rows.reserve(widths.size() * deltas.size());
    for (double width : widths) {
        const PacketSpec packet{epsilon0, width};
        for (double delta : deltas) {
            ScatterParams params;
            params.epsilon = epsilon0;
            params.lambda = lambda;
            params.delta = delta;
            params.n_barriers = n_barriers;
            rows.push_back({width, delta,
                            total_transmission_probability(packet, params, opts)});
        }
    }
    return rows;
}

} // namespace mbt
