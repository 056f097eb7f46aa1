#pragma once

#include <complex>
#include <vector>

#include "mbt/quadrature.hpp"
#include "mbt/scatter.hpp"

namespace mbt {

// Gaussian wave packet in the dimensionless momentum u = k/w:
//
//   g(u) = sqrt(width) / (2 pi)^{3/4} * exp(-width^2 (u - u0)^2 / 4),
//
// u0 = sqrt(epsilon0).  |g|^2 integrates to 1 over the whole u axis; the
// physical superposition keeps only 0 < u < 1 (tunnelling components), so
// packet_tail_mass reports the weight cut away at u >= 1.
struct PacketSpec {
    double epsilon0 = 0.5;
    double width = 30.0; // A = w * a
};

double packet_tail_mass(const PacketSpec& packet);

// P = (A / sqrt(2 pi)) Integral_0^1 du |Ts(u)|^2 exp(-A^2 (u - u0)^2 / 2)
// with Ts the coherent chain transmission at energy u^2.  Chains up to
// n_barriers = 4; longer chains throw std::domain_error.
double total_transmission_probability(const PacketSpec& packet,
                                      const ScatterParams& params,
                                      const QuadratureOptions& opts = {});

// Transmitted wave Psi(chi, tau) = c Integral_0^1 du Ts(u) g-weight(u)
// exp(i (u chi - u^2 tau)); density(chi) = |Psi|^2.  Twin barriers only
// (n_barriers = 2), like the two-peak analysis it feeds.
std::complex<double> transmitted_wave(const PacketSpec& packet,
                                      const ScatterParams& params,
                                      double chi, double tau,
                                      const QuadratureOptions& opts = {});

std::vector<double> transmitted_profile(const PacketSpec& packet,
                                        const ScatterParams& params,
                                        const std::vector<double>& chi_grid,
                                        double tau,
                                        const QuadratureOptions& opts = {});

// Integral of |Psi(chi, tau)|^2 from x_lower to a far cutoff chosen well
// past every emerged packet.  With x_lower at the structure's exit face
// this is the physical (time-dependent) transmitted probability; pushed to
// -infinity it equals total_transmission_probability at every tau: the
// integral picks up "phantom" contributions that have not physically
// arrived yet (Plancherel, with the same u < 1 truncation on both sides).
double spatial_probability_integral(const PacketSpec& packet,
                                    const ScatterParams& params,
                                    double x_lower, double tau,
                                    const QuadratureOptions& opts = {});

// Stationary-phase exit positions of the first two transmitted packets of
// a twin barrier, plus the standard delay quantities:
//   x1 = 2 lambda - 2 dphi_dk + 2 u0 tau
//   x2 = x1 - 2 dphi_dk - 2 delta
struct SpmPrediction {
    double x1;
    double x2;
    double v_g;                 // 2 u0
    double tunnelling_delay;    // 2 dphi_dk (saturates with width: Hartman)
    double resonance_exit_time; // delta / v_g + 2 dphi_dE
};

SpmPrediction spm_predictions(const PacketSpec& packet,
                              const ScatterParams& params, double tau);

struct ScanRow {
    double packet_width;
    double delta;
    double probability;
};

// total_transmission_probability on the cartesian grid widths x deltas.
std::vector<ScanRow> transition_scan(double epsilon0, double lambda,
                                     int n_barriers,
                                     const std::vector<double>& widths,
                                     const std::vector<double>& deltas,
                                     const QuadratureOptions& opts = {});

} // namespace mbt
