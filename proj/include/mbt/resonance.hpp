#pragma once

#include <string>
#include <vector>

#include "mbt/amplitudes.hpp"

namespace mbt {

// Transmission probability of n identical barriers as a function of the
// interference phase alpha = phi + k delta.  n = 2 uses the explicit
// rational form |T|^4 / (1 + |R|^4 + 2|R|^2 cos 2alpha); n = 3, 4 square
// the closed-form amplitude.
double wave_probability(int n, const BarrierAmplitudes& amps, double alpha);

// Twin-barrier reflection probability, 2|R|^2 (1 + cos 2alpha) / (...);
// complements wave_probability(2, ...) to unity.
double wave_reflection_probability(const BarrierAmplitudes& amps, double alpha);

enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
    double alpha;     // in [0, pi)
    double cos_alpha; // signed location parameter of the analytic family
    double value;
    ExtremumKind kind;
    std::string tag;  // closed-form family, e.g. "cos(alpha) = +|T|/2"
};

// Analytic extrema of wave_probability over one period of alpha.
std::vector<Extremum> extrema_closed_form(int n, const BarrierAmplitudes& amps);

// Grid scan of d/dalpha over [0, pi) (periodic), each sign change refined
// by bisection to |dalpha| < 1e-10.
std::vector<Extremum> extrema_numeric_scan(int n, const BarrierAmplitudes& amps,
                                           int grid_size = 20000);

// Barrier separations delta > 0 at which the n-barrier chain is perfectly
// transparent, i.e. phi + k delta hits a unity maximum of
// wave_probability; the first n_max solutions per maximum branch, merged
// and sorted ascending.  Tunnelling regime only (0 < epsilon < 1).
std::vector<double> resonance_distances(int n, double epsilon, double lambda,
                                        int n_max);

} // namespace mbt
