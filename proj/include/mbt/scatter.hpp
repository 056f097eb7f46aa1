#pragma once

#include <cmath>

namespace mbt {

// Dimensionless description of a chain of identical rectangular barriers.
//
// Units: hbar = 2m = V0 = 1, so the wave-number scale w = sqrt(2 m V0)/hbar
// equals 1 and every quantity below is the physical one multiplied by the
// appropriate power of w:
//
//   epsilon = E / V0          (energy of the incident plane wave)
//   lambda  = w * L           (barrier width)
//   delta   = w * d           (gap between consecutive barriers)
//
// Inside a barrier the decay constant is rho = sqrt(1 - epsilon) for
// epsilon < 1 and the internal wave number is q = sqrt(epsilon - 1) above
// the barrier.  Outside, k = sqrt(epsilon).
struct ScatterParams {
    double epsilon = 0.5;
    double lambda = 1.0;
    double delta = 0.0;
    int n_barriers = 1;
};

// Throws std::domain_error on invalid parameters.
void validate(const ScatterParams& p);

inline double k_hat(const ScatterParams& p) { return std::sqrt(p.epsilon); }

} // namespace mbt
