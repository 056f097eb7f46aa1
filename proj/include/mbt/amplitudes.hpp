#pragma once

#include <complex>

#include "mbt/scatter.hpp"

namespace mbt {

using cplx = std::complex<double>;

// Reflection and transmission amplitudes of one rectangular barrier whose
// front face sits at the origin.  In the tunnelling regime they obey
//
//   R = -i * |R| * exp(i phi),      T = |T| * exp(i (phi - k lambda)),
//
// with tan(phi) = (k^2 - rho^2) tanh(rho lambda) / (2 k rho) and phi taken
// on the principal branch (-pi/2, pi/2].  Above the barrier the same
// formulas continue through rho -> i q; the phase convention keeps phi
// principal, so the real prefactor multiplying -i e^{i phi} may then carry
// either sign while mod_R_sq/mod_T_sq remain the true squared moduli.
struct BarrierAmplitudes {
    cplx R;
    cplx T;
    double phi;
    double mod_R_sq;
    double mod_T_sq;
};

// epsilon > 0 (epsilon != 1 handled by a series branch internally),
// lambda > 0.  Throws std::domain_error otherwise.
BarrierAmplitudes single_barrier(double epsilon, double lambda);

enum class Side { Left, Right };

// Reflection amplitude of a barrier occupying [front_a, back_b] hit from
// the given side by a wave of wave number k:
//   from the left:  R * exp(+2 i k front_a)
//   from the right: R * exp(-2 i k back_b)
cplx positioned_reflection(const BarrierAmplitudes& amps, Side side,
                           double front_a, double back_b, double k);

struct PhaseDerivatives {
    double dphi_dk; // d phi / d k      at fixed lambda
    double dphi_dE; // d phi / d eps  = dphi_dk / (2 k)
};

// Analytic derivative of the reflection phase, tunnelling regime only
// (0 < epsilon < 1).
PhaseDerivatives phase_derivative(double epsilon, double lambda);

// Transmission amplitude of two different barriers separated by delta
// (Fabry-Perot sum of internal round trips):
//   T1 T2 / (1 - R1 R2 exp(2 i k delta))
cplx asymmetric_pair_transmission(const BarrierAmplitudes& left,
                                  const BarrierAmplitudes& right,
                                  double k, double delta);

} // namespace mbt
