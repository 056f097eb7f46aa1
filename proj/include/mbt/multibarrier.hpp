#pragma once

#include <complex>

#include "mbt/amplitudes.hpp"
#include "mbt/scatter.hpp"

namespace mbt {

// One period of the chain (barrier plus following gap) maps the plane-wave
// coefficients on its right to those on its left through
//
//   M = [ F   conj(G) ]        F = 1 / (T e^{i k (lambda + delta)}),
//       [ G   conj(F) ]        G = R e^{i k delta} / (T e^{i k lambda}),
//
// with det M = |F|^2 - |G|^2 = 1 by unitarity.
struct TransferMatrix {
    cplx F;
    cplx G;
};

enum class MatrixRoute {
    ClosedEntries,     // F, G straight from the amplitudes (fast path)
    ContinuityProduct, // product of wave-matching and translation factors
};

TransferMatrix build_transfer_matrix(const BarrierAmplitudes& amps,
                                     const ScatterParams& params,
                                     MatrixRoute route = MatrixRoute::ClosedEntries);

// alpha = phi + k delta drives all interference between barriers; the
// denominator D = 1 + |R|^2 e^{2 i alpha} equals 1 - R^2 e^{2 i k delta}.
struct InterferenceState {
    double alpha;
    cplx D;
};

InterferenceState interference_state(const BarrierAmplitudes& amps,
                                     const ScatterParams& params);

struct ChainAmplitudes {
    cplx Ts;
    cplx Rs;
};

// Coherent amplitudes of params.n_barriers identical barriers via M^N
// (repeated multiplication; N <= 64).
ChainAmplitudes n_barrier_amplitudes(const BarrierAmplitudes& amps,
                                     const ScatterParams& params);

// Closed resummations of the bounce series for n = 2, 3, 4 barriers,
// parameterized by alpha directly so resonance studies can move alpha
// without recomputing amplitudes.
cplx closed_form_transmission(int n, const BarrierAmplitudes& amps, double alpha);

// Incoherent (probability-summed) twin-barrier limit: every bounce adds
// |R|^4, so the geometric sum is 1/(1 - |R|^4) and
//   T_p = |T|^4 sum,    R_p = |R|^2 + |R|^2 |T|^4 sum,    T_p + R_p = 1.
struct ParticleLimit {
    double T_p;
    double R_p;
    double geometric_sum;
};

ParticleLimit particle_limit_probabilities(const BarrierAmplitudes& amps);

} // namespace mbt
