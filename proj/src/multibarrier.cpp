#include "mbt/multibarrier.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mbt {

namespace {

struct Mat2 {
    cplx a, b, c, d; // [[a, b], [c, d]]
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Coefficient-to-(psi, psi') map for psi = A e^{x z} + B e^{-x z}.
Mat2 wave_matrix(cplx x) { return {1.0, 1.0, x, -x}; }

Mat2 wave_matrix_inv(cplx x) {
    const cplx h = 0.5 / x;
    return {0.5, h, 0.5, -h};
}

// Re-references coefficients across a region: diag(e^z, e^{-z}).
Mat2 translation(cplx z) { return {std::exp(z), 0.0, 0.0, std::exp(-z)}; }

// Multiplication closed over the [[F, G*], [G, F*]] form, so unitarity
// survives repeated products exactly.
TransferMatrix compose(const TransferMatrix& x, const TransferMatrix& y) {
    return {x.F * y.F + std::conj(x.G) * y.G,
            x.G * y.F + std::conj(x.F) * y.G};
}

} // namespace

TransferMatrix build_transfer_matrix(const BarrierAmplitudes& amps,
                                     const ScatterParams& params,
                                     MatrixRoute route) {
    validate(params);
    const double k = k_hat(params);

    if (route == MatrixRoute::ClosedEntries) {
        const cplx F = 1.0 / (amps.T * std::polar(1.0, k * (params.lambda + params.delta)));
        const cplx G = amps.R * std::polar(1.0, k * params.delta) /
                       (amps.T * std::polar(1.0, k * params.lambda));
        return {F, G};
    }

    // Independent construction: match psi, psi' across both faces and
    // translate across the gap and the barrier interior.  Degenerates when
    // the interior solutions stop being independent (epsilon = 1).
    if (std::fabs(1.0 - params.epsilon) < 1e-12)
        throw std::domain_error("continuity product is singular at epsilon = 1");

    const cplx rho = std::sqrt(cplx(1.0 - params.epsilon, 0.0));
    const cplx ik(0.0, k);

    Mat2 m = translation(-ik * params.delta);
    m = mul(m, wave_matrix_inv(ik));
    m = mul(m, wave_matrix(rho));
    m = mul(m, translation(-rho * params.lambda));
    m = mul(m, wave_matrix_inv(rho));
    m = mul(m, wave_matrix(ik));
    return {m.a, m.c};
}

InterferenceState interference_state(const BarrierAmplitudes& amps,
                                     const ScatterParams& params) {
    validate(params);
    const double alpha = amps.phi + k_hat(params) * params.delta;
    return {alpha, 1.0 + amps.mod_R_sq * std::polar(1.0, 2.0 * alpha)};
}

ChainAmplitudes n_barrier_amplitudes(const BarrierAmplitudes& amps,
                                     const ScatterParams& params) {
    validate(params);
    if (params.n_barriers > 64)
        throw std::domain_error("n_barriers > 64 not supported");

    const double k = k_hat(params);
    const TransferMatrix cell = build_transfer_matrix(amps, params);

    TransferMatrix power = cell;
    for (int i = 1; i < params.n_barriers; ++i) power = compose(power, cell);

    const double span = params.n_barriers * (params.lambda + params.delta);
    ChainAmplitudes out{};
    out.Ts = std::polar(1.0, -k * span) / power.F;
    out.Rs = std::polar(1.0, -2.0 * k * params.delta) * power.G / power.F;
    return out;
}

cplx closed_form_transmission(int n, const BarrierAmplitudes& amps, double alpha) {
    const double b = amps.mod_R_sq;
    const double tt = amps.mod_T_sq;
    const cplx Z = std::polar(1.0, 2.0 * alpha);
    const cplx D = 1.0 + b * Z;

    switch (n) {
    case 1:
        return amps.T;
    case 2:
        return amps.T * amps.T / D;
    case 3:
        // D^2 + |R|^2 |T|^2 Z^2 expands to 1 + 2bZ + bZ^2.
        return amps.T * amps.T * amps.T / (D * D + b * tt * Z * Z);
    case 4: {
        const cplx den = D * D * D + 2.0 * b * tt * Z * Z * D + b * tt * tt * Z * Z * Z;
        return amps.T * amps.T * amps.T * amps.T / den;
    }
    default:
        throw std::domain_error("closed_form_transmission supports n = 1..4");
    }
}

ParticleLimit particle_limit_probabilities(const BarrierAmplitudes& amps) {
    const double b = amps.mod_R_sq;
    const double tt = amps.mod_T_sq;
    ParticleLimit out{};
    out.geometric_sum = 1.0 / (1.0 - b * b);
    out.T_p = tt * tt * out.geometric_sum;
    out.R_p = b + b * tt * tt * out.geometric_sum;
    return out;
}

} // namespace mbt
