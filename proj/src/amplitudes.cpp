#include "mbt/amplitudes.hpp"

#include <cmath>
#include <stdexcept>

namespace mbt {

namespace {

constexpr double pi = 3.14159265358979323846;

// log(cosh(x)) without overflow for large x.
double log_cosh(double x) {
    x = std::fabs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - 0.6931471805599453094;
}

// Fold an angle from (-pi, pi] into the principal branch (-pi/2, pi/2]
// of the reflection phase (tan is pi-periodic, so this stays consistent
// with the defining tangent relation).
double fold_phase(double raw) {
    if (raw > 0.5 * pi) return raw - pi;
    if (raw <= -0.5 * pi) return raw + pi;
    return raw;
}

} // namespace

void validate(const ScatterParams& p) {
    if (!(p.epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    if (!(p.lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (!(p.delta >= 0.0)) throw std::domain_error("delta must be non-negative");
    if (p.n_barriers < 1) throw std::domain_error("n_barriers must be >= 1");
}

BarrierAmplitudes single_barrier(double epsilon, double lambda) {
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");

    const double k = std::sqrt(epsilon);
    const double s = 1.0 - epsilon;       // rho^2 (negative above the barrier)
    const double two_eps_m1 = 2.0 * epsilon - 1.0; // = k^2 - rho^2 = k^2 + q^2

    BarrierAmplitudes out{};

    const double x_abs = std::sqrt(std::fabs(s)) * lambda;
    if (x_abs < 1e-6) {
        // epsilon -> 1: tanh(rho lambda)/rho and tan(q lambda)/q share the
        // series lambda (1 - u/3 + ...) in u = (1 - epsilon) lambda^2, and
        // cosh(rho lambda), cos(q lambda) share 1 + u/2 + u^2/24.
        const double u = s * lambda * lambda;
        const double t_ratio = lambda * (1.0 - u / 3.0 + 2.0 * u * u / 15.0);
        const double c_ratio = 1.0 + u / 2.0 + u * u / 24.0;
        const double H = std::hypot(2.0 * k, two_eps_m1 * t_ratio);
        const double phi = std::atan2(two_eps_m1 * t_ratio, 2.0 * k);
        const double abs_R = t_ratio / H; // (k^2 + rho^2) = 1 in these units
        const double abs_T = 2.0 * k / (H * c_ratio);
        out.phi = phi;
        out.mod_R_sq = abs_R * abs_R;
        out.mod_T_sq = abs_T * abs_T;
        out.R = cplx(0.0, -abs_R) * std::polar(1.0, phi);
        out.T = std::polar(abs_T, phi - k * lambda);
        return out;
    }

    if (s > 0.0) {
        // Tunnelling: rho real.
        const double rho = std::sqrt(s);
        const double th = std::tanh(rho * lambda);
        const double H = std::hypot(2.0 * k * rho, two_eps_m1 * th);
        const double phi = std::atan2(two_eps_m1 * th, 2.0 * k * rho);
        const double abs_R = th / H;
        double abs_T;
        if (rho * lambda > 30.0) {
            abs_T = 2.0 * k * rho / H * std::exp(-log_cosh(rho * lambda));
        } else {
            abs_T = 2.0 * k * rho / (H * std::cosh(rho * lambda));
        }
        out.phi = phi;
        out.mod_R_sq = abs_R * abs_R;
        out.mod_T_sq = abs_T * abs_T;
        out.R = cplx(0.0, -abs_R) * std::polar(1.0, phi);
        out.T = std::polar(abs_T, phi - k * lambda);
        return out;
    }

    // Above the barrier: rho -> i q turns tanh into tan.  Work with
    // cos(q lambda), sin(q lambda) directly so tan poles never appear;
    // there phi passes through +-pi/2 while |R| stays finite.
    const double q = std::sqrt(-s);
    const double c = std::cos(q * lambda);
    const double sn = std::sin(q * lambda);
    const double H = std::hypot(2.0 * k * q * c, two_eps_m1 * sn);
    const double phi_raw = std::atan2(two_eps_m1 * sn, 2.0 * k * q * c);
    const double abs_T = 2.0 * k * q / H;
    const double r_signed = sn / H; // (k^2 - q^2) = 1 in these units
    out.phi = fold_phase(phi_raw);
    out.mod_R_sq = r_signed * r_signed;
    out.mod_T_sq = abs_T * abs_T;
    // Amplitudes keep the unfolded phase so they are exact; the stored phi
    // differs from it by a multiple of pi absorbed into a sign.
    out.R = cplx(0.0, -r_signed) * std::polar(1.0, phi_raw);
    out.T = std::polar(abs_T, phi_raw - k * lambda);
    return out;
}

cplx positioned_reflection(const BarrierAmplitudes& amps, Side side,
                           double front_a, double back_b, double k) {
    if (side == Side::Left) return amps.R * std::polar(1.0, 2.0 * k * front_a);
    return amps.R * std::polar(1.0, -2.0 * k * back_b);
}

PhaseDerivatives phase_derivative(double epsilon, double lambda) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("phase_derivative needs 0 < epsilon < 1");
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");

    const double k = std::sqrt(epsilon);
    const double rho = std::sqrt(1.0 - epsilon);
    const double th = std::tanh(rho * lambda);
    const double sech = 1.0 / std::cosh(std::min(rho * lambda, 350.0));
    const double g = 2.0 * k * k - 1.0; // k^2 - rho^2

    // Differentiating tan(phi) = g tanh(rho lambda)/(2 k rho) in k and using
    // (k^2 + rho^2)^2 = (2 k rho)^2 + g^2 = 1 collapses the quotient-rule
    // numerator to 2, leaving
    //   dphi/dk = [2 tanh(rho L)/rho - 2 k^2 g L sech^2(rho L)]
    //             / [(2 k rho)^2 + g^2 tanh^2(rho L)].
    const double num = 2.0 * th / rho - 2.0 * k * k * g * lambda * sech * sech;
    const double den = 4.0 * k * k * rho * rho + g * g * th * th;

    PhaseDerivatives out{};
    out.dphi_dk = num / den;
    out.dphi_dE = out.dphi_dk / (2.0 * k);
    return out;
}

cplx asymmetric_pair_transmission(const BarrierAmplitudes& left,
                                  const BarrierAmplitudes& right,
                                  double k, double delta) {
    const cplx loop = left.R * right.R * std::polar(1.0, 2.0 * k * delta);
    return left.T * right.T / (1.0 - loop);
}

} // namespace mbt
