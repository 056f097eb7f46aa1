#include "mbt/resonance.hpp"

#include "mbt/multibarrier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mbt {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_n(int n) {
    if (n < 2 || n > 4)
        throw std::domain_error("resonance analysis covers n = 2..4 barriers");
}

double probability(int n, const BarrierAmplitudes& amps, double alpha) {
    return wave_probability(n, amps, alpha);
}

} // namespace

double wave_probability(int n, const BarrierAmplitudes& amps, double alpha) {
    check_n(n);
    const double b = amps.mod_R_sq;
    const double tt = amps.mod_T_sq;
    if (n == 2)
        return tt * tt / (1.0 + b * b + 2.0 * b * std::cos(2.0 * alpha));
    const double a = std::abs(closed_form_transmission(n, amps, alpha));
    return a * a;
}

double wave_reflection_probability(const BarrierAmplitudes& amps, double alpha) {
    const double b = amps.mod_R_sq;
    const double c = std::cos(2.0 * alpha);
    return 2.0 * b * (1.0 + c) / (1.0 + b * b + 2.0 * b * c);
}

std::vector<Extremum> extrema_closed_form(int n, const BarrierAmplitudes& amps) {
    check_n(n);
    const double b = amps.mod_R_sq;
    const double tt = amps.mod_T_sq;
    const double abs_T = std::sqrt(tt);

    // P = 1 / (1 + (|R|^2/|T|^2) U_{n-1}(cos alpha / |T|)^2): unity maxima
    // where the Chebyshev factor vanishes, minima where its derivative
    // does, plus the band edge cos alpha = +-1 (alpha = 0 mod pi).
    std::vector<Extremum> out;
    const auto push = [&](double alpha, double cos_alpha, double value,
                          ExtremumKind kind, const char* tag) {
        out.push_back({alpha, cos_alpha, value, kind, tag});
    };

    switch (n) {
    case 2:
        push(0.0, 1.0, tt * tt / ((1.0 + b) * (1.0 + b)), ExtremumKind::Minimum,
             "cos(alpha) = +-1");
        push(0.5 * pi, 0.0, 1.0, ExtremumKind::Maximum, "cos(alpha) = 0");
        break;
    case 3: {
        const double x = 0.5 * abs_T;
        push(0.0, 1.0, std::pow(tt, 3) / ((1.0 + 3.0 * b) * (1.0 + 3.0 * b)),
             ExtremumKind::Minimum, "cos(alpha) = +-1");
        push(std::acos(x), x, 1.0, ExtremumKind::Maximum, "cos(alpha) = +|T|/2");
        push(0.5 * pi, 0.0, tt, ExtremumKind::Minimum, "cos(alpha) = 0");
        push(pi - std::acos(x), -x, 1.0, ExtremumKind::Maximum, "cos(alpha) = -|T|/2");
        break;
    }
    case 4: {
        const double xm = abs_T / std::sqrt(2.0);
        const double xi = abs_T / std::sqrt(6.0);
        const double edge = 1.0 + 6.0 * b + b * b;
        push(0.0, 1.0, std::pow(tt, 4) / (edge * edge), ExtremumKind::Minimum,
             "cos(alpha) = +-1");
        push(std::acos(xm), xm, 1.0, ExtremumKind::Maximum, "cos(alpha) = +|T|/sqrt(2)");
        push(std::acos(xi), xi, tt / (1.0 + 5.0 * b / 27.0), ExtremumKind::Minimum,
             "cos(alpha) = +|T|/sqrt(6)");
        push(0.5 * pi, 0.0, 1.0, ExtremumKind::Maximum, "cos(alpha) = 0");
        push(pi - std::acos(xi), -xi, tt / (1.0 + 5.0 * b / 27.0),
             ExtremumKind::Minimum, "cos(alpha) = -|T|/sqrt(6)");
        push(pi - std::acos(xm), -xm, 1.0, ExtremumKind::Maximum,
             "cos(alpha) = -|T|/sqrt(2)");
        break;
    }
    }
    return out;
}

std::vector<Extremum> extrema_numeric_scan(int n, const BarrierAmplitudes& amps,
                                           int grid_size) {
    check_n(n);
    if (grid_size < 8) throw std::domain_error("grid_size too small");

    const double h = 1e-7;
    const auto deriv = [&](double alpha) {
        return (probability(n, amps, alpha + h) - probability(n, amps, alpha - h)) /
               (2.0 * h);
    };

    // Offset grid over one period [0, pi), plus the wrap interval, so roots
    // sitting exactly on 0 or pi/2 never coincide with a grid node.
    const double step = pi / grid_size;
    std::vector<Extremum> out;
    double a = 0.5 * step;
    double da = deriv(a);
    for (int i = 1; i <= grid_size; ++i) {
        const double bnd = (0.5 + i) * step;
        const double db = deriv(bnd);
        if (da == 0.0 || (da > 0.0) != (db > 0.0)) {
            double lo = a, hi = bnd, dlo = da;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double dm = deriv(mid);
                if (dm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((dm > 0.0) == (dlo > 0.0)) {
                    lo = mid;
                    dlo = dm;
                } else {
                    hi = mid;
                }
            }
            double root = 0.5 * (lo + hi);
            if (root >= pi) root -= pi;
            Extremum e;
            e.alpha = root;
            e.cos_alpha = std::cos(root);
            e.value = probability(n, amps, root);
            e.kind = da > 0.0 ? ExtremumKind::Maximum : ExtremumKind::Minimum;
            e.tag = "scan";
            out.push_back(std::move(e));
        }
        a = bnd;
        da = db;
    }
    std::sort(out.begin(), out.end(),
              [](const Extremum& x, const Extremum& y) { return x.alpha < y.alpha; });
    return out;
}

std::vector<double> resonance_distances(int n, double epsilon, double lambda,
                                        int n_max) {
    check_n(n);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("resonance distances need 0 < epsilon < 1");
    if (n_max < 1) throw std::domain_error("n_max must be >= 1");

    const BarrierAmplitudes amps = single_barrier(epsilon, lambda);
    const double k = std::sqrt(epsilon);
    const double abs_T = std::sqrt(amps.mod_T_sq);

    std::vector<double> out;
    for (int j = 1; j < n; ++j) {
        // Transparent alpha: cos(alpha) = |T| cos(j pi / n).
        const double alpha = std::acos(abs_T * std::cos(j * pi / n));
        int found = 0;
        for (int l = 0; found < n_max; ++l) {
            const double delta = (alpha - amps.phi + l * pi) / k;
            if (delta <= 0.0) continue;
            out.push_back(delta);
            ++found;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mbt
