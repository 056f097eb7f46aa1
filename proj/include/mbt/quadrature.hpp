#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace mbt {

struct QuadratureOptions {
    double abs_tol = 1e-8;
    std::size_t max_nodes = 1000000;
};

template <class V>
struct QuadratureOutcome {
    V value{};
    double error_bound = 0.0;
    std::size_t nodes = 0;
    bool converged = false;
};

// Thrown when the node budget runs out before the requested tolerance is
// met; carries the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double re, double im, double err)
        : std::runtime_error("quadrature did not converge within the node budget"),
          estimate(re, im), error_bound(err) {}

    std::complex<double> estimate;
    double error_bound;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric halves listed).
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline double vnorm(double v) { return std::fabs(v); }
inline double vnorm(const std::complex<double>& v) { return std::abs(v); }

template <class F>
auto gk15(F&& f, double a, double b, double& err)
    -> decltype(f(0.0)) {
    using V = decltype(f(0.0));
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    V kres{};
    V gres{};
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk_x[i];
        V fv = f(c - dx);
        if (i < 7) fv += f(c + dx);
        kres += gk_wk[i] * fv;
        if (i % 2 == 1) gres += gk_wg[i / 2] * fv;
    }
    kres *= h;
    gres *= h;
    // Standard QUADPACK-style error heuristic.
    const double diff = vnorm(kres - gres);
    err = diff;
    return kres;
}

} // namespace detail

// Globally adaptive Gauss-Kronrod integration over [a, b] to an absolute
// tolerance.  Optional interior break points seed the first panels.  The
// integrand may return double or std::complex<double>.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opts,
                        const std::vector<double>& breaks = {})
    -> QuadratureOutcome<decltype(f(0.0))> {
    using V = decltype(f(0.0));

    struct Panel {
        double a, b, err;
        V value;
        bool operator<(const Panel& o) const { return err < o.err; }
    };

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Panel> queue;
    QuadratureOutcome<V> out;
    V total{};
    double total_err = 0.0;

    auto push = [&](double lo, double hi) {
        Panel p;
        p.a = lo;
        p.b = hi;
        p.value = detail::gk15(f, lo, hi, p.err);
        out.nodes += 15;
        total += p.value;
        total_err += p.err;
        queue.push(p);
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) push(edges[i], edges[i + 1]);

    while (total_err > opts.abs_tol && out.nodes + 30 <= opts.max_nodes) {
        Panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval at rounding limit
            total += worst.value;
            total_err += worst.err;
            break;
        }
        push(worst.a, mid);
        push(mid, worst.b);
    }

    out.value = total;
    out.error_bound = total_err;
    out.converged = total_err <= opts.abs_tol;
    return out;
}

// Same, but throws QuadratureError if the tolerance was not reached.
template <class F>
auto integrate_or_throw(F&& f, double a, double b, const QuadratureOptions& opts,
                        const std::vector<double>& breaks = {})
    -> decltype(f(0.0)) {
    auto out = integrate_adaptive(f, a, b, opts, breaks);
    if (!out.converged) {
        const std::complex<double> est(out.value);
        throw QuadratureError(est.real(), est.imag(), out.error_bound);
    }
    return out.value;
}

} // namespace mbt
