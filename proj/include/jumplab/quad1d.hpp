#ifndef JUMPLAB_QUAD1D_HPP
#define JUMPLAB_QUAD1D_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace jumplab {

struct GaussRule {
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline const GaussRule& gauss_legendre(int n) {
    static thread_local std::vector<GaussRule> cache;
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    GaussRule& r = cache[n];
    if (!r.nodes.empty()) return r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

inline double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                              int n = 16) {
    const GaussRule& r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

namespace detail {
inline double adapt_simpson(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson on a finite interval.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw std::runtime_error("integrate: non-finite integrand");
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adapt_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Composite Gauss over dyadic panels of [a,b], 0 < a < b. The integrands in
// this project are smooth on any factor-2 interval even when they blow up
// like a power toward 0, so a fixed-order rule per panel reaches close to
// machine precision.
inline double integrate_log_panels(const std::function<double(double)>& f, double a,
                                   double b, int order = 32) {
    if (a <= 0.0) throw std::domain_error("integrate_log_panels: a must be positive");
    if (b <= a) return 0.0;
    double total = 0.0;
    double hi = b;
    while (hi > 2.0 * a) {
        double lo = 0.5 * hi;
        total += gauss_integrate(f, lo, hi, order);
        hi = lo;
    }
    total += gauss_integrate(f, a, hi, order);
    return total;
}

// Integral over [a, infinity) of a function decaying at least like t^{-1-s}
// for some s > 0. Substitution t = a e^v turns the tail into an
// exponentially decaying integrand which is truncated once negligible.
inline double integrate_tail(const std::function<double(double)>& f, double a,
                             double decay_exponent, double tol = 1e-12) {
    if (a <= 0.0) throw std::domain_error("integrate_tail: a must be positive");
    if (decay_exponent <= 0.0)
        throw std::domain_error("integrate_tail: nonpositive decay exponent");
    double vmax = 45.0 / decay_exponent + 8.0;
    auto g = [&](double v) {
        double t = a * std::exp(v);
        return f(t) * t;
    };
    double total = 0.0;
    double v0 = 0.0;
    while (v0 < vmax) {
        double v1 = std::min(v0 + 2.0, vmax);
        double piece = gauss_integrate(g, v0, v1, 32);
        total += piece;
        if (v0 > 4.0 && std::fabs(piece) < tol * std::max(1.0, std::fabs(total)))
            break;
        v0 = v1;
    }
    return total;
}

// Integral over (0, b] of a function with an integrable power singularity at
// the origin. Geometric subdivision toward 0 until the running sum stops
// changing relative to rel_tol.
inline double integrate_to_zero(const std::function<double(double)>& f, double b,
                                double rel_tol = 1e-13) {
    double total = 0.0;
    double hi = b;
    for (int k = 0; k < 2000; ++k) {
        double lo = hi * 0.5;
        double piece = gauss_integrate(f, lo, hi, 32);
        total += piece;
        if (k > 8 && std::fabs(piece) < rel_tol * std::fabs(total)) break;
        hi = lo;
    }
    return total;
}

}  // namespace jumplab

#endif
