#ifndef JUMPLAB_SPHERE_HPP
#define JUMPLAB_SPHERE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jumplab/quad1d.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

// surface measure of S^{d-1}; S^0 = {-1,+1} carries counting measure 2
inline double sphere_surface(int d) {
    if (d < 1) throw std::domain_error("sphere_surface: d >= 1 required");
    if (d == 1) return 2.0;
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

// surface measure of a one-sided polar cap of half-angle theta
inline double cap_surface(int d, double theta) {
    if (d == 1) return theta > 0.0 ? 1.0 : 0.0;
    if (d == 2) return 2.0 * theta;
    double sm2 = sphere_surface(d - 1);
    return sm2 * integrate([&](double psi) { return std::pow(std::sin(psi), d - 2); }, 0.0,
                           theta, 1e-12);
}

// Orthonormal basis {axis, b_1, ..., b_{d-1}} via Householder reflection.
inline std::vector<Vec> frame_with_axis(const Vec& axis) {
    const std::size_t d = axis.size();
    std::vector<Vec> basis;
    basis.push_back(axis);
    // Householder vector mapping e_0 to axis
    Vec w = axis;
    w[0] += (axis[0] >= 0.0 ? 1.0 : -1.0);
    double wn2 = dot(w, w);
    double sign = (axis[0] >= 0.0 ? -1.0 : 1.0);
    for (std::size_t k = 1; k < d; ++k) {
        Vec e = axis_vector(d, k);
        double c = 2.0 * dot(w, e) / wn2;
        Vec b(d);
        for (std::size_t i = 0; i < d; ++i) b[i] = sign * (e[i] - c * w[i]);
        basis.push_back(b);
    }
    return basis;
}

struct SphereNode {
    Vec dir;
    double weight;
};

// Quadrature rule for the one-sided cap of half-angle theta around axis,
// with respect to surface measure. d in {1,2,3}.
inline std::vector<SphereNode> cap_rule(const Vec& axis, double theta, int order) {
    const int d = static_cast<int>(axis.size());
    std::vector<SphereNode> out;
    if (d == 1) {
        out.push_back({axis, 1.0});
        return out;
    }
    if (d == 2) {
        const GaussRule& g = gauss_legendre(order);
        double phi0 = std::atan2(axis[1], axis[0]);
        for (int i = 0; i < order; ++i) {
            double phi = phi0 + theta * g.nodes[i];
            out.push_back({{std::cos(phi), std::sin(phi)}, theta * g.weights[i]});
        }
        return out;
    }
    if (d == 3) {
        auto basis = frame_with_axis(axis);
        const GaussRule& g = gauss_legendre(order);
        double u_lo = std::cos(theta);
        int m_az = 2 * order;  // trapezoid in azimuth, periodic
        double waz = 2.0 * M_PI / m_az;
        for (int i = 0; i < order; ++i) {
            double u = 0.5 * (1.0 + u_lo) + 0.5 * (1.0 - u_lo) * g.nodes[i];
            double su = std::sqrt(std::max(0.0, 1.0 - u * u));
            double wu = 0.5 * (1.0 - u_lo) * g.weights[i];
            for (int k = 0; k < m_az; ++k) {
                double az = waz * (k + 0.5);
                Vec dir(3);
                for (int c = 0; c < 3; ++c)
                    dir[c] = u * basis[0][c] + su * (std::cos(az) * basis[1][c] +
                                                     std::sin(az) * basis[2][c]);
                out.push_back({dir, wu * waz});
            }
        }
        return out;
    }
    throw std::domain_error("cap_rule: only d <= 3 supported");
}

// Quadrature rule over the full sphere S^{d-1}, d in {1,2,3}.
inline std::vector<SphereNode> full_sphere_rule(int d, int order) {
    std::vector<SphereNode> out;
    if (d == 1) {
        out.push_back({{1.0}, 1.0});
        out.push_back({{-1.0}, 1.0});
        return out;
    }
    if (d == 2) {
        int m = 4 * order;
        double w = 2.0 * M_PI / m;
        for (int k = 0; k < m; ++k) {
            double phi = w * (k + 0.5);
            out.push_back({{std::cos(phi), std::sin(phi)}, w});
        }
        return out;
    }
    if (d == 3) {
        const GaussRule& g = gauss_legendre(2 * order);
        int m_az = 4 * order;
        double waz = 2.0 * M_PI / m_az;
        for (int i = 0; i < 2 * order; ++i) {
            double u = g.nodes[i];
            double su = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int k = 0; k < m_az; ++k) {
                double az = waz * (k + 0.5);
                out.push_back({{su * std::cos(az), su * std::sin(az), u},
                               g.weights[i] * waz});
            }
        }
        return out;
    }
    throw std::domain_error("full_sphere_rule: only d <= 3 supported");
}

namespace detail {
inline double halton(std::size_t index, int base) {
    double f = 1.0, r = 0.0;
    std::size_t i = index;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}
inline double inv_normal_cdf(double p) {
    // Acklam's rational approximation
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    }
    if (p > phigh) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}
}  // namespace detail

// Deterministic point set on S^{d-1}: uniform angles (d=2), Fibonacci spiral
// (d=3), Halton points pushed through the normal quantile and normalized for
// higher dimensions.
inline std::vector<Vec> sphere_points(int d, std::size_t n) {
    std::vector<Vec> pts;
    pts.reserve(n);
    if (d == 1) {
        for (std::size_t i = 0; i < n; ++i) pts.push_back({i % 2 == 0 ? 1.0 : -1.0});
        return pts;
    }
    if (d == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            double phi = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / n;
            pts.push_back({std::cos(phi), std::sin(phi)});
        }
        return pts;
    }
    if (d == 3) {
        const double ga = M_PI * (3.0 - std::sqrt(5.0));  // golden angle
        for (std::size_t i = 0; i < n; ++i) {
            double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / n;
            double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = ga * static_cast<double>(i);
            pts.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
        }
        return pts;
    }
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (d > 8) throw std::domain_error("sphere_points: d > 8 not supported");
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(d);
        for (int k = 0; k < d; ++k)
            v[k] = detail::inv_normal_cdf(detail::halton(i + 1, primes[k]));
        pts.push_back(normalized(v));
    }
    return pts;
}

}  // namespace jumplab

#endif
