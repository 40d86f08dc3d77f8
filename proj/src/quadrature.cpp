#include "jumplab/quadrature.hpp"

#include <cmath>
#include <limits>

#include "jumplab/quad1d.hpp"
#include "jumplab/sphere.hpp"

namespace jumplab {

// ---------------------------------------------------------------------------
// TestFunction
// ---------------------------------------------------------------------------

TestFunction TestFunction::constant(double c) {
    TestFunction f;
    f.kind_ = Kind::Constant;
    f.c_ = c;
    return f;
}

TestFunction TestFunction::bump(Vec center, double radius, double height) {
    if (radius <= 0.0) throw std::domain_error("TestFunction::bump: radius must be > 0");
    TestFunction f;
    f.kind_ = Kind::Bump;
    f.center_ = std::move(center);
    f.radius_ = radius;
    f.height_ = height;
    return f;
}

TestFunction TestFunction::cosine(Vec frequency) {
    TestFunction f;
    f.kind_ = Kind::Cosine;
    f.freq_ = std::move(frequency);
    return f;
}

TestFunction TestFunction::barrier(Vec center, double radius) {
    if (radius <= 0.0)
        throw std::domain_error("TestFunction::barrier: radius must be > 0");
    TestFunction f;
    f.kind_ = Kind::Barrier;
    f.center_ = std::move(center);
    f.radius_ = radius;
    return f;
}

namespace {

// quintic Hermite basis on [0,1] matching value / first / second derivative at
// both endpoints; returns P, P', P'' for endpoint data (p0,m0,a0,p1,m1,a1)
void quintic_blend(double u, double p0, double m0, double a0, double p1, double m1,
                   double a1, double& P, double& dP, double& ddP) {
    double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    double H0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    double H1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    double H3 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    double H4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    double H5 = 0.5 * u3 - u4 + 0.5 * u5;
    P = p0 * H0 + m0 * H1 + a0 * H2 + p1 * H3 + m1 * H4 + a1 * H5;

    double d0 = -30.0 * u2 + 60.0 * u3 - 30.0 * u4;
    double d1 = 1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4;
    double d2 = u - 4.5 * u2 + 6.0 * u3 - 2.5 * u4;
    double d3 = 30.0 * u2 - 60.0 * u3 + 30.0 * u4;
    double d4 = -12.0 * u2 + 28.0 * u3 - 15.0 * u4;
    double d5 = 1.5 * u2 - 4.0 * u3 + 2.5 * u4;
    dP = p0 * d0 + m0 * d1 + a0 * d2 + p1 * d3 + m1 * d4 + a1 * d5;

    double e0 = -60.0 * u + 180.0 * u2 - 120.0 * u3;
    double e1 = -36.0 * u + 96.0 * u2 - 60.0 * u3;
    double e2 = 1.0 - 9.0 * u + 18.0 * u2 - 10.0 * u3;
    double e3 = 60.0 * u - 180.0 * u2 + 120.0 * u3;
    double e4 = -24.0 * u + 84.0 * u2 - 60.0 * u3;
    double e5 = 3.0 * u - 12.0 * u2 + 10.0 * u3;
    ddP = p0 * e0 + m0 * e1 + a0 * e2 + p1 * e3 + m1 * e4 + a1 * e5;
}

}  // namespace

void TestFunction::radial_profile(double s, double& F, double& dF, double& ddF) const {
    if (kind_ == Kind::Bump) {
        double u = s / radius_;
        if (u >= 1.0) {
            F = dF = ddF = 0.0;
            return;
        }
        double q = 1.0 - u * u;
        F = height_ * q * q * q;
        dF = -6.0 * height_ / radius_ * u * q * q;
        ddF = -6.0 * height_ / (radius_ * radius_) * q * (1.0 - 5.0 * u * u);
        return;
    }
    // Barrier
    const double r = radius_;
    if (s <= 0.5 * r) {
        F = s * s;
        dF = 2.0 * s;
        ddF = 2.0;
        return;
    }
    if (s >= r) {
        F = r * r;
        dF = ddF = 0.0;
        return;
    }
    const double h = 0.5 * r;  // blend width
    double u = (s - 0.5 * r) / h;
    double P, dP, ddP;
    // endpoint data scaled to the unit interval: m = F' h, a = F'' h^2
    quintic_blend(u, 0.25 * r * r, r * h, 2.0 * h * h, r * r, 0.0, 0.0, P, dP, ddP);
    F = P;
    dF = dP / h;
    ddF = ddP / (h * h);
}

double TestFunction::value(const Vec& x) const {
    switch (kind_) {
        case Kind::Constant:
            return c_;
        case Kind::Cosine:
            return std::cos(dot(freq_, x));
        default: {
            double F, dF, ddF;
            radial_profile(dist(x, center_), F, dF, ddF);
            return F;
        }
    }
}

Vec TestFunction::gradient(const Vec& x) const {
    switch (kind_) {
        case Kind::Constant:
            return zeros(x.size());
        case Kind::Cosine:
            return scale(-std::sin(dot(freq_, x)), freq_);
        default: {
            Vec u = sub(x, center_);
            double s = norm(u);
            if (s < 1e-14) return zeros(x.size());
            double F, dF, ddF;
            radial_profile(s, F, dF, ddF);
            return scale(dF / s, u);
        }
    }
}

SymMatrix TestFunction::hessian(const Vec& x) const {
    const std::size_t d = x.size();
    SymMatrix H(d);
    switch (kind_) {
        case Kind::Constant:
            return H;
        case Kind::Cosine: {
            double c = -std::cos(dot(freq_, x));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) H.at(i, j) = c * freq_[i] * freq_[j];
            return H;
        }
        default: {
            Vec u = sub(x, center_);
            double s = norm(u);
            if (s < 1e-14) {
                // both radial variants are s^2-like or flat at the center
                double c = kind_ == Kind::Barrier ? 2.0
                                                  : -6.0 * height_ / (radius_ * radius_);
                for (std::size_t i = 0; i < d; ++i) H.at(i, i) = c;
                return H;
            }
            double F, dF, ddF;
            radial_profile(s, F, dF, ddF);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    double uij = u[i] * u[j] / (s * s);
                    H.at(i, j) = ddF * uij + dF / s * ((i == j ? 1.0 : 0.0) - uij);
                }
            return H;
        }
    }
}

// ---------------------------------------------------------------------------
// regions and queries
// ---------------------------------------------------------------------------

RadialRegion RadialRegion::complement_of_ball(double radius) {
    if (radius <= 0.0)
        throw std::domain_error("RadialRegion: radius must be positive");
    return {radius, std::numeric_limits<double>::infinity()};
}

RadialRegion RadialRegion::annulus(double inner, double outer) {
    if (inner < 0.0 || outer < inner)
        throw std::domain_error("RadialRegion: need 0 <= inner <= outer");
    return {inner, outer};
}

RadialRegion RadialRegion::empty() { return {0.0, 0.0}; }

TailMeasureQuery::TailMeasureQuery(Vec x0_, double r_, Vec x_, RadialRegion region_)
    : x0(std::move(x0_)), r(r_), x(std::move(x_)), region(region_) {
    if (r <= 0.0) throw std::domain_error("TailMeasureQuery: r must be positive");
    if (dist(x, x0) > 0.5 * r)
        throw std::domain_error("TailMeasureQuery: x must lie in B(x0, r/2)");
    if (!region.is_empty() && region.inner < r)
        throw std::domain_error("TailMeasureQuery: region must avoid B(x0, r)");
}

// ---------------------------------------------------------------------------
// shared radial machinery
// ---------------------------------------------------------------------------

namespace {

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite integrand");
    return v;
}

// entry radius along x + t*dir into {|z - c| >= R}; valid when x is inside
double ray_entry_radius(const Vec& x, const Vec& dir, const Vec& c, double R) {
    Vec w = sub(x, c);
    double b = dot(dir, w);
    double q = dot(w, w);
    double disc = b * b - q + R * R;
    return -b + std::sqrt(std::max(0.0, disc));
}

// int_a^infty F(t) k(x, dir, t) j(t) t^{d-1} dt, split at the t=1 seam where
// the radial density may be non-smooth
double radial_n_integral(const JumpKernel& kernel, const Vec& x, const Vec& dir,
                         double a, const std::function<double(double)>& F) {
    const int d = kernel.dim();
    const RadialProfile& rad = kernel.radial();
    auto G = [&](double t) {
        return checked(F(t) * kernel.angular_k(x, dir, t) * rad.j(t, d) *
                           std::pow(t, d - 1),
                       "radial_n_integral");
    };
    double total = 0.0;
    if (a < 1.0) total += integrate_log_panels(G, a, 1.0);
    double lo = std::max(a, 1.0);
    switch (rad.tail().kind) {
        case TailKind::Truncated:
            if (rad.tail().param > lo) total += integrate_log_panels(G, lo, rad.tail().param);
            break;
        default:
            total += integrate_tail(G, lo, rad.alpha());
            break;
    }
    return total;
}

}  // namespace

// deterministic low-discrepancy probes filling the ball B(center, radius)
std::vector<Vec> ball_probes(const Vec& center, double radius, int count) {
    const int d = static_cast<int>(center.size());
    auto dirs = sphere_points(d, static_cast<std::size_t>(count));
    std::vector<Vec> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        double frac = std::pow((k + 0.5) / count, 1.0 / d);
        out.push_back(add(center, scale(radius * frac, dirs[k])));
    }
    return out;
}

// ---------------------------------------------------------------------------
// apply_L
// ---------------------------------------------------------------------------

double apply_L(const JumpKernel& kernel, const TestFunction& f, const Vec& x,
               const QuadratureParams& params) {
    if (f.is_constant()) return 0.0;
    const int d = kernel.dim();
    const RadialProfile& rad = kernel.radial();
    const double fx = f.value(x);

    double total = 0.0;
    for (const auto& cap : kernel.cones().caps()) {
        for (const auto& node : symmetrized_cap_rule(cap, d, params.angular_order)) {
            const Vec& dir = node.dir;
            // |h| <= 1: symmetrized second difference tames the singularity
            auto small = [&](double t) {
                double diff =
                    0.5 * (f.value(add(x, scale(t, dir))) + f.value(sub(x, scale(t, dir)))) -
                    fx;
                return checked(diff * kernel.angular_k(x, dir, t) * rad.j(t, d) *
                                   std::pow(t, d - 1),
                               "apply_L");
            };
            total += node.weight *
                     integrate_to_zero(small, 1.0, params.small_jump_rel_tol);
            // |h| > 1: plain difference, no compensator
            total += node.weight *
                     radial_n_integral(kernel, x, dir, 1.0, [&](double t) {
                         return f.value(add(x, scale(t, dir))) - fx;
                     });
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Harnack tail term
// ---------------------------------------------------------------------------

double harnack_tail_term(const JumpKernel& kernel, const Vec& x0, double r,
                         const std::function<double(const Vec&)>& g, int probe_count,
                         const QuadratureParams& params) {
    if (r <= 0.0) throw std::domain_error("harnack_tail_term: r must be positive");
    const int d = kernel.dim();
    double best = 0.0;
    for (const auto& v : ball_probes(x0, 2.0 * r, probe_count)) {
        double integral = 0.0;
        for (const auto& cap : kernel.cones().caps()) {
            for (const auto& node : symmetrized_cap_rule(cap, d, params.angular_order)) {
                double t_in = ray_entry_radius(v, node.dir, x0, 4.0 * r);
                integral += node.weight *
                            radial_n_integral(kernel, v, node.dir, t_in, [&](double t) {
                                double gv = g(add(v, scale(t, node.dir)));
                                return gv < 0.0 ? -gv : 0.0;
                            });
            }
        }
        best = std::max(best, integral);
    }
    return std::pow(r, kernel.radial().alpha()) / eval_ell(kernel.radial().ell(), r) *
           best;
}

// ---------------------------------------------------------------------------
// exterior mass and M(x0, r)
// ---------------------------------------------------------------------------

double exterior_mass(const JumpKernel& kernel, const Vec& x0, double R,
                     const QuadratureParams& params) {
    if (R <= 0.0) throw std::domain_error("exterior_mass: R must be positive");
    const int d = kernel.dim();
    double total = 0.0;
    for (const auto& cap : kernel.cones().caps())
        for (const auto& node : symmetrized_cap_rule(cap, d, params.angular_order))
            total += node.weight *
                     radial_n_integral(kernel, x0, node.dir, R, [](double) { return 1.0; });
    return total;
}

double big_M(const JumpKernel& kernel, const Vec& x0, double r,
             const QuadratureParams& params) {
    if (!(r > 0.0 && r < 0.25)) throw std::domain_error("big_M: r must lie in (0, 1/4)");
    double mass = exterior_mass(kernel, x0, 4.0 * r, params);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw NumericalError("big_M: exterior mass vanishes or diverges");
    return 1.0 / mass;
}

// ---------------------------------------------------------------------------
// nu measure and eta
// ---------------------------------------------------------------------------

double nu_measure(const RadialProfile& gamma, int dim, const TailMeasureQuery& query,
                  const QuadratureParams& params) {
    double denom = sphere_surface(dim) *
                   gamma.radial_mass(query.r, std::numeric_limits<double>::infinity(),
                                     dim);
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw NumericalError("nu_measure: normalizing mass vanishes or diverges");
    if (query.region.is_empty()) return 0.0;

    if (dist(query.x, query.x0) == 0.0) {
        // radial around the base point: the angular integral is exact
        return sphere_surface(dim) *
               gamma.radial_mass(query.region.inner, query.region.outer, dim) / denom;
    }
    double numer = 0.0;
    for (const auto& node : full_sphere_rule(dim, params.angular_order)) {
        double t_in = ray_entry_radius(query.x, node.dir, query.x0, query.region.inner);
        double t_out = std::isinf(query.region.outer)
                           ? std::numeric_limits<double>::infinity()
                           : ray_entry_radius(query.x, node.dir, query.x0,
                                              query.region.outer);
        numer += node.weight * gamma.radial_mass(t_in, t_out, dim);
    }
    return numer / denom;
}

EtaReport eta_rj(const RadialProfile& gamma, int dim, const Vec& x0, double r, int j,
                 const std::vector<Vec>& x_grid, const QuadratureParams& params) {
    if (j < 1) throw std::domain_error("eta_rj: j must be >= 1");
    if (x_grid.empty()) throw std::domain_error("eta_rj: empty x grid");
    double eta = 0.0;
    auto region = RadialRegion::complement_of_ball(std::ldexp(r, j));  // 2^j r
    for (const auto& x : x_grid)
        eta = std::max(eta, nu_measure(gamma, dim, {x0, r, x, region}, params));
    return {eta, std::pow(eta, 1.0 / j), j};
}

}  // namespace jumplab
