#include "jumplab/geometry.hpp"

#include <cmath>
#include <sstream>

#include "jumplab/sphere.hpp"

namespace jumplab {

double half_angle_from_chordal(double rho) {
    if (!(rho > 0.0 && rho <= 2.0))
        throw std::domain_error("half_angle_from_chordal: rho must lie in (0,2]");
    return std::acos(std::max(-1.0, 1.0 - 0.5 * rho * rho));
}

double chordal_from_half_angle(double theta) {
    return std::sqrt(2.0 * (1.0 - std::cos(theta)));
}

double lambda_max(double theta) {
    if (!(theta > 0.0 && theta <= 0.5 * M_PI))
        throw std::domain_error("lambda_max: theta must lie in (0, pi/2]");
    return std::sin(theta) / 8.0;
}

double lambda_max_restricted(double theta) {
    if (!(theta > 0.0 && theta <= 0.5 * M_PI))
        throw std::domain_error("lambda_max_restricted: theta must lie in (0, pi/2]");
    return std::sin(theta) / 16.0;
}

double separation_cosine(const Vec& u, const Vec& v, const UnitVector& xi) {
    Vec diff = sub(u, v);
    double n = norm(diff);
    if (n == 0.0) throw std::domain_error("separation_cosine: u and v coincide");
    return std::fabs(dot(diff, xi.vec())) / n;
}

Cone::Cone(UnitVector axis_, double chordal)
    : axis(std::move(axis_)),
      chordal_radius(chordal),
      theta(half_angle_from_chordal(chordal)),
      cos_theta(1.0 - 0.5 * chordal * chordal) {
    if (std::fabs(chordal_from_half_angle(theta) - chordal) > 1e-12)
        throw std::domain_error("Cone: chordal radius and half-angle inconsistent");
}

bool Cone::contains(const Vec& x) const {
    double n = norm(x);
    if (n == 0.0) return false;
    return std::fabs(dot(x, axis.vec())) >= cos_theta * n;
}

double ChainMargins::min() const {
    return std::min(std::min(m1, m2), std::min(m3, m4));
}

namespace {

// the lambda bounds only make sense for angles up to pi/2; a wider cap
// certifies the pi/2 cone as well
double effective_theta(double theta) { return std::min(theta, 0.5 * M_PI); }

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }

// min over v in the closed ball B(a,s) of <w-v, xi>/|w-v|
double worst_signed_cos(const Vec& w, const Vec& a, double s, const Vec& xi) {
    Vec c = sub(w, a);
    double nc = norm(c);
    if (nc <= s) return -1.0;
    double ang = std::acos(clamp1(dot(c, xi) / nc)) + std::asin(clamp1(s / nc));
    return ang >= M_PI ? -1.0 : std::cos(ang);
}

// min over v in the closed ball B(a,s) of |<w-v, xi>| / |w-v|
double worst_abs_cos(const Vec& w, const Vec& a, double s, const Vec& xi) {
    Vec c = sub(w, a);
    double nc = norm(c);
    if (nc <= s) return 0.0;
    double ang = std::acos(clamp1(std::fabs(dot(c, xi)) / nc)) + std::asin(clamp1(s / nc));
    return std::cos(std::min(ang, 0.5 * M_PI));
}

int default_samples(int d) { return d == 2 ? 256 : d == 3 ? 1024 : 512; }

struct MarginEval {
    const Vec* x0;
    const Vec* x0_tilde;
    const Vec* z;
    const Vec* xi;
    double r, lambda, cos_theta;
    const std::vector<Vec>* dirs;

    double m1() const {
        double worst = 1.0;
        for (const auto& dir : *dirs) {
            Vec w = add(*x0_tilde, scale(2.0 * lambda * r, dir));
            worst = std::min(worst,
                             worst_abs_cos(w, *x0, 2.0 * lambda * r, *xi) - cos_theta);
        }
        return worst;
    }
    double m2(const Vec& z0_tilde) const {
        double worst = 1.0;
        for (const auto& dir : *dirs) {
            Vec w = add(z0_tilde, scale(0.25 * lambda * r, dir));
            worst = std::min(
                worst, worst_signed_cos(w, *x0_tilde, 2.0 * lambda * r, *xi) - cos_theta);
        }
        return worst;
    }
    double m3(const Vec& z0_tilde) const {
        double worst = 1.0;
        for (const auto& dir : *dirs) {
            Vec w = add(z0_tilde, scale(0.25 * lambda * r, dir));
            Vec diff = sub(*z, w);
            double n = norm(diff);
            if (n == 0.0) return -1.0;
            worst = std::min(worst, dot(diff, *xi) / n - cos_theta);
        }
        return worst;
    }
    double m4(const Vec& z0_tilde) const {
        return dist(*z, *x0) - dist(*z, z0_tilde);
    }
    double objective(const Vec& z0_tilde) const {
        double m = m2(z0_tilde);
        m = std::min(m, m3(z0_tilde));
        m = std::min(m, m4(z0_tilde));
        return m;
    }
};

}  // namespace

ChainConfig build_chain(const Vec& x0, double r, const JumpKernel& kernel,
                        const Vec& u0, const Vec& z, std::optional<double> lambda_opt) {
    if (r <= 0.0) throw std::domain_error("build_chain: r must be positive");
    const int d = kernel.dim();
    if (dist(z, x0) < 1.5 * r)
        throw std::domain_error("build_chain: z must lie outside B(x0, 3r/2)");

    // select the cone containing z - u0 with the largest angular slack
    Vec dir = normalized(sub(z, u0));
    const ConeCap* best_cap = nullptr;
    double best_margin = 0.0;
    double best_dot = 0.0;
    for (const auto& cap : kernel.cones().caps()) {
        double c = dot(dir, cap.axis.vec());
        double margin = std::fabs(c) - cap.cos_theta;
        if (margin >= 0.0 && (!best_cap || margin > best_margin)) {
            best_cap = &cap;
            best_margin = margin;
            best_dot = c;
        }
    }
    if (!best_cap) throw NoConeError();

    double theta = effective_theta(best_cap->theta);
    double lambda = lambda_opt.value_or(0.9 * lambda_max_restricted(theta));
    if (lambda <= 0.0 || lambda > lambda_max(theta))
        throw std::domain_error("build_chain: lambda outside the admissible range");
    if (dist(u0, x0) > lambda * r)
        throw std::domain_error("build_chain: u0 must lie in B(x0, lambda r)");

    double sign = best_dot >= 0.0 ? 1.0 : -1.0;
    UnitVector xi(scale(sign, best_cap->axis.vec()));
    Vec x0_tilde = sub(x0, scale(0.5 * r, xi.vec()));

    MarginEval eval;
    auto coarse_dirs = sphere_points(d, 64);
    eval.x0 = &x0;
    eval.x0_tilde = &x0_tilde;
    eval.z = &z;
    eval.xi = &xi.vec();
    eval.r = r;
    eval.lambda = lambda;
    eval.cos_theta = std::cos(theta);
    eval.dirs = &coarse_dirs;

    // coarse scan over a deterministic point set on the half-radius sphere
    auto candidates = sphere_points(d, 1024);
    Vec best_p = candidates.front();
    double best_val = -2.0;
    for (const auto& p : candidates) {
        Vec cand = add(x0, scale(0.5 * r, p));
        double v = eval.objective(cand);
        if (v > best_val) {
            best_val = v;
            best_p = p;
        }
    }

    // local polish on the sphere: tangent moves with shrinking step
    double step = 0.15;
    for (int it = 0; it < 20; ++it) {
        auto frame = frame_with_axis(best_p);
        bool improved = false;
        for (std::size_t k = 1; k < frame.size(); ++k) {
            for (double s : {step, -step}) {
                Vec q(d);
                for (int i = 0; i < d; ++i)
                    q[i] = std::cos(s) * best_p[i] + std::sin(s) * frame[k][i];
                q = normalized(q);
                double v = eval.objective(add(x0, scale(0.5 * r, q)));
                if (v > best_val) {
                    best_val = v;
                    best_p = q;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.618;
    }

    Vec z0_tilde = add(x0, scale(0.5 * r, best_p));
    ChainConfig cfg{x0,      r, lambda, xi, x0_tilde, z0_tilde, z,
                    Cone(best_cap->axis, chordal_from_half_angle(theta))};
    ChainMargins m = verify_chain(cfg, cfg.cone);
    if (!m.all_nonnegative()) {
        std::ostringstream os;
        os << "build_chain: no feasible z0_tilde found; worst margins " << m.m1 << " "
           << m.m2 << " " << m.m3 << " " << m.m4;
        throw std::runtime_error(os.str());
    }
    return cfg;
}

ChainMargins verify_chain(const ChainConfig& config, const Cone& cone,
                          int boundary_samples) {
    const int d = static_cast<int>(config.x0.size());
    int ns = boundary_samples > 0 ? boundary_samples : default_samples(d);
    auto dirs = sphere_points(d, static_cast<std::size_t>(ns));
    MarginEval eval;
    eval.x0 = &config.x0;
    eval.x0_tilde = &config.x0_tilde;
    eval.z = &config.z;
    eval.xi = &config.xi.vec();
    eval.r = config.r;
    eval.lambda = config.lambda;
    eval.cos_theta = std::cos(effective_theta(cone.theta));
    eval.dirs = &dirs;
    return {eval.m1(), eval.m2(config.z0_tilde), eval.m3(config.z0_tilde),
            eval.m4(config.z0_tilde)};
}

}  // namespace jumplab
