#include "jumplab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jumplab/geometry.hpp"
#include "jumplab/quad1d.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/sphere.hpp"
#include "jumplab/stats.hpp"

namespace jumplab {

// ---------------------------------------------------------------------------
// ExteriorData
// ---------------------------------------------------------------------------

ExteriorData ExteriorData::constant(double c) {
    ExteriorData g;
    g.kind_ = Kind::Constant;
    g.c_ = c;
    return g;
}

ExteriorData ExteriorData::indicator_ball(Vec center, double radius) {
    if (radius <= 0.0) throw std::domain_error("ExteriorData: radius must be > 0");
    ExteriorData g;
    g.kind_ = Kind::IndicatorBall;
    g.center_a_ = std::move(center);
    g.radius_a_ = radius;
    return g;
}

ExteriorData ExteriorData::signed_bump(Vec pos_center, double pos_radius, double amp_pos,
                                       Vec neg_center, double neg_radius,
                                       double amp_neg) {
    if (pos_radius <= 0.0 || neg_radius <= 0.0 || amp_pos < 0.0 || amp_neg < 0.0)
        throw std::domain_error("ExteriorData: bad signed-bump parameters");
    if (dist(pos_center, neg_center) < pos_radius + neg_radius)
        throw std::domain_error("ExteriorData: signed-bump parts must be disjoint");
    ExteriorData g;
    g.kind_ = Kind::SignedBump;
    g.center_a_ = std::move(pos_center);
    g.radius_a_ = pos_radius;
    g.amp_a_ = amp_pos;
    g.center_b_ = std::move(neg_center);
    g.radius_b_ = neg_radius;
    g.amp_b_ = amp_neg;
    return g;
}

ExteriorData ExteriorData::radial(Vec center, RadialProfile profile, int dim) {
    ExteriorData g;
    g.kind_ = Kind::Radial;
    g.center_a_ = std::move(center);
    g.profile_ = std::move(profile);
    g.dim_ = dim;
    return g;
}

double ExteriorData::value(const Vec& z) const {
    switch (kind_) {
        case Kind::Constant:
            return c_;
        case Kind::IndicatorBall:
            return dist(z, center_a_) <= radius_a_ ? 1.0 : 0.0;
        case Kind::SignedBump: {
            if (dist(z, center_a_) <= radius_a_) return amp_a_;
            if (dist(z, center_b_) <= radius_b_) return -amp_b_;
            return 0.0;
        }
        case Kind::Radial: {
            double s = dist(z, center_a_);
            return s > 0.0 ? profile_->j(s, dim_) : 0.0;
        }
    }
    return 0.0;
}

bool ExteriorData::nonnegative() const {
    switch (kind_) {
        case Kind::Constant:
            return c_ >= 0.0;
        case Kind::SignedBump:
            return amp_b_ == 0.0;
        default:
            return true;
    }
}

// ---------------------------------------------------------------------------
// exit statistics
// ---------------------------------------------------------------------------

namespace {

MCEstimate to_estimate(const std::vector<double>& xs, long censored) {
    auto s = summarize(xs);
    MCEstimate e{s.mean, s.std_error, s.n, 0.0};
    long total = s.n + censored;
    if (total > 0) e.censored_fraction = static_cast<double>(censored) / total;
    return e;
}

}  // namespace

ExitStats estimate_exit_stats(const JumpKernel& kernel, const Vec& x, const Ball& ball,
                              long n, const std::vector<double>& times,
                              const SimConfig& config, int threads) {
    if (n < 2) throw std::domain_error("estimate_exit_stats: n must be >= 2");
    config.validate();

    std::vector<double> taus(n);
    std::vector<char> cens(n);
    run_replicas(n, threads, [&](long rep) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(rep));
        auto s = simulate_until_exit(kernel, x, ball, config, rng);
        taus[rep] = s.tau;
        cens[rep] = s.censored ? 1 : 0;
        return 0.0;
    });

    ExitStats out;
    std::vector<double> kept;
    for (long i = 0; i < n; ++i) {
        if (cens[i])
            ++out.censored;
        else
            kept.push_back(taus[i]);
    }
    if (kept.empty())
        throw std::runtime_error("estimate_exit_stats: every replica was censored");
    out.tau = to_estimate(kept, out.censored);

    double r = ball.radius;
    out.normalized_tau = out.tau.mean * eval_ell(kernel.radial().ell(), r) /
                         std::pow(r, kernel.radial().alpha());
    for (double t : times) {
        std::vector<double> ind;
        ind.reserve(kept.size());
        for (double tau : kept) ind.push_back(tau <= t ? 1.0 : 0.0);
        out.survival.emplace_back(t, to_estimate(ind, out.censored));
    }
    return out;
}

// ---------------------------------------------------------------------------
// hitting ratios
// ---------------------------------------------------------------------------

std::vector<KsRatio> estimate_ks_ratio(const JumpKernel& kernel, const Vec& x0, double r,
                                       double lambda,
                                       const std::vector<double>& volume_fractions,
                                       long n, const SimConfig& config, int threads) {
    config.validate();
    double theta = std::min(kernel.cones().governing_theta(), 0.5 * M_PI);
    if (!(lambda > 0.0 && lambda <= lambda_max(theta)))
        throw std::domain_error("estimate_ks_ratio: lambda outside (0, sin(theta)/8]");

    const int d = kernel.dim();
    Ball container{x0, r};
    // start on the lambda*r sphere along the first cap axis: inside B(x0, lambda r)
    // but outside every proper-fraction target, and reachable for cone kernels
    Vec start = add(x0, scale(lambda * r, kernel.cones().caps()[0].axis.vec()));
    std::vector<KsRatio> out;
    for (double f : volume_fractions) {
        if (!(f > 0.0 && f <= 1.0))
            throw std::domain_error("estimate_ks_ratio: fractions must lie in (0,1]");
        double a_radius = lambda * r * std::pow(f, 1.0 / d);
        Ball target{x0, a_radius};
        std::vector<double> hits(n);
        run_replicas(n, threads, [&](long rep) {
            RngStream rng(config.seed, static_cast<std::uint64_t>(rep));
            auto res = hitting_before_exit(kernel, start, {target}, container, config, rng);
            hits[rep] = res.hit ? 1.0 : 0.0;
            return 0.0;
        });
        KsRatio row;
        row.fraction = f;
        row.probability = to_estimate(hits, 0);
        row.volume_ratio = std::pow(a_radius / r, d);
        row.ratio = row.probability.mean / row.volume_ratio;
        out.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// harmonic evaluation
// ---------------------------------------------------------------------------

MCEstimate evaluate_harmonic(const JumpKernel& kernel, const Ball& domain,
                             const ExteriorData& g, const Vec& x, long n,
                             const SimConfig& config, int threads) {
    config.validate();
    std::vector<double> vals(n);
    std::vector<char> cens(n);
    run_replicas(n, threads, [&](long rep) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(rep));
        auto s = simulate_until_exit(kernel, x, domain, config, rng);
        cens[rep] = s.censored ? 1 : 0;
        vals[rep] = s.censored ? 0.0 : g.value(s.x_post);
        return 0.0;
    });
    std::vector<double> kept;
    long censored = 0;
    for (long i = 0; i < n; ++i) {
        if (cens[i])
            ++censored;
        else
            kept.push_back(vals[i]);
    }
    if (kept.empty())
        throw std::runtime_error("evaluate_harmonic: every replica was censored");
    return to_estimate(kept, censored);
}

HarnackReport harnack_report(const JumpKernel& kernel, const Vec& x0, double r,
                             const ExteriorData& g, int probe_count, long n,
                             const SimConfig& config, int threads) {
    if (!(r > 0.0 && r < 0.25))
        throw std::domain_error("harnack_report: r must lie in (0, 1/4)");
    Ball domain{x0, 4.0 * r};
    HarnackReport rep;
    double worst_se = 0.0;
    // distinct seeds per probe so probe errors are independent
    SimConfig probe_cfg = config;
    int idx = 0;
    for (const auto& p : ball_probes(x0, r, probe_count)) {
        probe_cfg.seed = config.seed + 1000003ULL * static_cast<std::uint64_t>(++idx);
        auto est = evaluate_harmonic(kernel, domain, g, p, n, probe_cfg, threads);
        rep.probe_values.push_back(est.mean);
        worst_se = std::max(worst_se, est.std_error);
    }
    rep.sup = *std::max_element(rep.probe_values.begin(), rep.probe_values.end());
    rep.inf = *std::min_element(rep.probe_values.begin(), rep.probe_values.end());
    rep.tail_term = harnack_tail_term(kernel, x0, r,
                                     [&](const Vec& z) { return g.value(z); });
    rep.inf_positive = rep.inf > 3.0 * worst_se;
    if (rep.inf_positive) {
        rep.quotient = rep.sup / rep.inf;
        rep.c1 = std::max(0.0, (rep.sup - rep.tail_term) / rep.inf);
        rep.slack = rep.c1 * rep.inf + rep.tail_term - rep.sup;
    }
    return rep;
}

RestrictedHarnack restricted_harnack_check(const JumpKernel& kernel, const Vec& x0,
                                           double r, double lambda,
                                           const ExteriorData& H, const Vec& x,
                                           const Vec& y, long n,
                                           const SimConfig& config, int threads) {
    double theta = std::min(kernel.cones().governing_theta(), 0.5 * M_PI);
    if (!(lambda > 0.0 && lambda <= lambda_max_restricted(theta)))
        throw std::domain_error(
            "restricted_harnack_check: lambda outside (0, sin(theta)/16]");
    if (dist(x, x0) > lambda * r || dist(y, x0) > lambda * r)
        throw std::domain_error(
            "restricted_harnack_check: probes must lie in B(x0, lambda r)");

    RestrictedHarnack out;
    out.numerator = evaluate_harmonic(kernel, Ball{x0, lambda * r}, H, x, n, config,
                                      threads);
    SimConfig cfg2 = config;
    cfg2.seed = config.seed ^ 0x9E3779B97F4A7C15ULL;
    out.denominator = evaluate_harmonic(kernel, Ball{x0, r}, H, y, n, cfg2, threads);
    out.denominator_zero =
        out.denominator.mean <= 3.0 * out.denominator.std_error;
    if (!out.denominator_zero) out.ratio = out.numerator.mean / out.denominator.mean;
    return out;
}

HolderFit holder_fit(const JumpKernel& kernel, const Vec& x0, double R,
                     const ExteriorData& g, const std::vector<double>& scales,
                     int probe_pairs, long n, const SimConfig& config, int threads) {
    if (scales.size() < 3) throw std::domain_error("holder_fit: need at least 3 scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0 && scales[i] <= 0.5 * R))
            throw std::domain_error("holder_fit: scales must lie in (0, R/2]");
        if (i > 0 && scales[i] >= scales[i - 1])
            throw std::domain_error("holder_fit: scales must be strictly decreasing");
    }
    Ball domain{x0, R};
    HolderFit fit;
    fit.scales = scales;
    std::vector<double> osc_se;  // SE sum of the pair achieving each scale's max
    int idx = 0;
    for (double rho : scales) {
        // random probe pairs inside B(x0, rho); one deterministic stream per scale
        RngStream pair_rng(config.seed, 0xABCDEF00ULL + static_cast<std::uint64_t>(idx));
        double osc = 0.0, se_at_max = 0.0;
        for (int p = 0; p < probe_pairs; ++p) {
            auto draw_point = [&]() {
                Vec v(kernel.dim());
                for (;;) {
                    for (auto& c : v) c = pair_rng.uniform(-1.0, 1.0);
                    if (dot(v, v) <= 1.0) break;
                }
                return add(x0, scale(rho, v));
            };
            Vec a = draw_point(), b = draw_point();
            SimConfig ca = config, cb = config;
            ca.seed = config.seed + 7919ULL * static_cast<std::uint64_t>(idx * probe_pairs + p) + 1;
            cb.seed = ca.seed ^ 0x5DEECE66DULL;
            auto ea = evaluate_harmonic(kernel, domain, g, a, n, ca, threads);
            auto eb = evaluate_harmonic(kernel, domain, g, b, n, cb, threads);
            double d = std::fabs(ea.mean - eb.mean);
            if (d > osc) {
                osc = d;
                se_at_max = ea.std_error + eb.std_error;
            }
        }
        fit.oscillation.push_back(osc);
        osc_se.push_back(se_at_max);
        ++idx;
    }
    bool degenerate = true;
    for (std::size_t i = 0; i < fit.oscillation.size(); ++i)
        if (fit.oscillation[i] > 3.0 * osc_se[i]) degenerate = false;
    if (degenerate)
        throw NumericalError("holder_fit: oscillation indistinguishable from zero");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (fit.oscillation[i] <= 0.0) continue;
        lx.push_back(std::log(scales[i]));
        ly.push_back(std::log(fit.oscillation[i]));
    }
    if (lx.size() < 3)
        throw NumericalError("holder_fit: too few usable scales for the fit");
    fit.beta = ls_slope(lx, ly);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double res = ly[i] - (my + fit.beta * (lx[i] - mx));
        ss += res * res;
    }
    fit.residual = std::sqrt(ss / lx.size());
    return fit;
}

// ---------------------------------------------------------------------------
// averaging constant
// ---------------------------------------------------------------------------

AveragingReport averaging_check(const std::function<double(double)>& g, int dim,
                                const Vec& x0, double r, const Vec& z,
                                const std::vector<Vec>& x_samples, int angular_order) {
    if (r <= 0.0) throw std::domain_error("averaging_check: r must be positive");
    if (dist(z, x0) <= 2.0 * r)
        throw std::domain_error("averaging_check: need |z - x0| > 2r");
    if (x_samples.empty()) throw std::domain_error("averaging_check: empty sample set");

    // int_{B(x0,r)} g(|z-u|) du in polar coordinates around x0; the integrand
    // is smooth since z stays away from the ball
    double integral = 0.0;
    for (const auto& node : full_sphere_rule(dim, angular_order)) {
        integral += node.weight *
                    gauss_integrate(
                        [&](double s) {
                            Vec u = add(x0, scale(s, node.dir));
                            return g(dist(z, u)) * std::pow(s, dim - 1);
                        },
                        0.0, r, 64);
    }

    AveragingReport out;
    out.integral = integral;
    for (const auto& x : x_samples) {
        if (dist(x, x0) > 0.5 * r)
            throw std::domain_error("averaging_check: samples must lie in B(x0, r/2)");
        out.c_prime = std::max(out.c_prime,
                               g(dist(z, x)) * std::pow(r, dim) / integral);
    }
    return out;
}

}  // namespace jumplab
