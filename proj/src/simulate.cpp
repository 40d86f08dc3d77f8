#include "jumplab/simulate.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "jumplab/quad1d.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/sphere.hpp"

namespace jumplab {

double Ball::volume() const {
    const double d = static_cast<double>(center.size());
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(radius, d);
}

SetSpec SetSpec::ball(Vec center, double radius) {
    if (radius <= 0.0) throw std::domain_error("SetSpec::ball: radius must be > 0");
    return {Kind::Ball, std::move(center), radius, 0.0};
}

SetSpec SetSpec::annulus(Vec center, double inner, double outer) {
    if (!(0.0 <= inner && inner < outer))
        throw std::domain_error("SetSpec::annulus: need 0 <= inner < outer");
    return {Kind::Annulus, std::move(center), inner, outer};
}

bool SetSpec::contains(const Vec& x) const {
    double s = dist(x, center);
    if (kind == Kind::Ball) return s <= r1;
    return r1 <= s && s <= r2;
}

bool disjoint(const SetSpec& a, const SetSpec& b) {
    double s = dist(a.center, b.center);
    double a_out = a.kind == SetSpec::Kind::Ball ? a.r1 : a.r2;
    double b_out = b.kind == SetSpec::Kind::Ball ? b.r1 : b.r2;
    if (s >= a_out + b_out) return true;
    // one shape entirely inside the other's inner hole
    if (a.kind == SetSpec::Kind::Annulus && s + b_out <= a.r1) return true;
    if (b.kind == SetSpec::Kind::Annulus && s + a_out <= b.r1) return true;
    return false;
}

void SimConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("SimConfig: epsilon must lie in (0,1)");
    if (max_events < 1) throw std::domain_error("SimConfig: max_events must be >= 1");
    if (time_horizon && *time_horizon <= 0.0)
        throw std::domain_error("SimConfig: time horizon must be positive");
}

double envelope_rate(const JumpKernel& kernel, double epsilon) {
    if (epsilon <= 0.0) throw std::domain_error("envelope_rate: epsilon must be > 0");
    const int d = kernel.dim();
    double angular = 0.0;
    for (const auto& cap : kernel.cones().caps())
        angular += cap.upper * symmetrized_cap_surface(cap, d);
    double radial = kernel.radial().radial_mass(
        epsilon, std::numeric_limits<double>::infinity(), d);
    return angular * radial;
}

// ---------------------------------------------------------------------------
// JumpSampler
// ---------------------------------------------------------------------------

JumpSampler::JumpSampler(const JumpKernel& kernel, double epsilon)
    : kernel_(&kernel), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("JumpSampler: epsilon must be > 0");
    const int d = kernel.dim();
    if (d > 3) throw std::domain_error("JumpSampler: only d <= 3 supported");
    rate_ = envelope_rate(kernel, epsilon);

    double acc = 0.0;
    for (const auto& cap : kernel.cones().caps()) {
        acc += cap.upper * symmetrized_cap_surface(cap, d);
        cap_weights_.push_back(acc);
        frames_.push_back(d == 3 ? frame_with_axis(cap.axis.vec()) : std::vector<Vec>{});
    }

    // radial proposal: envelope c * t^{-1-alpha} piecewise, exact when the
    // density matches the envelope on the piece
    const RadialProfile& rad = kernel.radial();
    const double al = rad.alpha();
    auto env_mass = [&](double c, double lo, double hi) {
        double hi_term = std::isinf(hi) ? 0.0 : std::pow(hi, -al);
        return c * (std::pow(lo, -al) - hi_term) / al;
    };
    if (epsilon < 1.0) {
        double c = rad.ell().sup_on(epsilon, 1.0);
        pieces_.push_back({epsilon, 1.0, c, env_mass(c, epsilon, 1.0),
                           rad.ell().is_constant()});
    }
    double lo = std::max(epsilon, 1.0);
    double c1 = rad.ell().eval(1.0);
    switch (rad.tail().kind) {
        case TailKind::Power:
            pieces_.push_back({lo, std::numeric_limits<double>::infinity(), c1,
                               env_mass(c1, lo, std::numeric_limits<double>::infinity()),
                               true});
            break;
        case TailKind::Truncated:
            if (rad.tail().param > lo)
                pieces_.push_back(
                    {lo, rad.tail().param, c1, env_mass(c1, lo, rad.tail().param), true});
            break;
        case TailKind::Exponential:
            // envelope drops the e^{-rate (t-1)} factor; rejection restores it
            pieces_.push_back({lo, std::numeric_limits<double>::infinity(), c1,
                               env_mass(c1, lo, std::numeric_limits<double>::infinity()),
                               false});
            break;
    }
    piece_mass_total_ = 0.0;
    for (const auto& p : pieces_) piece_mass_total_ += p.env_mass;
    if (!(piece_mass_total_ > 0.0)) rate_ = 0.0;  // degenerate: nothing to sample
}

Vec JumpSampler::sample_direction(std::size_t cap_index, RngStream& rng) const {
    const int d = kernel_->dim();
    const ConeCap& cap = kernel_->cones().caps()[cap_index];
    double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    if (d == 1) return {sign * cap.axis.vec()[0]};
    if (d == 2) {
        double phi0 = std::atan2(cap.axis.vec()[1], cap.axis.vec()[0]);
        double phi;
        if (cap.cos_theta <= 0.0) {
            phi = rng.uniform(0.0, 2.0 * M_PI);  // symmetrized cap is the circle
        } else {
            phi = phi0 + cap.theta * rng.uniform(-1.0, 1.0);
            phi = sign > 0.0 ? phi : phi + M_PI;
        }
        return {std::cos(phi), std::sin(phi)};
    }
    // d == 3: u = cos(polar angle) uniform on the cap, azimuth uniform
    double u, az = rng.uniform(0.0, 2.0 * M_PI);
    if (cap.cos_theta <= 0.0) {
        u = rng.uniform(-1.0, 1.0);
        sign = 1.0;
    } else {
        u = 1.0 - rng.uniform() * (1.0 - cap.cos_theta);
    }
    double su = std::sqrt(std::max(0.0, 1.0 - u * u));
    const auto& fr = frames_[cap_index];
    Vec dir(3);
    for (int c = 0; c < 3; ++c)
        dir[c] = sign * (u * fr[0][c] + su * (std::cos(az) * fr[1][c] +
                                              std::sin(az) * fr[2][c]));
    return dir;
}

double JumpSampler::sample_radius(RngStream& rng) const {
    const RadialProfile& rad = kernel_->radial();
    const double al = rad.alpha();
    const int d = kernel_->dim();
    for (int it = 0; it < 100000; ++it) {
        // pick a piece by envelope mass
        double u = rng.uniform() * piece_mass_total_;
        const Piece* piece = &pieces_.back();
        for (const auto& p : pieces_) {
            if (u <= p.env_mass) {
                piece = &p;
                break;
            }
            u -= p.env_mass;
        }
        // inverse CDF of t^{-1-alpha} on [lo, hi]
        double lo_pow = std::pow(piece->lo, -al);
        double hi_pow = std::isinf(piece->hi) ? 0.0 : std::pow(piece->hi, -al);
        double t = std::pow(lo_pow - rng.uniform() * (lo_pow - hi_pow), -1.0 / al);
        if (piece->exact) return t;
        // accept with (radial density j(t) t^{d-1}) / (envelope c t^{-1-alpha})
        double accept = rad.j(t, d) * std::pow(t, static_cast<double>(d) - 1.0) /
                        (piece->env_const * std::pow(t, -1.0 - al));
        if (rng.uniform() < accept) return t;
    }
    throw std::runtime_error("JumpSampler: radial rejection failed to terminate");
}

bool JumpSampler::sample(const Vec& x, RngStream& rng, Vec& h) const {
    if (!(rate_ > 0.0))
        throw std::runtime_error("JumpSampler: degenerate envelope (zero rate)");
    // cap proportional to k2-weighted surface
    double u = rng.uniform() * cap_weights_.back();
    std::size_t idx = 0;
    while (idx + 1 < cap_weights_.size() && u > cap_weights_[idx]) ++idx;

    Vec dir = sample_direction(idx, rng);
    double t = sample_radius(rng);
    h = scale(t, dir);

    double envelope = kernel_->cones().k2(dir) * kernel_->radial().j(t, kernel_->dim());
    double accept = kernel_->eval_n(x, h) / envelope;
    if (!(accept >= 0.0 && accept <= 1.0 + 1e-12))
        throw std::runtime_error("JumpSampler: acceptance ratio outside [0,1]");
    return rng.uniform() < accept;
}

// ---------------------------------------------------------------------------
// exit and hitting simulation
// ---------------------------------------------------------------------------

namespace {

// shared main loop; `stop` inspects each post-jump state and may finish early
template <typename StopFn>
ExitSample run_until(const JumpKernel& kernel, const Vec& start, const Ball& ball,
                     const SimConfig& config, RngStream& rng,
                     std::vector<JumpEvent>* event_log, const StopFn& stop) {
    config.validate();
    ExitSample out;
    out.x_pre = start;
    out.x_post = start;
    if (!ball.contains(start)) return out;  // immediate exit convention

    double rate = envelope_rate(kernel, config.epsilon);
    if (!(rate > 0.0)) {
        out.censored = true;
        out.tau = config.time_horizon.value_or(0.0);
        return out;
    }
    JumpSampler sampler(kernel, config.epsilon);
    Vec x = start;
    double t = 0.0;
    for (long ev = 0; ev < config.max_events; ++ev) {
        t += rng.exponential(rate);
        if (config.time_horizon && t > *config.time_horizon) {
            out.censored = true;
            out.tau = *config.time_horizon;
            out.x_pre = out.x_post = x;
            return out;
        }
        Vec h;
        bool real = sampler.sample(x, rng, h);
        if (!real) {
            ++out.n_fictitious;
            if (event_log) event_log->push_back({t, x, x, true});
            continue;
        }
        ++out.n_real_jumps;
        Vec y = add(x, h);
        if (event_log) event_log->push_back({t, x, y, false});
        if (!ball.contains(y) || stop(t, y)) {
            out.tau = t;
            out.x_pre = x;
            out.x_post = y;
            return out;
        }
        x = y;
    }
    out.censored = true;
    out.tau = t;
    out.x_pre = out.x_post = x;
    return out;
}

}  // namespace

ExitSample simulate_until_exit(const JumpKernel& kernel, const Vec& start,
                               const Ball& ball, const SimConfig& config,
                               RngStream& rng, std::vector<JumpEvent>* event_log) {
    return run_until(kernel, start, ball, config, rng, event_log,
                     [](double, const Vec&) { return false; });
}

HittingResult hitting_before_exit(const JumpKernel& kernel, const Vec& start,
                                  const std::vector<Ball>& target,
                                  const Ball& container, const SimConfig& config,
                                  RngStream& rng) {
    HittingResult res;
    for (const auto& b : target)
        if (dist(b.center, container.center) + b.radius > container.radius + 1e-12)
            throw std::domain_error(
                "hitting_before_exit: target must lie inside the container");
    auto in_target = [&](const Vec& p) {
        for (const auto& b : target)
            if (b.contains(p)) return true;
        return false;
    };
    if (in_target(start)) {
        res.hit = true;
        res.exit.x_pre = res.exit.x_post = start;
        return res;
    }
    res.exit = run_until(kernel, start, container, config, rng, nullptr,
                         [&](double, const Vec& y) { return in_target(y); });
    if (!res.exit.censored && in_target(res.exit.x_post) &&
        container.contains(res.exit.x_post)) {
        res.hit = true;
        res.hit_time = res.exit.tau;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Levy-system path statistics
// ---------------------------------------------------------------------------

namespace {

// intersections of the outward ray x + t*dir, t >= 0, with a shape; at most
// two disjoint segments (annulus seen from inside the hole)
struct Segments {
    double a[2], b[2];
    int count = 0;
    void push(double lo, double hi) {
        if (hi > lo) {
            a[count] = lo;
            b[count] = hi;
            ++count;
        }
    }
};

bool ray_ball(const Vec& x, const Vec& dir, const Vec& c, double R, double& t0,
              double& t1) {
    Vec w = sub(x, c);
    double bq = dot(dir, w);
    double disc = bq * bq - dot(w, w) + R * R;
    if (disc <= 0.0) return false;
    double s = std::sqrt(disc);
    t0 = std::max(0.0, -bq - s);
    t1 = -bq + s;
    return t1 > t0;
}

Segments ray_shape(const Vec& x, const Vec& dir, const SetSpec& shape) {
    Segments seg;
    double o0, o1;
    if (!ray_ball(x, dir, shape.center,
                  shape.kind == SetSpec::Kind::Ball ? shape.r1 : shape.r2, o0, o1))
        return seg;
    if (shape.kind == SetSpec::Kind::Ball || shape.r1 == 0.0) {
        seg.push(o0, o1);
        return seg;
    }
    double i0, i1;
    if (!ray_ball(x, dir, shape.center, shape.r1, i0, i1)) {
        seg.push(o0, o1);
        return seg;
    }
    seg.push(o0, std::min(o1, i0));
    seg.push(std::max(o0, i1), o1);
    return seg;
}

double n_segment_integral(const JumpKernel& kernel, const Vec& x, const Vec& dir,
                          double a, double b) {
    const int d = kernel.dim();
    const RadialProfile& rad = kernel.radial();
    a = std::max(a, 1e-300);
    if (b <= a) return 0.0;
    if (kernel.is_translation_invariant() || kernel.modulator().kind() ==
                                                 SpatialModulator::Kind::ConstantOne) {
        return kernel.angular_k(x, dir, 0.5 * (a + std::min(b, 2.0 * a))) *
               rad.radial_mass(a, b, d);
    }
    // x-dependent angular factor: integrate directly, splitting at the seam
    auto G = [&](double t) {
        return kernel.angular_k(x, dir, t) * rad.j(t, d) * std::pow(t, d - 1);
    };
    double total = 0.0;
    double mid = std::min(b, 1.0);
    if (a < mid) total += integrate_log_panels(G, a, mid);
    if (b > 1.0 && std::max(a, 1.0) < b)
        total += std::isinf(b) ? integrate_tail(G, std::max(a, 1.0), rad.alpha())
                               : integrate_log_panels(G, std::max(a, 1.0), b);
    return total;
}

}  // namespace

double jump_intensity_into(const JumpKernel& kernel, const Vec& x,
                           const std::vector<SetSpec>& B, int angular_order) {
    const int d = kernel.dim();
    double total = 0.0;
    for (const auto& cap : kernel.cones().caps()) {
        for (const auto& node : symmetrized_cap_rule(cap, d, angular_order)) {
            double along = 0.0;
            for (const auto& shape : B) {
                Segments seg = ray_shape(x, node.dir, shape);
                for (int i = 0; i < seg.count; ++i)
                    along += n_segment_integral(kernel, x, node.dir, seg.a[i], seg.b[i]);
            }
            total += node.weight * along;
        }
    }
    return total;
}

LevyEstimates levy_system_paths(const JumpKernel& kernel, const Vec& start,
                                const std::vector<SetSpec>& A,
                                const std::vector<SetSpec>& B, double T, long n,
                                const SimConfig& config, int threads) {
    config.validate();
    if (T <= 0.0) throw std::domain_error("levy_system_paths: T must be positive");
    for (const auto& sa : A)
        for (const auto& sb : B)
            if (!disjoint(sa, sb))
                throw std::domain_error("levy_system_paths: A and B must be disjoint");

    auto in_union = [](const std::vector<SetSpec>& shapes, const Vec& p) {
        for (const auto& s : shapes)
            if (s.contains(p)) return true;
        return false;
    };

    double rate = envelope_rate(kernel, config.epsilon);
    if (!(rate > 0.0))
        throw std::runtime_error("levy_system_paths: degenerate envelope rate");
    JumpSampler sampler(kernel, config.epsilon);

    // per-replica packed result: count + integral
    std::vector<double> counts(n), integrals(n);
    auto body = [&](long rep) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(rep));
        Vec x = start;
        double t = 0.0;
        double count = 0.0, integral = 0.0;
        double intensity = in_union(A, x) ? jump_intensity_into(kernel, x, B) : 0.0;
        for (long ev = 0; ev < config.max_events; ++ev) {
            double hold = rng.exponential(rate);
            double until = std::min(T, t + hold);
            integral += intensity * (until - t);
            t += hold;
            if (t >= T) break;
            Vec h;
            if (!sampler.sample(x, rng, h)) continue;
            Vec y = add(x, h);
            if (in_union(A, x) && in_union(B, y)) count += 1.0;
            x = y;
            intensity = in_union(A, x) ? jump_intensity_into(kernel, x, B) : 0.0;
        }
        counts[rep] = count;
        integrals[rep] = integral;
        return 0.0;
    };
    run_replicas(n, threads, body);

    LevyEstimates est;
    est.n = n;
    double sc = 0.0, si = 0.0;
    for (long i = 0; i < n; ++i) {
        sc += counts[i];
        si += integrals[i];
    }
    est.count_mean = sc / n;
    est.integral_mean = si / n;
    double vc = 0.0, vi = 0.0;
    for (long i = 0; i < n; ++i) {
        vc += (counts[i] - est.count_mean) * (counts[i] - est.count_mean);
        vi += (integrals[i] - est.integral_mean) * (integrals[i] - est.integral_mean);
    }
    if (n > 1) {
        est.count_se = std::sqrt(vc / (n - 1) / n);
        est.integral_se = std::sqrt(vi / (n - 1) / n);
    }
    return est;
}

std::vector<double> run_replicas(long n, int threads,
                                 const std::function<double(long)>& body) {
    std::vector<double> out(static_cast<std::size_t>(n));
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) out[i] = body(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                out[i] = body(i);
            }
        });
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace jumplab
