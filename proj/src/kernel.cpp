#include "jumplab/kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jumplab/quad1d.hpp"
#include "jumplab/sphere.hpp"

namespace jumplab {

// ---------------------------------------------------------------------------
// SlowlyVaryingSpec
// ---------------------------------------------------------------------------

SlowlyVaryingSpec SlowlyVaryingSpec::constant(double c) {
    if (c <= 0.0) throw std::domain_error("SlowlyVaryingSpec: constant must be positive");
    SlowlyVaryingSpec s;
    s.factors_.push_back({false, c});
    return s;
}

SlowlyVaryingSpec SlowlyVaryingSpec::log_power(double p) {
    SlowlyVaryingSpec s;
    s.factors_.push_back({true, p});
    return s;
}

SlowlyVaryingSpec SlowlyVaryingSpec::product(const std::vector<SlowlyVaryingSpec>& parts) {
    if (parts.empty())
        throw std::domain_error("SlowlyVaryingSpec: empty product");
    SlowlyVaryingSpec s;
    for (const auto& p : parts)
        s.factors_.insert(s.factors_.end(), p.factors_.begin(), p.factors_.end());
    return s;
}

double SlowlyVaryingSpec::eval(double t) const {
    double v = 1.0;
    for (const auto& f : factors_) {
        if (f.is_log_power)
            v *= std::pow(std::log(M_E / t), f.value);
        else
            v *= f.value;
    }
    return v;
}

bool SlowlyVaryingSpec::is_constant() const {
    for (const auto& f : factors_)
        if (f.is_log_power && f.value != 0.0) return false;
    return true;
}

double SlowlyVaryingSpec::constant_value() const { return eval(1.0); }

double SlowlyVaryingSpec::sup_on(double a, double b) const {
    // log(e/t) is decreasing in t, so each factor is monotone on [a,b]
    double v = 1.0;
    for (const auto& f : factors_) {
        if (f.is_log_power) {
            double at_a = std::pow(std::log(M_E / a), f.value);
            double at_b = std::pow(std::log(M_E / b), f.value);
            v *= std::max(at_a, at_b);
        } else {
            v *= f.value;
        }
    }
    return v;
}

std::string SlowlyVaryingSpec::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " * ";
        if (factors_[i].is_log_power)
            os << "log(e/t)^" << factors_[i].value;
        else
            os << factors_[i].value;
    }
    return os.str();
}

double eval_ell(const SlowlyVaryingSpec& spec, double t) {
    if (!(t > 0.0 && t < 2.0))
        throw std::domain_error("eval_ell: t must lie in (0,2)");
    return spec.eval(t);
}

// ---------------------------------------------------------------------------
// RadialProfile
// ---------------------------------------------------------------------------

TailRule TailRule::truncated(double cutoff) {
    if (cutoff <= 1.0) throw std::domain_error("TailRule: truncation cutoff must be > 1");
    return {TailKind::Truncated, cutoff};
}

TailRule TailRule::exponential(double rate) {
    if (rate <= 0.0) throw std::domain_error("TailRule: exponential rate must be > 0");
    return {TailKind::Exponential, rate};
}

RadialProfile::RadialProfile(double alpha, SlowlyVaryingSpec ell, TailRule tail,
                             double kappa, double sigma)
    : alpha_(alpha), ell_(std::move(ell)), tail_(tail), kappa_(kappa), sigma_(sigma) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("RadialProfile: alpha must lie in (0,2)");
    if (kappa < 1.0) throw std::domain_error("RadialProfile: kappa must be >= 1");
    if (sigma <= 0.0) throw std::domain_error("RadialProfile: sigma must be > 0");
}

double RadialProfile::j(double t, int dim) const {
    if (t <= 0.0) throw std::domain_error("RadialProfile::j: t must be positive");
    if (t <= 1.0) return ell_.eval(t) * std::pow(t, -static_cast<double>(dim) - alpha_);
    double base = ell_.eval(1.0) * std::pow(t, -static_cast<double>(dim) - alpha_);
    switch (tail_.kind) {
        case TailKind::Power:
            return base;
        case TailKind::Truncated:
            return t <= tail_.param ? base : 0.0;
        case TailKind::Exponential:
            return base * std::exp(-tail_.param * (t - 1.0));
    }
    return base;
}

double RadialProfile::radial_mass(double a, double b, int dim) const {
    if (a <= 0.0) throw std::domain_error("radial_mass: lower bound must be positive");
    if (b <= a) return 0.0;
    const double al = alpha_;
    auto power_piece = [&](double c, double lo, double hi) {
        // c * int_lo^hi t^{-1-alpha} dt
        return c * (std::pow(lo, -al) - std::pow(hi, -al)) / al;
    };
    double total = 0.0;
    // piece inside (0,1]
    double lo = a, hi = std::min(b, 1.0);
    if (lo < hi) {
        if (ell_.is_constant()) {
            total += power_piece(ell_.constant_value(), lo, hi);
        } else {
            total += integrate_log_panels(
                [&](double t) { return ell_.eval(t) * std::pow(t, -1.0 - al); }, lo, hi);
        }
    }
    // tail piece (1, b]
    lo = std::max(a, 1.0);
    if (b > lo) {
        double c1 = ell_.eval(1.0);
        switch (tail_.kind) {
            case TailKind::Power:
                if (std::isinf(b))
                    total += c1 * std::pow(lo, -al) / al;
                else
                    total += power_piece(c1, lo, b);
                break;
            case TailKind::Truncated: {
                double hi2 = std::min(b, tail_.param);
                if (hi2 > lo) total += power_piece(c1, lo, hi2);
                break;
            }
            case TailKind::Exponential: {
                auto f = [&](double t) {
                    return c1 * std::pow(t, -1.0 - al) * std::exp(-tail_.param * (t - 1.0));
                };
                if (std::isinf(b))
                    total += integrate_tail(f, lo, al + tail_.param * lo);
                else
                    total += integrate_log_panels(f, lo, b);
                break;
            }
        }
    }
    return total;
}

double RadialProfile::radial_second_moment(double b) const {
    if (!(b > 0.0 && b <= 1.0))
        throw std::domain_error("radial_second_moment: b must lie in (0,1]");
    const double al = alpha_;
    if (ell_.is_constant())
        return ell_.constant_value() * std::pow(b, 2.0 - al) / (2.0 - al);
    return integrate_to_zero(
        [&](double t) { return ell_.eval(t) * std::pow(t, 1.0 - al); }, b, 1e-9);
}

double tail_mass(const RadialProfile& radial, int dim, double R) {
    if (R <= 0.0) throw std::domain_error("tail_mass: R must be positive");
    double m = radial.radial_mass(R, std::numeric_limits<double>::infinity(), dim);
    if (!std::isfinite(m)) throw std::runtime_error("tail_mass: divergent tail integral");
    return sphere_surface(dim) * m;
}

// ---------------------------------------------------------------------------
// ConeSystem
// ---------------------------------------------------------------------------

ConeSystem::ConeSystem(std::vector<std::tuple<UnitVector, double, double>> caps,
                       double delta)
    : delta_(delta) {
    if (caps.empty()) throw std::domain_error("ConeSystem: cap list must be non-empty");
    if (delta <= 0.0) throw std::domain_error("ConeSystem: delta must be > 0");
    for (auto& [axis, chordal, upper] : caps) {
        if (!(chordal > 0.0 && chordal <= 2.0))
            throw std::domain_error("ConeSystem: chordal radius must lie in (0,2]");
        if (upper < delta)
            throw std::domain_error("ConeSystem: upper value below delta");
        double ct = 1.0 - 0.5 * chordal * chordal;
        caps_.push_back({axis, chordal, upper, ct, std::acos(std::max(-1.0, ct))});
    }
    // sampling and per-cap quadrature assume pairwise disjoint symmetrized caps
    for (std::size_t i = 0; i < caps_.size(); ++i) {
        for (std::size_t k = i + 1; k < caps_.size(); ++k) {
            double c = std::fabs(dot(caps_[i].axis.vec(), caps_[k].axis.vec()));
            double sep = std::acos(std::min(1.0, c));
            if (sep < caps_[i].theta + caps_[k].theta)
                throw std::domain_error("ConeSystem: caps overlap; caps must be disjoint");
        }
    }
}

int ConeSystem::cap_containing(const Vec& unit_dir) const {
    for (std::size_t i = 0; i < caps_.size(); ++i) {
        double c = std::fabs(dot(unit_dir, caps_[i].axis.vec()));
        if (c >= caps_[i].cos_theta) return static_cast<int>(i);
    }
    return -1;
}

double ConeSystem::k1(const Vec& unit_dir) const {
    return cap_containing(unit_dir) >= 0 ? delta_ : 0.0;
}

double ConeSystem::k2(const Vec& unit_dir) const {
    int i = cap_containing(unit_dir);
    return i >= 0 ? caps_[i].upper : 0.0;
}

double ConeSystem::governing_theta() const {
    double t = caps_.front().theta;
    for (const auto& c : caps_) t = std::min(t, c.theta);
    return t;
}

std::vector<SphereNode> symmetrized_cap_rule(const ConeCap& cap, int dim, int order) {
    if (cap.cos_theta <= 0.0) return full_sphere_rule(dim, order);
    auto rule = cap_rule(cap.axis.vec(), cap.theta, order);
    std::vector<SphereNode> out = rule;
    for (const auto& n : rule) out.push_back({negate(n.dir), n.weight});
    return out;
}

double symmetrized_cap_surface(const ConeCap& cap, int dim) {
    if (cap.cos_theta <= 0.0) return sphere_surface(dim);
    return 2.0 * cap_surface(dim, cap.theta);
}

// ---------------------------------------------------------------------------
// SpatialModulator
// ---------------------------------------------------------------------------

SpatialModulator SpatialModulator::constant_one() { return SpatialModulator{}; }

SpatialModulator SpatialModulator::sinusoidal(Vec frequency) {
    SpatialModulator m;
    m.kind_ = Kind::Sinusoidal;
    m.freq_ = std::move(frequency);
    return m;
}

SpatialModulator SpatialModulator::patchwise(std::vector<double> values,
                                             double cell_size) {
    if (values.empty())
        throw std::domain_error("SpatialModulator: patch value list must be non-empty");
    for (double v : values)
        if (v < 0.0 || v > 1.0)
            throw std::domain_error("SpatialModulator: patch values must lie in [0,1]");
    if (cell_size <= 0.0)
        throw std::domain_error("SpatialModulator: cell size must be positive");
    SpatialModulator m;
    m.kind_ = Kind::Patchwise;
    m.values_ = std::move(values);
    m.cell_ = cell_size;
    return m;
}

double SpatialModulator::value(const Vec& x, const Vec& h) const {
    switch (kind_) {
        case Kind::ConstantOne:
            return 1.0;
        case Kind::Sinusoidal: {
            // cos on |<f,h>| keeps m(x,h) = m(x,-h) bit-exact
            double a = std::sin(dot(freq_, x));
            double b = std::cos(std::fabs(dot(freq_, h)));
            return 0.5 * (1.0 + a * b);
        }
        case Kind::Patchwise: {
            long long idx = 0;
            for (double xi : x)
                idx += static_cast<long long>(std::floor(xi / cell_));
            long long m = static_cast<long long>(values_.size());
            long long r = ((idx % m) + m) % m;
            return values_[static_cast<std::size_t>(r)];
        }
    }
    return 1.0;
}

// ---------------------------------------------------------------------------
// JumpKernel
// ---------------------------------------------------------------------------

JumpKernel::JumpKernel(int dim, ConeSystem cones, RadialProfile radial,
                       SpatialModulator mod)
    : dim_(dim),
      cones_(std::move(cones)),
      radial_(std::move(radial)),
      modulator_(std::move(mod)) {
    if (dim < 1) throw std::domain_error("JumpKernel: dim >= 1 required");
    if (cones_.dim() != dim)
        throw std::domain_error("JumpKernel: cone axes have wrong dimension");
}

double JumpKernel::angular_k(const Vec& x, const Vec& unit_dir, double t) const {
    int i = cones_.cap_containing(unit_dir);
    if (i < 0) return 0.0;
    double k1 = cones_.delta();
    double k2 = cones_.caps()[i].upper;
    if (k1 == k2) return k1;
    double m = modulator_.value(x, scale(t, unit_dir));
    double k = k1 + m * (k2 - k1);
    // clamp so the sandwich k1 <= k <= k2 holds exactly in floating point
    return std::min(std::max(k, k1), k2);
}

double JumpKernel::eval_n(const Vec& x, const Vec& h) const {
    double t = norm(h);
    if (t == 0.0) throw std::domain_error("eval_n: h must be nonzero");
    Vec dir = scale(1.0 / t, h);
    double k = angular_k(x, dir, t);
    if (k == 0.0) return 0.0;
    return k * radial_.j(t, dim_);
}

JumpKernel make_isotropic_kernel(int dim, double alpha, SlowlyVaryingSpec ell,
                                 TailRule tail) {
    ConeSystem cones({{UnitVector(axis_vector(dim, 0)), 2.0, 1.0}}, 1.0);
    RadialProfile radial(alpha, std::move(ell), tail, 1.0, 0.5 * alpha);
    return JumpKernel(dim, std::move(cones), std::move(radial),
                      SpatialModulator::constant_one());
}

JumpKernel make_cone_kernel(int dim, double alpha, double cos_theta, double delta,
                            double upper) {
    double chordal = std::sqrt(2.0 * (1.0 - cos_theta));
    ConeSystem cones({{UnitVector(axis_vector(dim, 0)), chordal, upper}}, delta);
    RadialProfile radial(alpha, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                         0.5 * alpha);
    return JumpKernel(dim, std::move(cones), std::move(radial),
                      SpatialModulator::constant_one());
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " margin=" << c.margin
           << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    return os.str();
}

ValidationReport validate_kernel(const JumpKernel& kernel, const GridSpec& grid) {
    ValidationReport rep;
    const int d = kernel.dim();
    const RadialProfile& rad = kernel.radial();

    auto x_samples = sphere_points(d, static_cast<std::size_t>(grid.spatial_points));
    for (auto& x : x_samples)
        for (auto& c : x) c *= 0.7;  // spread sample states off the sphere
    x_samples.push_back(zeros(d));

    auto dirs = sphere_points(d, static_cast<std::size_t>(grid.angular_points));
    std::vector<double> radii = {0.03, 0.17, 0.5, 1.0, 2.5};

    // symmetry n(x,h) = n(x,-h), bit-exact
    {
        double worst = 0.0;
        for (const auto& x : x_samples)
            for (const auto& dir : dirs)
                for (double t : radii) {
                    Vec h = scale(t, dir);
                    worst = std::max(
                        worst, std::fabs(kernel.eval_n(x, h) - kernel.eval_n(x, negate(h))));
                }
        rep.checks.push_back({"symmetry", worst == 0.0, -worst, ""});
    }

    // sandwich k1 j <= n <= k2 j
    {
        double worst = 0.0;
        for (const auto& x : x_samples)
            for (const auto& dir : dirs)
                for (double t : radii) {
                    Vec h = scale(t, dir);
                    double n = kernel.eval_n(x, h);
                    double jj = rad.j(t, d);
                    double lo = kernel.cones().k1(dir) * jj;
                    double hi = kernel.cones().k2(dir) * jj;
                    // relative slack: |h| reconstructed from t*dir can differ
                    // from t by an ulp, which j amplifies at small radii
                    worst = std::max(worst, std::max(lo - n, n - hi) / jj);
                }
        rep.checks.push_back({"sandwich", worst <= grid.rel_tol, -worst, ""});
    }

    // cone lower bound n >= delta j inside the governing angle
    {
        double theta = kernel.cones().governing_theta();
        double worst = 0.0;
        for (const auto& cap : kernel.cones().caps()) {
            for (const auto& x : x_samples)
                for (const auto& dir : dirs) {
                    if (std::fabs(dot(dir, cap.axis.vec())) < std::cos(theta) + 1e-12)
                        continue;
                    for (double t : radii) {
                        double jj = rad.j(t, d);
                        double n = kernel.eval_n(x, scale(t, dir));
                        worst = std::max(worst,
                                         (kernel.cones().delta() * jj - n) / jj);
                    }
                }
        }
        rep.checks.push_back({"cone lower bound", worst <= grid.rel_tol, -worst, ""});
    }

    // large-radius comparability: j(t) <= kappa j(s) for 1 <= s <= t on a log grid
    {
        const int m = grid.radial_points;
        std::vector<double> ts(m);
        for (int i = 0; i < m; ++i)
            ts[i] = grid.radial_lo *
                    std::pow(grid.radial_hi / grid.radial_lo, i / double(m - 1));
        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            for (int k = i; k < m; ++k)
                worst = std::max(worst, rad.j(ts[k], d) - rad.kappa() * rad.j(ts[i], d));
        rep.checks.push_back(
            {"monotone comparability", worst <= grid.rel_tol, -worst, ""});
    }

    // tail decay: R^sigma * tail mass <= 1 eventually, non-increasing at the grid end
    {
        std::vector<double> qs;
        for (double R : {4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0})
            qs.push_back(std::pow(R, rad.sigma()) * tail_mass(rad, d, R));
        double last = qs.back(), prev = qs[qs.size() - 2];
        bool pass = last <= 1.0 + grid.rel_tol && last <= prev * (1.0 + grid.rel_tol);
        rep.checks.push_back({"tail decay", pass, 1.0 - last,
                              pass ? "" : "R^sigma * tail mass not settling below 1"});
    }

    // integrability of (|z|^2 ^ 1) j(|z|)
    {
        double v = sphere_surface(d) *
                   (rad.radial_second_moment(1.0) +
                    rad.radial_mass(1.0, std::numeric_limits<double>::infinity(), d));
        rep.checks.push_back({"integrability", std::isfinite(v), v, ""});
    }

    return rep;
}

// ---------------------------------------------------------------------------
// nondegeneracy matrix
// ---------------------------------------------------------------------------

double default_normalizer(double alpha, double rho) { return std::pow(rho, alpha - 2.0); }

NondegeneracyResult nondegeneracy_matrix(const JumpKernel& kernel, const Vec& x,
                                         double rho, double normalizer) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("nondegeneracy_matrix: rho must lie in (0,1)");
    if (!(normalizer > 0.0))
        throw std::domain_error("nondegeneracy_matrix: normalizer must be positive");
    const int d = kernel.dim();
    SymMatrix A(d);
    const RadialProfile& rad = kernel.radial();
    const bool separable = kernel.is_translation_invariant();
    double radial_part = separable ? rad.radial_second_moment(rho) : 0.0;

    for (const auto& cap : kernel.cones().caps()) {
        auto rule = symmetrized_cap_rule(cap, d, 24);
        for (const auto& node : rule) {
            double w;
            if (separable) {
                double k = kernel.angular_k(x, node.dir, 0.5 * rho);
                w = node.weight * k * radial_part;
            } else {
                double val = integrate_to_zero(
                    [&](double t) {
                        return std::pow(t, 1.0 - rad.alpha()) * rad.ell().eval(t) *
                               kernel.angular_k(x, node.dir, t);
                    },
                    rho, 1e-10);
                w = node.weight * val;
            }
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    A.at(i, k) += w * node.dir[i] * node.dir[k];
        }
    }
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) A.at(i, k) *= normalizer;
    // enforce exact symmetry of the report
    for (int i = 0; i < d; ++i)
        for (int k = i + 1; k < d; ++k) {
            double v = 0.5 * (A.at(i, k) + A.at(k, i));
            A.at(i, k) = v;
            A.at(k, i) = v;
        }
    auto ev = A.eigenvalues();
    return {A, ev.front(), ev.back()};
}

}  // namespace jumplab
