// End-to-end acceptance suite: one pass/fail line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jumplab/estimators.hpp"
#include "jumplab/geometry.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/regvar.hpp"
#include "jumplab/simulate.hpp"
#include "jumplab/stats.hpp"

namespace fs = std::filesystem;
using namespace jumplab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

JumpKernel two_cap_kernel(double alpha = 1.0, double sigma = 0.5) {
    ConeSystem cones({{UnitVector(Vec{1.0, 0.0}), 0.5, 1.0},
                      {UnitVector(Vec{0.0, 1.0}), 0.5, 1.0}},
                     1.0);
    RadialProfile rad(alpha, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                      sigma);
    return JumpKernel(2, cones, rad, SpatialModulator::constant_one());
}

// ---------------------------------------------------------------------------
// 1. kernel validation suite
// ---------------------------------------------------------------------------

bool c01() {
    if (!validate_kernel(two_cap_kernel()).all_pass()) return false;

    // decay exponent above the stability index must trip the tail check
    auto bad = two_cap_kernel(1.0, 1.5);
    auto rep = validate_kernel(bad);
    if (rep.all_pass()) return false;
    bool tail_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "tail decay" && !c.pass) tail_failed = true;
    if (!tail_failed) return false;

    // cone kernel: exactly 0 off-cone, exactly |h|^{-d-alpha} on-cone
    auto cone = make_cone_kernel(2, 1.0, 0.7);
    Vec x = {0.0, 0.0};
    if (cone.eval_n(x, {0.0, 0.3}) != 0.0) return false;
    double t = 0.3;
    if (cone.eval_n(x, {t, 0.0}) != std::pow(t, -3.0)) return false;
    if (cone.eval_n(x, {-t, 0.0}) != std::pow(t, -3.0)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// 2. slowly-varying integral asymptotics
// ---------------------------------------------------------------------------

bool c02() {
    auto lg = SlowlyVaryingSpec::log_power(1.0);
    double r = 1e-6;
    double oracle = 1.0 + 1.0 / std::log(std::exp(1.0) / r);
    double got = karamata_ratio_small(lg, 0.0, r).ratio;
    if (std::fabs(got - oracle) > 1e-4 * oracle) return false;

    auto cst = SlowlyVaryingSpec::constant(1.0);
    if (std::fabs(karamata_ratio_small(cst, 0.0, 1e-4).ratio - 1.0) > 1e-10)
        return false;
    if (std::fabs(karamata_ratio_large(cst, 2.0, 0.5).ratio - (1.0 - 0.5)) > 1e-10)
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// 3. small-jump second-moment matrix
// ---------------------------------------------------------------------------

bool c03() {
    auto iso = make_isotropic_kernel(2, 1.0);
    Vec x = {0.0, 0.0};
    for (double rho : {0.1, 0.5}) {
        auto res = nondegeneracy_matrix(iso, x, rho, default_normalizer(1.0, rho));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double want = i == j ? M_PI : 0.0;
                if (std::fabs(res.matrix.at(i, j) - want) > 1e-6) return false;
            }
    }
    auto cone = make_cone_kernel(2, 1.0, 0.7);
    auto res = nondegeneracy_matrix(cone, x, 0.3, default_normalizer(1.0, 0.3));
    if (!(res.lambda_min > 0.0)) return false;
    for (int i = 0; i < 2; ++i) {
        double off = 0.0;
        for (int j = 0; j < 2; ++j)
            if (i != j) off += std::fabs(res.matrix.at(i, j));
        if (!(std::fabs(res.matrix.at(i, i)) > off)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 4. sampler distribution vs quadrature cell masses
// ---------------------------------------------------------------------------

bool chi_square_cells(const JumpKernel& kernel, double epsilon, long n,
                      std::uint64_t seed) {
    JumpSampler sampler(kernel, epsilon);
    const auto& rad = kernel.radial();
    std::vector<double> edges = {epsilon, 2 * epsilon, 4 * epsilon, 8 * epsilon, kInf};
    double total = rad.radial_mass(epsilon, kInf, 2);
    std::vector<double> shell_p(4);
    for (int s = 0; s < 4; ++s)
        shell_p[s] = rad.radial_mass(edges[s], edges[s + 1], 2) / total;

    bool multi_cap = kernel.cones().caps().size() > 1;
    std::vector<long> obs(16, 0);
    RngStream rng(seed, 0);
    Vec x = {0.0, 0.0}, h;
    long real = 0;
    for (long i = 0; i < n; ++i) {
        if (!sampler.sample(x, rng, h)) continue;
        ++real;
        double t = norm(h);
        int s = 3;
        for (int k = 0; k < 4; ++k)
            if (t < edges[k + 1]) {
                s = k;
                break;
            }
        int a;
        if (multi_cap) {
            Vec u = scale(1.0 / t, h);
            int cap = kernel.cones().cap_containing(u);
            if (cap < 0) return false;  // off-cone proposal should not happen
            int sign = dot(h, kernel.cones().caps()[cap].axis.vec()) > 0.0 ? 0 : 1;
            a = cap * 2 + sign;
        } else {
            a = (h[0] >= 0.0 ? 0 : 2) + (h[1] >= 0.0 ? 0 : 1);
        }
        ++obs[s * 4 + a];
    }
    if (real != n) return false;  // both test kernels accept every proposal
    double stat = 0.0;
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 4; ++a) {
            double e = n * shell_p[s] * 0.25;
            double d = obs[s * 4 + a] - e;
            stat += d * d / e;
        }
    return chi_square_pvalue(stat, 15) > 0.001;
}

bool c04() {
    return chi_square_cells(make_isotropic_kernel(2, 1.0), 0.1, 100000, 101) &&
           chi_square_cells(two_cap_kernel(), 0.1, 100000, 102);
}

// ---------------------------------------------------------------------------
// 5. path-count vs kernel-integral consistency
// ---------------------------------------------------------------------------

bool agree3(const LevyEstimates& e) {
    if (e.count_mean == 0.0 && e.integral_mean == 0.0) return true;
    return std::fabs(e.count_mean - e.integral_mean) <=
           3.0 * (e.count_se + e.integral_se);
}

bool c05() {
    SimConfig c;
    c.epsilon = 0.05;
    c.seed = 33;
    auto iso = make_isotropic_kernel(2, 1.0);
    auto e1 = levy_system_paths(iso, {0.0, 0.0}, {SetSpec::ball({0.0, 0.0}, 1.0)},
                                {SetSpec::annulus({0.0, 0.0}, 2.0, 3.0)}, 0.5, 100000,
                                c, 4);
    if (!agree3(e1)) return false;

    auto cone = make_cone_kernel(2, 1.0, 0.7);
    auto e2 = levy_system_paths(cone, {0.0, 0.0}, {SetSpec::ball({0.0, 0.0}, 1.0)},
                                {SetSpec::ball({2.5, 0.0}, 0.5)}, 0.5, 100000, c, 4);
    if (!agree3(e2)) return false;

    // tight cone along e1, target placed orthogonally: both sides must vanish
    auto tight = make_cone_kernel(2, 1.0, 0.95);
    auto e3 = levy_system_paths(tight, {0.0, 0.0}, {SetSpec::ball({0.0, 0.0}, 1.0)},
                                {SetSpec::ball({0.0, 2.5}, 0.4)}, 0.5, 20000, c, 4);
    return e3.count_mean == 0.0 && e3.integral_mean == 0.0;
}

// ---------------------------------------------------------------------------
// 6. exit-time scaling in the ball radius
// ---------------------------------------------------------------------------

bool c06() {
    std::vector<double> radii = {0.05, 0.1, 0.2, 0.4};
    for (double alpha : {1.0, 0.5, 1.5}) {
        auto k = make_isotropic_kernel(2, alpha);
        std::vector<double> lx, ly;
        for (double r : radii) {
            SimConfig c;
            c.epsilon = r / 10.0;
            c.seed = 5;
            auto s = estimate_exit_stats(k, {0.0, 0.0}, Ball{{0.0, 0.0}, r}, 4000, {},
                                         c, 4);
            lx.push_back(std::log(r));
            ly.push_back(std::log(s.tau.mean));
        }
        if (std::fabs(ls_slope(lx, ly) - alpha) > 0.1) return false;
    }
    // logarithmic correction: the normalized constant stays in a narrow band
    auto k = make_isotropic_kernel(2, 1.0, SlowlyVaryingSpec::log_power(1.0));
    double lo = kInf, hi = 0.0;
    for (double r : radii) {
        SimConfig c;
        c.epsilon = r / 10.0;
        c.seed = 5;
        auto s = estimate_exit_stats(k, {0.0, 0.0}, Ball{{0.0, 0.0}, r}, 4000, {}, c, 4);
        lo = std::min(lo, s.normalized_tau);
        hi = std::max(hi, s.normalized_tau);
    }
    return hi / lo < 3.0;
}

// ---------------------------------------------------------------------------
// 7. early-exit probability bound
// ---------------------------------------------------------------------------

bool c07() {
    auto k = make_isotropic_kernel(2, 1.0);
    double lo = kInf, hi = 0.0;
    for (double r : {0.1, 0.2, 0.4}) {
        SimConfig c;
        c.epsilon = r / 10.0;
        c.seed = 5;
        std::vector<double> times = {0.02 * r, 0.05 * r, 0.1 * r};
        auto s = estimate_exit_stats(k, {0.0, 0.0}, Ball{{0.0, 0.0}, r}, 6000, times,
                                     c, 4);
        for (const auto& [t, est] : s.survival) {
            double ratio = est.mean * r / t;  // alpha = 1, ell = 1
            if (!std::isfinite(ratio)) return false;
            if (est.mean > 0.0) {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
    }
    return hi / lo < 5.0;
}

// ---------------------------------------------------------------------------
// 8. hitting probability vs volume fraction
// ---------------------------------------------------------------------------

bool c08() {
    auto k = make_cone_kernel(2, 1.0, 0.7);
    double theta = std::acos(0.7);
    double lambda = 0.9 * lambda_max(theta) * 0.5;
    SimConfig c;
    c.epsilon = 0.01;
    c.seed = 17;
    auto rows = estimate_ks_ratio(k, {0.0, 0.0}, 1.0, lambda,
                                  {0.5, 0.25, 0.125, 0.0625}, 4000, c, 4);
    for (const auto& row : rows)
        if (!(row.ratio >= 0.01)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// 9. chain geometry: randomized feasibility and the inflated-lambda failure
// ---------------------------------------------------------------------------

bool c09() {
    RngStream rng(2024, 0);
    int built = 0;
    long attempts = 0;
    while (built < 1000) {
        if (++attempts > 100000) return false;
        int d = 2 + static_cast<int>(rng.uniform_index(2));
        Vec a(d);
        double na = 0.0;
        while (na < 1e-3) {
            for (auto& cc : a) cc = rng.uniform(-1.0, 1.0);
            na = norm(a);
        }
        UnitVector axis(scale(1.0 / na, a));
        double cos_theta = rng.uniform(0.3, 0.9);
        double theta = std::acos(cos_theta);
        JumpKernel k(d,
                     ConeSystem({{axis, chordal_from_half_angle(theta), 1.0}}, 1.0),
                     RadialProfile(1.0, SlowlyVaryingSpec::constant(1.0),
                                   TailRule::power(), 1.0, 0.5),
                     SpatialModulator::constant_one());
        double r = rng.uniform(0.5, 3.0);
        Vec x0(d);
        for (auto& cc : x0) cc = rng.uniform(-2.0, 2.0);
        double lambda = 0.9 * lambda_max_restricted(theta);
        Vec u0 = x0;
        u0[0] += rng.uniform(-0.5, 0.5) * lambda * r;
        double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
        Vec z = add(u0, scale(sign * rng.uniform(2.0, 40.0) * r, axis.vec()));
        std::optional<ChainConfig> cfg;
        try {
            cfg = build_chain(x0, r, k, u0, z);
        } catch (const NoConeError&) {
            continue;
        }
        ++built;
        if (!verify_chain(*cfg, cfg->cone).all_nonnegative()) return false;
    }

    // directed search: growing lambda past the admissible cap must break a margin
    auto k = make_cone_kernel(2, 1.0, 0.9);
    auto good = build_chain({0.0, 0.0}, 1.0, k, {0.0, 0.0}, {8.0, 0.0});
    if (!verify_chain(good, good.cone).all_nonnegative()) return false;
    bool broke = false;
    for (double f : {1.1, 1.5, 2.0, 3.0}) {
        ChainConfig bad = good;
        bad.lambda = f * lambda_max(good.cone.theta);
        if (!verify_chain(bad, bad.cone).all_nonnegative()) {
            broke = true;
            break;
        }
    }
    return broke;
}

// ---------------------------------------------------------------------------
// 10. sup/inf quotient: scale stability and the signed tail correction
// ---------------------------------------------------------------------------

bool c10() {
    auto k = make_isotropic_kernel(2, 1.0);
    std::vector<double> quots;
    for (double r : {0.02, 0.05, 0.1, 0.2}) {
        SimConfig c;
        c.epsilon = r / 10.0;
        c.seed = 9;
        auto pos = ExteriorData::indicator_ball({6.0 * r, 0.0}, 2.0 * r);
        auto rep = harnack_report(k, {0.0, 0.0}, r, pos, 16, 2000, c, 4);
        if (!rep.inf_positive) return false;
        quots.push_back(rep.quotient);
    }
    auto sorted = quots;
    std::sort(sorted.begin(), sorted.end());
    double median = 0.5 * (sorted[1] + sorted[2]);
    if (!(*std::max_element(quots.begin(), quots.end()) <= 4.0 * median)) return false;

    // signed data: quotient bound fails without the tail term, holds with it
    double r = 0.1;
    SimConfig c;
    c.epsilon = r / 10.0;
    c.seed = 9;
    auto pos = ExteriorData::indicator_ball({1.0, 0.0}, 0.3);
    auto base = harnack_report(k, {0.0, 0.0}, r, pos, 8, 3000, c, 4);
    double C = base.quotient;
    auto sgn = ExteriorData::signed_bump({1.0, 0.0}, 0.3, 1.0, {-1.0, 0.0}, 0.3, 5.0);
    auto rep = harnack_report(k, {0.0, 0.0}, r, sgn, 8, 3000, c, 4);
    bool tail_free_fails = rep.sup > C * rep.inf;
    bool with_tail_holds = rep.sup <= C * (rep.inf + rep.tail_term);
    return tail_free_fails && with_tail_holds;
}

// ---------------------------------------------------------------------------
// 11. oscillation-decay exponent
// ---------------------------------------------------------------------------

bool c11() {
    std::vector<double> scales = {0.2, 0.1, 0.05, 0.025, 0.0125};
    auto data = ExteriorData::indicator_ball({0.6, 0.0}, 0.3);
    for (int kk = 0; kk < 2; ++kk) {
        JumpKernel k = kk == 0 ? make_isotropic_kernel(2, 1.0)
                               : make_cone_kernel(2, 1.0, 0.7);
        std::vector<double> betas;
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            SimConfig c;
            c.epsilon = 0.02;
            c.seed = seed;
            auto f = holder_fit(k, {0.0, 0.0}, 0.4, data, scales, 64, 3000, c, 4);
            if (!(f.beta > 0.0 && f.beta < 1.0)) return false;
            betas.push_back(f.beta);
        }
        double mean = (betas[0] + betas[1] + betas[2]) / 3.0;
        for (double b : betas)
            if (std::fabs(b - mean) > 0.1) return false;
        SimConfig c;
        c.epsilon = 0.01;
        c.seed = 1;
        auto f = holder_fit(k, {0.0, 0.0}, 0.4, data, scales, 64, 3000, c, 4);
        if (!(f.beta > 0.0 && f.beta < 1.0)) return false;
        if (std::fabs(f.beta - betas[0]) > 0.1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 12. normalized tail measure and its iterates
// ---------------------------------------------------------------------------

bool c12() {
    RadialProfile gamma(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    double r = 0.05;
    for (int j : {1, 2, 3}) {
        TailMeasureQuery q(x0, r, x0,
                           RadialRegion::complement_of_ball(std::ldexp(r, j)));
        double got = nu_measure(gamma, 2, q);
        if (std::fabs(got - std::ldexp(1.0, -j)) > 1e-6) return false;
    }
    for (double rr : {0.05, 0.1, 0.2}) {
        auto grid = ball_probes(x0, 0.45 * rr, 9);
        for (int j = 5; j <= 8; ++j) {
            auto rep = eta_rj(gamma, 2, x0, rr, j, grid);
            if (!(rep.eta_root <= 0.9)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 13. small-jump-cutoff extrapolation vs the closed-form benchmark
// ---------------------------------------------------------------------------

bool c13() {
    auto k = make_isotropic_kernel(1, 1.0);
    Ball ball{{0.0}, 1.0};
    SimConfig c1;
    c1.epsilon = 0.02;
    c1.seed = 2717;
    SimConfig c2 = c1;
    c2.epsilon = 0.01;
    auto s1 = estimate_exit_stats(k, {0.0}, ball, 4000, {}, c1, 4);
    auto s2 = estimate_exit_stats(k, {0.0}, ball, 4000, {}, c2, 4);
    // leading truncation bias is linear in epsilon here, so halving cancels it
    double ext = 2.0 * s2.tau.mean - s1.tau.mean;
    double se = std::sqrt(4.0 * s2.tau.std_error * s2.tau.std_error +
                          s1.tau.std_error * s1.tau.std_error);
    return std::fabs(ext - 1.0 / M_PI) <= 3.0 * se;
}

// ---------------------------------------------------------------------------
// 14. byte-level reproducibility of every command across thread counts
// ---------------------------------------------------------------------------

std::string slurp_skipping_timestamp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    if (s.rfind("# generated ", 0) == 0) s = s.substr(s.find('\n') + 1);
    return s;
}

bool c14() {
    fs::path base = fs::temp_directory_path() / "jumplab_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path cfg = base / "base.cfg";
    {
        std::ofstream out(cfg);
        out << "kernel.dim = 2\nkernel.alpha = 1.0\nsim.epsilon = 0.05\nseed = 4\n";
    }
    struct Cmd {
        const char* name;
        std::string sets;
    };
    std::vector<Cmd> cmds = {
        {"validate", ""},
        {"exit-time", "--set exit.n=200 --set exit.radii=0.1,0.2 --dump-paths"},
        {"survival",
         "--set survival.n=200 --set survival.radii=0.1,0.2 --set survival.times=0.005,0.01"},
        {"hitting", "--set hitting.n=200 --set hitting.r=0.5"},
        {"harmonic",
         "--set harmonic.n=200 --set data.kind=indicator --set data.center=2,0 "
         "--set data.radius=0.5"},
        {"harnack",
         "--set harnack.n=100 --set harnack.probes=4 --set harnack.r=0.05,0.1 "
         "--set data.kind=constant"},
        {"restricted-harnack",
         "--set rh.n=200 --set data.kind=indicator --set data.center=3,0 "
         "--set data.radius=1"},
        {"hoelder",
         "--set hoelder.n=1000 --set hoelder.pairs=8 --set hoelder.scales=0.2,0.1,0.05 "
         "--set data.kind=indicator --set data.center=0.6,0 --set data.radius=0.3"},
        {"levy-check",
         "--set levy.n=500 --set levy.T=0.2 --set levy.a.kind=ball "
         "--set levy.a.center=0,0 --set levy.a.r=1 --set levy.b.kind=annulus "
         "--set levy.b.center=0,0 --set levy.b.r1=2 --set levy.b.r2=3"},
        {"nondegeneracy", ""},
        {"eta", ""},
        {"apply-l",
         "--set function.kind=bump --set function.center=0,0 --set function.radius=1"},
        {"karamata", "--set kernel.ell=log:1"},
        {"geometry-check", "--set geometry.random_trials=20"},
    };
    for (const auto& cmd : cmds) {
        std::vector<fs::path> dirs;
        for (int th : {1, 2, 4}) {
            fs::path out = base / (std::string(cmd.name) + "_t" + std::to_string(th));
            std::string line = std::string(JUMPLAB_CLI_PATH) + " " + cmd.name +
                               " --config " + cfg.string() + " --threads " +
                               std::to_string(th) + " --out " + out.string() + " " +
                               cmd.sets + " >/dev/null 2>&1";
            if (std::system(line.c_str()) != 0) {
                std::fprintf(stderr, "  [14] command failed: %s\n", cmd.name);
                return false;
            }
            dirs.push_back(out);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            auto fname = entry.path().filename();
            auto ref = slurp_skipping_timestamp(entry.path());
            for (int i : {1, 2}) {
                if (!fs::exists(dirs[i] / fname) ||
                    slurp_skipping_timestamp(dirs[i] / fname) != ref) {
                    std::fprintf(stderr, "  [14] %s: %s differs across threads\n",
                                 cmd.name, fname.string().c_str());
                    return false;
                }
            }
        }
    }
    fs::remove_all(base);
    return true;
}

struct Criterion {
    int id;
    const char* what;
    bool (*fn)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "kernel validation suite and exact cone evaluation", c01},
        {2, "slowly-varying integral asymptotics", c02},
        {3, "small-jump second-moment matrix", c03},
        {4, "sampler distribution vs quadrature cell masses", c04},
        {5, "path-count vs kernel-integral consistency", c05},
        {6, "exit-time scaling in the ball radius", c06},
        {7, "early-exit probability bound", c07},
        {8, "hitting probability vs volume fraction", c08},
        {9, "chain geometry feasibility and inflated-lambda failure", c09},
        {10, "sup/inf quotient scale stability and signed tail correction", c10},
        {11, "oscillation-decay exponent", c11},
        {12, "normalized tail measure and its iterates", c12},
        {13, "small-jump-cutoff extrapolation vs closed-form benchmark", c13},
        {14, "byte-level reproducibility across 1/2/4 threads", c14},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  [%d] exception: %s\n", c.id, e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    t0)
                          .count();
        std::printf("%s %2d  %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.id, c.what, secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criteria failed\n", failures);
    else std::printf("all 14 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
