// batch experiment runner: parses a config, dispatches to the library, and
// writes CSV tables, key=value summaries, and SVG plots into the output dir
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jumplab/config.hpp"
#include "jumplab/estimators.hpp"
#include "jumplab/geometry.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/regvar.hpp"
#include "jumplab/simulate.hpp"
#include "jumplab/stats.hpp"
#include "jumplab/table.hpp"

namespace fs = std::filesystem;
using namespace jumplab;

namespace {

struct CliOptions {
    std::string command;
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::optional<std::string> out;
    bool dump_paths = false;
};

struct Run {
    ConfigMap cfg;
    SimConfig sim;
    int threads;
    bool dump_paths;
    fs::path out_dir;

    fs::path file(const std::string& name) const { return out_dir / name; }

    void finish_table(Table& t, long n, const std::string& stem) const {
        t.stamp_metadata(sim.seed, sim.epsilon, n, version_string());
        write_csv(file(stem + ".csv").string(), t);
    }

    void finish_summary(std::vector<std::pair<std::string, std::string>> items,
                        const std::string& stem) const {
        items.emplace_back("seed", std::to_string(sim.seed));
        items.emplace_back("epsilon", format_g17(sim.epsilon));
        items.emplace_back("version", version_string());
        write_summary(file(stem + "_summary.txt").string(), items, true);
    }
};

ExteriorData data_from_config(ConfigMap& cfg, const JumpKernel& kernel) {
    int d = kernel.dim();
    std::string kind = cfg.get_string_or("data.kind", "constant");
    if (kind == "constant") return ExteriorData::constant(cfg.get_double_or("data.value", 1.0));
    if (kind == "indicator")
        return ExteriorData::indicator_ball(cfg.get_vec("data.center", d),
                                            cfg.get_double("data.radius"));
    if (kind == "signed")
        return ExteriorData::signed_bump(
            cfg.get_vec("data.pos.center", d), cfg.get_double("data.pos.radius"),
            cfg.get_double_or("data.pos.amp", 1.0), cfg.get_vec("data.neg.center", d),
            cfg.get_double("data.neg.radius"), cfg.get_double_or("data.neg.amp", 1.0));
    if (kind == "radial")
        return ExteriorData::radial(cfg.get_vec("data.center", d), kernel.radial(), d);
    throw ConfigError("data.kind: unknown kind '" + kind +
                      "' (want constant, indicator, signed, or radial)");
}

TestFunction function_from_config(ConfigMap& cfg, int dim) {
    std::string kind = cfg.get_string_or("function.kind", "constant");
    if (kind == "constant") return TestFunction::constant(cfg.get_double_or("function.value", 1.0));
    if (kind == "bump")
        return TestFunction::bump(cfg.get_vec("function.center", dim),
                                  cfg.get_double("function.radius"),
                                  cfg.get_double_or("function.height", 1.0));
    if (kind == "cosine") return TestFunction::cosine(cfg.get_vec("function.frequency", dim));
    if (kind == "barrier")
        return TestFunction::barrier(cfg.get_vec("function.center", dim),
                                     cfg.get_double("function.radius"));
    throw ConfigError("function.kind: unknown kind '" + kind +
                      "' (want constant, bump, cosine, or barrier)");
}

SetSpec set_from_config(ConfigMap& cfg, const std::string& prefix, int dim) {
    std::string kind = cfg.get_string(prefix + ".kind");
    Vec center = cfg.get_vec(prefix + ".center", dim);
    if (kind == "ball") return SetSpec::ball(center, cfg.get_double(prefix + ".r"));
    if (kind == "annulus")
        return SetSpec::annulus(center, cfg.get_double(prefix + ".r1"),
                                cfg.get_double(prefix + ".r2"));
    throw ConfigError(prefix + ".kind: unknown kind '" + kind + "'");
}

std::string cells(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + format_g17(v[i]);
    return out;
}

// event-log replay: same per-replica streams the estimators use
void dump_paths_file(const Run& run, const JumpKernel& kernel, const Vec& start,
                     const Ball& ball, long n) {
    long n_dump = std::min<long>(n, 50);
    std::ofstream out(run.file("paths.csv"), std::ios::binary);
    for (long rep = 0; rep < n_dump; ++rep) {
        RngStream rng(run.sim.seed, static_cast<std::uint64_t>(rep));
        std::vector<JumpEvent> events;
        simulate_until_exit(kernel, start, ball, run.sim, rng, &events);
        for (const auto& ev : events)
            out << rep << "," << format_g17(ev.time) << "," << cells(ev.x_pre) << ","
                << cells(ev.x_post) << "," << (ev.fictitious ? 1 : 0) << "\n";
    }
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_validate(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    GridSpec grid;
    grid.radial_points = run.cfg.get_int_or("validate.radial_points", grid.radial_points);
    grid.angular_points = run.cfg.get_int_or("validate.angular_points", grid.angular_points);
    grid.spatial_points = run.cfg.get_int_or("validate.spatial_points", grid.spatial_points);
    run.cfg.check_all_used();
    auto report = validate_kernel(kernel, grid);
    Table t;
    t.header = {"check", "pass", "margin", "detail"};
    for (const auto& c : report.checks)
        t.add_row({c.name, c.pass ? "1" : "0", format_g17(c.margin), c.detail});
    run.finish_table(t, 0, "validate");
    run.finish_summary({{"all_pass", report.all_pass() ? "1" : "0"}}, "validate");
    std::cout << report.summary();
    return report.all_pass() ? 0 : 2;
}

int cmd_karamata(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    double beta1 = run.cfg.get_double_or("karamata.beta1", 0.0);
    double beta2 = run.cfg.get_double_or("karamata.beta2", 2.0);
    auto rs = run.cfg.get_doubles_or("karamata.r", {1e-2, 1e-4, 1e-6});
    run.cfg.check_all_used();
    const auto& ell = kernel.radial().ell();
    Table t;
    t.header = {"kind", "beta", "r", "ratio"};
    for (double r : rs) {
        auto s = karamata_ratio_small(ell, beta1, r);
        t.add_row({"small", format_g17(beta1), format_g17(r), format_g17(s.ratio)});
    }
    for (double r : rs) {
        auto l = karamata_ratio_large(ell, beta2, r);
        t.add_row({"large", format_g17(beta2), format_g17(r), format_g17(l.ratio)});
    }
    run.finish_table(t, 0, "karamata");
    run.finish_summary({{"beta1", format_g17(beta1)}, {"beta2", format_g17(beta2)}},
                       "karamata");
    return 0;
}

int cmd_nondegeneracy(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    auto rhos = run.cfg.get_doubles_or("nondegeneracy.rho", {0.1, 0.5});
    Vec x = run.cfg.get_vec_or("nondegeneracy.x", zeros(d));
    run.cfg.check_all_used();
    Table t;
    t.header = {"rho", "i", "j", "a_ij", "lambda_min", "lambda_max"};
    bool positive = true;
    for (double rho : rhos) {
        auto res = nondegeneracy_matrix(kernel, x, rho,
                                        default_normalizer(kernel.radial().alpha(), rho));
        positive = positive && res.lambda_min > 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                t.add_row({format_g17(rho), std::to_string(i), std::to_string(j),
                           format_g17(res.matrix.at(i, j)), format_g17(res.lambda_min),
                           format_g17(res.lambda_max)});
    }
    run.finish_table(t, 0, "nondegeneracy");
    run.finish_summary({{"positive_definite", positive ? "1" : "0"}}, "nondegeneracy");
    return positive ? 0 : 2;
}

int cmd_eta(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec x0 = run.cfg.get_vec_or("eta.x0", zeros(d));
    auto rs = run.cfg.get_doubles_or("eta.r", {0.05, 0.1, 0.2});
    auto js = run.cfg.get_doubles_or("eta.j", {5, 6, 7, 8});
    int grid_count = run.cfg.get_int_or("eta.grid", 9);
    run.cfg.check_all_used();
    Table t;
    t.header = {"r", "j", "eta", "eta_root"};
    double worst_root = 0.0;
    for (double r : rs) {
        auto grid = ball_probes(x0, 0.45 * r, grid_count);
        for (double jd : js) {
            auto rep = eta_rj(kernel.radial(), d, x0, r, static_cast<int>(jd), grid);
            worst_root = std::max(worst_root, rep.eta_root);
            t.add_row({format_g17(r), format_g17(jd), format_g17(rep.eta),
                       format_g17(rep.eta_root)});
        }
    }
    run.finish_table(t, 0, "eta");
    run.finish_summary({{"worst_eta_root", format_g17(worst_root)}}, "eta");
    return 0;
}

int cmd_apply_l(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    auto f = function_from_config(run.cfg, d);
    int count = run.cfg.get_int_or("applyl.point.count", 1);
    std::vector<Vec> points;
    for (int i = 1; i <= count; ++i)
        points.push_back(
            run.cfg.get_vec_or("applyl.point." + std::to_string(i), zeros(d)));
    run.cfg.check_all_used();
    Table t;
    t.header = {"point", "x", "Lf"};
    for (int i = 0; i < count; ++i) {
        double v = apply_L(kernel, f, points[i]);
        t.add_row({std::to_string(i + 1), cells(points[i]), format_g17(v)});
    }
    run.finish_table(t, 0, "apply_l");
    run.finish_summary({}, "apply_l");
    return 0;
}

int cmd_geometry_check(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Table t;
    t.header = {"trial", "m1", "m2", "m3", "m4", "min_margin", "ok"};
    bool all_ok = true;
    long trials = run.cfg.get_long_or("geometry.random_trials", 0);
    if (trials > 0) {
        run.cfg.check_all_used();
        RngStream rng(run.sim.seed, 0);
        long built = 0, attempt = 0;
        while (built < trials) {
            ++attempt;
            if (attempt > 100 * trials + 100)
                throw NumericalError("geometry-check: cannot build enough feasible chains");
            double r = rng.uniform(0.5, 3.0);
            Vec x0(d);
            for (auto& c : x0) c = rng.uniform(-2.0, 2.0);
            const auto& cap = kernel.cones().caps()[rng.uniform_index(
                kernel.cones().caps().size())];
            double theta = std::min(cap.theta, 0.5 * M_PI);
            double lambda = 0.9 * lambda_max_restricted(theta);
            Vec u0 = x0;
            u0[0] += rng.uniform(-0.5, 0.5) * lambda * r;
            double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            Vec z = add(u0, scale(sign * rng.uniform(2.0, 40.0) * r, cap.axis.vec()));
            std::optional<ChainConfig> chain;
            try {
                chain = build_chain(x0, r, kernel, u0, z);
            } catch (const NoConeError&) {
                continue;
            }
            ++built;
            auto m = verify_chain(*chain, chain->cone);
            all_ok = all_ok && m.all_nonnegative();
            t.add_row({std::to_string(built), format_g17(m.m1), format_g17(m.m2),
                       format_g17(m.m3), format_g17(m.m4), format_g17(m.min()),
                       m.all_nonnegative() ? "1" : "0"});
        }
    } else {
        Vec x0 = run.cfg.get_vec("geometry.x0", d);
        double r = run.cfg.get_double("geometry.r");
        Vec u0 = run.cfg.get_vec("geometry.u0", d);
        Vec z = run.cfg.get_vec("geometry.z", d);
        std::optional<double> lambda;
        if (run.cfg.has("geometry.lambda")) lambda = run.cfg.get_double("geometry.lambda");
        run.cfg.check_all_used();
        auto chain = build_chain(x0, r, kernel, u0, z, lambda);
        auto m = verify_chain(chain, chain.cone);
        all_ok = m.all_nonnegative();
        t.add_row({"1", format_g17(m.m1), format_g17(m.m2), format_g17(m.m3),
                   format_g17(m.m4), format_g17(m.min()), all_ok ? "1" : "0"});
    }
    run.finish_table(t, 0, "geometry_check");
    run.finish_summary({{"all_ok", all_ok ? "1" : "0"}}, "geometry_check");
    return all_ok ? 0 : 2;
}

int cmd_exit_time(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec center = run.cfg.get_vec_or("exit.center", zeros(d));
    auto radii = run.cfg.get_doubles_or("exit.radii", {0.05, 0.1, 0.2, 0.4});
    long n = run.cfg.get_long_or("exit.n", 2000);
    run.cfg.check_all_used();
    Table t;
    t.header = {"r", "mean_tau", "se", "normalized_tau", "censored_fraction"};
    std::vector<double> lx, ly, xs, ys;
    for (double r : radii) {
        Ball ball{center, r};
        auto s = estimate_exit_stats(kernel, center, ball, n, {}, run.sim, run.threads);
        t.add_row({format_g17(r), format_g17(s.tau.mean), format_g17(s.tau.std_error),
                   format_g17(s.normalized_tau), format_g17(s.tau.censored_fraction)});
        if (s.tau.mean > 0.0) {
            lx.push_back(std::log(r));
            ly.push_back(std::log(s.tau.mean));
            xs.push_back(r);
            ys.push_back(s.tau.mean);
        }
    }
    run.finish_table(t, n, "exit_time");
    std::vector<std::pair<std::string, std::string>> sum = {{"n", std::to_string(n)}};
    if (lx.size() >= 2) sum.emplace_back("slope", format_g17(ls_slope(lx, ly)));
    run.finish_summary(sum, "exit_time");
    write_svg_plot(run.file("exit_time.svg").string(), {{"mean_tau", xs, ys}}, "r",
                   "mean exit time", true);
    if (run.dump_paths)
        dump_paths_file(run, kernel, center, Ball{center, radii.front()}, n);
    return 0;
}

int cmd_survival(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec center = run.cfg.get_vec_or("survival.center", zeros(d));
    auto radii = run.cfg.get_doubles_or("survival.radii", {0.1, 0.2, 0.4});
    auto times = run.cfg.get_doubles_or("survival.times", {0.01, 0.03, 0.1});
    long n = run.cfg.get_long_or("survival.n", 2000);
    run.cfg.check_all_used();
    double alpha = kernel.radial().alpha();
    Table t;
    t.header = {"r", "t", "p_exit", "se", "bound_ratio"};
    double lo = 1e300, hi = 0.0;
    for (double r : radii) {
        Ball ball{center, r};
        auto s = estimate_exit_stats(kernel, center, ball, n, times, run.sim, run.threads);
        double ell_r = eval_ell(kernel.radial().ell(), r);
        for (const auto& [time, est] : s.survival) {
            double ratio = est.mean * std::pow(r, alpha) / (time * ell_r);
            if (est.mean > 0.0) {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            t.add_row({format_g17(r), format_g17(time), format_g17(est.mean),
                       format_g17(est.std_error), format_g17(ratio)});
        }
    }
    run.finish_table(t, n, "survival");
    run.finish_summary({{"n", std::to_string(n)},
                        {"min_bound_ratio", format_g17(lo)},
                        {"max_bound_ratio", format_g17(hi)}},
                       "survival");
    if (run.dump_paths)
        dump_paths_file(run, kernel, center, Ball{center, radii.front()}, n);
    return 0;
}

int cmd_hitting(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec x0 = run.cfg.get_vec_or("hitting.x0", zeros(d));
    double r = run.cfg.get_double_or("hitting.r", 1.0);
    double theta = std::min(kernel.cones().governing_theta(), 0.5 * M_PI);
    double lambda =
        run.cfg.get_double_or("hitting.lambda", 0.9 * lambda_max(theta) * 0.5);
    auto fractions =
        run.cfg.get_doubles_or("hitting.fractions", {0.5, 0.25, 0.125, 0.0625});
    long n = run.cfg.get_long_or("hitting.n", 2000);
    run.cfg.check_all_used();
    auto rows = estimate_ks_ratio(kernel, x0, r, lambda, fractions, n, run.sim,
                                  run.threads);
    Table t;
    t.header = {"fraction", "p_hit", "se", "volume_ratio", "ratio"};
    double min_ratio = 1e300;
    for (const auto& row : rows) {
        min_ratio = std::min(min_ratio, row.ratio);
        t.add_row({format_g17(row.fraction), format_g17(row.probability.mean),
                   format_g17(row.probability.std_error), format_g17(row.volume_ratio),
                   format_g17(row.ratio)});
    }
    run.finish_table(t, n, "hitting");
    run.finish_summary({{"n", std::to_string(n)},
                        {"lambda", format_g17(lambda)},
                        {"min_ratio", format_g17(min_ratio)}},
                       "hitting");
    if (run.dump_paths) dump_paths_file(run, kernel, x0, Ball{x0, r}, n);
    return 0;
}

int cmd_harmonic(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec center = run.cfg.get_vec_or("harmonic.center", zeros(d));
    double radius = run.cfg.get_double_or("harmonic.radius", 0.5);
    long n = run.cfg.get_long_or("harmonic.n", 2000);
    auto g = data_from_config(run.cfg, kernel);
    int count = run.cfg.get_int_or("harmonic.point.count", 1);
    std::vector<Vec> points;
    for (int i = 1; i <= count; ++i)
        points.push_back(
            run.cfg.get_vec_or("harmonic.point." + std::to_string(i), center));
    run.cfg.check_all_used();
    Ball domain{center, radius};
    Table t;
    t.header = {"point", "x", "mean", "se", "censored_fraction"};
    for (int i = 0; i < count; ++i) {
        auto e = evaluate_harmonic(kernel, domain, g, points[i], n, run.sim, run.threads);
        t.add_row({std::to_string(i + 1), cells(points[i]), format_g17(e.mean),
                   format_g17(e.std_error), format_g17(e.censored_fraction)});
    }
    run.finish_table(t, n, "harmonic");
    run.finish_summary({{"n", std::to_string(n)}}, "harmonic");
    if (run.dump_paths) dump_paths_file(run, kernel, points.front(), domain, n);
    return 0;
}

int cmd_harnack(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec x0 = run.cfg.get_vec_or("harnack.x0", zeros(d));
    auto radii = run.cfg.get_doubles_or("harnack.r", {0.05, 0.1});
    int probes = run.cfg.get_int_or("harnack.probes", 32);
    long n = run.cfg.get_long_or("harnack.n", 2000);
    auto g = data_from_config(run.cfg, kernel);
    run.cfg.check_all_used();
    Table t;
    t.header = {"r", "sup", "inf", "quotient", "tail_term", "c1", "slack",
                "inf_positive"};
    for (double r : radii) {
        auto rep = harnack_report(kernel, x0, r, g, probes, n, run.sim, run.threads);
        t.add_row({format_g17(r), format_g17(rep.sup), format_g17(rep.inf),
                   format_g17(rep.quotient), format_g17(rep.tail_term),
                   format_g17(rep.c1), format_g17(rep.slack),
                   rep.inf_positive ? "1" : "0"});
    }
    run.finish_table(t, n, "harnack");
    run.finish_summary({{"n", std::to_string(n)}, {"probes", std::to_string(probes)}},
                       "harnack");
    return 0;
}

int cmd_restricted_harnack(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec x0 = run.cfg.get_vec_or("rh.x0", zeros(d));
    double r = run.cfg.get_double_or("rh.r", 0.5);
    double theta = std::min(kernel.cones().governing_theta(), 0.5 * M_PI);
    double lambda = run.cfg.get_double_or("rh.lambda", 0.9 * lambda_max_restricted(theta));
    Vec x = run.cfg.get_vec_or("rh.x", x0);
    Vec y = run.cfg.get_vec_or("rh.y", x0);
    long n = run.cfg.get_long_or("rh.n", 2000);
    auto H = data_from_config(run.cfg, kernel);
    run.cfg.check_all_used();
    auto rep = restricted_harnack_check(kernel, x0, r, lambda, H, x, y, n, run.sim,
                                        run.threads);
    Table t;
    t.header = {"numerator", "num_se", "denominator", "den_se", "ratio",
                "denominator_zero"};
    t.add_row({format_g17(rep.numerator.mean), format_g17(rep.numerator.std_error),
               format_g17(rep.denominator.mean), format_g17(rep.denominator.std_error),
               format_g17(rep.ratio), rep.denominator_zero ? "1" : "0"});
    run.finish_table(t, n, "restricted_harnack");
    run.finish_summary({{"n", std::to_string(n)}, {"lambda", format_g17(lambda)}},
                       "restricted_harnack");
    return 0;
}

int cmd_hoelder(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec x0 = run.cfg.get_vec_or("hoelder.x0", zeros(d));
    double R = run.cfg.get_double_or("hoelder.R", 0.4);
    auto scales = run.cfg.get_doubles_or("hoelder.scales", {0.2, 0.1, 0.05, 0.025});
    int pairs = run.cfg.get_int_or("hoelder.pairs", 64);
    long n = run.cfg.get_long_or("hoelder.n", 2000);
    auto g = data_from_config(run.cfg, kernel);
    run.cfg.check_all_used();
    auto fit = holder_fit(kernel, x0, R, g, scales, pairs, n, run.sim, run.threads);
    Table t;
    t.header = {"scale", "oscillation"};
    for (std::size_t i = 0; i < fit.scales.size(); ++i)
        t.add_row({format_g17(fit.scales[i]), format_g17(fit.oscillation[i])});
    run.finish_table(t, n, "hoelder");
    run.finish_summary({{"n", std::to_string(n)},
                        {"beta", format_g17(fit.beta)},
                        {"residual", format_g17(fit.residual)}},
                       "hoelder");
    write_svg_plot(run.file("hoelder.svg").string(),
                   {{"oscillation", fit.scales, fit.oscillation}}, "scale",
                   "oscillation", true);
    return 0;
}

int cmd_levy_check(Run& run) {
    auto kernel = kernel_from_config(run.cfg);
    int d = kernel.dim();
    Vec start = run.cfg.get_vec_or("levy.x", zeros(d));
    double T = run.cfg.get_double_or("levy.T", 1.0);
    long n = run.cfg.get_long_or("levy.n", 10000);
    auto A = set_from_config(run.cfg, "levy.a", d);
    auto B = set_from_config(run.cfg, "levy.b", d);
    run.cfg.check_all_used();
    auto est = levy_system_paths(kernel, start, {A}, {B}, T, n, run.sim, run.threads);
    double joint = est.count_se + est.integral_se;
    bool agree = std::fabs(est.count_mean - est.integral_mean) <= 3.0 * joint ||
                 (est.count_mean == 0.0 && est.integral_mean == 0.0);
    Table t;
    t.header = {"count_mean", "count_se", "integral_mean", "integral_se", "diff",
                "agree"};
    t.add_row({format_g17(est.count_mean), format_g17(est.count_se),
               format_g17(est.integral_mean), format_g17(est.integral_se),
               format_g17(est.count_mean - est.integral_mean), agree ? "1" : "0"});
    run.finish_table(t, n, "levy_check");
    run.finish_summary({{"n", std::to_string(n)}, {"agree", agree ? "1" : "0"}},
                       "levy_check");
    return agree ? 0 : 2;
}

using CommandFn = int (*)(Run&);

struct CommandDef {
    const char* name;
    CommandFn fn;
};

constexpr CommandDef kCommands[] = {
    {"validate", cmd_validate},
    {"exit-time", cmd_exit_time},
    {"survival", cmd_survival},
    {"hitting", cmd_hitting},
    {"harmonic", cmd_harmonic},
    {"harnack", cmd_harnack},
    {"restricted-harnack", cmd_restricted_harnack},
    {"hoelder", cmd_hoelder},
    {"levy-check", cmd_levy_check},
    {"nondegeneracy", cmd_nondegeneracy},
    {"eta", cmd_eta},
    {"apply-l", cmd_apply_l},
    {"karamata", cmd_karamata},
    {"geometry-check", cmd_geometry_check},
};

}  // namespace

int main(int argc, char** argv) {
    CliOptions opt;
    CLI::App app{"anisotropic jump-process experiment runner"};
    app.require_subcommand(1);
    for (const auto& def : kCommands) {
        auto* sub = app.add_subcommand(def.name);
        sub->add_option("--config", opt.config_path, "config file")->required();
        sub->add_option("--seed", opt.seed, "seed override");
        sub->add_option("--threads", opt.threads, "worker pool size")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "output directory override");
        sub->add_option("--set", opt.sets, "key=value config override");
        sub->add_flag("--dump-paths", opt.dump_paths, "write the event log");
        sub->callback([&opt, &def]() { opt.command = def.name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Run run{ConfigMap::parse_file(opt.config_path), SimConfig{}, opt.threads,
                opt.dump_paths, {}};
        for (const auto& kv : opt.sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + kv + "'");
            run.cfg.set_override(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (opt.seed) run.cfg.set_override("seed", std::to_string(*opt.seed));
        std::string cfg_out = run.cfg.get_string_or("out", ".");
        run.out_dir = opt.out ? *opt.out : cfg_out;
        fs::create_directories(run.out_dir);
        run.sim = sim_from_config(run.cfg);

        for (const auto& def : kCommands)
            if (opt.command == def.name) return def.fn(run);
        std::cerr << "unknown command '" << opt.command << "'\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
