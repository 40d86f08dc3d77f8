#include "doctest.h"

#include <cmath>

#include "jumplab/quad1d.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/rng.hpp"
#include "jumplab/sphere.hpp"

using namespace jumplab;

TEST_CASE("test function derivatives match finite differences") {
    std::vector<TestFunction> fns = {
        TestFunction::bump({0.3, -0.1}, 1.5, 2.0),
        TestFunction::cosine({1.2, 0.7}),
        TestFunction::barrier({0.0, 0.0}, 0.8)};
    RngStream rng(11, 0);
    const double eps = 1e-5;
    for (const auto& f : fns) {
        for (int trial = 0; trial < 40; ++trial) {
            Vec x = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
            Vec g = f.gradient(x);
            SymMatrix H = f.hessian(x);
            for (int i = 0; i < 2; ++i) {
                Vec xp = x, xm = x;
                xp[i] += eps;
                xm[i] -= eps;
                double fd = (f.value(xp) - f.value(xm)) / (2.0 * eps);
                CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
                Vec gp = f.gradient(xp), gm = f.gradient(xm);
                for (int jj = 0; jj < 2; ++jj) {
                    double hd = (gp[jj] - gm[jj]) / (2.0 * eps);
                    CHECK(H.at(i, jj) == doctest::Approx(hd).epsilon(1e-4).scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("barrier profile is C2 across both seams") {
    TestFunction f = TestFunction::barrier({0.0}, 1.0);
    for (double s : {0.5, 1.0}) {
        double below = f.value({s - 1e-9});
        double above = f.value({s + 1e-9});
        CHECK(below == doctest::Approx(above).epsilon(1e-7));
        double gb = f.gradient({s - 1e-9})[0];
        double ga = f.gradient({s + 1e-9})[0];
        CHECK(gb == doctest::Approx(ga).epsilon(1e-5).scale(1.0));
        double hb = f.hessian({s - 1e-9}).at(0, 0);
        double ha = f.hessian({s + 1e-9}).at(0, 0);
        CHECK(hb == doctest::Approx(ha).epsilon(1e-4).scale(1.0));
    }
    CHECK(f.value({2.0}) == doctest::Approx(1.0));
    CHECK(f.value({0.25}) == doctest::Approx(0.0625));
}

TEST_CASE("apply_L annihilates constants exactly") {
    auto k = make_isotropic_kernel(2, 1.0);
    CHECK(apply_L(k, TestFunction::constant(3.7), {0.4, -0.2}) == 0.0);
}

TEST_CASE("apply_L on cosines reproduces the stable symbol") {
    // kernel |h|^{-3} in d=2 has symbol 2*pi*|xi|, so L cos<xi,.> =
    // -2*pi*|xi| cos<xi,.>
    auto k = make_isotropic_kernel(2, 1.0);
    TestFunction f = TestFunction::cosine({1.0, 0.0});
    double at0 = apply_L(k, f, {0.0, 0.0});
    CHECK(at0 == doctest::Approx(-2.0 * M_PI).epsilon(1e-4));
    // symbol property: the ratio to cos<xi,x> is x-independent
    Vec x1 = {0.4, 1.3};
    double r1 = apply_L(k, f, x1) / std::cos(x1[0]);
    CHECK(r1 == doctest::Approx(at0).epsilon(1e-4));
}

TEST_CASE("apply_L agrees with a compensated-form oracle") {
    auto k = make_isotropic_kernel(2, 0.8);
    const RadialProfile& rad = k.radial();
    TestFunction f = TestFunction::bump({0.0, 0.0}, 1.2, 1.0);
    Vec x = {0.3, 0.2};
    double fx = f.value(x);
    Vec gx = f.gradient(x);

    double oracle = 0.0;
    for (const auto& node : full_sphere_rule(2, 32)) {
        auto inner = [&](double t) {
            Vec h = scale(t, node.dir);
            return (f.value(add(x, h)) - fx - t * dot(gx, node.dir)) * rad.j(t, 2) * t;
        };
        oracle += node.weight * integrate_to_zero(inner, 1.0, 1e-9);
        oracle += node.weight * integrate_tail(
                                    [&](double t) {
                                        return (f.value(add(x, scale(t, node.dir))) - fx) *
                                               rad.j(t, 2) * t;
                                    },
                                    1.0, rad.alpha());
    }
    CHECK(apply_L(k, f, x) == doctest::Approx(oracle).epsilon(2e-4));
}

TEST_CASE("barrier generator bound is scale-stable") {
    auto k = make_isotropic_kernel(2, 1.0);
    std::vector<double> normalized;
    for (double r : {0.05, 0.1, 0.2}) {
        Vec x0 = {0.0, 0.0};
        double v = apply_L(k, TestFunction::barrier(x0, r), x0);
        CHECK(v > 0.0);
        normalized.push_back(v * std::pow(r, 1.0 - 2.0));  // alpha = 1, ell = 1
    }
    double lo = *std::min_element(normalized.begin(), normalized.end());
    double hi = *std::max_element(normalized.begin(), normalized.end());
    CHECK(hi / lo < 3.0);
}

TEST_CASE("harnack tail term vanishes for nonnegative data") {
    auto k = make_isotropic_kernel(2, 1.0);
    auto g = [](const Vec& z) { return 1.0 + z[0] * z[0]; };
    CHECK(harnack_tail_term(k, {0.0, 0.0}, 0.1, g) == 0.0);
}

TEST_CASE("harnack tail term for g = -1 outside is order one") {
    auto k = make_isotropic_kernel(2, 1.0);
    auto g = [](const Vec&) { return -1.0; };
    for (double r : {0.05, 0.1}) {
        double term = harnack_tail_term(k, {0.0, 0.0}, r, g);
        // r * sup_v int_{|z|>4r} |z-v|^{-3} dz with |v-x0| <= 2r lies between
        // the masses at distance 6r and 2r
        CHECK(term > M_PI / 3.0 * 0.99);
        CHECK(term < M_PI * 1.01);
    }
}

TEST_CASE("harnack tail term is zero when data sits off every cone") {
    auto k = make_cone_kernel(2, 1.0, 0.99);
    auto g = [](const Vec& z) { return dist(z, {0.0, 10.0}) < 1.0 ? -1.0 : 0.0; };
    CHECK(harnack_tail_term(k, {0.0, 0.0}, 0.05, g) == 0.0);
}

TEST_CASE("exterior mass and its reciprocal") {
    auto k = make_isotropic_kernel(2, 1.0);
    for (double r : {0.05, 0.1, 0.2}) {
        CHECK(exterior_mass(k, {0.0, 0.0}, 4.0 * r) ==
              doctest::Approx(2.0 * M_PI / (4.0 * r)).epsilon(1e-9));
        double M = big_M(k, {0.0, 0.0}, r);
        CHECK(M == doctest::Approx(2.0 * r / M_PI).epsilon(1e-9));
        // homogeneity: r^alpha / M constant in r
        CHECK(r / M == doctest::Approx(0.5 * M_PI).epsilon(1e-9));
        CHECK(M * exterior_mass(k, {0.0, 0.0}, 4.0 * r) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(big_M(k, {0.0, 0.0}, 0.3), std::domain_error);

    auto trunc = make_isotropic_kernel(
        2, 1.0, SlowlyVaryingSpec::constant(1.0), TailRule::truncated(2.0));
    CHECK(exterior_mass(trunc, {0.0, 0.0}, 3.0) == 0.0);
}

TEST_CASE("nu measure normalization and closed forms") {
    RadialProfile gamma(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    double r = 0.1;
    CHECK(nu_measure(gamma, 2, {x0, r, x0, RadialRegion::complement_of_ball(r)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 1; j <= 6; ++j) {
        double v = nu_measure(
            gamma, 2, {x0, r, x0, RadialRegion::complement_of_ball(std::ldexp(r, j))});
        CHECK(v == doctest::Approx(std::ldexp(1.0, -j)).epsilon(1e-9));
    }
    CHECK(nu_measure(gamma, 2, {x0, r, x0, RadialRegion::empty()}) == 0.0);
}

TEST_CASE("nu measure is additive and monotone, also off-center") {
    RadialProfile gamma(1.2, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    double r = 0.2;
    Vec x = {0.05, -0.03};
    double a1 = nu_measure(gamma, 2, {x0, r, x, RadialRegion::annulus(r, 2.0 * r)});
    double a2 = nu_measure(gamma, 2, {x0, r, x, RadialRegion::annulus(2.0 * r, 5.0 * r)});
    double whole = nu_measure(gamma, 2, {x0, r, x, RadialRegion::annulus(r, 5.0 * r)});
    CHECK(a1 + a2 == doctest::Approx(whole).epsilon(1e-9));
    double comp = nu_measure(gamma, 2, {x0, r, x, RadialRegion::complement_of_ball(r)});
    CHECK(whole < comp);
    CHECK(a1 > 0.0);
    CHECK(a2 > 0.0);
}

TEST_CASE("query validation") {
    RadialProfile gamma(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    // x outside B(x0, r/2)
    CHECK_THROWS_AS(
        TailMeasureQuery(x0, 0.1, {0.09, 0.0}, RadialRegion::complement_of_ball(0.1)),
        std::domain_error);
    // region reaching inside B(x0, r)
    CHECK_THROWS_AS(TailMeasureQuery(x0, 0.1, x0, RadialRegion::annulus(0.05, 0.3)),
                    std::domain_error);
}

TEST_CASE("eta report for the centered grid") {
    RadialProfile gamma(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    auto rep = eta_rj(gamma, 2, x0, 0.1, 3, {x0});
    CHECK(rep.eta == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(rep.eta_root == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(eta_rj(gamma, 2, x0, 0.1, 0, {x0}), std::domain_error);
}

TEST_CASE("eta root settles below 1 uniformly over scales") {
    RadialProfile gamma(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                        0.5);
    Vec x0 = {0.0, 0.0};
    for (double r : {0.05, 0.1, 0.2}) {
        std::vector<Vec> grid = {x0};
        for (const auto& p : sphere_points(2, 8)) grid.push_back(scale(0.45 * r, p));
        for (int j = 5; j <= 8; ++j) {
            auto rep = eta_rj(gamma, 2, x0, r, j, grid);
            CHECK(rep.eta_root <= 0.9);
            CHECK(rep.eta_root > 0.0);
        }
    }
}
