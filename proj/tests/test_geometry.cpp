#include "doctest.h"

#include <cmath>

#include "jumplab/geometry.hpp"
#include "jumplab/rng.hpp"

using namespace jumplab;

TEST_CASE("chordal radius and half-angle conversions") {
    CHECK(half_angle_from_chordal(std::sqrt(2.0)) == doctest::Approx(0.5 * M_PI));
    CHECK(half_angle_from_chordal(1.0) == doctest::Approx(M_PI / 3.0));
    CHECK(half_angle_from_chordal(2.0) == doctest::Approx(M_PI));
    // theta ~ rho for small caps
    for (double rho : {1e-3, 1e-5}) {
        CHECK(half_angle_from_chordal(rho) / rho == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(chordal_from_half_angle(half_angle_from_chordal(rho)) ==
              doctest::Approx(rho).epsilon(1e-12));
    }
    CHECK_THROWS_AS(half_angle_from_chordal(0.0), std::domain_error);
    CHECK_THROWS_AS(half_angle_from_chordal(2.1), std::domain_error);
}

TEST_CASE("admissible lambda bounds") {
    CHECK(lambda_max(0.5 * M_PI) == doctest::Approx(0.125));
    CHECK(lambda_max(M_PI / 6.0) == doctest::Approx(1.0 / 16.0));
    CHECK(lambda_max_restricted(0.5 * M_PI) == doctest::Approx(1.0 / 16.0));
    CHECK(lambda_max_restricted(M_PI / 6.0) == doctest::Approx(1.0 / 32.0));
    CHECK_THROWS_AS(lambda_max(0.0), std::domain_error);
    CHECK_THROWS_AS(lambda_max(2.0), std::domain_error);
}

TEST_CASE("separation cosine basics") {
    UnitVector xi({1.0, 0.0});
    CHECK(separation_cosine({2.0, 0.0}, {0.0, 0.0}, xi) == doctest::Approx(1.0));
    CHECK(separation_cosine({0.0, 3.0}, {0.0, 1.0}, xi) == doctest::Approx(0.0));
    Vec u = {1.4, -0.3}, v = {0.2, 0.9};
    CHECK(separation_cosine(u, v, xi) == doctest::Approx(separation_cosine(v, u, xi)));
    CHECK_THROWS_AS(separation_cosine(u, u, xi), std::domain_error);
}

TEST_CASE("cone membership is symmetric under negation") {
    Cone cone(UnitVector({0.0, 1.0}), 1.0);  // half-angle pi/3
    CHECK(cone.contains({0.1, 1.0}));
    CHECK(cone.contains({-0.1, -1.0}));
    CHECK(!cone.contains({1.0, 0.1}));
    CHECK(!cone.contains({0.0, 0.0}));
}

TEST_CASE("chain construction for the rotation-invariant kernel") {
    auto k = make_isotropic_kernel(2, 1.0);
    Vec x0 = {0.0, 0.0};
    Vec u0 = {0.0, 0.0};
    Vec z = {10.0, 0.0};
    auto cfg = build_chain(x0, 1.0, k, u0, z);

    CHECK(cfg.x0_tilde[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::fabs(cfg.x0_tilde[1]) < 1e-12);
    CHECK(dot(sub(z, u0), cfg.xi.vec()) > 0.0);
    CHECK(norm(sub(cfg.z0_tilde, x0)) == doctest::Approx(0.5).epsilon(1e-12));
    // the intermediate target sits on the z-facing side of the half sphere
    CHECK(dist(cfg.z0_tilde, Vec{0.5, 0.0}) < 0.45);

    auto m = verify_chain(cfg, cfg.cone);
    CHECK(m.all_nonnegative());
    CHECK(m.m4 > 0.0);
    // condition (4): the hop to z shortens the distance
    CHECK(dist(z, cfg.z0_tilde) < dist(z, x0));
}

TEST_CASE("narrow cone kernel rejects targets outside every cone") {
    auto k = make_cone_kernel(2, 1.0, 0.99);
    CHECK_THROWS_AS(build_chain({0.0, 0.0}, 1.0, k, {0.0, 0.0}, {0.0, 10.0}),
                    NoConeError);
}

TEST_CASE("build_chain validates its inputs") {
    auto k = make_isotropic_kernel(2, 1.0);
    // z too close
    CHECK_THROWS_AS(build_chain({0.0, 0.0}, 1.0, k, {0.0, 0.0}, {1.0, 0.0}),
                    std::domain_error);
    // lambda above sin(theta)/8
    CHECK_THROWS_AS(
        build_chain({0.0, 0.0}, 1.0, k, {0.0, 0.0}, {10.0, 0.0}, 0.2),
        std::domain_error);
    // u0 outside B(x0, lambda r)
    CHECK_THROWS_AS(
        build_chain({0.0, 0.0}, 1.0, k, {0.5, 0.0}, {10.0, 0.0}),
        std::domain_error);
}

TEST_CASE("inflated lambda breaks the first chain condition") {
    auto k = make_cone_kernel(2, 1.0, 0.9);
    Vec x0 = {0.0, 0.0};
    Vec z = {8.0, 0.0};
    auto good = build_chain(x0, 1.0, k, x0, z);
    REQUIRE(verify_chain(good, good.cone).all_nonnegative());

    ChainConfig bad = good;
    bad.lambda = 2.0 * lambda_max(good.cone.theta);
    auto m = verify_chain(bad, bad.cone);
    CHECK(m.m1 < 0.0);
    CHECK(!m.all_nonnegative());
}

TEST_CASE("randomized feasible configurations all verify") {
    RngStream rng(2024, 0);
    int built = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + static_cast<int>(rng.uniform_index(2));
        // random cap axis
        Vec a(d);
        double na = 0.0;
        while (na < 1e-3) {
            for (auto& c : a) c = rng.uniform(-1.0, 1.0);
            na = norm(a);
        }
        UnitVector axis(scale(1.0 / na, a));
        double cos_theta = rng.uniform(0.3, 0.9);
        double theta = std::acos(cos_theta);
        auto k = JumpKernel(
            d, ConeSystem({{axis, chordal_from_half_angle(theta), 1.0}}, 1.0),
            RadialProfile(1.0, SlowlyVaryingSpec::constant(1.0), TailRule::power(), 1.0,
                          0.5),
            SpatialModulator::constant_one());

        double r = rng.uniform(0.5, 3.0);
        Vec x0(d);
        for (auto& c : x0) c = rng.uniform(-2.0, 2.0);
        double lambda = 0.9 * lambda_max_restricted(theta);
        // u0 inside B(x0, lambda r)
        Vec u0 = x0;
        u0[0] += rng.uniform(-0.5, 0.5) * lambda * r;
        // z along a direction well inside the cone, far away
        double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
        double t = rng.uniform(2.0, 40.0) * r;
        Vec z = add(u0, scale(sign * t, axis.vec()));

        std::optional<ChainConfig> cfg;
        try {
            cfg = build_chain(x0, r, k, u0, z);
        } catch (const NoConeError&) {
            continue;
        }
        ++built;
        auto m = verify_chain(*cfg, cfg->cone);
        CHECK(m.all_nonnegative());
        CHECK(dist(cfg->z0_tilde, cfg->x0) == doctest::Approx(0.5 * r).epsilon(1e-10));
        CHECK(dist(cfg->x0_tilde, cfg->x0) == doctest::Approx(0.5 * r).epsilon(1e-10));
    }
    CHECK(built >= 50);
}
