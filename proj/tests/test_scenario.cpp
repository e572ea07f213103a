// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include <sstream>

using namespace adsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("deploy_random is reproducible and within support")
{
    Rng a = make_rng(5, 0), b = make_rng(5, 0);
    const auto d1 = deploy_random(10, 1, 250.0, a);
    const auto d2 = deploy_random(10, 1, 250.0, b);
    CHECK(d1 == d2);
    REQUIRE(d1.users.size() == 10);
    for (const auto& u : d1.users) {
        CHECK(u.distance_m >= 1.0);
        CHECK(u.distance_m <= 250.0);
    }
    CHECK(d1.eavesdropper_distance_m == 250.0);
}

TEST_CASE("pairing: nearest with farthest")
{
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng = make_rng(s, 0);
        const auto d = deploy_random(3, 1, 250.0, rng);
        REQUIRE(d.pairs.size() == 1);
        CHECK(d.pairs[0].device1.distance_m < d.pairs[0].device2.distance_m);
        double lo = 1e9, hi = -1.0;
        for (const auto& u : d.users) {
            lo = std::min(lo, u.distance_m);
            hi = std::max(hi, u.distance_m);
        }
        CHECK(d.pairs[0].device1.distance_m == lo);
        CHECK(d.pairs[0].device2.distance_m == hi);
    }
}

TEST_CASE("deploy_random rejects 2k >= n")
{
    Rng rng = make_rng(1, 0);
    CHECK_THROWS_AS(deploy_random(2, 1, 250.0, rng), InvalidInput);
    CHECK_THROWS_AS(deploy_random(4, 2, 250.0, rng), InvalidInput);
    CHECK_THROWS_AS(deploy_random(4, 1, 0.5, rng), InvalidInput);
}

TEST_CASE("select_target")
{
    RadioConfig cfg;
    const PathLossParams p{2.0, 0.0, Environment::Urban};
    Deployment d;
    d.users = {{0, 50.0}, {1, 100.0}, {2, 150.0}};
    CHECK(select_target(d, cfg, p).id == 2);
    d.users = {{7, 80.0}};
    CHECK(select_target(d, cfg, p).id == 7);
    d.users = {{3, 90.0}, {1, 90.0}, {2, 40.0}};
    CHECK(select_target(d, cfg, p).id == 1);
    d.users.clear();
    CHECK_THROWS_AS(select_target(d, cfg, p), InvalidInput);
}

TEST_CASE("link_budget_for against the pure chain")
{
    RadioConfig cfg;
    const PathLossParams p{2.0, 0.0, Environment::Urban};
    Rng rng = make_rng(3, 0);
    const auto lb = link_budget_for(150.0, cfg, p, std::nullopt, rng);
    CHECK(lb.capacity_bps == capacity(cfg, snr(channel_gain(free_space_path_loss(cfg, p, 150.0)), cfg)));

    const ExperimentParams fx;
    const auto urban = fx.path(Environment::Urban);
    const auto clean = link_budget_with_shadow(fx.target_distance_m, fx.radio, urban, std::nullopt, 0.0);
    const auto dusted = link_budget_with_shadow(fx.target_distance_m, fx.radio, urban, fx.dust_on_link(), 0.0);
    CHECK(std::isfinite(clean.capacity_bps));
    CHECK(clean.capacity_bps > 0.0);
    CHECK(dusted.capacity_bps < clean.capacity_bps);
}

TEST_CASE("10 dB of dust lowers SNR by exactly 10 dB")
{
    RadioConfig cfg;
    const PathLossParams p{2.0, 0.0, Environment::Urban};
    DustOnLink dust;
    // Choose x so beta * span = 10 dB over a 0.15 km span.
    dust.span_km = 0.15;
    dust.params.x_const = 1.0;
    const double beta1 = ad_specific_attenuation(dust.params, cfg.frequency_ghz);
    dust.params.x_const = (10.0 / 0.15) / beta1;
    CHECK_THAT(dust_loss_db(dust, cfg.frequency_ghz, 150.0), WithinAbs(10.0, 1e-12));
    const auto a = link_budget_with_shadow(150.0, cfg, p, std::nullopt, 0.0);
    const auto b = link_budget_with_shadow(150.0, cfg, p, dust, 0.0);
    CHECK_THAT(a.snr_db() - b.snr_db(), WithinAbs(10.0, 1e-9));
}

TEST_CASE("deployment text round trip")
{
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng = make_rng(s, 9);
        const auto d = deploy_random(12, 3, 250.0, rng);
        std::ostringstream os;
        write_deployment(os, d);
        std::istringstream in(os.str());
        CHECK(read_deployment(in) == d);
    }
    std::istringstream bad("0 12.5 wizard\n");
    CHECK_THROWS_AS(read_deployment(bad), InvalidInput);
}
