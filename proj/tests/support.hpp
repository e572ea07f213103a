// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <adsim/adsim.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

namespace testing {

// Seeded generator for property tests.
struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng); }

    adsim::RadioConfig radio()
    {
        adsim::RadioConfig c;
        c.frequency_ghz = uniform(2.0, 100.0);
        c.bandwidth_hz = log_uniform(1e6, 2e9);
        c.tx_power_mw = log_uniform(1.0, 1000.0);
        c.noise_power_dbm = uniform(-120.0, -80.0);
        c.ref_distance_m = uniform(0.5, 5.0);
        return c;
    }

    adsim::PathLossParams path()
    {
        return {uniform(2.0, 4.0), uniform(0.0, 10.0),
                index(0, 1) ? adsim::Environment::Urban : adsim::Environment::Rural};
    }

    adsim::DustParams dust()
    {
        return {uniform(1.0, 100.0), uniform(2.0, 8.0), uniform(0.05, 3.0), log_uniform(0.001, 5.0),
                log_uniform(1e-5, 1.0)};
    }
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Per-test scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("adsim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testing
