// SPDX-License-Identifier: Apache-2.0
#pragma once

// Log-distance link budget between the base station and a node:
// received power, free-space / shadowed / dust-augmented path loss,
// channel gain, SNR, Shannon capacity and secrecy capacity.

#include <adsim/error.hpp>
#include <adsim/rng.hpp>
#include <adsim/units.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace adsim {

enum class Environment { Urban, Rural };

inline const char* to_string(Environment env) { return env == Environment::Urban ? "urban" : "rural"; }

struct RadioConfig {
    double frequency_ghz = 28.0;
    double bandwidth_hz = 800e6;
    double tx_power_mw = 20.0;
    double noise_power_dbm = -106.0;
    double ref_distance_m = 1.0;

    void validate() const
    {
        detail::require(frequency_ghz >= 0.1 && frequency_ghz <= 300.0, "frequency_ghz must lie in [0.1, 300]");
        detail::require(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
        detail::require(tx_power_mw > 0.0, "tx_power_mw must be positive");
        detail::require(ref_distance_m > 0.0, "ref_distance_m must be positive");
        detail::require(std::isfinite(noise_power_dbm), "noise_power_dbm must be finite");
    }

    double tx_power_dbm() const { return mw_to_dbm(tx_power_mw); }
    double noise_power_mw() const { return dbm_to_mw(noise_power_dbm); }
};

struct PathLossParams {
    double exponent = 2.9;
    double shadow_sigma_db = 8.0;
    Environment environment = Environment::Urban;

    void validate() const
    {
        detail::require(exponent >= 1.0, "path-loss exponent must be >= 1");
        detail::require(shadow_sigma_db >= 0.0, "shadow sigma must be >= 0");
    }

    static PathLossParams urban() { return {2.9, 8.0, Environment::Urban}; }
    static PathLossParams rural() { return {2.2, 4.0, Environment::Rural}; }
    static PathLossParams for_environment(Environment env) { return env == Environment::Urban ? urban() : rural(); }
};

struct LinkBudget {
    double w_db = 0.0;
    double pl_free_db = 0.0;
    double pl_shadow_db = 0.0;
    double pl_total_db = 0.0;
    double gain = 0.0;
    double snr = 0.0;
    double capacity_bps = 0.0;

    double snr_db() const { return linear_to_db(snr); }
};

/// 20*log10(lambda / (4*pi*l_o)).
inline double attenuation_constant_w(const RadioConfig& cfg)
{
    detail::require(cfg.frequency_ghz > 0.0, "frequency must be positive");
    detail::require(cfg.ref_distance_m > 0.0, "reference distance must be positive");
    return 20.0 * std::log10(wavelength_m(cfg.frequency_ghz) / (4.0 * pi * cfg.ref_distance_m));
}

inline double attenuation_constant_w_linear(const RadioConfig& cfg) { return db_to_linear(attenuation_constant_w(cfg)); }

namespace detail {

inline void require_distance(const RadioConfig& cfg, double distance_m)
{
    require(distance_m >= cfg.ref_distance_m, "distance below the reference distance");
}

} // namespace detail

/// p = p_BS * w * (l_o / l)^zeta, in mW.
inline double received_power(const RadioConfig& cfg, const PathLossParams& params, double distance_m)
{
    detail::require_distance(cfg, distance_m);
    return cfg.tx_power_mw * attenuation_constant_w_linear(cfg) *
           std::pow(cfg.ref_distance_m / distance_m, params.exponent);
}

inline double free_space_path_loss(const RadioConfig& cfg, const PathLossParams& params, double distance_m)
{
    detail::require_distance(cfg, distance_m);
    return 10.0 * params.exponent * std::log10(distance_m / cfg.ref_distance_m) - attenuation_constant_w(cfg);
}

inline double shadowed_path_loss(double pl_free_db, double gamma_db) { return pl_free_db + gamma_db; }

/// Adds beta [dB/km] over `dust_span_km` of the link. A 1 km span gives the
/// plain additive form.
inline double total_path_loss_with_ad(double pl_shadow_db, double beta_ad_db_per_km, double dust_span_km)
{
    detail::require(beta_ad_db_per_km >= 0.0, "dust attenuation must be non-negative");
    detail::require(dust_span_km >= 0.0, "dust span must be non-negative");
    return pl_shadow_db + beta_ad_db_per_km * dust_span_km;
}

/// h = 10^(-PL/10): larger loss, smaller gain.
inline double channel_gain(double pl_total_db)
{
    detail::require(pl_total_db >= 0.0, "path loss must be non-negative for a passive channel");
    return std::pow(10.0, -pl_total_db / 10.0);
}

inline double snr(double gain, const RadioConfig& cfg)
{
    detail::require(gain > 0.0, "channel gain must be positive");
    return gain * cfg.tx_power_mw / cfg.noise_power_mw();
}

inline double capacity(const RadioConfig& cfg, double snr_linear)
{
    detail::require(snr_linear >= 0.0, "snr must be non-negative");
    return cfg.bandwidth_hz * std::log2(1.0 + snr_linear);
}

/// [c_valid - c_eav]^+
inline double secrecy_capacity(double c_valid_bps, double c_eav_bps)
{
    detail::require(c_valid_bps >= 0.0 && c_eav_bps >= 0.0, "capacities must be non-negative");
    return std::max(0.0, c_valid_bps - c_eav_bps);
}

/// Log-normal shadowing: gamma_dB ~ N(0, sigma^2).
inline double draw_shadow_fading(double sigma_db, Rng& rng)
{
    detail::require(sigma_db >= 0.0, "shadow sigma must be >= 0");
    if (sigma_db == 0.0)
        return 0.0;
    std::normal_distribution<double> normal(0.0, sigma_db);
    return normal(rng);
}

/// Composes the budget from a known shadow term and dust loss (dB).
inline LinkBudget compose_link_budget(const RadioConfig& cfg, const PathLossParams& params, double distance_m,
                                      double gamma_db, double dust_loss_db)
{
    LinkBudget lb;
    lb.w_db = attenuation_constant_w(cfg);
    lb.pl_free_db = free_space_path_loss(cfg, params, distance_m);
    lb.pl_shadow_db = shadowed_path_loss(lb.pl_free_db, gamma_db);
    lb.pl_total_db = total_path_loss_with_ad(lb.pl_shadow_db, dust_loss_db, 1.0);
    // Shadowing can only push a short link below 0 dB; clamp to a lossless channel.
    lb.gain = channel_gain(std::max(0.0, lb.pl_total_db));
    // Losses beyond ~3000 dB underflow the gain; that link carries nothing.
    lb.snr = lb.gain > 0.0 ? snr(lb.gain, cfg) : 0.0;
    lb.capacity_bps = capacity(cfg, lb.snr);
    return lb;
}

} // namespace adsim
