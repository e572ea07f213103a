// SPDX-License-Identifier: Apache-2.0
#pragma once

// Analytic miss rates and miss-count distributions, attack effectiveness,
// attack and receiver sensitivity, energy efficiency and the complexity proxy.

#include <adsim/attack_engine.hpp>
#include <adsim/error.hpp>

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace adsim {

struct MissRateStats {
    AttackMode mode = AttackMode::HD;
    std::size_t attempts = 0;
    double miss_rate = 0.0;
    double p_miss_analytic = 0.0;
};

struct SensitivityReport {
    double c_user_ad_bps = 0.0;
    double gap_bps = 0.0;
    double alpha = 0.0;
    double s_ev = 0.0;
};

struct EfficiencyReport {
    double energy_efficiency_bps_per_watt = 0.0;
    double complexity = 0.0;
    double receiver_sensitivity_dbm = 0.0;
    double i_mds_dbm = 0.0;
    double noise_figure_db = 0.0;
};

inline double miss_rate_hd(std::size_t misses_dl, std::size_t attempts)
{
    detail::require(attempts >= 1, "attempts must be >= 1");
    detail::require(misses_dl <= attempts, "misses exceed attempts");
    return static_cast<double>(misses_dl) / static_cast<double>(attempts);
}

/// (m_ul + m_dl) / E. Ranges over [0, 2] when both counts are unconstrained.
inline double miss_rate_fd(std::size_t misses_ul, std::size_t misses_dl, std::size_t attempts)
{
    detail::require(attempts >= 1, "attempts must be >= 1");
    detail::require(misses_ul <= attempts && misses_dl <= attempts, "misses exceed attempts");
    return static_cast<double>(misses_ul + misses_dl) / static_cast<double>(attempts);
}

inline double log_binomial_pmf(std::size_t n, std::size_t k, double p)
{
    detail::require(k <= n, "k must lie in [0, n]");
    detail::require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    // Degenerate p: the mass sits on k = 0 or k = n.
    if (p == 0.0)
        return k == 0 ? 0.0 : neg_inf;
    if (p == 1.0)
        return k == n ? 0.0 : neg_inf;
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double log_choose = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    return log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

/// C(n,k) p^k (1-p)^(n-k). The lgamma form above loses ~1e-12 of total
/// mass by n ~ 2000, so the direct value comes from Boost.Math.
inline double binomial_pmf(std::size_t n, std::size_t k, double p)
{
    detail::require(k <= n, "k must lie in [0, n]");
    detail::require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    return boost::math::pdf(dist, static_cast<double>(k));
}

enum class FdMissRule { Additive, TwoStage };

inline double fd_miss_probability(double p_ul, double p_dl, FdMissRule rule)
{
    detail::require(p_ul >= 0.0 && p_ul <= 1.0 && p_dl >= 0.0 && p_dl <= 1.0, "probabilities must lie in [0, 1]");
    if (rule == FdMissRule::Additive)
        return std::min(1.0, p_ul + p_dl);
    return p_ul + (1.0 - p_ul) * p_dl;
}

/// A_p = 1 / P_miss.
inline double attack_effectiveness(double p_miss)
{
    detail::require(p_miss > 0.0 && p_miss <= 1.0, "miss probability must lie in (0, 1]");
    return 1.0 / p_miss;
}

/// alpha = (d' - d) / d' with d' the dusted user capacity and d the
/// distance between intruder and user capacities.
inline double attack_sensitivity(double c_user_ad_bps, double capacity_gap_bps)
{
    detail::require(c_user_ad_bps > 0.0, "user capacity must be positive");
    detail::require(capacity_gap_bps >= 0.0, "capacity gap must be non-negative");
    return (c_user_ad_bps - capacity_gap_bps) / c_user_ad_bps;
}

inline SensitivityReport sensitivity_report(double c_user_ad_bps, double c_intruder_bps)
{
    SensitivityReport r;
    r.c_user_ad_bps = c_user_ad_bps;
    r.gap_bps = std::abs(c_intruder_bps - c_user_ad_bps);
    r.alpha = attack_sensitivity(c_user_ad_bps, r.gap_bps);
    r.s_ev = c_intruder_bps == c_user_ad_bps ? std::numeric_limits<double>::quiet_NaN()
                                                       : (2.0 * c_user_ad_bps - c_intruder_bps) /
                                                             (c_intruder_bps - c_user_ad_bps);
    return r;
}

/// S_ev = (2 d_o - d) / (d - d_o). Diagnostic companion of attack_sensitivity.
inline double ratio_sensitivity(double d_o_bps, double d_bps)
{
    if (d_bps == d_o_bps)
        throw SingularSensitivity("ratio sensitivity is singular at d == d_o");
    return (2.0 * d_o_bps - d_bps) / (d_bps - d_o_bps);
}

struct ReceiverSensitivity {
    double s_r_dbm;
    double i_mds_dbm;
};

/// I_MDS = -174 dBm/Hz + 10 log10(B) + N_f; S_r = I_MDS + SNR.
inline ReceiverSensitivity receiver_sensitivity(double bandwidth_hz, double noise_figure_db, double snr_db)
{
    detail::require(bandwidth_hz > 0.0, "bandwidth must be positive");
    const double i_mds = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return {i_mds + snr_db, i_mds};
}

inline double energy_efficiency(double capacity_bps, double power_w)
{
    detail::require(power_w > 0.0, "power must be positive");
    return capacity_bps / power_w;
}

/// K = n_dir * C_S / C_ref.
inline double attack_complexity(AttackMode mode, double secrecy_rate_bps, double reference_rate_bps)
{
    detail::require(reference_rate_bps > 0.0, "reference rate must be positive");
    return directions(mode) * secrecy_rate_bps / reference_rate_bps;
}

inline MissRateStats miss_rate_stats(const AttackTrace& t, double p_ul, double p_dl)
{
    MissRateStats s;
    s.mode = t.mode;
    s.attempts = t.attempts;
    if (t.mode == AttackMode::HD) {
        s.miss_rate = miss_rate_hd(t.misses_dl, t.attempts);
        s.p_miss_analytic = p_dl;
    } else {
        s.miss_rate = miss_rate_fd(t.misses_ul, t.misses_dl, t.attempts);
        s.p_miss_analytic = fd_miss_probability(p_ul, p_dl, FdMissRule::TwoStage);
    }
    return s;
}

inline EfficiencyReport efficiency_report(AttackMode mode, double capacity_bps, double tx_power_w,
                                          double secrecy_rate_bps, double reference_rate_bps, double bandwidth_hz,
                                          double noise_figure_db, double snr_db)
{
    EfficiencyReport r;
    r.energy_efficiency_bps_per_watt = energy_efficiency(capacity_bps, tx_power_w);
    r.complexity = attack_complexity(mode, secrecy_rate_bps, reference_rate_bps);
    const auto rs = receiver_sensitivity(bandwidth_hz, noise_figure_db, snr_db);
    r.receiver_sensitivity_dbm = rs.s_r_dbm;
    r.i_mds_dbm = rs.i_mds_dbm;
    r.noise_figure_db = noise_figure_db;
    return r;
}

} // namespace adsim
