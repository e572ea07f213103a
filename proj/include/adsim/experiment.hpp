// SPDX-License-Identifier: Apache-2.0
#pragma once

// Parameter sweeps, the per-iteration sensitivity experiment and the
// miss-count distribution experiment. Every work item owns an RNG seeded
// from (master seed, item index), so results do not depend on how many
// workers evaluate them.

#include <adsim/attack_engine.hpp>
#include <adsim/attack_stats.hpp>
#include <adsim/config.hpp>
#include <adsim/propagation.hpp>
#include <adsim/rng.hpp>
#include <adsim/scenario.hpp>
#include <adsim/table.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace adsim {

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads. Results are
/// stored by index.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn)
{
    std::vector<T> out(n);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

inline const char* swept_column(SweptParam p)
{
    switch (p) {
    case SweptParam::Distance: return "distance_m";
    case SweptParam::Frequency: return "frequency_ghz";
    case SweptParam::Visibility: return "visibility_km";
    }
    return "?";
}

/// Sweep points start, start+step, ... up to stop (inclusive within 1e-9 step).
inline std::vector<double> sweep_points(const SweepRange& r)
{
    detail::require(std::isfinite(r.step) && r.step > 0.0, "sweep step must be positive");
    detail::require(r.start < r.stop, "sweep start must be below stop");
    const auto n = static_cast<std::size_t>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
    detail::require(n <= 1'000'000, "sweep has too many points");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = r.start + static_cast<double>(i) * r.step;
    return pts;
}

inline void validate_sweep(const SweepSpec& spec)
{
    spec.fixed.validate();
    const auto pts = sweep_points(spec.range);
    const double lo = pts.front(), hi = pts.back();
    switch (spec.swept) {
    case SweptParam::Distance:
        detail::require(lo >= spec.fixed.radio.ref_distance_m, "distance sweep starts below the reference distance");
        break;
    case SweptParam::Frequency:
        detail::require(lo >= 0.1 && hi <= 300.0, "frequency sweep must stay within [0.1, 300] GHz");
        break;
    case SweptParam::Visibility:
        detail::require(lo >= spec.fixed.v_min_km, "visibility sweep starts below v_min");
        detail::require(lo >= spec.fixed.visibility_floor_km, "visibility sweep starts below the visibility floor");
        break;
    }
}

struct ModeMetrics {
    double sensitivity_alpha = 0.0;
    double complexity = 0.0;
    double miss_rate = 0.0;
    double p_miss = 0.0;
};

struct ResultRow {
    double swept_value = 0.0;
    double c_valid_bps = 0.0;
    double c_valid_nodust_bps = 0.0;
    double c_eav_bps = 0.0;
    double c_secrecy_bps = 0.0;
    double c_secrecy_nodust_bps = 0.0;
    double energy_efficiency = 0.0;
    double energy_efficiency_nodust = 0.0;
    bool favorable = false;
    ModeMetrics hd;
    ModeMetrics fd;

    const ModeMetrics& metrics(AttackMode m) const { return m == AttackMode::HD ? hd : fd; }
};

namespace detail {

/// Intruder capacity requirement grows with the number of directions won.
inline double mode_alpha(AttackMode mode, double c_user, double c_eav)
{
    if (!(c_user > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return sensitivity_report(c_user, directions(mode) * c_eav).alpha;
}

inline ResultRow evaluate_point(const SweepSpec& spec, std::size_t index, double value)
{
    const auto& fx = spec.fixed;
    RadioConfig radio = fx.radio;
    DustOnLink dust = fx.dust_on_link();
    double target = fx.target_distance_m;
    switch (spec.swept) {
    case SweptParam::Distance: target = value; break;
    case SweptParam::Frequency: radio.frequency_ghz = value; break;
    case SweptParam::Visibility: dust.params.visibility_km = value; break;
    }
    const PathLossParams path = fx.path(spec.scenario);

    const std::uint64_t point_seed = derive_seed(spec.seed, index);
    Rng shadow_rng{derive_seed(point_seed, 0)};
    const double gamma_target = draw_shadow_fading(path.shadow_sigma_db, shadow_rng);
    const double gamma_eav = draw_shadow_fading(path.shadow_sigma_db, shadow_rng);

    const auto clean = link_budget_with_shadow(target, radio, path, std::nullopt, gamma_target);
    const auto dusted =
        spec.dust_enabled ? link_budget_with_shadow(target, radio, path, dust, gamma_target) : clean;
    const auto eav = link_budget_with_shadow(fx.eavesdropper_distance(), radio, path, std::nullopt, gamma_eav);

    ResultRow row;
    row.swept_value = value;
    row.c_valid_bps = dusted.capacity_bps;
    row.c_valid_nodust_bps = clean.capacity_bps;
    row.c_eav_bps = eav.capacity_bps;
    row.c_secrecy_bps = secrecy_capacity(row.c_valid_bps, row.c_eav_bps);
    row.c_secrecy_nodust_bps = secrecy_capacity(row.c_valid_nodust_bps, row.c_eav_bps);
    const double tx_w = radio.tx_power_mw / 1000.0;
    row.energy_efficiency = energy_efficiency(row.c_valid_bps, tx_w);
    row.energy_efficiency_nodust = energy_efficiency(row.c_valid_nodust_bps, tx_w);
    row.favorable = feasibility(row.c_valid_bps, row.c_eav_bps, fx.c_threshold_bps).favorable;

    const double c_ref = fx.complexity_ref_bps.value_or(radio.bandwidth_hz);
    for (AttackMode mode : modes_of(spec.attack_mode)) {
        // Same attack seed for both modes: HD and FD see the same draws.
        Rng attack_rng{derive_seed(point_seed, 1)};
        const auto trace = run_attack(mode, fx.attempts, fx.miss_prob_dl, fx.miss_prob_ul, attack_rng, fx.flood());
        const auto stats = miss_rate_stats(trace, fx.miss_prob_ul, fx.miss_prob_dl);
        ModeMetrics& m = mode == AttackMode::HD ? row.hd : row.fd;
        m.sensitivity_alpha = mode_alpha(mode, row.c_valid_bps, row.c_eav_bps);
        m.complexity = attack_complexity(mode, row.c_secrecy_bps, c_ref);
        m.miss_rate = stats.miss_rate;
        m.p_miss = stats.p_miss_analytic;
    }
    return row;
}

} // namespace detail

inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned workers = 1)
{
    validate_sweep(spec);
    const auto pts = sweep_points(spec.range);
    return parallel_map<ResultRow>(pts.size(), workers,
                                   [&](std::size_t i) { return detail::evaluate_point(spec, i, pts[i]); });
}

/// Fixed column order: swept value, capacities, efficiency, favorability,
/// then per-mode metrics. Undusted columns appear only when dust is enabled.
inline Table sweep_table(const SweepSpec& spec, const std::vector<ResultRow>& rows)
{
    Table t;
    t.columns.push_back(swept_column(spec.swept));
    t.columns.push_back("c_valid_bps");
    if (spec.dust_enabled)
        t.columns.push_back("c_valid_nodust_bps");
    t.columns.push_back("c_eav_bps");
    t.columns.push_back("c_secrecy_bps");
    if (spec.dust_enabled)
        t.columns.push_back("c_secrecy_nodust_bps");
    t.columns.push_back("energy_efficiency_bps_per_w");
    if (spec.dust_enabled)
        t.columns.push_back("energy_efficiency_nodust_bps_per_w");
    t.columns.push_back("favorable");
    const auto modes = modes_of(spec.attack_mode);
    for (AttackMode m : modes) {
        const std::string s = to_string(m);
        t.columns.push_back("sensitivity_alpha_" + s);
        t.columns.push_back("complexity_" + s);
        t.columns.push_back("miss_rate_" + s);
        t.columns.push_back("p_miss_" + s);
    }
    for (const auto& r : rows) {
        std::vector<Cell> cells{r.swept_value, r.c_valid_bps};
        if (spec.dust_enabled)
            cells.emplace_back(r.c_valid_nodust_bps);
        cells.emplace_back(r.c_eav_bps);
        cells.emplace_back(r.c_secrecy_bps);
        if (spec.dust_enabled)
            cells.emplace_back(r.c_secrecy_nodust_bps);
        cells.emplace_back(r.energy_efficiency);
        if (spec.dust_enabled)
            cells.emplace_back(r.energy_efficiency_nodust);
        cells.emplace_back(static_cast<std::int64_t>(r.favorable));
        for (AttackMode m : modes) {
            const auto& mm = r.metrics(m);
            cells.insert(cells.end(), {mm.sensitivity_alpha, mm.complexity, mm.miss_rate, mm.p_miss});
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

/// "<swept>_<scenario>", e.g. distance_urban.
inline std::string sweep_stem(const SweepSpec& spec)
{
    return std::string(to_string(spec.swept)) + "_" + to_string(spec.scenario);
}

// ---------------------------------------------------------------------------
// Sensitivity experiment

struct SensitivityRow {
    std::size_t iteration = 0;
    double target_distance_m = 0.0;
    double c_user_ad_bps = 0.0;
    double c_eav_bps = 0.0;
    double alpha_hd = 0.0;
    double alpha_fd = 0.0;
    double s_ev = 0.0;
    bool favorable = false;
};

/// Per iteration: fresh deployment, worst-channel target, dusted target and
/// clean eavesdropper budgets (with shadowing), HD and FD sensitivity.
inline std::vector<SensitivityRow> run_sensitivity_experiment(std::size_t iterations, const SweepSpec& spec)
{
    detail::require(iterations >= 1, "iterations must be >= 1");
    const auto& fx = spec.fixed;
    fx.validate();
    const PathLossParams path = fx.path(spec.scenario);
    const DustOnLink dust = fx.dust_on_link();

    std::vector<SensitivityRow> rows;
    rows.reserve(iterations);
    for (std::size_t i = 0; i < iterations; ++i) {
        Rng rng = make_rng(spec.seed, i);
        const auto dep = deploy_random(fx.n_users, fx.k_pairs, fx.coverage_radius_m, rng, fx.radio.ref_distance_m);
        const auto target = select_target(dep, fx.radio, path);
        const auto user = link_budget_for(target.distance_m, fx.radio, path, dust, rng);
        const auto eav = link_budget_for(fx.eavesdropper_distance(), fx.radio, path, std::nullopt, rng);

        SensitivityRow r;
        r.iteration = i + 1;
        r.target_distance_m = target.distance_m;
        r.c_user_ad_bps = user.capacity_bps;
        r.c_eav_bps = eav.capacity_bps;
        r.alpha_hd = detail::mode_alpha(AttackMode::HD, r.c_user_ad_bps, r.c_eav_bps);
        r.alpha_fd = detail::mode_alpha(AttackMode::FD, r.c_user_ad_bps, r.c_eav_bps);
        r.s_ev = r.c_user_ad_bps > 0.0 ? sensitivity_report(r.c_user_ad_bps, r.c_eav_bps).s_ev
                                                : std::numeric_limits<double>::quiet_NaN();
        r.favorable = feasibility(r.c_user_ad_bps, r.c_eav_bps, fx.c_threshold_bps).favorable;
        rows.push_back(r);
    }
    return rows;
}

inline Table sensitivity_table(const std::vector<SensitivityRow>& rows)
{
    Table t;
    t.columns = {"iteration", "target_distance_m", "c_user_ad_bps", "c_eav_bps",
                 "alpha_hd",  "alpha_fd",          "s_ev", "favorable"};
    for (const auto& r : rows)
        t.rows.push_back({static_cast<std::int64_t>(r.iteration), r.target_distance_m, r.c_user_ad_bps, r.c_eav_bps,
                          r.alpha_hd, r.alpha_fd, r.s_ev, static_cast<std::int64_t>(r.favorable)});
    return t;
}

inline double fraction_hd_dominates(const std::vector<SensitivityRow>& rows)
{
    if (rows.empty())
        return 0.0;
    const auto n = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.alpha_hd >= r.alpha_fd; });
    return static_cast<double>(n) / static_cast<double>(rows.size());
}

/// Spearman rank correlation (average ranks for ties); NaN below two points.
inline double rank_correlation(const std::vector<double>& a, const std::vector<double>& b)
{
    detail::require(a.size() == b.size(), "rank_correlation: size mismatch");
    const std::size_t n = a.size();
    if (n < 2)
        return std::numeric_limits<double>::quiet_NaN();
    auto ranks = [n](const std::vector<double>& v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](auto x, auto y) { return v[x] < v[y]; });
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]])
                ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k)
                r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// Miss-count distribution experiment

struct MissRateDistribution {
    std::size_t attempts = 0;
    std::size_t trials = 0;
    double p_hd = 0.0;
    double p_fd = 0.0;
    std::vector<double> pmf_hd;
    std::vector<double> pmf_fd;
    std::vector<double> pmf_fd_additive;
    std::vector<double> mc_hd;
    std::vector<double> mc_fd;
};

/// Analytic binomial curves for HD (p_miss_hd) and FD (two-stage p from
/// p_ul, p_dl) next to Monte-Carlo histograms of `trials` attack runs.
inline MissRateDistribution run_missrate_experiment(std::size_t attempts, double p_miss_hd, double p_ul, double p_dl,
                                                    std::size_t trials, std::uint64_t seed, unsigned workers = 1)
{
    detail::require(attempts >= 1, "attempts must be >= 1");
    detail::require(trials >= 1, "trials must be >= 1");
    for (double p : {p_miss_hd, p_ul, p_dl})
        detail::require(p >= 0.0 && p <= 1.0, "probabilities must lie in [0, 1]");

    MissRateDistribution d;
    d.attempts = attempts;
    d.trials = trials;
    d.p_hd = p_miss_hd;
    d.p_fd = fd_miss_probability(p_ul, p_dl, FdMissRule::TwoStage);
    const double p_add = fd_miss_probability(p_ul, p_dl, FdMissRule::Additive);
    for (std::size_t k = 0; k <= attempts; ++k) {
        d.pmf_hd.push_back(binomial_pmf(attempts, k, d.p_hd));
        d.pmf_fd.push_back(binomial_pmf(attempts, k, d.p_fd));
        d.pmf_fd_additive.push_back(binomial_pmf(attempts, k, p_add));
    }

    struct Counts {
        std::size_t hd = 0, fd = 0;
    };
    const auto counts = parallel_map<Counts>(trials, workers, [&](std::size_t t) {
        Rng hd_rng = make_rng(seed, t);
        Rng fd_rng = hd_rng;
        const auto hd = run_attack(AttackMode::HD, attempts, p_miss_hd, p_ul, hd_rng);
        const auto fd = run_attack(AttackMode::FD, attempts, p_dl, p_ul, fd_rng);
        return Counts{hd.total_misses(), fd.total_misses()};
    });
    d.mc_hd.assign(attempts + 1, 0.0);
    d.mc_fd.assign(attempts + 1, 0.0);
    for (const auto& c : counts) {
        d.mc_hd[c.hd] += 1.0;
        d.mc_fd[c.fd] += 1.0;
    }
    for (std::size_t k = 0; k <= attempts; ++k) {
        d.mc_hd[k] /= static_cast<double>(trials);
        d.mc_fd[k] /= static_cast<double>(trials);
    }
    return d;
}

inline Table missrate_table(const MissRateDistribution& d)
{
    Table t;
    t.columns = {"misses", "pmf_hd", "pmf_fd", "pmf_fd_additive", "mc_hd", "mc_fd"};
    for (std::size_t k = 0; k <= d.attempts; ++k)
        t.rows.push_back({static_cast<std::int64_t>(k), d.pmf_hd[k], d.pmf_fd[k], d.pmf_fd_additive[k], d.mc_hd[k],
                          d.mc_fd[k]});
    return t;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b)
{
    detail::require(a.size() == b.size(), "total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

inline std::size_t argmax(const std::vector<double>& v)
{
    return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

} // namespace adsim
