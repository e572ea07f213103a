// SPDX-License-Identifier: Apache-2.0
//
// adsim: command-line front end for the artificial-dust attack simulator.

#include <adsim/adsim.hpp>
#include <adsim/manifest.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace adsim;

namespace {

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = "out";
    unsigned workers = 1;
    // Flag overrides, keyed by config key. Applied after the config file.
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config_path, "key=value configuration file");
    sub->add_option_function<std::string>(
        "--seed", [&c](const std::string& v) { c.overrides["seed"] = v; }, "master seed");
    sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--set", c.sets, "extra key=value override (repeatable)");
}

/// Binds a flag straight to a config key.
void bind(CLI::App* sub, Common& c, const std::string& flag, const std::string& key, const std::string& help)
{
    sub->add_option_function<std::string>(flag, [&c, key](const std::string& v) { c.overrides[key] = v; }, help);
}

struct Resolved {
    ConfigFile cfg;
    std::map<std::string, std::string> given; // keys set by file, flag or --set
};

Resolved resolve(const Common& c)
{
    Resolved r;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in)
            throw IoError("cannot read config '" + c.config_path + "'");
        for (const auto& [k, v] : read_config_pairs(in)) {
            apply_config_value(r.cfg, k, v);
            r.given[k] = v;
        }
    }
    for (const auto& [k, v] : c.overrides) {
        apply_config_value(r.cfg, k, v);
        r.given[k] = v;
    }
    for (const auto& s : c.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("--set expects key=value, got '" + s + "'");
        apply_config_value(r.cfg, s.substr(0, eq), s.substr(eq + 1));
        r.given[s.substr(0, eq)] = s.substr(eq + 1);
    }
    r.cfg.spec.fixed.validate();
    return r;
}

fs::path prepare_out(const Common& c)
{
    fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const ConfigFile& cfg,
                    const std::vector<fs::path>& outputs)
{
    const auto m = make_manifest(command, cfg, outputs);
    detail::write_file(dir / ("manifest_" + command + ".txt"), to_text(m));
}

std::vector<Environment> scenarios_of(const ConfigFile& cfg)
{
    if (cfg.both_scenarios)
        return {Environment::Urban, Environment::Rural};
    return {cfg.spec.scenario};
}

// ---------------------------------------------------------------------------

int cmd_calibrate(const Common& c, const std::string& table_path)
{
    const auto r = resolve(c);
    std::vector<CalibrationPoint> rows(measured_dust_table.begin(), measured_dust_table.end());
    if (!table_path.empty()) {
        std::ifstream in(table_path);
        if (!in)
            throw IoError("cannot read dust table '" + table_path + "'");
        rows = read_dust_table(in);
    }
    const double radius = r.cfg.spec.fixed.dust.particle_radius_um;

    Table t;
    t.columns = {"row", "f_ghz", "x_published", "x_recomputed", "beta_measured_db_per_km", "beta_roundtrip_db_per_km",
                 "roundtrip_rel_error", "beta_with_x_published_db_per_km"};
    std::cout << "row  f_ghz   x_published      x_recomputed  beta_measured  roundtrip_rel_err\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i];
        const double x = recomputed_x(p, radius);
        DustParams d{radius, p.eps_real, p.eps_imag, p.visibility_km, x};
        const double beta = ad_specific_attenuation(d, p.freq_ghz, std::min(default_visibility_floor_km, p.visibility_km));
        d.x_const = p.x_published;
        const double beta_published_x = ad_specific_attenuation(d, p.freq_ghz, std::min(default_visibility_floor_km, p.visibility_km));
        const double rel = std::abs(beta - p.beta_measured_db_per_km) / p.beta_measured_db_per_km;
        t.rows.push_back({static_cast<std::int64_t>(i + 1), p.freq_ghz, p.x_published, x, p.beta_measured_db_per_km, beta,
                          rel, beta_published_x});
        std::printf("%-4zu %-7g %-12.4e %-13.4e %-14g %.3e\n", i + 1, p.freq_ghz, p.x_published, x,
                    p.beta_measured_db_per_km, rel);
    }
    std::cout << "x_recomputed uses r_e = " << radius
              << " um; published x values are not reproduced by the attenuation form (reported, not asserted).\n";
    const auto dir = prepare_out(c);
    const auto path = dir / "calibrate.csv";
    emit_csv(t, path);
    write_manifest(dir, "calibrate", r.cfg, {path});
    return 0;
}

int cmd_link_budget(const Common& c)
{
    const auto r = resolve(c);
    const auto& fx = r.cfg.spec.fixed;
    const auto dir = prepare_out(c);
    Table t;
    t.columns = {"scenario",      "link",       "distance_m",   "w_db",     "pl_free_db",
                 "pl_shadow_db",  "pl_total_db", "gain",        "snr_db",   "capacity_bps",
                 "secrecy_bps",   "s_r_dbm",     "i_mds_dbm",   "energy_efficiency_bps_per_w"};
    for (Environment env : scenarios_of(r.cfg)) {
        const auto path = fx.path(env);
        Rng rng = make_rng(r.cfg.spec.seed, 0);
        const double gamma_t = draw_shadow_fading(path.shadow_sigma_db, rng);
        const double gamma_e = draw_shadow_fading(path.shadow_sigma_db, rng);
        const auto clean = link_budget_with_shadow(fx.target_distance_m, fx.radio, path, std::nullopt, gamma_t);
        const auto dusted = link_budget_with_shadow(fx.target_distance_m, fx.radio, path, fx.dust_on_link(), gamma_t);
        const auto eav = link_budget_with_shadow(fx.eavesdropper_distance(), fx.radio, path, std::nullopt, gamma_e);
        const auto feas = feasibility(dusted.capacity_bps, eav.capacity_bps, fx.c_threshold_bps);

        auto emit = [&](const char* name, double dist, const LinkBudget& lb, double secrecy) {
            const auto rs = receiver_sensitivity(fx.radio.bandwidth_hz, fx.noise_figure_db, lb.snr_db());
            const double ee = energy_efficiency(lb.capacity_bps, fx.radio.tx_power_mw / 1000.0);
            t.rows.push_back({std::string(to_string(env)), std::string(name), dist, lb.w_db, lb.pl_free_db,
                              lb.pl_shadow_db, lb.pl_total_db, lb.gain, lb.snr_db(), lb.capacity_bps, secrecy,
                              rs.s_r_dbm, rs.i_mds_dbm, ee});
            std::printf("%-6s %-13s d=%-7g PL=%8.3f dB  SNR=%8.3f dB  C=%.6g bit/s\n", to_string(env), name, dist,
                        lb.pl_total_db, lb.snr_db(), lb.capacity_bps);
        };
        emit("valid_nodust", fx.target_distance_m, clean, secrecy_capacity(clean.capacity_bps, eav.capacity_bps));
        emit("valid_dust", fx.target_distance_m, dusted, feas.c_secrecy_bps);
        emit("eavesdropper", fx.eavesdropper_distance(), eav, 0.0);
        std::printf("%-6s secrecy=%.6g bit/s  favorable=%s\n", to_string(env), feas.c_secrecy_bps,
                    feas.favorable ? "yes" : "no");
    }
    const auto path = dir / "link_budget.csv";
    emit_csv(t, path);
    write_manifest(dir, "link-budget", r.cfg, {path});
    return 0;
}

int cmd_sweep(const Common& c)
{
    auto r = resolve(c);
    auto& spec = r.cfg.spec;
    // Range defaults depend on the swept quantity unless given explicitly.
    const bool has_range = r.given.contains("start") || r.given.contains("stop") || r.given.contains("step");
    if (!has_range) {
        switch (spec.swept) {
        case SweptParam::Distance: spec.range = {10.0, 250.0, 5.0}; break;
        case SweptParam::Frequency: spec.range = {2.0, 100.0, 1.0}; break;
        case SweptParam::Visibility: spec.range = {0.05, 1.0, 0.05}; break;
        }
    }
    const auto dir = prepare_out(c);
    std::vector<fs::path> outputs;
    for (Environment env : scenarios_of(r.cfg)) {
        SweepSpec s = spec;
        s.scenario = env;
        const auto rows = run_sweep(s, c.workers);
        const auto table = sweep_table(s, rows);
        const auto csv = dir / ("sweep_" + sweep_stem(s) + ".csv");
        emit_csv(table, csv);
        outputs.push_back(csv);
        for (auto& p : emit_plot_data(table, swept_column(s.swept), dir / "plot", sweep_stem(s)))
            outputs.push_back(p);
        std::printf("%s sweep (%s): %zu points -> %s\n", to_string(s.swept), to_string(env), rows.size(),
                    csv.string().c_str());
    }
    write_manifest(dir, "sweep", r.cfg, outputs);
    return 0;
}

int cmd_attack(const Common& c)
{
    const auto r = resolve(c);
    const auto& fx = r.cfg.spec.fixed;
    const auto dir = prepare_out(c);
    std::vector<fs::path> outputs;
    std::vector<AttackTrace> traces;
    for (Environment env : scenarios_of(r.cfg)) {
        const auto scn = fx.attack_scenario(env);
        Rng rng = make_rng(r.cfg.spec.seed, 0);
        const auto dep = deploy_random(fx.n_users, fx.k_pairs, fx.coverage_radius_m, rng, fx.radio.ref_distance_m);
        const auto dep_path = dir / (std::string("deployment_") + to_string(env) + ".tsv");
        {
            std::ostringstream os;
            write_deployment(os, dep);
            detail::write_file(dep_path, os.str());
        }
        outputs.push_back(dep_path);
        const auto target = select_target(dep, fx.radio, scn.path);
        const auto report =
            fx.dust.visibility_km > fx.v_min_km
                ? drive_visibility(scn, target, fx.dust, fx.dv_km, fx.v_min_km)
                : evaluate_feasibility(scn, target, fx.dust);
        std::printf("%s: target id %zu at %.3f m, C_valid=%.6g C_eav=%.6g bit/s, V=%.4g km, favorable=%s\n",
                    to_string(env), target.id, target.distance_m, report.c_valid_bps, report.c_eav_bps,
                    report.visibility_used_km, report.favorable ? "yes" : "no");
        if (!report.favorable) {
            std::printf("%s: attack not launched (secrecy maintained down to V=%.4g km)\n", to_string(env),
                        report.visibility_used_km);
            continue;
        }
        for (AttackMode mode : modes_of(r.cfg.spec.attack_mode)) {
            Rng attack_rng = make_rng(r.cfg.spec.seed, 1);
            auto trace = run_attack(mode, fx.attempts, fx.miss_prob_dl, fx.miss_prob_ul, attack_rng, fx.flood());
            const auto log_path = dir / (std::string("attack_") + to_string(env) + "_" + to_string(mode) + ".log");
            std::ostringstream os;
            write_trace_log(os, trace);
            detail::write_file(log_path, os.str());
            outputs.push_back(log_path);
            const auto stats = miss_rate_stats(trace, fx.miss_prob_ul, fx.miss_prob_dl);
            std::printf("%s %s: attempts=%zu misses_ul=%zu misses_dl=%zu spoofed=%zu miss_rate=%.4f p_miss=%.4f\n",
                        to_string(env), to_string(mode), trace.attempts, trace.misses_ul, trace.misses_dl,
                        trace.spoofed, stats.miss_rate, stats.p_miss_analytic);
            traces.push_back(std::move(trace));
        }
    }
    const auto summary = dir / "attack_summary.csv";
    emit_csv(trace_summary(traces), summary);
    outputs.push_back(summary);
    write_manifest(dir, "attack", r.cfg, outputs);
    return 0;
}

int cmd_sensitivity(const Common& c)
{
    const auto r = resolve(c);
    const auto dir = prepare_out(c);
    std::vector<fs::path> outputs;
    for (Environment env : scenarios_of(r.cfg)) {
        SweepSpec s = r.cfg.spec;
        s.scenario = env;
        const auto rows = run_sensitivity_experiment(s.fixed.iterations, s);
        const auto table = sensitivity_table(rows);
        const auto csv = dir / (std::string("sensitivity_") + to_string(env) + ".csv");
        emit_csv(table, csv);
        outputs.push_back(csv);
        const double rho = rank_correlation(table.numeric_column("target_distance_m"), table.numeric_column("alpha_hd"));
        std::printf("%s: %zu iterations, fraction alpha_hd >= alpha_fd = %.4f, rank corr(distance, alpha_hd) = %.4f\n",
                    to_string(env), rows.size(), fraction_hd_dominates(rows), rho);
    }
    write_manifest(dir, "sensitivity", r.cfg, outputs);
    return 0;
}

int cmd_missrate(const Common& c)
{
    const auto r = resolve(c);
    const auto& fx = r.cfg.spec.fixed;
    const auto dir = prepare_out(c);
    const auto d = run_missrate_experiment(fx.missrate_attempts, fx.miss_prob_dl, fx.miss_prob_ul, fx.miss_prob_dl,
                                           fx.trials, r.cfg.spec.seed, c.workers);
    const auto table = missrate_table(d);
    const auto csv = dir / "missrate.csv";
    emit_csv(table, csv);
    std::vector<fs::path> outputs{csv};
    for (auto& p : emit_plot_data(table, "misses", dir / "plot", "missrate"))
        outputs.push_back(p);
    std::printf("attempts=%zu trials=%zu p_hd=%.4f p_fd=%.4f\n", d.attempts, d.trials, d.p_hd, d.p_fd);
    std::printf("mode HD k=%zu pmf=%.6f | mode FD k=%zu pmf=%.6f\n", argmax(d.pmf_hd), d.pmf_hd[argmax(d.pmf_hd)],
                argmax(d.pmf_fd), d.pmf_fd[argmax(d.pmf_fd)]);
    std::printf("total variation MC vs analytic: HD=%.5f FD=%.5f\n", total_variation(d.mc_hd, d.pmf_hd),
                total_variation(d.mc_fd, d.pmf_fd));
    write_manifest(dir, "missrate", r.cfg, outputs);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Artificial-dust attack simulator"};
    app.require_subcommand(1);

    Common common;
    std::string table_path;

    auto* calibrate = app.add_subcommand("calibrate", "Recompute x from the measured dust table and round-trip it");
    add_common(calibrate, common);
    calibrate->add_option("--table", table_path, "dust table file (default: bundled table)");
    bind(calibrate, common, "--radius", "particle_radius_um", "particle radius r_e in um");

    auto* link = app.add_subcommand("link-budget", "One-shot link budget for the target and the eavesdropper");
    add_common(link, common);
    bind(link, common, "--scenario", "scenario", "urban, rural or both");
    bind(link, common, "--distance", "target_distance_m", "target distance in m");
    bind(link, common, "--frequency", "frequency_ghz", "carrier frequency in GHz");
    bind(link, common, "--visibility", "visibility_km", "visibility in km");

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep");
    add_common(sweep, common);
    bind(sweep, common, "--param", "swept", "distance, frequency or visibility");
    bind(sweep, common, "--scenario", "scenario", "urban, rural or both");
    bind(sweep, common, "--start", "start", "first sweep value");
    bind(sweep, common, "--stop", "stop", "last sweep value");
    bind(sweep, common, "--step", "step", "sweep step");
    bind(sweep, common, "--mode", "attack_mode", "hd, fd or both");
    sweep->add_flag_function("--no-dust", [&common](std::int64_t) { common.overrides["dust_enabled"] = "false"; },
                             "disable the artificial dust");

    auto* attack = app.add_subcommand("attack", "Deployment, visibility drive and attack trace");
    add_common(attack, common);
    bind(attack, common, "--mode", "attack_mode", "hd, fd or both");
    bind(attack, common, "--attempts", "attempts", "number of spoofing attempts");
    bind(attack, common, "--miss-prob", "miss_prob_dl", "downlink miss probability");
    bind(attack, common, "--miss-prob-ul", "miss_prob_ul", "uplink miss probability (FD)");
    bind(attack, common, "--scenario", "scenario", "urban, rural or both");

    auto* sens = app.add_subcommand("sensitivity", "Per-iteration attack sensitivity experiment");
    add_common(sens, common);
    bind(sens, common, "--iterations", "iterations", "number of iterations");
    bind(sens, common, "--scenario", "scenario", "urban, rural or both");

    auto* miss = app.add_subcommand("missrate", "Analytic vs Monte-Carlo miss-count distributions");
    add_common(miss, common);
    bind(miss, common, "--attempts", "missrate_attempts", "attempts per run");
    bind(miss, common, "--miss-prob", "miss_prob_dl", "downlink miss probability");
    bind(miss, common, "--miss-prob-ul", "miss_prob_ul", "uplink miss probability (FD)");
    bind(miss, common, "--trials", "trials", "Monte-Carlo runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*calibrate)
            return cmd_calibrate(common, table_path);
        if (*link)
            return cmd_link_budget(common);
        if (*sweep)
            return cmd_sweep(common);
        if (*attack)
            return cmd_attack(common);
        if (*sens)
            return cmd_sensitivity(common);
        if (*miss)
            return cmd_missrate(common);
    } catch (const std::exception& e) {
        std::cerr << "adsim: error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
