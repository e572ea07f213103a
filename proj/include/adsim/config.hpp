// SPDX-License-Identifier: Apache-2.0
#pragma once

// Experiment parameters and their key=value text form. Defaults follow the
// reference deployment: 28 GHz, 800 MHz, 20 mW, -106 dBm noise, V = 0.3 km,
// r = 250 m, r_e = 30 um, target at 150 m.

#include <adsim/attack_engine.hpp>
#include <adsim/dust.hpp>
#include <adsim/error.hpp>
#include <adsim/propagation.hpp>
#include <adsim/table.hpp>

#include <charconv>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace adsim {

enum class SweptParam { Distance, Frequency, Visibility };
enum class ModeSelection { HD, FD, Both };

inline const char* to_string(SweptParam p)
{
    switch (p) {
    case SweptParam::Distance: return "distance";
    case SweptParam::Frequency: return "frequency";
    case SweptParam::Visibility: return "visibility";
    }
    return "?";
}

inline const char* to_string(ModeSelection m)
{
    switch (m) {
    case ModeSelection::HD: return "hd";
    case ModeSelection::FD: return "fd";
    case ModeSelection::Both: return "both";
    }
    return "?";
}

inline std::vector<AttackMode> modes_of(ModeSelection m)
{
    switch (m) {
    case ModeSelection::HD: return {AttackMode::HD};
    case ModeSelection::FD: return {AttackMode::FD};
    case ModeSelection::Both: return {AttackMode::HD, AttackMode::FD};
    }
    return {};
}

struct ExperimentParams {
    RadioConfig radio;
    DustParams dust;
    double zeta_urban = 2.9;
    double zeta_rural = 2.2;
    double sigma_urban_db = 8.0;
    double sigma_rural_db = 4.0;

    double target_distance_m = 150.0;
    double coverage_radius_m = 250.0;
    std::optional<double> eavesdropper_distance_m; // unset: cell edge
    std::optional<double> dust_span_km;            // unset: whole link
    double visibility_floor_km = default_visibility_floor_km;

    double c_threshold_bps = 0.0;
    double dv_km = 0.05;
    double v_min_km = 0.001;
    std::size_t n_users = 10;
    std::size_t k_pairs = 1;

    std::size_t attempts = 1000;
    double miss_prob_dl = 0.3;
    double miss_prob_ul = 0.3;
    double flood_gain = 1.0;
    double flood_power = 1.0;
    double flood_noise_var = 0.0;

    std::optional<double> complexity_ref_bps; // unset: bandwidth
    double noise_figure_db = 9.0;

    std::size_t iterations = 14;
    std::size_t missrate_attempts = 50;
    std::size_t trials = 100000;

    PathLossParams path(Environment env) const
    {
        return env == Environment::Urban ? PathLossParams{zeta_urban, sigma_urban_db, env}
                                         : PathLossParams{zeta_rural, sigma_rural_db, env};
    }

    double eavesdropper_distance() const { return eavesdropper_distance_m.value_or(coverage_radius_m); }
    double complexity_reference() const { return complexity_ref_bps.value_or(radio.bandwidth_hz); }

    DustOnLink dust_on_link() const { return {dust, dust_span_km, visibility_floor_km}; }

    FloodSettings flood() const
    {
        return {k_pairs, flood_gain, flood_gain, flood_power, flood_power, flood_noise_var};
    }

    AttackScenario attack_scenario(Environment env) const
    {
        return {radio, path(env), eavesdropper_distance(), c_threshold_bps, dust_span_km, visibility_floor_km};
    }

    void validate() const
    {
        radio.validate();
        dust.validate();
        path(Environment::Urban).validate();
        path(Environment::Rural).validate();
        detail::require(coverage_radius_m >= radio.ref_distance_m, "coverage radius below the reference distance");
        detail::require(eavesdropper_distance() >= radio.ref_distance_m, "eavesdropper inside the reference distance");
        detail::require(target_distance_m >= radio.ref_distance_m, "target inside the reference distance");
        detail::require(!dust_span_km || *dust_span_km >= 0.0, "dust span must be non-negative");
        detail::require(miss_prob_dl >= 0.0 && miss_prob_dl <= 1.0, "miss_prob_dl must lie in [0, 1]");
        detail::require(miss_prob_ul >= 0.0 && miss_prob_ul <= 1.0, "miss_prob_ul must lie in [0, 1]");
        detail::require(attempts >= 1 && missrate_attempts >= 1, "attempt counts must be >= 1");
        detail::require(dv_km > 0.0 && v_min_km > 0.0, "visibility step and floor must be positive");
        detail::require(flood_noise_var >= 0.0, "flood noise variance must be non-negative");
        detail::require(!complexity_ref_bps || *complexity_ref_bps > 0.0, "complexity reference must be positive");
    }
};

struct SweepRange {
    double start = 10.0;
    double stop = 250.0;
    double step = 5.0;
};

struct SweepSpec {
    Environment scenario = Environment::Urban;
    SweptParam swept = SweptParam::Distance;
    SweepRange range;
    bool dust_enabled = true;
    ModeSelection attack_mode = ModeSelection::Both;
    std::uint64_t seed = 1;
    ExperimentParams fixed;
};

/// Scenario selection in a config file may also read "both".
struct ConfigFile {
    SweepSpec spec;
    bool both_scenarios = false;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v)
{
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw InvalidInput("config: '" + key + "' expects a number, got '" + v + "'");
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw InvalidInput("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw InvalidInput("config: '" + key + "' expects true/false, got '" + v + "'");
}

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Key {
    const char* name;
    std::function<void(ConfigFile&, const std::string&)> set;
    std::function<std::string(const ConfigFile&)> get;
};

inline std::string opt_text(const std::optional<double>& v, const char* unset)
{
    return v ? format_shortest(*v) : std::string(unset);
}

// clang-format off
#define ADSIM_NUM(name_, field_) \
    Key{name_, [](ConfigFile& c, const std::string& v) { c.spec.field_ = parse_double(name_, v); }, \
               [](const ConfigFile& c) { return format_shortest(c.spec.field_); }}
#define ADSIM_INT(name_, field_) \
    Key{name_, [](ConfigFile& c, const std::string& v) { c.spec.field_ = parse_u64(name_, v); }, \
               [](const ConfigFile& c) { return std::to_string(c.spec.field_); }}
#define ADSIM_OPT(name_, field_, unset_) \
    Key{name_, [](ConfigFile& c, const std::string& v) { \
                   if (v == unset_) c.spec.field_.reset(); else c.spec.field_ = parse_double(name_, v); }, \
               [](const ConfigFile& c) { return opt_text(c.spec.field_, unset_); }}
// clang-format on

inline const std::vector<Key>& config_keys()
{
    static const std::vector<Key> keys = {
        Key{"scenario",
            [](ConfigFile& c, const std::string& v) {
                if (v == "urban") { c.spec.scenario = Environment::Urban; c.both_scenarios = false; }
                else if (v == "rural") { c.spec.scenario = Environment::Rural; c.both_scenarios = false; }
                else if (v == "both") { c.both_scenarios = true; }
                else throw InvalidInput("config: scenario must be urban, rural or both");
            },
            [](const ConfigFile& c) { return c.both_scenarios ? std::string("both") : std::string(to_string(c.spec.scenario)); }},
        Key{"swept",
            [](ConfigFile& c, const std::string& v) {
                if (v == "distance") c.spec.swept = SweptParam::Distance;
                else if (v == "frequency") c.spec.swept = SweptParam::Frequency;
                else if (v == "visibility") c.spec.swept = SweptParam::Visibility;
                else throw InvalidInput("config: swept must be distance, frequency or visibility");
            },
            [](const ConfigFile& c) { return std::string(to_string(c.spec.swept)); }},
        ADSIM_NUM("start", range.start),
        ADSIM_NUM("stop", range.stop),
        ADSIM_NUM("step", range.step),
        Key{"dust_enabled",
            [](ConfigFile& c, const std::string& v) { c.spec.dust_enabled = parse_bool("dust_enabled", v); },
            [](const ConfigFile& c) { return std::string(c.spec.dust_enabled ? "true" : "false"); }},
        Key{"attack_mode",
            [](ConfigFile& c, const std::string& v) {
                if (v == "hd") c.spec.attack_mode = ModeSelection::HD;
                else if (v == "fd") c.spec.attack_mode = ModeSelection::FD;
                else if (v == "both") c.spec.attack_mode = ModeSelection::Both;
                else throw InvalidInput("config: attack_mode must be hd, fd or both");
            },
            [](const ConfigFile& c) { return std::string(to_string(c.spec.attack_mode)); }},
        ADSIM_INT("seed", seed),
        ADSIM_NUM("frequency_ghz", fixed.radio.frequency_ghz),
        ADSIM_NUM("bandwidth_hz", fixed.radio.bandwidth_hz),
        ADSIM_NUM("tx_power_mw", fixed.radio.tx_power_mw),
        ADSIM_NUM("noise_power_dbm", fixed.radio.noise_power_dbm),
        ADSIM_NUM("ref_distance_m", fixed.radio.ref_distance_m),
        ADSIM_NUM("zeta_urban", fixed.zeta_urban),
        ADSIM_NUM("zeta_rural", fixed.zeta_rural),
        ADSIM_NUM("sigma_urban_db", fixed.sigma_urban_db),
        ADSIM_NUM("sigma_rural_db", fixed.sigma_rural_db),
        ADSIM_NUM("particle_radius_um", fixed.dust.particle_radius_um),
        ADSIM_NUM("eps_real", fixed.dust.eps_real),
        ADSIM_NUM("eps_imag", fixed.dust.eps_imag),
        ADSIM_NUM("visibility_km", fixed.dust.visibility_km),
        ADSIM_NUM("x_const", fixed.dust.x_const),
        ADSIM_NUM("target_distance_m", fixed.target_distance_m),
        ADSIM_NUM("coverage_radius_m", fixed.coverage_radius_m),
        ADSIM_OPT("eavesdropper_distance_m", fixed.eavesdropper_distance_m, "edge"),
        ADSIM_OPT("dust_span_km", fixed.dust_span_km, "link"),
        ADSIM_NUM("visibility_floor_km", fixed.visibility_floor_km),
        ADSIM_NUM("c_threshold_bps", fixed.c_threshold_bps),
        ADSIM_NUM("dv_km", fixed.dv_km),
        ADSIM_NUM("v_min_km", fixed.v_min_km),
        ADSIM_INT("n_users", fixed.n_users),
        ADSIM_INT("k_pairs", fixed.k_pairs),
        ADSIM_INT("attempts", fixed.attempts),
        ADSIM_NUM("miss_prob_dl", fixed.miss_prob_dl),
        ADSIM_NUM("miss_prob_ul", fixed.miss_prob_ul),
        ADSIM_NUM("flood_gain", fixed.flood_gain),
        ADSIM_NUM("flood_power", fixed.flood_power),
        ADSIM_NUM("flood_noise_var", fixed.flood_noise_var),
        ADSIM_OPT("complexity_ref_bps", fixed.complexity_ref_bps, "bandwidth"),
        ADSIM_NUM("noise_figure_db", fixed.noise_figure_db),
        ADSIM_INT("iterations", fixed.iterations),
        ADSIM_INT("missrate_attempts", fixed.missrate_attempts),
        ADSIM_INT("trials", fixed.trials),
    };
    return keys;
}

#undef ADSIM_NUM
#undef ADSIM_INT
#undef ADSIM_OPT

} // namespace detail

/// Applies one key=value assignment.
inline void apply_config_value(ConfigFile& cfg, const std::string& key, const std::string& value)
{
    for (const auto& k : detail::config_keys()) {
        if (key == k.name) {
            k.set(cfg, value);
            return;
        }
    }
    throw InvalidInput("config: unknown key '" + key + "'");
}

/// key=value pairs in file order. '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_pairs(std::istream& in)
{
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected key=value");
        pairs.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return pairs;
}

/// Applies the key=value lines of `in` on top of `base`.
inline ConfigFile parse_config(std::istream& in, ConfigFile base = {})
{
    for (const auto& [k, v] : read_config_pairs(in))
        apply_config_value(base, k, v);
    return base;
}

inline ConfigFile parse_config_text(const std::string& text, ConfigFile base = {})
{
    std::istringstream in(text);
    return parse_config(in, std::move(base));
}

/// Every key in schema order; parse_config(to_config_text(c)) == c.
inline std::string to_config_text(const ConfigFile& cfg)
{
    std::string out;
    for (const auto& k : detail::config_keys())
        out += std::string(k.name) + "=" + k.get(cfg) + "\n";
    return out;
}

} // namespace adsim
