// SPDX-License-Identifier: Apache-2.0
#pragma once

// Feasibility decision, the visibility-decrement loop and the three-phase
// half-duplex attack (request flooding, resource spoofing, artificial-noise
// intrusion), with the full-duplex attack as a comparison mode.

#include <adsim/dust.hpp>
#include <adsim/error.hpp>
#include <adsim/propagation.hpp>
#include <adsim/rng.hpp>
#include <adsim/scenario.hpp>
#include <adsim/table.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace adsim {

enum class AttackMode { HD, FD };

inline const char* to_string(AttackMode m) { return m == AttackMode::HD ? "hd" : "fd"; }

/// Directions the intruder has to win: downlink only for HD, both for FD.
inline int directions(AttackMode m) { return m == AttackMode::HD ? 1 : 2; }

struct FeasibilityReport {
    double c_valid_bps = 0.0;
    double c_eav_bps = 0.0;
    double c_secrecy_bps = 0.0;
    double c_threshold_bps = 0.0;
    bool favorable = false;
    double visibility_used_km = 0.0;
};

/// Favorable when the intruder out-receives the valid user or the secrecy
/// capacity drops under the threshold.
inline FeasibilityReport feasibility(double c_valid_bps, double c_eav_bps, double c_threshold_bps)
{
    detail::require(c_valid_bps >= 0.0 && c_eav_bps >= 0.0 && c_threshold_bps >= 0.0,
                    "capacities and threshold must be non-negative");
    FeasibilityReport r;
    r.c_valid_bps = c_valid_bps;
    r.c_eav_bps = c_eav_bps;
    r.c_secrecy_bps = secrecy_capacity(c_valid_bps, c_eav_bps);
    r.c_threshold_bps = c_threshold_bps;
    r.favorable = (c_valid_bps < c_eav_bps) || (r.c_secrecy_bps < c_threshold_bps);
    return r;
}

/// Link context the intruder works in. Budgets here are deterministic
/// (no shadow term): the intruder has positions, not CSI.
struct AttackScenario {
    RadioConfig radio;
    PathLossParams path = PathLossParams::urban();
    double eavesdropper_distance_m = 250.0;
    double c_threshold_bps = 0.0;
    std::optional<double> dust_span_km;
    double visibility_floor_km = default_visibility_floor_km;
};

inline FeasibilityReport evaluate_feasibility(const AttackScenario& scn, const UserNode& target, const DustParams& dust)
{
    const DustOnLink on_link{dust, scn.dust_span_km, scn.visibility_floor_km};
    const auto valid = link_budget_with_shadow(target.distance_m, scn.radio, scn.path, on_link, 0.0);
    const auto eav = link_budget_with_shadow(scn.eavesdropper_distance_m, scn.radio, scn.path, std::nullopt, 0.0);
    auto r = feasibility(valid.capacity_bps, eav.capacity_bps, scn.c_threshold_bps);
    r.visibility_used_km = dust.visibility_km;
    return r;
}

/// Lowers the visibility in steps of dv_km (thicker dust) until the attack
/// becomes favorable or v_min_km is reached.
inline FeasibilityReport drive_visibility(const AttackScenario& scn, const UserNode& target, const DustParams& dust,
                                          double dv_km = 0.05, double v_min_km = 0.001)
{
    detail::require(dv_km > 0.0, "visibility step must be positive");
    detail::require(dust.visibility_km > v_min_km, "initial visibility must exceed the floor");
    const double v0 = dust.visibility_km;
    const auto max_steps = static_cast<std::size_t>(std::ceil((v0 - v_min_km) / dv_km));

    DustParams current = dust;
    for (std::size_t step = 0;; ++step) {
        current.visibility_km = std::max(v0 - static_cast<double>(step) * dv_km, v_min_km);
        auto report = evaluate_feasibility(scn, target, current);
        if (report.favorable || current.visibility_km <= v_min_km || step >= max_steps)
            return report;
    }
}

inline constexpr std::size_t request_packet_bytes = 54;

struct FloodSettings {
    std::size_t k_requests = 1;
    double gain_ev_to_dev = 1.0;
    double gain_dev_to_ev = 1.0;
    double request_power = 1.0;
    double response_power = 1.0;
    double noise_var = 0.0;
};

struct FloodStats {
    std::size_t requests_sent = 0;
    std::size_t responses_received = 0;
    std::size_t request_packet_bytes = adsim::request_packet_bytes;
    double request_sum = 0.0;  // R_k, as received by device-1
    double response_sum = 0.0; // r_k, as received by the intruder
    bool device_unavailable = false;

    friend bool operator==(const FloodStats&, const FloodStats&) = default;
};

/// Sums k request and k response receptions, each with its own AWGN draw
/// A ~ N(0, noise_var).
inline FloodStats simulate_request_flood(std::size_t k_requests, double gain_ev_to_dev, double gain_dev_to_ev,
                                         double request_power, double response_power, double noise_var, Rng& rng)
{
    detail::require(k_requests >= 1, "flood needs at least one request");
    detail::require(noise_var >= 0.0, "noise variance must be non-negative");
    std::normal_distribution<double> awgn(0.0, std::sqrt(noise_var));
    auto noise = [&] { return noise_var > 0.0 ? awgn(rng) : 0.0; };

    FloodStats s;
    for (std::size_t i = 0; i < k_requests; ++i) {
        s.request_sum += gain_ev_to_dev * request_power + noise();
        s.response_sum += gain_dev_to_ev * response_power + noise();
    }
    s.requests_sent = k_requests;
    s.responses_received = k_requests;
    s.device_unavailable = true;
    return s;
}

inline FloodStats simulate_request_flood(const FloodSettings& f, Rng& rng)
{
    return simulate_request_flood(f.k_requests, f.gain_ev_to_dev, f.gain_dev_to_ev, f.request_power,
                                  f.response_power, f.noise_var, rng);
}

// Phases in the order they are entered.
enum class AttackPhase { Monitoring, RequestFlooding, ResourceSpoofing, ANIntrusion, Complete };

inline const char* to_string(AttackPhase p)
{
    switch (p) {
    case AttackPhase::Monitoring: return "monitoring";
    case AttackPhase::RequestFlooding: return "request_flooding";
    case AttackPhase::ResourceSpoofing: return "resource_spoofing";
    case AttackPhase::ANIntrusion: return "an_intrusion";
    case AttackPhase::Complete: return "complete";
    }
    return "?";
}

enum class Outcome { Entered, Spoofed, DownlinkMiss, UplinkMiss, NoiseSent, Done };

inline const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::Entered: return "entered";
    case Outcome::Spoofed: return "spoofed";
    case Outcome::DownlinkMiss: return "downlink_miss";
    case Outcome::UplinkMiss: return "uplink_miss";
    case Outcome::NoiseSent: return "noise_sent";
    case Outcome::Done: return "done";
    }
    return "?";
}

struct PhaseEvent {
    std::size_t attempt = 0; // 1-based for trials, 0 for phase markers
    AttackPhase phase = AttackPhase::Monitoring;
    Outcome outcome = Outcome::Entered;

    friend bool operator==(const PhaseEvent&, const PhaseEvent&) = default;
};

struct AttackTrace {
    AttackMode mode = AttackMode::HD;
    std::size_t attempts = 0;
    std::size_t misses_ul = 0;
    std::size_t misses_dl = 0;
    std::size_t spoofed = 0;
    std::vector<PhaseEvent> phase_log;
    FloodStats flood;

    std::size_t total_misses() const { return misses_ul + misses_dl; }
    /// Attempts that reached a downlink trial.
    std::size_t downlink_trials() const { return attempts - misses_ul; }

    friend bool operator==(const AttackTrace&, const AttackTrace&) = default;
};

/// Runs `attempts` spoofing attempts after monitoring and a request flood.
///
/// Every attempt draws an uplink and a downlink uniform in that order, in
/// both modes, so HD and FD runs with the same seed see the same downlink
/// draws. HD ignores the uplink draw. FD misses on the uplink first and only
/// holds a downlink trial after an uplink success, giving
/// P_miss = p_ul + (1 - p_ul) * p_dl.
inline AttackTrace run_attack(AttackMode mode, std::size_t attempts, double miss_prob_dl, double miss_prob_ul,
                              Rng& rng, const FloodSettings& flood = {})
{
    detail::require(attempts >= 1, "at least one attempt is required");
    detail::require(miss_prob_dl >= 0.0 && miss_prob_dl <= 1.0, "miss_prob_dl must lie in [0, 1]");
    detail::require(mode == AttackMode::HD || (miss_prob_ul >= 0.0 && miss_prob_ul <= 1.0),
                    "miss_prob_ul must lie in [0, 1]");

    AttackTrace t;
    t.mode = mode;
    t.attempts = attempts;
    t.phase_log.reserve(attempts * 2 + 4);
    t.phase_log.push_back({0, AttackPhase::Monitoring, Outcome::Entered});
    t.phase_log.push_back({0, AttackPhase::RequestFlooding, Outcome::Entered});
    t.flood = simulate_request_flood(flood, rng);

    std::vector<std::size_t> spoofed_attempts;
    for (std::size_t a = 1; a <= attempts; ++a) {
        const double u_ul = uniform01(rng);
        const double u_dl = uniform01(rng);
        Outcome out;
        if (mode == AttackMode::FD && u_ul < miss_prob_ul) {
            ++t.misses_ul;
            out = Outcome::UplinkMiss;
        } else if (u_dl < miss_prob_dl) {
            ++t.misses_dl;
            out = Outcome::DownlinkMiss;
        } else {
            ++t.spoofed;
            spoofed_attempts.push_back(a);
            out = Outcome::Spoofed;
        }
        t.phase_log.push_back({a, AttackPhase::ResourceSpoofing, out});
    }
    for (std::size_t a : spoofed_attempts)
        t.phase_log.push_back({a, AttackPhase::ANIntrusion, Outcome::NoiseSent});
    t.phase_log.push_back({0, AttackPhase::Complete, Outcome::Done});
    return t;
}

/// Uniform random bytes used as the artificial-noise payload.
inline std::vector<std::uint8_t> generate_an_sequence(std::size_t length, Rng& rng)
{
    detail::require(length >= 1, "AN sequence length must be >= 1");
    std::vector<std::uint8_t> seq(length);
    for (auto& b : seq)
        b = static_cast<std::uint8_t>(rng() >> 56);
    return seq;
}

/// "attempt phase outcome" per line.
inline void write_trace_log(std::ostream& out, const AttackTrace& t)
{
    out << "# mode " << to_string(t.mode) << " attempts " << t.attempts << '\n';
    for (const auto& e : t.phase_log)
        out << e.attempt << ' ' << to_string(e.phase) << ' ' << to_string(e.outcome) << '\n';
}

inline Table trace_summary(const std::vector<AttackTrace>& traces)
{
    Table tab;
    tab.columns = {"mode", "attempts", "misses_ul", "misses_dl", "spoofed", "miss_rate", "flood_requests",
                   "flood_request_bytes"};
    for (const auto& t : traces) {
        const double rate = static_cast<double>(t.total_misses()) / static_cast<double>(t.attempts);
        tab.rows.push_back({std::string(to_string(t.mode)), static_cast<std::int64_t>(t.attempts),
                            static_cast<std::int64_t>(t.misses_ul), static_cast<std::int64_t>(t.misses_dl),
                            static_cast<std::int64_t>(t.spoofed), rate,
                            static_cast<std::int64_t>(t.flood.requests_sent),
                            static_cast<std::int64_t>(t.flood.request_packet_bytes)});
    }
    return tab;
}

} // namespace adsim
