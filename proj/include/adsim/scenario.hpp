// SPDX-License-Identifier: Apache-2.0
#pragma once

// Users, D2D pairs and the eavesdropper on a single radial axis around the
// base station. Every budget depends on distance only, so positions are
// stored as distances.

#include <adsim/dust.hpp>
#include <adsim/error.hpp>
#include <adsim/propagation.hpp>
#include <adsim/rng.hpp>

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace adsim {

struct UserNode {
    std::size_t id = 0;
    double distance_m = 0.0;

    friend bool operator==(const UserNode&, const UserNode&) = default;
};

struct D2DPair {
    UserNode device1; // relay, reachable from the BS
    UserNode device2; // far end, weak BS signal

    friend bool operator==(const D2DPair&, const D2DPair&) = default;
};

struct Deployment {
    std::vector<UserNode> users;
    std::vector<D2DPair> pairs;
    double eavesdropper_distance_m = 250.0;
    double coverage_radius_m = 250.0;

    friend bool operator==(const Deployment&, const Deployment&) = default;
};

/// Draws n_users distances uniformly on [l_o, r] and forms k pairs by matching
/// the j-th nearest user with the j-th farthest. The eavesdropper sits at the
/// cell edge.
inline Deployment deploy_random(std::size_t n_users, std::size_t k_pairs, double coverage_radius_m, Rng& rng,
                                double ref_distance_m = 1.0)
{
    detail::require(2 * k_pairs < n_users, "deployment requires 2k < i");
    detail::require(coverage_radius_m >= ref_distance_m, "coverage radius below the reference distance");

    Deployment dep;
    dep.coverage_radius_m = coverage_radius_m;
    dep.eavesdropper_distance_m = coverage_radius_m;
    dep.users.reserve(n_users);
    const double span = coverage_radius_m - ref_distance_m;
    for (std::size_t i = 0; i < n_users; ++i)
        dep.users.push_back({i, ref_distance_m + span * uniform01(rng)});

    std::vector<UserNode> sorted = dep.users;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const UserNode& a, const UserNode& b) { return a.distance_m < b.distance_m; });
    for (std::size_t j = 0; j < k_pairs; ++j)
        dep.pairs.push_back({sorted[j], sorted[n_users - 1 - j]});
    for (const auto& p : dep.pairs)
        detail::require(p.device1.distance_m < p.device2.distance_m, "degenerate pair: equal distances");
    return dep;
}

/// The user with the largest deterministic path loss (no shadowing: the
/// intruder knows positions, not CSI). Ties go to the lowest id.
inline UserNode select_target(const Deployment& dep, const RadioConfig& cfg, const PathLossParams& params)
{
    detail::require(!dep.users.empty(), "empty deployment");
    const UserNode* best = nullptr;
    double best_pl = -std::numeric_limits<double>::infinity();
    for (const auto& u : dep.users) {
        const double pl = free_space_path_loss(cfg, params, u.distance_m);
        if (pl > best_pl || (pl == best_pl && u.id < best->id)) {
            best = &u;
            best_pl = pl;
        }
    }
    return *best;
}

/// Dust attached to one link. An unset span covers the whole link.
struct DustOnLink {
    DustParams params;
    std::optional<double> span_km;
    double visibility_floor_km = default_visibility_floor_km;

    double span_for(double distance_m) const { return span_km.value_or(distance_m / 1000.0); }
};

/// Dust loss in dB over a link of `distance_m`.
inline double dust_loss_db(const DustOnLink& dust, double freq_ghz, double distance_m)
{
    const double beta = ad_specific_attenuation(dust.params, freq_ghz, dust.visibility_floor_km);
    return total_path_loss_with_ad(0.0, beta, dust.span_for(distance_m));
}

/// Budget with a given shadow draw; dust contributes iff present.
inline LinkBudget link_budget_with_shadow(double distance_m, const RadioConfig& cfg, const PathLossParams& params,
                                          const std::optional<DustOnLink>& dust, double gamma_db)
{
    const double loss = dust ? dust_loss_db(*dust, cfg.frequency_ghz, distance_m) : 0.0;
    return compose_link_budget(cfg, params, distance_m, gamma_db, loss);
}

/// Budget with a fresh shadow draw from `rng`. The eavesdropper's budget is
/// obtained by passing no dust.
inline LinkBudget link_budget_for(double distance_m, const RadioConfig& cfg, const PathLossParams& params,
                                  const std::optional<DustOnLink>& dust, Rng& rng)
{
    const double gamma = draw_shadow_fading(params.shadow_sigma_db, rng);
    return link_budget_with_shadow(distance_m, cfg, params, dust, gamma);
}

// Text form: one "id distance_m role" line per node. Roles are user,
// device1_<j>, device2_<j> (member of pair j) and eavesdropper.
inline void write_deployment(std::ostream& out, const Deployment& dep)
{
    out << "# coverage_radius_m " << std::setprecision(17) << dep.coverage_radius_m << '\n';
    out << "id\tdistance_m\trole\n";
    auto role_of = [&](std::size_t id) -> std::string {
        for (std::size_t j = 0; j < dep.pairs.size(); ++j) {
            if (dep.pairs[j].device1.id == id)
                return "device1_" + std::to_string(j);
            if (dep.pairs[j].device2.id == id)
                return "device2_" + std::to_string(j);
        }
        return "user";
    };
    for (const auto& u : dep.users)
        out << u.id << '\t' << std::setprecision(17) << u.distance_m << '\t' << role_of(u.id) << '\n';
    out << "-\t" << std::setprecision(17) << dep.eavesdropper_distance_m << "\teavesdropper\n";
}

inline Deployment read_deployment(std::istream& in)
{
    Deployment dep;
    std::vector<std::optional<UserNode>> d1, d2;
    bool have_eve = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        if (line.front() == '#') {
            std::string hash, key;
            double value = 0.0;
            if (ls >> hash >> key >> value && key == "coverage_radius_m")
                dep.coverage_radius_m = value;
            continue;
        }
        if (line.rfind("id", 0) == 0)
            continue;
        std::string id, role;
        double dist = 0.0;
        if (!(ls >> id >> dist >> role))
            throw InvalidInput("deployment: malformed line '" + line + "'");
        if (role == "eavesdropper") {
            dep.eavesdropper_distance_m = dist;
            have_eve = true;
            continue;
        }
        UserNode u{static_cast<std::size_t>(std::stoull(id)), dist};
        dep.users.push_back(u);
        if (role == "user")
            continue;
        const bool first = role.rfind("device1_", 0) == 0;
        if (!first && role.rfind("device2_", 0) != 0)
            throw InvalidInput("deployment: unknown role '" + role + "'");
        const auto j = static_cast<std::size_t>(std::stoull(role.substr(8)));
        auto& slots = first ? d1 : d2;
        if (slots.size() <= j)
            slots.resize(j + 1);
        slots[j] = u;
    }
    detail::require(d1.size() == d2.size(), "deployment: unmatched device1/device2 lines");
    detail::require(have_eve, "deployment: missing eavesdropper line");
    for (std::size_t j = 0; j < d1.size(); ++j) {
        detail::require(d1[j].has_value() && d2[j].has_value(), "deployment: incomplete pair " + std::to_string(j));
        dep.pairs.push_back({*d1[j], *d2[j]});
    }
    return dep;
}

} // namespace adsim
