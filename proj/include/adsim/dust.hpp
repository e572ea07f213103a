// SPDX-License-Identifier: Apache-2.0
#pragma once

// Artificial-dust specific attenuation, its calibration constant,
// the bundled measurement table and the frequency-scaling ratios.
//
//   beta [dB/km] = x * r_e * eps'' * f / ( V * ((eps' + 2)^2 + eps''^2) )
//
// r_e in micrometres, f in GHz, V in km.

#include <adsim/error.hpp>

#include <array>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace adsim {

inline constexpr double default_visibility_floor_km = 1e-4;

struct DustParams {
    double particle_radius_um = 30.0;
    double eps_real = 4.0;
    double eps_imag = 1.3;
    double visibility_km = 0.3;
    double x_const = 0.365;

    void validate() const
    {
        detail::require(particle_radius_um > 0.0, "particle radius must be positive");
        detail::require(eps_real > 0.0, "eps_real must be positive");
        detail::require(eps_imag >= 0.0, "eps_imag must be non-negative");
        detail::require(visibility_km > 0.0, "visibility must be positive");
        detail::require(x_const > 0.0, "x must be positive");
    }
};

struct CalibrationPoint {
    double x_published;
    double freq_ghz;
    double eps_real;
    double eps_imag;
    double visibility_km;
    double beta_measured_db_per_km;
};

namespace detail {

inline double dielectric_denominator(double eps_real, double eps_imag)
{
    return (eps_real + 2.0) * (eps_real + 2.0) + eps_imag * eps_imag;
}

} // namespace detail

inline double ad_specific_attenuation(const DustParams& params, double freq_ghz,
                                      double visibility_floor_km = default_visibility_floor_km)
{
    params.validate();
    detail::require(freq_ghz > 0.0, "frequency must be positive");
    if (params.visibility_km < visibility_floor_km)
        throw VisibilityTooLow("visibility " + std::to_string(params.visibility_km) + " km is below the floor of " +
                               std::to_string(visibility_floor_km) + " km");
    return params.x_const * params.particle_radius_um * params.eps_imag * freq_ghz /
           (params.visibility_km * detail::dielectric_denominator(params.eps_real, params.eps_imag));
}

/// Exact inverse of ad_specific_attenuation in x.
inline double calibrate_x(double beta_measured_db_per_km, double particle_radius_um, double eps_real, double eps_imag,
                          double visibility_km, double freq_ghz)
{
    detail::require(beta_measured_db_per_km > 0.0 && particle_radius_um > 0.0 && eps_real > 0.0 &&
                        visibility_km > 0.0,
                    "calibration inputs must be positive");
    detail::require(eps_imag > 0.0, "eps_imag must be non-zero to calibrate x");
    detail::require(freq_ghz > 0.0, "frequency must be non-zero to calibrate x");
    return beta_measured_db_per_km * visibility_km * detail::dielectric_denominator(eps_real, eps_imag) /
           (particle_radius_um * eps_imag * freq_ghz);
}

/// Scattering efficiency ratio phi_sc(f1)/phi_sc(f2), lambda^-4 law.
inline double scattering_efficiency_ratio(double f1_ghz, double f2_ghz)
{
    detail::require(f1_ghz > 0.0 && f2_ghz > 0.0, "frequencies must be positive");
    const double r = f1_ghz / f2_ghz;
    return (r * r) * (r * r);
}

/// Absorption efficiency ratio phi_abs(f1)/phi_abs(f2), lambda^-1 law.
inline double absorption_efficiency_ratio(double f1_ghz, double f2_ghz)
{
    detail::require(f1_ghz > 0.0 && f2_ghz > 0.0, "frequencies must be positive");
    return f1_ghz / f2_ghz;
}

// Measured dust propagation parameters (x as published, f, eps', eps'', V,
// measured beta). The published x values are not reproducible from the
// attenuation form above; see recomputed_x().
inline constexpr int dust_table_version = 1;
inline constexpr std::array<CalibrationPoint, 4> measured_dust_table{{
    {2.993e-4, 7.5, 4.68, 0.38, 0.15, 0.025},
    {8.58e-4, 13.0, 3.9, 0.63, 0.05, 0.67},
    {4.76e-4, 40.0, 4.0, 1.3, 1.4, 0.069},
    {2.99e-4, 100.0, 3.5, 1.64, 0.001, 180.0},
}};

inline double recomputed_x(const CalibrationPoint& p, double particle_radius_um)
{
    return calibrate_x(p.beta_measured_db_per_km, particle_radius_um, p.eps_real, p.eps_imag, p.visibility_km,
                       p.freq_ghz);
}

/// Header line of the text form of the table.
inline std::string dust_table_header()
{
    return "# adsim dust table v" + std::to_string(dust_table_version) + "\n" +
           "x_published\tf_ghz\teps_real\teps_imag\tv_km\tbeta_measured\n";
}

/// Parses the whitespace-separated table. Lines starting with '#' and the
/// column-name line are skipped.
inline std::vector<CalibrationPoint> read_dust_table(std::istream& in)
{
    std::vector<CalibrationPoint> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#' || line.rfind("x_published", 0) == 0)
            continue;
        std::istringstream ls(line);
        CalibrationPoint p{};
        if (!(ls >> p.x_published >> p.freq_ghz >> p.eps_real >> p.eps_imag >> p.visibility_km >>
              p.beta_measured_db_per_km))
            throw InvalidInput("dust table line " + std::to_string(line_no) + ": expected 6 numeric columns");
        detail::require(p.x_published > 0 && p.freq_ghz > 0 && p.eps_real > 0 && p.eps_imag > 0 &&
                            p.visibility_km > 0 && p.beta_measured_db_per_km > 0,
                        "dust table line " + std::to_string(line_no) + ": values must be positive");
        rows.push_back(p);
    }
    return rows;
}

} // namespace adsim
