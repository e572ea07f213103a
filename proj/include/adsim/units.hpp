// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace adsim {

inline constexpr double speed_of_light_mps = 299792458.0;
inline constexpr double pi = std::numbers::pi;

// Power and ratio conversions. dBm is referenced to 1 mW.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

inline double wavelength_m(double frequency_ghz) { return speed_of_light_mps / (frequency_ghz * 1e9); }

} // namespace adsim
