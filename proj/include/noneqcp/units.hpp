#pragma once

// Natural units: hbar = c = k_B = 1, energies in eV, lengths and times in 1/eV.

namespace noneqcp::units {

inline constexpr double hbar_c_eV_nm = 197.3269804;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double k_B_eV_per_K = 8.617333262e-5;
inline constexpr double joule_per_eV = 1.602176634e-19;

inline constexpr double meter_in_inv_eV = 1.0e9 / hbar_c_eV_nm;
inline constexpr double second_in_inv_eV = 1.0 / hbar_eV_s;
// 1 eV^2 of force expressed in newtons: eV / (hbar c / eV).
inline constexpr double newton_per_eV2 = joule_per_eV / (hbar_c_eV_nm * 1.0e-9);

constexpr double meters_to_inv_eV(double m) { return m * meter_in_inv_eV; }
constexpr double inv_eV_to_meters(double l) { return l / meter_in_inv_eV; }
constexpr double seconds_to_inv_eV(double s) { return s * second_in_inv_eV; }
constexpr double inv_eV_to_seconds(double t) { return t / second_in_inv_eV; }
constexpr double kelvin_to_eV(double T) { return T * k_B_eV_per_K; }
constexpr double eV_to_kelvin(double e) { return e / k_B_eV_per_K; }
constexpr double cubic_meters_to_inv_eV3(double v) {
    return v * meter_in_inv_eV * meter_in_inv_eV * meter_in_inv_eV;
}
constexpr double inv_eV3_to_cubic_meters(double v) {
    return v / (meter_in_inv_eV * meter_in_inv_eV * meter_in_inv_eV);
}
// Angular frequency in rad/s to energy.
constexpr double angular_hz_to_eV(double w) { return w * hbar_eV_s; }
constexpr double eV_to_angular_hz(double e) { return e / hbar_eV_s; }
constexpr double eV2_to_newtons(double f) { return f * newton_per_eV2; }
constexpr double newtons_to_eV2(double f) { return f / newton_per_eV2; }

}  // namespace noneqcp::units
