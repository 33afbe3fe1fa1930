#pragma once

// All quantities are carried in SI base units as doubles. These constants
// exist so literals read like the datasheet value: `150 * nm`, `10 * fF`.

#include <cmath>

namespace beolmem::units {

inline constexpr double m = 1.0;
inline constexpr double mm = 1e-3;
inline constexpr double um = 1e-6;
inline constexpr double nm = 1e-9;

inline constexpr double um2 = um * um;
inline constexpr double mm2 = mm * mm;

inline constexpr double s = 1.0;
inline constexpr double ms = 1e-3;
inline constexpr double us = 1e-6;
inline constexpr double ns = 1e-9;
inline constexpr double ps = 1e-12;

inline constexpr double V = 1.0;
inline constexpr double mV = 1e-3;

inline constexpr double A = 1.0;
inline constexpr double mA = 1e-3;
inline constexpr double uA = 1e-6;
inline constexpr double nA = 1e-9;
inline constexpr double pA = 1e-12;
inline constexpr double fA = 1e-15;

inline constexpr double F = 1.0;
inline constexpr double pF = 1e-12;
inline constexpr double fF = 1e-15;
inline constexpr double aF = 1e-18;

inline constexpr double W = 1.0;
inline constexpr double mW = 1e-3;
inline constexpr double uW = 1e-6;
inline constexpr double nW = 1e-9;
inline constexpr double pW = 1e-12;
inline constexpr double fW = 1e-15;

inline constexpr double J = 1.0;
inline constexpr double pJ = 1e-12;
inline constexpr double fJ = 1e-15;

inline constexpr double ohm = 1.0;
inline constexpr double kohm = 1e3;

inline constexpr double Hz = 1.0;
inline constexpr double MHz = 1e6;
inline constexpr double GHz = 1e9;

// Thermal voltage at the single supported corner (300 K).
inline constexpr double thermal_voltage = 0.025852;

// Decimal megabit; densities are reported in Mb/mm^2.
inline constexpr double megabit = 1e6;

inline double to_mb_per_mm2(double bits, double area_m2) {
    return (bits / megabit) / (area_m2 / mm2);
}

}  // namespace beolmem::units
