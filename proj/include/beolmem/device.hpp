#pragma once

// Analytic transistor model shared by the AOS (BEOL oxide channel) devices and
// the Si FinFET reference devices.
//
// Channel current per unit width at saturation:
//
//   V_ov = V_gs - V_t
//   I_sat = I_th * 10^(V_ov / SS)                       V_ov <= 0
//   I_sat = I_th * (1 + ln10/SS * V_ov) + k * V_ov^2    V_ov >  0
//
// where I_th is the constant-current threshold definition. The two branches
// meet with matching value and slope at V_ov = 0. Triode behaviour uses the
// square-law shape x(2 - x) in x = V_ds / V_dsat with V_dsat = max(V_ov, 0)
// + 2 kT/q, clamped to 1 at and above saturation. A gate-independent floor
// I_off (trap/junction leakage) is added on top of the channel term.

#include <cmath>
#include <string>
#include <string_view>

#include "beolmem/error.hpp"
#include "beolmem/units.hpp"

namespace beolmem {

enum class DeviceKind { AOS, SiNFET, SiPFET };

inline std::string_view to_string(DeviceKind k) {
    switch (k) {
        case DeviceKind::AOS: return "AOS";
        case DeviceKind::SiNFET: return "SiNFET";
        case DeviceKind::SiPFET: return "SiPFET";
    }
    return "?";
}

/// Parametric transistor. All fields SI; per-width quantities are per metre.
struct DeviceParams {
    DeviceKind kind = DeviceKind::AOS;
    double vt = 0.3;            ///< threshold voltage [V]
    double ss = 0.085;          ///< subthreshold swing [V/decade]
    double k_drive = 1e-4 / units::um;   ///< saturation drive factor [A/(V^2 m)]
    double i_th_per_w = 2e-8 / units::um;   ///< channel current at V_gs = V_t [A/m]
    double c_g_per_w = 1.0 * units::fF / units::um;   ///< gate-to-channel [F/m]
    double c_ov_per_w = 1.5 * units::fF / units::um;  ///< per overlap region [F/m]
    double i_off_per_w = 1e-15 * units::A / units::um;  ///< gate-independent floor [A/m]
    double w = 100 * units::nm;    ///< channel width [m]
    double l_g = 15 * units::nm;   ///< gate length [m]
    double l_ov = 30 * units::nm;  ///< overlap length [m]
};

/// Metallization and logic pitches of the 7 nm-class platform.
struct TechnologyRules {
    double pitch_mx = 40 * units::nm;
    double pitch_my = 76 * units::nm;
    double pitch_miv = 60 * units::nm;
    double cpp = 54 * units::nm;
    double fin_pitch = 27 * units::nm;
    int max_mx_layers = 5;
    int max_my_layers = 5;
    double upper_metal_pitch_factor = 18.0;
};

inline void validate(const TechnologyRules& r) {
    if (!(r.pitch_mx > 0 && r.pitch_my > 0 && r.pitch_miv > 0 && r.cpp > 0 && r.fin_pitch > 0 &&
          r.upper_metal_pitch_factor > 0))
        throw InputDomainError("technology rules: all pitches must be positive");
    if (r.max_mx_layers < 1 || r.max_my_layers < 1)
        throw InputDomainError("technology rules: layer counts must be >= 1");
}

inline void validate(const DeviceParams& d) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!(finite(d.vt) && finite(d.ss) && finite(d.k_drive) && finite(d.i_th_per_w) &&
          finite(d.c_g_per_w) && finite(d.c_ov_per_w) && finite(d.i_off_per_w) && finite(d.w)))
        throw InputDomainError("device parameters must be finite");
    if (d.ss < 0.060 - 1e-12) throw InputDomainError("subthreshold swing below 60 mV/decade");
    if (d.w <= 0) throw InputDomainError("device width must be positive");
    if (d.k_drive <= 0) throw InputDomainError("drive factor must be positive");
    if (d.i_th_per_w <= 0) throw InputDomainError("threshold current must be positive");
    if (d.c_g_per_w < 0 || d.c_ov_per_w < 0 || d.i_off_per_w < 0)
        throw InputDomainError("capacitances and leakage floor must be non-negative");
    if (d.kind == DeviceKind::AOS && d.i_off_per_w > 1e-15 * units::A / units::um * (1 + 1e-9))
        throw InputDomainError("AOS leakage floor above 1 fA/um");
}

namespace detail {

inline double sat_current_per_w(const DeviceParams& d, double vov) {
    if (vov <= 0) return d.i_th_per_w * std::pow(10.0, vov / d.ss);
    return d.i_th_per_w * (1.0 + std::log(10.0) / d.ss * vov) + d.k_drive * vov * vov;
}

inline double triode_shape(double vds, double vdsat) {
    const double x = vds / vdsat;
    return x >= 1.0 ? 1.0 : x * (2.0 - x);
}

}  // namespace detail

/// Drain current [A] for V_ds >= 0. Negative V_ds is handled by swapping
/// source and drain, which returns a negative (reverse) current.
inline double drain_current(const DeviceParams& d, double vgs, double vds) {
    if (!std::isfinite(vgs) || !std::isfinite(vds))
        throw InputDomainError("drain_current: non-finite bias");
    if (vds < 0) return -drain_current(d, vgs - vds, -vds);
    const double vov = vgs - d.vt;
    const double vdsat = std::max(vov, 0.0) + 2.0 * units::thermal_voltage;
    const double channel = detail::sat_current_per_w(d, vov) * detail::triode_shape(vds, vdsat);
    const double floor = d.i_off_per_w * (1.0 - std::exp(-vds / units::thermal_voltage));
    return (channel + floor) * d.w;
}

/// Signed current flowing from terminal a to terminal b with the gate at vg.
inline double channel_current(const DeviceParams& d, double vg, double va, double vb) {
    if (va >= vb) return drain_current(d, vg - vb, va - vb);
    return -drain_current(d, vg - va, vb - va);
}

/// Gate capacitance C_gg = (C_g + 2 C_ov) W.
inline double gate_capacitance(const DeviceParams& d) {
    return (d.c_g_per_w + 2.0 * d.c_ov_per_w) * d.w;
}

/// Capacitance a single source/drain terminal adds to the net it touches.
inline double terminal_capacitance(const DeviceParams& d) { return d.c_ov_per_w * d.w; }

/// Gate-controlled subthreshold leakage at V_gs = 0 [A]. The gate-independent
/// floor is excluded; drain_current(d, 0, vds) includes it.
inline double off_leakage(const DeviceParams& d, double vds) {
    const double v = std::max(vds, 0.0);
    return d.i_th_per_w * d.w * std::pow(10.0, -d.vt / d.ss) *
           (1.0 - std::exp(-v / units::thermal_voltage));
}

inline DeviceParams with_vt(DeviceParams d, double vt) {
    d.vt = vt;
    return d;
}

inline DeviceParams with_width(DeviceParams d, double w) {
    d.w = w;
    return d;
}

// Calibrated device corner. The AOS coefficients were fitted once against the
// three device anchors (400 ps write at 30 nm / 1.2 V boost, >= 10 ms
// retention at -0.4 V hold, 3T0C read-port leakage of 2.67 pW at V_t = 250 mV)
// and are frozen here and in configs/baseline.cfg.
namespace calibrated {

inline constexpr double aos_ss = 0.085;
inline constexpr double aos_i_th = 2.0766e-8 / units::um;  // 2.67 pW anchor at SS = 85 mV/dec
inline constexpr double aos_k = 3.314e-4 / units::um;
inline constexpr double aos_c_g = 1.0 * units::fF / units::um;
inline constexpr double aos_c_ov = 1.5 * units::fF / units::um;
inline constexpr double aos_floor = 1e-15 / units::um;

inline constexpr double si_ss = 0.070;
inline constexpr double si_i_th = 1.0e-6 / units::um;
inline constexpr double si_k = 2.4e-3 / units::um;
inline constexpr double si_c_g = 0.8 * units::fF / units::um;
inline constexpr double si_c_ov = 0.25 * units::fF / units::um;
inline constexpr double si_floor = 1e-12 / units::um;

}  // namespace calibrated

inline DeviceParams aos_device(double w, double vt) {
    DeviceParams d;
    d.kind = DeviceKind::AOS;
    d.vt = vt;
    d.ss = calibrated::aos_ss;
    d.k_drive = calibrated::aos_k;
    d.i_th_per_w = calibrated::aos_i_th;
    d.c_g_per_w = calibrated::aos_c_g;
    d.c_ov_per_w = calibrated::aos_c_ov;
    d.i_off_per_w = calibrated::aos_floor;
    d.w = w;
    d.l_g = 15 * units::nm;
    d.l_ov = 30 * units::nm;
    return d;
}

inline DeviceParams si_device(DeviceKind kind, double w, double vt) {
    DeviceParams d;
    d.kind = kind;
    d.vt = vt;
    d.ss = calibrated::si_ss;
    d.k_drive = kind == DeviceKind::SiPFET ? 0.7 * calibrated::si_k : calibrated::si_k;
    d.i_th_per_w = calibrated::si_i_th;
    d.c_g_per_w = calibrated::si_c_g;
    d.c_ov_per_w = calibrated::si_c_ov;
    d.i_off_per_w = calibrated::si_floor;
    d.w = w;
    d.l_g = 15 * units::nm;
    d.l_ov = 0;
    return d;
}

/// Role-specific device instances used by the cell, array and bank models.
struct DeviceSet {
    DeviceParams gc_write = aos_device(30 * units::nm, 0.30);
    DeviceParams gc_read = aos_device(150 * units::nm, 0.20);
    DeviceParams t3c_read = aos_device(150 * units::nm, 0.25);
    DeviceParams edram_access = aos_device(300 * units::nm, -0.1);
    DeviceParams sram_read = si_device(DeviceKind::SiNFET, 100 * units::nm, 0.23);
    DeviceParams si_n = si_device(DeviceKind::SiNFET, 100 * units::nm, 0.25);
    DeviceParams si_p = si_device(DeviceKind::SiPFET, 100 * units::nm, 0.25);
};

}  // namespace beolmem
