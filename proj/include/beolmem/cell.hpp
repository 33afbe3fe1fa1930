#pragma once

// Bit-cell library: footprint, storage-node capacitance, standby power,
// write-path timing and storage-node coupling for every supported topology.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "beolmem/device.hpp"
#include "beolmem/error.hpp"
#include "beolmem/units.hpp"

namespace beolmem {

enum class Topology { SRAM6T, SRAM8T, SRAM_MP, GC_NR1W, GC_3T0C, EDRAM_1T1C_DG, EDRAM_1T1C_VGAA };

inline constexpr Topology all_topologies[] = {Topology::SRAM6T,        Topology::SRAM8T,
                                              Topology::SRAM_MP,       Topology::GC_NR1W,
                                              Topology::GC_3T0C,       Topology::EDRAM_1T1C_DG,
                                              Topology::EDRAM_1T1C_VGAA};

inline std::string_view to_string(Topology t) {
    switch (t) {
        case Topology::SRAM6T: return "SRAM6T";
        case Topology::SRAM8T: return "SRAM8T";
        case Topology::SRAM_MP: return "SRAM_MP";
        case Topology::GC_NR1W: return "GC_NR1W";
        case Topology::GC_3T0C: return "GC_3T0C";
        case Topology::EDRAM_1T1C_DG: return "EDRAM_1T1C_DG";
        case Topology::EDRAM_1T1C_VGAA: return "EDRAM_1T1C_VGAA";
    }
    return "?";
}

inline Topology topology_from_string(std::string_view s) {
    for (auto t : all_topologies)
        if (to_string(t) == s) return t;
    // Short names used in study configs and L2 config ids.
    if (s == "2T0C" || s == "2t0c") return Topology::GC_NR1W;
    if (s == "3T0C" || s == "3t0c") return Topology::GC_3T0C;
    if (s == "1T1C" || s == "1t1c") return Topology::EDRAM_1T1C_VGAA;
    if (s == "SRAM" || s == "sram") return Topology::SRAM6T;
    throw ConfigError("unknown topology '" + std::string(s) + "'");
}

inline bool is_sram(Topology t) {
    return t == Topology::SRAM6T || t == Topology::SRAM8T || t == Topology::SRAM_MP;
}
inline bool is_gain_cell(Topology t) { return t == Topology::GC_NR1W || t == Topology::GC_3T0C; }
inline bool is_edram(Topology t) {
    return t == Topology::EDRAM_1T1C_DG || t == Topology::EDRAM_1T1C_VGAA;
}
/// BEOL cells can be stacked in M3D tiers above the FEOL periphery.
inline bool is_stackable(Topology t) { return !is_sram(t); }
inline bool is_capacitive(Topology t) { return !is_sram(t); }

struct PortConfig {
    int n_read = 1;
    int n_write = 1;
    int total() const { return n_read + n_write; }
    friend bool operator==(const PortConfig&, const PortConfig&) = default;
};

/// One cell topology instance. Widths in metres, voltages in volts.
struct CellDesign {
    Topology topology = Topology::GC_NR1W;
    PortConfig ports{};
    double w_ra = 150 * units::nm;  ///< read device width
    double w_wa = 30 * units::nm;   ///< write / access device width
    double w_rg = 150 * units::nm;  ///< read-gating width (3T0C)
    double c_sn_dedicated = 0;      ///< stacked capacitor (1T1C)
    double v_hold = -0.4;
    double v_boost = 1.2;
    double v_dd = 0.75;
    double t_ret_target = 10 * units::ms;
    double delta_v_sn = 0.2;        ///< allowed droop before refresh
};

/// Tabulated anchors and fixed parasitics of the cell library.
struct CellLibraryParams {
    double sram6t_area = 0.0262 * units::um2;
    double gc_2t0c_area = 0.0195 * units::um2;
    double gc_3t0c_area = 0.0251 * units::um2;
    double edram_dg_area = 0.027 * units::um2;
    double edram_vgaa_area = 0.0182 * units::um2;
    double sram8t_ratio = 1.332;       ///< 8T over 6T area
    double sram_congestion = 0.15;     ///< wiring growth per extra port
    double sram6t_standby = 14 * units::pW;
    double gc_sn_parasitic = 0.02 * units::fF;
};

/// Cell with the documented defaults for its topology. GC cells widen the
/// write device in proportion to the read-port count.
inline CellDesign default_cell(Topology t, PortConfig ports = {}) {
    CellDesign c;
    c.topology = t;
    c.ports = ports;
    switch (t) {
        case Topology::GC_NR1W:
            c.w_wa = 30 * units::nm * ports.n_read;
            break;
        case Topology::GC_3T0C:
            c.w_wa = 30 * units::nm;
            c.w_ra = c.w_rg = 150 * units::nm;
            break;
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA:
            c.w_wa = 300 * units::nm;
            c.c_sn_dedicated = 10 * units::fF;
            c.v_hold = -0.3;
            c.v_boost = 0.75;
            c.t_ret_target = 125 * units::ms;
            break;
        default:
            c.v_hold = 0;
            c.v_boost = c.v_dd;
            break;
    }
    return c;
}

inline void validate_ports(const CellDesign& c) {
    const auto& p = c.ports;
    if (p.n_read < 0 || p.n_write < 1 || p.n_read > 5)
        throw CapabilityError("unsupported port count " + std::to_string(p.n_read) + "R" +
                              std::to_string(p.n_write) + "W");
    switch (c.topology) {
        case Topology::GC_NR1W:
            if (p.n_write != 1 || p.n_read < 1)
                throw CapabilityError("gain cells support NR1W with 1 <= N <= 5 only");
            break;
        case Topology::SRAM_MP:
            break;
        default:
            if (p.n_read != 1 || p.n_write != 1)
                throw CapabilityError(std::string(to_string(c.topology)) + " is single-ported (1R1W)");
    }
}

/// Exact rational used for the coupling partition-of-unity check.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d) {
        if (d == 0) throw InputDomainError("rational with zero denominator");
        if (d < 0) n = -n, d = -d;
        const auto g = std::gcd(n < 0 ? -n : n, d);
        return {n / (g ? g : 1), d / (g ? g : 1)};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend Rational operator+(Rational a, Rational b) {
        return make(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(std::int64_t k, Rational a) { return make(k * a.num, a.den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {

inline double sram_mp_area(const CellLibraryParams& lib, PortConfig p) {
    // Per-transistor increment chosen so a 1R1W (8T) cell lands on the 8T ratio.
    const double congestion_8t = 1.0 + lib.sram_congestion;
    const double per_transistor = (lib.sram8t_ratio - 1.0) / (2.0 * congestion_8t) * lib.sram6t_area;
    const int extra = 2 * p.n_read + 4 * (p.n_write - 1);
    const double congestion = 1.0 + lib.sram_congestion * (p.total() - 1);
    return lib.sram6t_area + extra * per_transistor * congestion;
}

/// Read tiers one metal stack can host before the relaxed upper metals take over.
inline int gc_tier_ceiling(const TechnologyRules& rules) { return rules.max_my_layers - 2; }

inline double gc_x_pitch(const CellDesign& c, const TechnologyRules& rules) {
    const int per_tier = c.ports.n_read > gc_tier_ceiling(rules) ? 2 : 1;
    return std::max(2.0 * rules.pitch_mx, per_tier * c.w_ra + c.w_wa + rules.pitch_mx);
}

}  // namespace detail

/// Cell footprint [m^2].
inline double cell_footprint(const CellDesign& c, const TechnologyRules& rules,
                             const CellLibraryParams& lib = {}) {
    validate_ports(c);
    switch (c.topology) {
        case Topology::SRAM6T: return lib.sram6t_area;
        case Topology::SRAM8T: return detail::sram_mp_area(lib, {1, 1});
        case Topology::SRAM_MP: return detail::sram_mp_area(lib, c.ports);
        case Topology::GC_NR1W: {
            // y-pitch is fixed by the 1R1W reference layout; x-pitch follows the
            // devices that share a tier.
            const CellDesign ref = default_cell(Topology::GC_NR1W, {1, 1});
            const double y = lib.gc_2t0c_area / detail::gc_x_pitch(ref, rules);
            return detail::gc_x_pitch(c, rules) * y;
        }
        case Topology::GC_3T0C: return lib.gc_3t0c_area;
        case Topology::EDRAM_1T1C_DG: return lib.edram_dg_area;
        case Topology::EDRAM_1T1C_VGAA: return lib.edram_vgaa_area;
    }
    return 0;
}

/// Storage-node capacitance [F]. For gain cells the gate capacitance of the
/// read devices dominates; 1T1C adds the access junction to the capacitor.
inline double storage_node_capacitance(const CellDesign& c, const DeviceParams& dev_read,
                                       const CellLibraryParams& lib = {}) {
    validate_ports(c);
    const double write_terminal = dev_read.c_ov_per_w * c.w_wa;
    switch (c.topology) {
        case Topology::GC_NR1W:
            return c.ports.n_read * gate_capacitance(with_width(dev_read, c.w_ra)) + write_terminal +
                   lib.gc_sn_parasitic;
        case Topology::GC_3T0C:
            return gate_capacitance(with_width(dev_read, c.w_ra)) + write_terminal + lib.gc_sn_parasitic;
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA:
            return c.c_sn_dedicated + write_terminal;
        default:
            // Cross-coupled inverter node: two gates.
            return 2.0 * gate_capacitance(dev_read);
    }
}

/// Retention-limited standby power: C_SN * dV_SN^2 / t_ret.
inline double retention_power(double c_sn, double delta_v_sn, double t_ret) {
    if (!(t_ret > 0)) throw InputDomainError("retention time must be positive");
    return c_sn * delta_v_sn * delta_v_sn / t_ret;
}

/// Device that writes (or accesses) the storage node.
inline const DeviceParams& write_device(Topology t, const DeviceSet& d) {
    if (is_gain_cell(t)) return d.gc_write;
    if (is_edram(t)) return d.edram_access;
    return d.si_n;
}

/// Device whose gate or channel loads the storage node on a read.
inline const DeviceParams& read_device(Topology t, const DeviceSet& d) {
    switch (t) {
        case Topology::GC_NR1W: return d.gc_read;
        case Topology::GC_3T0C: return d.t3c_read;
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA: return d.edram_access;
        default: return d.sram_read;
    }
}

/// Cell standby power [W].
inline double cell_static_power(const CellDesign& c, const DeviceSet& devs,
                                const CellLibraryParams& lib = {}) {
    validate_ports(c);
    switch (c.topology) {
        case Topology::GC_NR1W: {
            const double csn = storage_node_capacitance(c, devs.gc_read, lib);
            return retention_power(csn, c.delta_v_sn, c.t_ret_target);
        }
        case Topology::GC_3T0C: {
            // Stored '1' leaves R_A on, so the precharged RBL sees R_G alone.
            const double csn = storage_node_capacitance(c, devs.t3c_read, lib);
            const auto rg = with_width(devs.t3c_read, c.w_rg);
            return retention_power(csn, c.delta_v_sn, c.t_ret_target) +
                   c.v_dd * drain_current(rg, 0.0, c.v_dd);
        }
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA: {
            const double csn = storage_node_capacitance(c, devs.edram_access, lib);
            return retention_power(csn, c.delta_v_sn, c.t_ret_target);
        }
        case Topology::SRAM6T: return lib.sram6t_standby;
        case Topology::SRAM8T:
        case Topology::SRAM_MP: {
            const PortConfig p = c.topology == Topology::SRAM8T ? PortConfig{1, 1} : c.ports;
            const double read_port = c.v_dd * drain_current(devs.sram_read, 0.0, c.v_dd);
            const double write_port = 2.0 * c.v_dd * drain_current(devs.si_n, 0.0, c.v_dd);
            return lib.sram6t_standby + p.n_read * read_port + (p.n_write - 1) * write_port;
        }
    }
    return 0;
}

struct CouplingFractions {
    double f_wwl = 0;
    double f_rwl = 0;
};

/// Capacitive-divider fractions of WWL and each RWL onto the storage node.
inline CouplingFractions coupling_fractions(const CellDesign& c) {
    if (!is_gain_cell(c.topology)) throw CapabilityError("coupling fractions are defined for gain cells");
    validate_ports(c);
    const double denom = c.w_wa + 2.0 * c.w_ra * c.ports.n_read;
    return {c.w_wa / denom, c.w_ra / denom};
}

struct ExactCoupling {
    Rational f_wwl;
    Rational f_rwl;
};

/// Same fractions on widths quantised to integer picometres.
inline ExactCoupling coupling_fractions_exact(const CellDesign& c) {
    if (!is_gain_cell(c.topology)) throw CapabilityError("coupling fractions are defined for gain cells");
    validate_ports(c);
    const auto wa = static_cast<std::int64_t>(std::llround(c.w_wa / 1e-12));
    const auto ra = static_cast<std::int64_t>(std::llround(c.w_ra / 1e-12));
    const std::int64_t denom = wa + 2 * ra * c.ports.n_read;
    return {Rational::make(wa, denom), Rational::make(ra, denom)};
}

/// Time [s] for the write device, gate at V_boost, to pull the storage node
/// from 0 V to within 50 mV of V_dd. `c_sn` overrides the cell's own value.
inline double write_time(const CellDesign& c, const DeviceParams& dev_write,
                         std::optional<double> c_sn = std::nullopt, const CellLibraryParams& lib = {}) {
    const double cap = c_sn ? *c_sn : storage_node_capacitance(c, dev_write, lib);
    if (is_sram(c.topology)) {
        // Bistable flip: the pass gate only has to move the node past the trip point.
        const double i_on = drain_current(dev_write, c.v_dd, 0.5 * c.v_dd);
        return cap * 0.5 * c.v_dd / i_on;
    }
    const auto dev = with_width(dev_write, c.w_wa);
    const double target = c.v_dd - 0.05;
    constexpr int steps = 4000;
    const double dv = target / steps;
    double t = 0;
    for (int i = 0; i < steps; ++i) {
        const double v = (i + 0.5) * dv;
        t += cap * dv / drain_current(dev, c.v_boost - v, c.v_dd - v);
    }
    return t;
}

/// Time for the storage node to droop by delta_v_sn through the write/access
/// device held at V_hold with the bitline at 0 V.
inline double retention_time(const CellDesign& c, const DeviceParams& dev_write,
                             const DeviceParams& dev_read, const CellLibraryParams& lib = {}) {
    const double cap = storage_node_capacitance(c, dev_read, lib);
    const double leak = drain_current(with_width(dev_write, c.w_wa), c.v_hold, c.v_dd);
    return cap * c.delta_v_sn / leak;
}

}  // namespace beolmem
