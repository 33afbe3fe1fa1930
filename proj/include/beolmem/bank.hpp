#pragma once

// Mat / subarray / bank composition. A mat is a rows x cols array on each of
// n_l stacked tiers sharing one set of FEOL peripherals; stacked tiers are
// selected by per-tier transmission gates on every word line and bit line.
// Subarrays group mats, and a bank is a grid of subarrays joined by an H-tree.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "beolmem/array.hpp"
#include "beolmem/cell.hpp"
#include "beolmem/device.hpp"
#include "beolmem/error.hpp"
#include "beolmem/units.hpp"

namespace beolmem {

/// Peripheral constants. Areas are in transistor units (one unit occupies
/// `tx_area` grid cells of CPP x fin pitch); electrical values are SI.
// Defaults were fitted jointly to the SRAM L2 bank anchor, the 8-tier density
// anchors and the register-file area and leakage anchors.
struct PeripheralParams {
    double tx_area = 5.37;
    double decoder_tx_per_row = 4.0;
    double level_shifter_tx = 11.1;
    double driver_grid_per_unit = 2.0;   ///< grid cells per unit inverter inside a wide driver
    double tg_ratio = 0.029;              ///< per-tier TG width / final driver stage width
    double tier_select_tx = 2.5;        ///< per word line per tier: tier decode and hold device
    double sink_ir_budget = 390 * units::mV;  ///< allowed drop across a read-current-sinking driver or TG
    double bl_tier_mux_tx = 18.2;
    double precharge_tx = 9.8;
    double colmux_tx = 3.1;
    double sense_amp_tx = 16.5;
    double write_driver_tx = 15.5;
    double mat_control_tx = 50.0;
    double bank_control_um2 = 200.0;

    double fo4 = 9 * units::ps;
    double c_unit = 0.1 * units::fF;  ///< input capacitance of a unit inverter
    double r_unit = 12 * units::kohm; ///< on-resistance of a unit device
    double stage_effort = 4.0;
    double t_level_shift = 25 * units::ps;
    double t_sense = 20 * units::ps;
    double e_sense = 3 * units::fJ;

    double wire_r_per_cell = 20 * units::ohm;
    double wire_c_per_cell = 0.05 * units::fF;
    double global_r_per_um = 0.05 * units::ohm;
    double global_c_per_um = 0.2 * units::fF;
    double global_pitch = 152 * units::nm;
    double htree_buffer_delay = 15 * units::ps;
    double repeated_delay_per_um = 0.05 * units::ps;
    double repeater_threshold = 50 * units::ps;

    double leakage_per_um2 = 0.29 * units::nW;
};

struct MatDesign {
    int rows = 64;
    int cols = 128;
    int n_l = 1;
    CellDesign cell;
    bool has_level_shifters = false;
    double sense_threshold = 100 * units::mV;
};

inline MatDesign make_mat(int rows, int cols, int n_l, const CellDesign& cell) {
    MatDesign m;
    m.rows = rows;
    m.cols = cols;
    m.n_l = n_l;
    m.cell = cell;
    m.has_level_shifters = !is_sram(cell.topology) && (std::abs(cell.v_hold) > 0 || cell.v_boost > cell.v_dd);
    return m;
}

struct BankDesign {
    MatDesign mat;
    int mats_per_subarray = 1;
    int subarrays_x = 1;
    int subarrays_y = 1;
    int n_asc = 1;
    int n_asr = 1;
    int n_p = 1;
    int w_block = 128;
    std::int64_t capacity = 0;  ///< bytes
};

inline std::int64_t bank_bits(const BankDesign& b) {
    return static_cast<std::int64_t>(b.mat.rows) * b.mat.cols * b.mat.n_l * b.mats_per_subarray *
           b.subarrays_x * b.subarrays_y;
}

/// Bank with the standard activation policy: one row of subarrays, every mat
/// in it active, block split evenly across them.
inline BankDesign make_bank(const MatDesign& mat, int mats, int sx, int sy, int w_block) {
    BankDesign b;
    b.mat = mat;
    b.mats_per_subarray = mats;
    b.subarrays_x = sx;
    b.subarrays_y = sy;
    b.n_asc = sx;
    b.n_asr = 1;
    b.n_p = mat.cell.topology == Topology::SRAM6T ? 1 : std::max(1, mat.cell.ports.n_read);
    b.w_block = w_block;
    b.capacity = bank_bits(b) / 8;
    return b;
}

struct EnergyItems {
    double decode = 0;
    double wordline = 0;
    double bitline = 0;
    double sense = 0;
    double gdl = 0;
    double total() const { return decode + wordline + bitline + sense + gdl; }
};

struct MatPPA {
    double area = 0;
    double array_area = 0;
    double periph_area = 0;
    double periph_rows = 0;       ///< decoders, drivers, level shifters, tier gates
    double periph_cols = 0;       ///< precharge, column mux, bit-line tier mux
    double periph_io = 0;         ///< sense amplifiers and write drivers
    double tier_area = 0;         ///< all per-tier select devices (rows and columns)
    double t_decode = 0;
    double t_3d = 0;              ///< tier-select transmission gate delay (read path)
    double t_wordline = 0;
    double t_bitline = 0;
    double t_sense = 0;
    double t_read = 0;
    double t_write = 0;
    double t_precharge = 0;
    double t_restore = 0;
    double rct = 0;
    double static_power = 0;
    EnergyItems e_read;
    EnergyItems e_write;
    double e_refresh_row = 0;
    int bits_out = 1;
};

struct BankPPA {
    double area = 0;              ///< m^2
    double t_read = 0;
    double t_write = 0;
    double t_precharge = 0;
    double rct = 0;
    double access_latency = 0;
    double static_power = 0;
    double e_read = 0;
    double e_write = 0;
    double e_refresh_line = 0;
    double bandwidth = 0;         ///< bits/s
    EnergyItems e_read_items;
    EnergyItems e_write_items;
    double htree_delay = 0;
    double routing_area = 0;
    bool restore_included = true;
    MatPPA mat;
};

struct BankModelOptions {
    /// 1T1C only: count the destructive-read restore in the cycle time.
    bool include_restore = true;
};

/// Peak bank bandwidth [bits/s].
inline double bank_bandwidth(int n_p, int w_block, double t_precharge, double t_read, double t_write) {
    return n_p * std::max(w_block / (t_precharge + t_read), w_block / t_write);
}

inline double refresh_period(double t_ret, int n_row, int n_l) {
    if (!(t_ret > 0) || n_row < 1 || n_l < 1) throw InputDomainError("refresh period needs positive inputs");
    return t_ret / (static_cast<double>(n_row) * n_l);
}

/// Density in decimal Mb per mm^2.
inline double density(double bits, double area_m2) {
    if (!(area_m2 > 0)) throw InputDomainError("density of a zero-area design");
    return units::to_mb_per_mm2(bits, area_m2);
}
inline double density(const BankDesign& b, const BankPPA& p) { return density(double(bank_bits(b)), p.area); }

namespace detail {

struct RowLine {
    double c_cell;
    double swing;
    bool shifted;
    bool read;   // on the read path
    double i_sink = 0;  // DC read current per cell returned through this line
};

struct ColLine {
    double c_cell;
    bool read;
};

inline std::vector<RowLine> row_lines(const CellDesign& c, const DeviceSet& d) {
    const double vdd = c.v_dd;
    const double boosted = c.v_boost - c.v_hold;
    std::vector<RowLine> out;
    switch (c.topology) {
        case Topology::GC_NR1W:
            out.push_back({gate_capacitance(with_width(d.gc_write, c.w_wa)), boosted, true, false});
            for (int i = 0; i < c.ports.n_read; ++i)
                out.push_back({dg_terminal_capacitance(with_width(d.gc_read, c.w_ra)), vdd, false, true,
                               drain_current(with_width(d.gc_read, c.w_ra), vdd, vdd)});
            break;
        case Topology::GC_3T0C:
            out.push_back({gate_capacitance(with_width(d.gc_write, c.w_wa)), boosted, true, false});
            out.push_back({gate_capacitance(with_width(d.t3c_read, c.w_rg)), vdd, false, true});
            break;
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA:
            out.push_back({gate_capacitance(with_width(d.edram_access, c.w_wa)), boosted, true, true});
            break;
        case Topology::SRAM6T:
            out.push_back({2 * gate_capacitance(d.si_n), vdd, false, true});
            break;
        case Topology::SRAM8T:
            out.push_back({2 * gate_capacitance(d.si_n), vdd, false, false});
            out.push_back({gate_capacitance(d.sram_read), vdd, false, true});
            break;
        case Topology::SRAM_MP:
            for (int i = 0; i < c.ports.n_write; ++i) out.push_back({2 * gate_capacitance(d.si_n), vdd, false, false});
            for (int i = 0; i < c.ports.n_read; ++i) out.push_back({gate_capacitance(d.sram_read), vdd, false, true});
            break;
    }
    return out;
}

inline std::vector<ColLine> col_lines(const CellDesign& c, const DeviceSet& d) {
    std::vector<ColLine> out;
    switch (c.topology) {
        case Topology::GC_NR1W:
            for (int i = 0; i < c.ports.n_read; ++i)
                out.push_back({dg_terminal_capacitance(with_width(d.gc_read, c.w_ra)), true});
            out.push_back({dg_terminal_capacitance(with_width(d.gc_write, c.w_wa)), false});
            break;
        case Topology::GC_3T0C:
            out.push_back({dg_terminal_capacitance(with_width(d.t3c_read, c.w_rg)), true});
            out.push_back({dg_terminal_capacitance(with_width(d.gc_write, c.w_wa)), false});
            break;
        case Topology::EDRAM_1T1C_DG:
        case Topology::EDRAM_1T1C_VGAA:
            out.push_back({terminal_capacitance(with_width(d.edram_access, c.w_wa)), true});
            break;
        case Topology::SRAM6T:
            out.push_back({terminal_capacitance(d.si_n), true});
            out.push_back({terminal_capacitance(d.si_n), true});
            break;
        case Topology::SRAM8T:
        case Topology::SRAM_MP: {
            const int nw = c.topology == Topology::SRAM8T ? 1 : c.ports.n_write;
            const int nr = c.topology == Topology::SRAM8T ? 1 : c.ports.n_read;
            for (int i = 0; i < 2 * nw; ++i) out.push_back({terminal_capacitance(d.si_n), false});
            for (int i = 0; i < nr; ++i) out.push_back({terminal_capacitance(d.sram_read), true});
            break;
        }
    }
    return out;
}

struct Driver {
    int stages = 1;
    double final_size = 1;   // in unit inverters
    double total_size = 1;
    double delay = 0;
};

/// Logical-effort buffer chain driving `c_load` from a unit inverter.
inline Driver size_driver(double c_load, const PeripheralParams& p) {
    Driver d;
    const double fanout = std::max(c_load / p.c_unit, 1.0);
    d.stages = std::max(1, static_cast<int>(std::lround(std::log(fanout) / std::log(p.stage_effort))));
    d.final_size = std::max(1.0, c_load / (p.stage_effort * p.c_unit));
    const double f = std::pow(fanout, 1.0 / d.stages);
    d.total_size = 0;
    for (int k = 0; k < d.stages; ++k) d.total_size += std::pow(f, k);
    d.delay = d.stages * p.fo4 * (f / p.stage_effort);
    return d;
}

/// Cell read current at the middle of the bitline development window.
inline double cell_read_current(const CellDesign& c, const DeviceSet& d, double v_bl) {
    switch (c.topology) {
        case Topology::GC_NR1W:
            return drain_current(with_width(d.gc_read, c.w_ra), c.v_dd, v_bl);
        case Topology::GC_3T0C: {
            const auto dev = with_width(d.t3c_read, c.w_rg);
            return stack_current(dev, c.v_dd, with_width(d.t3c_read, c.w_ra), c.v_dd, v_bl);
        }
        case Topology::SRAM6T:
            return stack_current(d.si_n, c.v_dd, d.si_n, c.v_dd, v_bl);
        case Topology::SRAM8T:
        case Topology::SRAM_MP:
            return stack_current(d.sram_read, c.v_dd, d.sram_read, c.v_dd, v_bl);
        default:
            return 0;
    }
}

}  // namespace detail

inline void validate(const MatDesign& m, const TechnologyRules& rules = {}) {
    if (m.rows < 1 || m.cols < 1 || m.n_l < 1) throw InputDomainError("mat dimensions must be >= 1");
    if (m.n_l > 1 && !is_stackable(m.cell.topology))
        throw CapabilityError(std::string(to_string(m.cell.topology)) + " cannot be stacked");
    if (m.rows > max_rows(m.cell.topology, false))
        throw InfeasibleError("rows " + std::to_string(m.rows) + " exceed the " +
                              std::string(to_string(m.cell.topology)) + " limit of " +
                              std::to_string(max_rows(m.cell.topology, false)));
    validate_ports(m.cell);
    validate(rules);
}

/// Area, timing, energy and leakage of one mat. `bits_out` is the number of
/// block bits this mat delivers per access.
inline MatPPA mat_ppa(const MatDesign& m, const DeviceSet& devs, int bits_out = 1,
                      const PeripheralParams& p = {}, const TechnologyRules& rules = {},
                      const CellLibraryParams& lib = {}, const BankModelOptions& opt = {}) {
    validate(m, rules);
    if (bits_out < 1 || bits_out > m.cols) throw InputDomainError("bits_out must be in [1, cols]");
    const auto& c = m.cell;
    const double vdd = c.v_dd;
    const bool stacked = m.n_l > 1;
    const double grid = rules.cpp * rules.fin_pitch;
    const double tx = p.tx_area * grid;
    const int n_read_ports = c.topology == Topology::SRAM6T ? 1 : std::max(1, c.ports.n_read);
    const int n_write_ports = c.ports.n_write;

    MatPPA out;
    out.bits_out = bits_out;
    out.array_area = double(m.rows) * m.cols * cell_footprint(c, rules, lib);

    const auto rows = detail::row_lines(c, devs);
    const auto cols = detail::col_lines(c, devs);

    // Row periphery, word-line timing and energy.
    const double dec_size = p.decoder_tx_per_row;
    const double drv_unit = p.driver_grid_per_unit * grid;
    double row_area = dec_size * tx;
    double tier_row_area = 0;
    out.t_decode = p.fo4 * (std::log2(double(m.rows)) / 2.0 + 2.0);
    double t_wl_read = 0, t_wl_write = 0, t_3d_read = 0, t_3d_write = 0;
    double e_wl_read = 0, e_wl_write = 0, e_drv_read = 0, e_drv_write = 0;
    for (const auto& rl : rows) {
        const double c_line0 = m.cols * (rl.c_cell + p.wire_c_per_cell);
        const auto drv0 = detail::size_driver(c_line0, p);
        const double sink_size = p.r_unit * m.cols * rl.i_sink / p.sink_ir_budget;
        const double tg_size = std::max({1.0, p.tg_ratio * drv0.final_size * rl.swing / vdd, sink_size});
        const double c_tg_junction = 0.5 * tg_size * p.c_unit;
        const double c_line = c_line0 + (stacked ? m.n_l * c_tg_junction : 0.0);
        const auto drv = detail::size_driver(c_line, p);
        row_area += (drv.total_size + std::max(0.0, sink_size - drv.final_size)) * drv_unit;
        if (rl.shifted) row_area += p.level_shifter_tx * tx;
        if (stacked) {
            const double per_tier = 2.0 * tg_size * drv_unit + p.tier_select_tx * tx;
            row_area += m.n_l * per_tier;
            tier_row_area += m.n_l * per_tier;
        }
        const double r_wire = m.cols * p.wire_r_per_cell;
        const double t_rc = 0.38 * r_wire * c_line0;
        const double t_tg = stacked ? 0.69 * (p.r_unit / tg_size) * c_line + p.fo4 * std::ceil(std::log2(double(m.n_l)))
                                    : 0.0;
        const double t = drv.delay + (rl.shifted ? p.t_level_shift : 0.0) + t_rc;
        const double e = c_line * rl.swing * rl.swing + (stacked ? tg_size * p.c_unit * rl.swing * rl.swing : 0.0);
        const double e_drv = drv.total_size * p.c_unit * vdd * vdd;
        if (rl.read) {
            t_wl_read = std::max(t_wl_read, t);
            t_3d_read = std::max(t_3d_read, t_tg);
            e_wl_read = std::max(e_wl_read, e);
            e_drv_read = std::max(e_drv_read, e_drv);
        }
        if (!rl.read || is_edram(c.topology) || c.topology == Topology::SRAM6T) {
            t_wl_write = std::max(t_wl_write, t);
            t_3d_write = std::max(t_3d_write, t_tg);
            e_wl_write = std::max(e_wl_write, e);
            e_drv_write = std::max(e_drv_write, e_drv);
        }
    }
    // Column periphery and bitline timing.
    double col_area = 0, tier_col_area = 0;
    double c_bl_read = 0, c_bl_write = 0;
    for (const auto& cl : cols) {
        col_area += (p.precharge_tx + p.colmux_tx) * tx;
        if (stacked) {
            col_area += m.n_l * p.bl_tier_mux_tx * tx;
            tier_col_area += m.n_l * p.bl_tier_mux_tx * tx;
        }
        const double c_bl = m.rows * (cl.c_cell + p.wire_c_per_cell) +
                            (stacked ? m.n_l * 0.5 * p.bl_tier_mux_tx * p.c_unit : 0.0) + 2.0 * p.c_unit;
        (cl.read ? c_bl_read : c_bl_write) = c_bl;
    }
    if (c_bl_write == 0) c_bl_write = c_bl_read;
    out.periph_io = bits_out * (n_read_ports * p.sense_amp_tx + n_write_ports * p.write_driver_tx) * tx;
    out.periph_rows = double(m.rows) * row_area;
    out.periph_cols = double(m.cols) * col_area;
    out.tier_area = double(m.rows) * tier_row_area + double(m.cols) * tier_col_area;
    out.periph_area = out.periph_rows + out.periph_cols + out.periph_io + p.mat_control_tx * tx;
    out.area = is_stackable(c.topology) ? std::max(out.array_area, out.periph_area) : out.array_area + out.periph_area;

    const double dv = m.sense_threshold;
    const double r_pre = p.r_unit / p.precharge_tx;
    out.t_precharge = 0.69 * r_pre * c_bl_read + p.fo4;
    out.t_sense = p.t_sense;
    out.t_3d = t_3d_read;
    out.t_wordline = t_wl_read;

    double t_cell_write = 0;
    double e_bl_read = 0, e_bl_write = 0;
    if (is_edram(c.topology)) {
        const auto acc = with_width(devs.edram_access, c.w_wa);
        const double csn = storage_node_capacitance(c, devs.edram_access, lib);
        const double half = 0.5 * vdd;
        const double r_acc = half / drain_current(acc, c.v_boost - half, half);
        const double c_series = csn * c_bl_read / (csn + c_bl_read);
        out.t_bitline = 2.2 * r_acc * c_series;
        out.t_restore = access_time_1t1c(csn, acc, c.v_boost);
        t_cell_write = out.t_restore;
        e_bl_read = m.cols * c_bl_read * vdd * half;
        e_bl_write = e_bl_read + bits_out * c_bl_read * vdd * vdd;
    } else {
        const double i_cell = detail::cell_read_current(c, devs, vdd - 0.5 * dv);
        out.t_bitline = c_bl_read * dv / i_cell;
        const auto wdev = is_gain_cell(c.topology) ? with_width(devs.gc_write, c.w_wa) : devs.si_n;
        std::optional<double> csn;
        if (c.topology == Topology::GC_3T0C) csn = storage_node_capacitance(c, devs.t3c_read, lib);
        else if (is_gain_cell(c.topology)) csn = storage_node_capacitance(c, devs.gc_read, lib);
        else csn = 2.0 * gate_capacitance(devs.si_n);
        t_cell_write = write_time(c, wdev, csn, lib);
        e_bl_read = m.cols * c_bl_read * vdd * dv;
        if (is_gain_cell(c.topology)) {
            // The WWL opens every write device in the row, so all WBLs are driven.
            e_bl_write = m.cols * c_bl_write * vdd * vdd * 0.5;
        } else {
            e_bl_write = bits_out * 2.0 * c_bl_write * vdd * vdd + (m.cols - bits_out) * c_bl_write * vdd * dv;
        }
    }
    const double r_wd = p.r_unit / p.write_driver_tx;
    const double t_wbl = 0.69 * r_wd * c_bl_write;

    out.t_read = out.t_decode + t_3d_read + t_wl_read + out.t_bitline + out.t_sense;
    out.t_write = out.t_decode + t_3d_write + t_wl_write + t_wbl + t_cell_write;
    if (is_edram(c.topology))
        out.rct = opt.include_restore ? std::max(out.t_read + out.t_restore + out.t_precharge, out.t_write)
                                      : out.t_read + out.t_precharge;
    else
        out.rct = std::max(out.t_read + out.t_precharge, out.t_write);

    // Energy per mat activation.
    const double e_dec = p.c_unit * dec_size * (std::log2(double(m.rows)) + 1.0) * vdd * vdd;
    out.e_read.decode = e_dec + e_drv_read;
    out.e_read.wordline = e_wl_read;
    out.e_read.bitline = e_bl_read;
    out.e_read.sense = bits_out * p.e_sense;
    out.e_write.decode = e_dec + e_drv_write;
    out.e_write.wordline = e_wl_write;
    out.e_write.bitline = e_bl_write;
    out.e_refresh_row = out.e_read.total() + out.e_write.wordline + out.e_write.bitline;

    const double cell_power = cell_static_power(c, devs, lib);
    out.static_power = double(m.rows) * m.cols * m.n_l * cell_power + p.leakage_per_um2 / units::um2 * out.periph_area;
    return out;
}

inline void validate(const BankDesign& b, const TechnologyRules& rules = {}) {
    validate(b.mat, rules);
    if (b.mats_per_subarray < 1 || b.subarrays_x < 1 || b.subarrays_y < 1 || b.n_p < 1 || b.w_block < 1)
        throw InputDomainError("bank geometry fields must be >= 1");
    if (b.n_asc < 1 || b.n_asc > b.subarrays_x || b.n_asr < 1 || b.n_asr > b.subarrays_y)
        throw InputDomainError("active subarrays exceed the subarray grid");
    if (b.capacity * 8 != bank_bits(b)) throw InputDomainError("capacity does not match bank geometry");
    const int active_mats = b.n_asc * b.n_asr * b.mats_per_subarray;
    if (b.w_block % active_mats != 0)
        throw InputDomainError("block of " + std::to_string(b.w_block) + " bits does not split over " +
                               std::to_string(active_mats) + " active mats");
    if (b.w_block / active_mats > b.mat.cols) throw InputDomainError("block wider than the active columns");
}

inline BankPPA bank_ppa(const BankDesign& b, const DeviceSet& devs, const PeripheralParams& p = {},
                        const TechnologyRules& rules = {}, const CellLibraryParams& lib = {},
                        const BankModelOptions& opt = {}) {
    validate(b, rules);
    const int active_mats = b.n_asc * b.n_asr * b.mats_per_subarray;
    const int total_mats = b.mats_per_subarray * b.subarrays_x * b.subarrays_y;
    const int bits_out = b.w_block / active_mats;
    const auto mat = mat_ppa(b.mat, devs, bits_out, p, rules, lib, opt);
    const double vdd = b.mat.cell.v_dd;

    BankPPA out;
    out.mat = mat;
    out.restore_included = !is_edram(b.mat.cell.topology) || opt.include_restore;

    const double core = total_mats * mat.area;
    const double side_um = std::sqrt(core / units::um2);
    const int levels = static_cast<int>(std::ceil(std::log2(double(b.subarrays_x * b.subarrays_y))));
    const double sub_side_um = side_um / std::sqrt(double(b.subarrays_x * b.subarrays_y));

    auto segment_delay = [&](double len_um) {
        const double unrepeated = 0.38 * p.global_r_per_um * p.global_c_per_um * len_um * len_um;
        const double wire = unrepeated > p.repeater_threshold ? p.repeated_delay_per_um * len_um : unrepeated;
        return wire + p.htree_buffer_delay;
    };
    double path_um = 0, delay = 0;
    for (int k = 1; k <= levels; ++k) {
        const double len = side_um / std::pow(2.0, std::ceil(k / 2.0));
        path_um += len;
        delay += segment_delay(len);
    }
    // Local bus across the mats of one subarray.
    path_um += sub_side_um;
    delay += segment_delay(sub_side_um);
    out.htree_delay = delay;

    const double addr_bits = std::ceil(std::log2(std::max(2.0, double(b.capacity) * 8.0 / b.w_block)));
    const double wires = b.w_block + addr_bits + 8.0;
    out.routing_area = wires * p.global_pitch * path_um * units::um;
    out.area = core + out.routing_area + p.bank_control_um2 * units::um2;

    out.t_read = mat.t_read;
    out.t_write = mat.t_write;
    out.t_precharge = mat.t_precharge;
    out.rct = mat.rct;
    out.access_latency = mat.t_read + 2.0 * delay + 2.0 * p.fo4;

    const double e_gdl = 0.5 * wires * path_um * p.global_c_per_um * vdd * vdd;
    auto scale = [&](const EnergyItems& m) {
        EnergyItems e;
        e.decode = active_mats * m.decode;
        e.wordline = active_mats * m.wordline;
        e.bitline = active_mats * m.bitline;
        e.sense = active_mats * m.sense;
        e.gdl = e_gdl;
        return e;
    };
    out.e_read_items = scale(mat.e_read);
    out.e_write_items = scale(mat.e_write);
    out.e_read = out.e_read_items.total();
    out.e_write = out.e_write_items.total();
    out.e_refresh_line = is_capacitive(b.mat.cell.topology) ? total_mats * mat.e_refresh_row : 0.0;
    out.static_power = total_mats * mat.static_power +
                       p.leakage_per_um2 / units::um2 * p.bank_control_um2 * units::um2;
    out.bandwidth = bank_bandwidth(b.n_p, b.w_block, mat.t_precharge, mat.t_read, mat.t_write);
    return out;
}

}  // namespace beolmem
