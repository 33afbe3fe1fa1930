#pragma once

// Binding between configuration files and the model structs. Every reader
// starts from the compiled-in defaults and overrides only the keys present,
// so a config may be as small as a single section.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "beolmem/array.hpp"
#include "beolmem/config.hpp"
#include "beolmem/dse.hpp"
#include "beolmem/memsys.hpp"

namespace beolmem {

inline TechnologyRules load_rules(const Config& c, TechnologyRules r = {}) {
    const std::string s = "technology";
    c.read(s, "pitch_mx", dims::length, r.pitch_mx);
    c.read(s, "pitch_my", dims::length, r.pitch_my);
    c.read(s, "pitch_miv", dims::length, r.pitch_miv);
    c.read(s, "cpp", dims::length, r.cpp);
    c.read(s, "fin_pitch", dims::length, r.fin_pitch);
    c.read_int(s, "max_mx_layers", r.max_mx_layers);
    c.read_int(s, "max_my_layers", r.max_my_layers);
    c.read(s, "upper_metal_pitch_factor", dims::none, r.upper_metal_pitch_factor);
    validate(r);
    return r;
}

namespace detail {

inline void read_material(const Config& c, const std::string& s, DeviceParams& d) {
    c.read(s, "ss", dims::voltage, d.ss);
    c.read(s, "i_th", dims::current_per_length, d.i_th_per_w);
    c.read(s, "k_drive", dims::drive_factor, d.k_drive);
    c.read(s, "c_g", dims::capacitance_per_length, d.c_g_per_w);
    c.read(s, "c_ov", dims::capacitance_per_length, d.c_ov_per_w);
    c.read(s, "i_off", dims::current_per_length, d.i_off_per_w);
    c.read(s, "l_g", dims::length, d.l_g);
    c.read(s, "l_ov", dims::length, d.l_ov);
}

}  // namespace detail

/// [device.aos] and [device.si] hold material coefficients; [device.<role>]
/// sets kind, width and threshold of each role.
inline DeviceSet load_devices(const Config& c) {
    DeviceParams aos = aos_device(100 * units::nm, 0.3);
    DeviceParams si = si_device(DeviceKind::SiNFET, 100 * units::nm, 0.25);
    detail::read_material(c, "device.aos", aos);
    detail::read_material(c, "device.si", si);
    const double pfet_ratio = c.quantity("device.si", "pfet_drive_ratio", dims::none, 0.7);
    auto role = [&](const std::string& name, DeviceParams d) {
        const std::string s = "device." + name;
        if (c.has(s, "kind")) {
            const auto k = c.str(s, "kind");
            const double w = d.w, vt = d.vt;
            if (k == "aos") d = aos;
            else if (k == "si_n") d = si;
            else if (k == "si_p") {
                d = si;
                d.kind = DeviceKind::SiPFET;
                d.k_drive *= pfet_ratio;
            } else throw ConfigError("[" + s + "] kind must be aos, si_n or si_p");
            d.w = w;
            d.vt = vt;
        } else {
            const double w = d.w, vt = d.vt;
            const auto kind = d.kind;
            d = kind == DeviceKind::AOS ? aos : si;
            d.kind = kind;
            if (kind == DeviceKind::SiPFET) d.k_drive *= pfet_ratio;
            d.w = w;
            d.vt = vt;
        }
        c.read(s, "w", dims::length, d.w);
        c.read(s, "vt", dims::voltage, d.vt);
        validate(d);
        return d;
    };
    DeviceSet out;
    out.gc_write = role("gc_write", out.gc_write);
    out.gc_read = role("gc_read", out.gc_read);
    out.t3c_read = role("t3c_read", out.t3c_read);
    out.edram_access = role("edram_access", out.edram_access);
    out.sram_read = role("sram_read", out.sram_read);
    out.si_n = role("si_n", out.si_n);
    out.si_p = role("si_p", out.si_p);
    return out;
}

inline CellLibraryParams load_cell_library(const Config& c, CellLibraryParams l = {}) {
    const std::string s = "cell_library";
    c.read(s, "sram6t_area", dims::area, l.sram6t_area);
    c.read(s, "gc_2t0c_area", dims::area, l.gc_2t0c_area);
    c.read(s, "gc_3t0c_area", dims::area, l.gc_3t0c_area);
    c.read(s, "edram_dg_area", dims::area, l.edram_dg_area);
    c.read(s, "edram_vgaa_area", dims::area, l.edram_vgaa_area);
    c.read(s, "sram8t_ratio", dims::none, l.sram8t_ratio);
    c.read(s, "sram_congestion", dims::none, l.sram_congestion);
    c.read(s, "sram6t_standby", dims::power, l.sram6t_standby);
    c.read(s, "gc_sn_parasitic", dims::capacitance, l.gc_sn_parasitic);
    return l;
}

inline PeripheralParams load_periphery(const Config& c, PeripheralParams p = {}) {
    const std::string s = "periphery";
    for (auto [key, field] : std::initializer_list<std::pair<const char*, double*>>{
             {"tx_area", &p.tx_area},
             {"decoder_tx_per_row", &p.decoder_tx_per_row},
             {"level_shifter_tx", &p.level_shifter_tx},
             {"driver_grid_per_unit", &p.driver_grid_per_unit},
             {"tg_ratio", &p.tg_ratio},
             {"tier_select_tx", &p.tier_select_tx},
             {"bl_tier_mux_tx", &p.bl_tier_mux_tx},
             {"precharge_tx", &p.precharge_tx},
             {"colmux_tx", &p.colmux_tx},
             {"sense_amp_tx", &p.sense_amp_tx},
             {"write_driver_tx", &p.write_driver_tx},
             {"mat_control_tx", &p.mat_control_tx},
             {"stage_effort", &p.stage_effort}})
        c.read(s, key, dims::none, *field);
    c.read(s, "sink_ir_budget", dims::voltage, p.sink_ir_budget);
    c.read(s, "bank_control_area", dims::area, p.bank_control_um2);
    if (c.has(s, "bank_control_area")) p.bank_control_um2 /= units::um2;
    c.read(s, "fo4", dims::time, p.fo4);
    c.read(s, "c_unit", dims::capacitance, p.c_unit);
    c.read(s, "r_unit", dims::resistance, p.r_unit);
    c.read(s, "t_level_shift", dims::time, p.t_level_shift);
    c.read(s, "t_sense", dims::time, p.t_sense);
    c.read(s, "e_sense", dims::energy, p.e_sense);
    c.read(s, "wire_r_per_cell", dims::resistance, p.wire_r_per_cell);
    c.read(s, "wire_c_per_cell", dims::capacitance, p.wire_c_per_cell);
    c.read(s, "global_r_per_um", dims::resistance, p.global_r_per_um);
    c.read(s, "global_c_per_um", dims::capacitance, p.global_c_per_um);
    c.read(s, "global_pitch", dims::length, p.global_pitch);
    c.read(s, "htree_buffer_delay", dims::time, p.htree_buffer_delay);
    c.read(s, "repeated_delay_per_um", dims::time, p.repeated_delay_per_um);
    c.read(s, "repeater_threshold", dims::time, p.repeater_threshold);
    c.read(s, "leakage_per_um2", dims::power, p.leakage_per_um2);
    return p;
}

inline PortConfig load_ports(const Config& c, const std::string& s, PortConfig p = {}) {
    c.read_int(s, "n_read", p.n_read);
    c.read_int(s, "n_write", p.n_write);
    return p;
}

inline CellDesign load_cell(const Config& c, const std::string& s, CellDesign d) {
    c.read(s, "w_ra", dims::length, d.w_ra);
    c.read(s, "w_wa", dims::length, d.w_wa);
    c.read(s, "w_rg", dims::length, d.w_rg);
    c.read(s, "c_sn", dims::capacitance, d.c_sn_dedicated);
    c.read(s, "v_hold", dims::voltage, d.v_hold);
    c.read(s, "v_boost", dims::voltage, d.v_boost);
    c.read(s, "v_dd", dims::voltage, d.v_dd);
    c.read(s, "t_ret", dims::time, d.t_ret_target);
    c.read(s, "delta_v_sn", dims::voltage, d.delta_v_sn);
    validate_ports(d);
    return d;
}

/// The [cell] section: topology, ports and any per-cell overrides.
inline CellDesign load_cell(const Config& c, const std::string& s = "cell") {
    const auto t = topology_from_string(c.str(s, "topology", "GC_NR1W"));
    return load_cell(c, s, default_cell(t, load_ports(c, s)));
}

inline ModelContext load_context(const Config& c) {
    ModelContext ctx;
    ctx.devices = load_devices(c);
    ctx.periph = load_periphery(c);
    ctx.rules = load_rules(c);
    ctx.lib = load_cell_library(c);
    for (const auto& sec : c.sections("cell.")) {
        const auto t = topology_from_string(sec.substr(5));
        ctx.cell_overrides[t] = load_cell(c, sec, default_cell(t, load_ports(c, sec)));
    }
    return ctx;
}

inline ArrayConfig load_array(const Config& c, const std::string& s = "array") {
    ArrayConfig a;
    a.topology = topology_from_string(c.str(s, "topology", "GC_NR1W"));
    c.read_int(s, "n_row", a.n_row);
    c.read_int(s, "n_col", a.n_col);
    c.read_bool(s, "folded_bitline", a.folded_bitline);
    c.read(s, "v_precharge", dims::voltage, a.v_precharge);
    c.read(s, "wire_r_per_cell", dims::resistance, a.wire_r_per_cell);
    c.read(s, "wire_c_per_cell", dims::capacitance, a.wire_c_per_cell);
    c.read(s, "cell_drain_c", dims::capacitance, a.cell_drain_c);
    return a;
}

inline TransientOptions load_transient(const Config& c, const std::string& s = "array") {
    TransientOptions o;
    c.read(s, "dt", dims::time, o.dt);
    c.read(s, "t_end", dims::time, o.t_end);
    c.read_bool(s, "sneak", o.sneak);
    return o;
}

/// Bit counts are written with a unit, e.g. `w_block = 256 bit`.
inline int bits(const Config& c, const std::string& s, const std::string& key) {
    const double b = c.quantity(s, key, dims::bytes) * 8;
    if (b != std::floor(b) || b < 1) throw ConfigError("[" + s + "] " + key + " must be a whole number of bits");
    return int(b);
}

inline std::vector<Topology> load_topologies(const Config& c, const std::string& s, const std::string& key,
                                             std::vector<Topology> def) {
    if (!c.has(s, key)) return def;
    std::vector<Topology> out;
    for (const auto& t : c.list(s, key)) out.push_back(topology_from_string(t));
    return out;
}

/// Port lists are written "1R1W, 3R1W".
inline std::vector<PortConfig> load_port_list(const Config& c, const std::string& s, const std::string& key,
                                              std::vector<PortConfig> def) {
    if (!c.has(s, key)) return def;
    std::vector<PortConfig> out;
    for (const auto& p : c.list(s, key)) {
        int r = 0, w = 0;
        char a = 0, b = 0;
        if (std::sscanf(p.c_str(), "%d%c%d%c", &r, &a, &w, &b) != 4 || (a != 'R' && a != 'r') || (b != 'W' && b != 'w'))
            throw ConfigError("[" + s + "] " + key + ": port entry '" + p + "' must look like 3R1W");
        out.push_back({r, w});
    }
    return out;
}

inline SearchSpace load_search(const Config& c, const std::string& s = "dse") {
    SearchSpace sp;
    sp.topologies = load_topologies(c, s, "topologies", sp.topologies);
    sp.ports = load_port_list(c, s, "ports", sp.ports);
    if (c.has(s, "n_l")) sp.n_l = c.int_list(s, "n_l");
    if (c.has(s, "subarrays_x")) sp.subarrays_x = c.int_list(s, "subarrays_x");
    if (c.has(s, "subarrays_y")) sp.subarrays_y = c.int_list(s, "subarrays_y");
    if (c.has(s, "mats_per_subarray")) sp.mats_per_subarray = c.int_list(s, "mats_per_subarray");
    if (c.has(s, "mat_rows")) sp.mat_rows = c.int_list(s, "mat_rows");
    c.read_int(s, "max_cols", sp.max_cols);
    validate(sp);
    return sp;
}

inline Constraint load_constraint(const Config& c, const std::string& s = "dse") {
    Constraint k;
    if (c.has(s, "rct_max")) k.rct_max = c.quantity(s, "rct_max", dims::time);
    if (c.has(s, "footprint_max")) k.footprint_max = c.quantity(s, "footprint_max", dims::area);
    if (c.has(s, "capacity")) k.capacity = c.integer(s, "capacity", dims::bytes);
    if (c.has(s, "w_block")) k.w_block = bits(c, s, "w_block");
    c.read_bool(s, "include_restore", k.include_restore);
    if (k.capacity < 1 || k.w_block < 1) throw ConfigError("[" + s + "] capacity and w_block must be positive");
    return k;
}

inline L2StudySpec load_l2_study(const Config& c, const std::string& s = "l2") {
    L2StudySpec sp;
    c.read_int(s, "partitions", sp.partitions);
    c.read_int(s, "baseline_banks", sp.baseline_banks);
    if (c.has(s, "baseline_bank_capacity")) sp.baseline_bank_capacity = c.integer(s, "baseline_bank_capacity", dims::bytes);
    c.read(s, "footprint_per_partition", dims::area, sp.footprint_per_partition);
    if (c.has(s, "n_l")) sp.n_l_sweep = c.int_list(s, "n_l");
    if (c.has(s, "w_block")) sp.w_block = bits(c, s, "w_block");
    c.read_int(s, "max_rows", sp.max_rows);
    c.read_int(s, "max_banks", sp.max_banks);
    if (c.has(s, "gpu_clock")) sp.gpu_clock_mhz = c.quantity(s, "gpu_clock", dims::frequency) / units::MHz;
    c.read_int(s, "baseline_rop_latency", sp.baseline_rop_latency);
    if (c.has(s, "t_ret_2t0c")) sp.t_ret[Topology::GC_NR1W] = c.quantity(s, "t_ret_2t0c", dims::time);
    if (c.has(s, "t_ret_1t1c")) {
        sp.t_ret[Topology::EDRAM_1T1C_DG] = sp.t_ret[Topology::EDRAM_1T1C_VGAA] = c.quantity(s, "t_ret_1t1c", dims::time);
    }
    return sp;
}

/// Cache-organisation keys shared by generated and fixed L2 configs.
inline void apply_l2_overrides(const Config& c, const std::string& s, L2Config& l) {
    c.read_int(s, "partitions", l.partitions);
    if (c.has(s, "line_size")) l.line_size = int(c.integer(s, "line_size", dims::bytes));
    c.read_int(s, "associativity", l.associativity);
    c.read_int(s, "mshr_entries", l.mshr_entries);
    c.read_int(s, "mshr_merge_depth", l.mshr_merge_depth);
    c.read_int(s, "miss_queue_depth", l.miss_queue_depth);
    c.read_int(s, "input_queue_depth", l.input_queue_depth);
    c.read_int(s, "hit_latency", l.hit_latency);
    c.read_int(s, "dram_latency", l.dram_latency);
    c.read(s, "dram_bandwidth", dims::bytes_per_cycle, l.dram_bandwidth);
    c.read(s, "dram_energy_per_byte", dims::energy_per_byte, l.dram_energy_per_byte);
    if (c.has(s, "refresh_duration") && l.refresh) l.refresh->duration = int(c.integer(s, "refresh_duration"));
    validate(l);
}

/// [l2.fixed.<id>] sections: explicit bank count, capacity and tier count.
inline std::vector<FixedL2> load_fixed_l2(const Config& c) {
    std::vector<FixedL2> out;
    for (const auto& s : c.sections("l2.fixed.")) {
        FixedL2 f;
        f.id = s.substr(9);
        f.topology = topology_from_string(c.str(s, "topology"));
        const auto mode = c.str(s, "mode", "baseline");
        f.mode = mode == "IB" ? L2Mode::IB : mode == "IBC" ? L2Mode::IBC : L2Mode::Baseline;
        c.read_int(s, "banks_per_partition", f.banks_per_partition);
        if (c.has(s, "bank_capacity")) f.bank_capacity = c.integer(s, "bank_capacity", dims::bytes);
        c.read_int(s, "n_l", f.n_l);
        if (c.has(s, "clock")) f.clock_mhz = c.quantity(s, "clock", dims::frequency) / units::MHz;
        out.push_back(f);
    }
    return out;
}

inline SimOptions load_sim_options(const Config& c, const std::string& s = "sim") {
    SimOptions o;
    if (c.has(s, "core_clock")) o.core_clock_mhz = c.quantity(s, "core_clock", dims::frequency) / units::MHz;
    if (c.has(s, "retry_queue_depth")) o.retry_queue_depth = std::size_t(c.integer(s, "retry_queue_depth"));
    return o;
}

inline TraceParams load_trace_params(const Config& c, const std::string& s, TraceParams p = {}) {
    c.read_int(s, "n", p.n);
    if (c.has(s, "base")) p.base = std::uint64_t(c.integer(s, "base", dims::bytes));
    if (c.has(s, "line_size")) p.line_size = std::uint32_t(c.integer(s, "line_size", dims::bytes));
    if (c.has(s, "size")) p.size = std::uint32_t(c.integer(s, "size", dims::bytes));
    if (c.has(s, "stride")) p.stride = c.integer(s, "stride", dims::bytes);
    if (c.has(s, "footprint")) p.footprint = std::uint64_t(c.integer(s, "footprint", dims::bytes));
    c.read(s, "zipf_s", dims::none, p.zipf_s);
    c.read(s, "write_fraction", dims::none, p.write_fraction);
    c.read_int(s, "interval", p.interval);
    c.read_int(s, "streams", p.streams);
    c.read_int(s, "registers", p.registers);
    c.read(s, "mean_lifetime", dims::none, p.mean_lifetime);
    c.read_int(s, "reads_per_write", p.reads_per_write);
    c.read_int(s, "kernels", p.kernels);
    return p;
}

struct WorkloadSpec {
    std::string id;
    TraceModel model = TraceModel::Stream;
    TraceParams params;
};

/// [workload.<id>] sections.
inline std::vector<WorkloadSpec> load_workloads(const Config& c) {
    std::vector<WorkloadSpec> out;
    for (const auto& s : c.sections("workload.")) {
        WorkloadSpec w;
        w.id = s.substr(9);
        w.model = trace_model_from_string(c.str(s, "model"));
        w.params = load_trace_params(c, s);
        out.push_back(w);
    }
    return out;
}

}  // namespace beolmem
