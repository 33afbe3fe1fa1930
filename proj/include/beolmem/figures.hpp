#pragma once

// Figure-shaped tidy tables. Model figures are computed from the config's
// study sections; simulator figures are assembled from finished runs.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "beolmem/report.hpp"
#include "beolmem/settings.hpp"

namespace beolmem {

struct FigureInputs {
    const Config* config = nullptr;
    ModelContext ctx;
    unsigned jobs = 1;
    std::map<std::string, SimStats> runs;  ///< simulator figures only
    std::string baseline_run = "sram_baseline";
};

namespace detail {

inline std::string opt_fmt(const std::optional<double>& v, double scale) { return v ? fmt(*v / scale) : ""; }

inline std::vector<double> volts_or(const Config& c, const std::string& s, const std::string& k,
                                    std::vector<double> def) {
    return c.has(s, k) ? c.quantity_list(s, k, dims::voltage) : def;
}

inline std::vector<int> ints_or(const Config& c, const std::string& s, const std::string& k, std::vector<int> def) {
    return c.has(s, k) ? c.int_list(s, k) : def;
}

inline const Config& config_of(const FigureInputs& in) {
    static const Config empty;
    return in.config ? *in.config : empty;
}

}  // namespace detail

/// Cell footprint against read-port count.
inline Table fig8a(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    Table t;
    t.header = {"topology", "n_read", "area_um2"};
    for (auto topo : {Topology::SRAM_MP, Topology::GC_NR1W})
        for (int n : detail::ints_or(c, "fig8", "n_read", {1, 2, 3, 4, 5})) {
            const auto cell = cell_for(in.ctx, topo, {n, 1});
            t.rows.push_back({std::string(to_string(topo)), fmt(n),
                              fmt(cell_footprint(cell, in.ctx.rules, in.ctx.lib) / units::um2)});
        }
    return t;
}

/// Cell standby power against read-port count.
inline Table fig8b(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    Table t;
    t.header = {"topology", "n_read", "static_power_w"};
    for (auto topo : {Topology::SRAM_MP, Topology::GC_NR1W})
        for (int n : detail::ints_or(c, "fig8", "n_read", {1, 2, 3, 4, 5})) {
            const auto cell = cell_for(in.ctx, topo, {n, 1});
            t.rows.push_back({std::string(to_string(topo)), fmt(n),
                              fmt(cell_static_power(cell, in.ctx.devices, in.ctx.lib))});
        }
    return t;
}

/// Read-line coupling onto the storage node, relative to 1R1W.
inline Table fig8c(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    Table t;
    t.header = {"n_read", "f_rwl", "f_wwl", "reduction", "reduction_limit"};
    // Write device held at its 1R1W width.
    auto cell = cell_for(in.ctx, Topology::GC_NR1W, {1, 1});
    const double f1 = coupling_fractions(cell).f_rwl;
    for (int n : detail::ints_or(c, "fig8", "n_read", {1, 2, 3, 4, 5})) {
        cell.ports = {n, 1};
        const auto f = coupling_fractions(cell);
        t.rows.push_back({fmt(n), fmt(f.f_rwl), fmt(f.f_wwl), fmt(f1 / f.f_rwl), fmt(double(n))});
    }
    return t;
}

/// Worst-case read margin development over rows and read-port threshold.
inline Table fig9b(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "fig9b";
    ArrayConfig arr = load_array(c, s);
    arr.topology = Topology::GC_NR1W;
    const TransientOptions opt = load_transient(c, s);
    int n_read = 5;
    c.read_int(s, "n_read", n_read);
    const auto cell = cell_for(in.ctx, Topology::GC_NR1W, {n_read, 1});
    Table t;
    t.header = {"n_row", "vt", "t_cross_ns", "rm_peak", "t_sat_ns"};
    for (int rows : detail::ints_or(c, s, "n_rows", {64, 128, 256, 512}))
        for (double vt : detail::volts_or(c, s, "vt", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5})) {
            arr.n_row = rows;
            const auto r = simulate_read_transient(arr, cell, with_vt(in.ctx.devices.gc_read, vt), AllOnes{}, opt);
            t.rows.push_back({fmt(rows), fmt(vt), detail::opt_fmt(r.t_cross_200mV, units::ns), fmt(r.rm_peak),
                              fmt(r.t_rm_saturate / units::ns)});
        }
    return t;
}

/// Register-file bank study: minimum-area 8 kB banks against read ports and tiers.
inline Table fig10(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "fig10";
    Constraint k = rf_constraint();
    if (c.has(s, "rct_max")) k.rct_max = c.quantity(s, "rct_max", dims::time);
    const auto base = min_area(rf_space(Topology::SRAM8T, {1, 1}, {1}), k, in.ctx, in.jobs);
    Table t;
    t.header = {"topology", "n_read", "n_l", "area_um2", "static_power_w", "e_read_pj", "e_write_pj",
                "area_ratio", "static_reduction"};
    auto add = [&](Topology topo, int n, int nl) {
        try {
            const auto p = min_area(rf_space(topo, {n, 1}, {nl}), k, in.ctx, in.jobs);
            t.rows.push_back({std::string(to_string(topo)), fmt(n), fmt(nl), fmt(p.ppa->area / units::um2),
                              fmt(p.ppa->static_power), fmt(p.ppa->e_read / units::pJ),
                              fmt(p.ppa->e_write / units::pJ), fmt(p.ppa->area / base.ppa->area),
                              fmt(1.0 - p.ppa->static_power / base.ppa->static_power)});
        } catch (const InfeasibleError&) {
            t.rows.push_back({std::string(to_string(topo)), fmt(n), fmt(nl), "", "", "", "", "", ""});
        }
    };
    add(Topology::SRAM8T, 1, 1);
    const auto ports = detail::ints_or(c, s, "n_read", {1, 2, 3, 4});
    for (int n : ports) add(Topology::SRAM_MP, n, 1);
    for (int nl : detail::ints_or(c, s, "n_l", {1, 2}))
        for (int n : ports) add(Topology::GC_NR1W, n, nl);
    return t;
}

/// Read time against standby leakage of 2T read ports, AOS and Si.
inline Table fig13(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "fig13";
    ArrayConfig arr;
    arr.topology = Topology::GC_3T0C;
    c.read_int(s, "n_row", arr.n_row);
    c.read(s, "wire_c_per_cell", dims::capacitance, arr.wire_c_per_cell);
    const auto vts = detail::volts_or(c, s, "vt", {-0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
    Table t;
    t.header = {"device", "vt", "read_time_ns", "port_leakage_a", "standby_power_w"};
    auto sweep = [&](const std::string& name, DeviceParams d, double w) {
        d = with_width(d, w);
        arr.cell_drain_c = terminal_capacitance(d);
        for (const auto& p : tradeoff_3t0c(d, d, arr, vts))
            t.rows.push_back({name, fmt(p.vt), fmt(p.read_time / units::ns), fmt(p.port_leakage), fmt(p.standby_power)});
    };
    sweep("AOS", in.ctx.devices.t3c_read, c.quantity(s, "w_aos", dims::length, 150 * units::nm));
    sweep("Si", in.ctx.devices.si_n, c.quantity(s, "w_si", dims::length, in.ctx.devices.si_n.w));
    return t;
}

/// Minimum 1T1C storage capacitance for the read-margin target.
inline Table fig14a(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "fig14a";
    MinCsnOptions o;
    c.read(s, "rm_target", dims::voltage, o.rm_target);
    c.read(s, "wire_c_per_cell", dims::capacitance, o.wire_c_per_cell);
    c.read(s, "v_hold", dims::voltage, o.v_hold);
    const double v_dd = c.quantity(s, "v_dd", dims::voltage, 0.75);
    const double t_ret = c.quantity(s, "t_ret", dims::time, 125 * units::ms);
    const auto widths = c.has(s, "w_access") ? c.quantity_list(s, "w_access", dims::length)
                                             : std::vector<double>{100e-9, 200e-9, 300e-9};
    Table t;
    t.header = {"n_row", "w_access_nm", "min_csn_ff"};
    for (double w : widths)
        for (int rows : detail::ints_or(c, s, "n_rows", {16, 32, 64, 128, 256})) {
            std::string v;
            try {
                v = fmt(min_csn_1t1c(rows, w, v_dd, t_ret, in.ctx.devices.edram_access, o) / units::fF);
            } catch (const InfeasibleError&) {
            }
            t.rows.push_back({fmt(rows), fmt(w / units::nm), v});
        }
    return t;
}

/// 1T1C access time against storage capacitance and access threshold.
inline Table fig14b(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "fig14b";
    const double w = c.quantity(s, "w_access", dims::length, 100 * units::nm);
    const double v_cc = c.quantity(s, "v_cc", dims::voltage, 0.75);
    const auto caps = c.has(s, "c_sn") ? c.quantity_list(s, "c_sn", dims::capacitance)
                                       : std::vector<double>{2e-15, 4e-15, 8e-15, 12e-15, 16e-15};
    Table t;
    t.header = {"vt", "c_sn_ff", "access_time_ns"};
    for (double vt : detail::volts_or(c, s, "vt", {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2}))
        for (double cs : caps) {
            const auto d = with_vt(with_width(in.ctx.devices.edram_access, w), vt);
            t.rows.push_back({fmt(vt), fmt(cs / units::fF), fmt(access_time_1t1c(cs, d, v_cc) / units::ns)});
        }
    return t;
}

inline DensityStudySpec load_density_spec(const Config& c, const std::string& s = "density") {
    DensityStudySpec d;
    d.topologies = load_topologies(c, s, "topologies", d.topologies);
    if (c.has(s, "capacity_base")) d.capacity_base = c.integer(s, "capacity_base", dims::bytes);
    if (c.has(s, "n_l")) d.n_l_sweep = c.int_list(s, "n_l");
    c.read(s, "rct_max", dims::time, d.rct_max);
    if (c.has(s, "w_block")) d.w_block = bits(c, s, "w_block");
    return d;
}

/// Subarray density and cycle time against tier count.
inline Table fig15a(const FigureInputs& in) {
    const auto pts = density_study(load_density_spec(detail::config_of(in)), in.ctx, in.jobs);
    Table t;
    t.header = {"topology", "n_l", "density_mb_mm2", "rct_ns", "capacity_kb", "area_um2"};
    for (const auto& p : pts)
        t.rows.push_back({std::string(to_string(p.topology)), fmt(p.n_l), p.feasible ? fmt(p.density_mb_mm2) : "",
                          p.feasible ? fmt(p.rct / units::ns) : "", fmt(p.capacity / 1024),
                          p.feasible ? fmt(p.area / units::um2) : ""});
    return t;
}

/// Bank footprint, access time and static power distributions.
inline Table fig15b(const FigureInputs& in) {
    const auto& c = detail::config_of(in);
    const std::string s = "distribution";
    const std::int64_t cap = c.has(s, "capacity") ? c.integer(s, "capacity", dims::bytes) : 256 * 1024;
    std::optional<double> fp = 80000 * units::um2;
    if (c.has(s, "footprint_max")) fp = c.quantity(s, "footprint_max", dims::area);
    const auto topos = load_topologies(
        c, s, "topologies",
        {Topology::SRAM6T, Topology::GC_NR1W, Topology::GC_3T0C, Topology::EDRAM_1T1C_VGAA});
    const auto nls = detail::ints_or(c, s, "n_l", {1, 2, 4, 8});
    const int wb = c.has(s, "w_block") ? bits(c, s, "w_block") : 256;
    Table t;
    t.header = {"topology", "n_l", "metric", "min", "median", "max"};
    for (const auto& e : bank_distribution_study(cap, fp, topos, nls, wb, in.ctx, in.jobs)) {
        auto row = [&](const char* m, const Summary& v, double scale) {
            t.rows.push_back({std::string(to_string(e.topology)), fmt(e.n_l), m, fmt(v.min / scale),
                              fmt(v.median / scale), fmt(v.max / scale)});
        };
        row("area_um2", e.area, units::um2);
        row("access_time_ns", e.access_time, units::ns);
        row("static_power_w", e.static_power, 1.0);
    }
    return t;
}

/// Energy breakdown per run, normalized to the baseline run.
inline Table fig17(const FigureInputs& in) {
    if (in.runs.empty()) throw ReportError("fig17 needs simulator runs");
    return energy_table(energy_report(in.runs, in.baseline_run));
}

/// Reservation failure modes per accepted access.
inline Table fig18(const FigureInputs& in) {
    if (in.runs.empty()) throw ReportError("fig18 needs simulator runs");
    Table t = failures_table({in.runs.begin(), in.runs.end()});
    t.header.erase(t.header.begin() + 2);
    for (auto& r : t.rows) r.erase(r.begin() + 2);
    return t;
}

inline const std::map<std::string, std::function<Table(const FigureInputs&)>>& figure_registry() {
    static const std::map<std::string, std::function<Table(const FigureInputs&)>> r{
        {"fig8a", fig8a},   {"fig8b", fig8b},   {"fig8c", fig8c},   {"fig9b", fig9b},
        {"fig10", fig10},   {"fig13", fig13},   {"fig14a", fig14a}, {"fig14b", fig14b},
        {"fig15a", fig15a}, {"fig15b", fig15b}, {"fig17", fig17},   {"fig18", fig18}};
    return r;
}

/// Keys read by the figure generators, per config section.
inline const std::map<std::string, std::vector<std::string>>& figure_config_keys() {
    static const std::map<std::string, std::vector<std::string>> k{
        {"fig8", {"n_read"}},
        {"fig9b", {"n_rows", "vt", "n_read", "n_col", "folded_bitline", "v_precharge", "wire_r_per_cell",
                   "wire_c_per_cell", "cell_drain_c", "dt", "t_end", "sneak", "n_row", "topology"}},
        {"fig10", {"rct_max", "n_read", "n_l"}},
        {"fig13", {"n_row", "wire_c_per_cell", "vt", "w_aos", "w_si"}},
        {"fig14a", {"rm_target", "wire_c_per_cell", "v_hold", "v_dd", "t_ret", "w_access", "n_rows"}},
        {"fig14b", {"w_access", "v_cc", "c_sn", "vt"}},
        {"distribution", {"capacity", "footprint_max", "topologies", "n_l", "w_block"}}};
    return k;
}

/// Loads every section the tools understand, so that anything left unread is
/// a misspelt key or an unknown section.
inline void check_config(const Config& c) {
    load_context(c);
    if (c.has_section("cell")) load_cell(c);
    if (c.has_section("array")) {
        validate(load_array(c));
        load_transient(c);
    }
    if (c.has_section("dse")) {
        load_search(c);
        load_constraint(c);
    }
    if (c.has_section("density")) load_density_spec(c);
    load_l2_study(c);
    load_fixed_l2(c);
    if (c.has_section("l2.cache")) {
        L2Config l;
        apply_l2_overrides(c, "l2.cache", l);
    }
    load_sim_options(c);
    load_workloads(c);
    for (const auto& [sec, keys] : figure_config_keys())
        for (const auto& key : keys)
            if (c.has(sec, key)) c.entry(sec, key);
    if (const auto u = c.unused(); !u.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : u) msg += " " + k;
        throw ConfigError(msg);
    }
}

inline bool needs_runs(const std::string& id) { return id == "fig17" || id == "fig18"; }

inline Table figure(const std::string& id, const FigureInputs& in) {
    const auto& r = figure_registry();
    const auto it = r.find(id);
    if (it == r.end()) throw ReportError("unknown figure '" + id + "'");
    return it->second(in);
}

}  // namespace beolmem
