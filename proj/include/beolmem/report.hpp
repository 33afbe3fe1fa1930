#pragma once

// Serialization of study results (CSV and JSON) and the figure-shaped CSV
// exports. Numbers are written with 17 significant digits so every file
// parses back to the same doubles.

#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "beolmem/array.hpp"
#include "beolmem/dse.hpp"
#include "beolmem/error.hpp"
#include "beolmem/memsys.hpp"

namespace beolmem {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ReportError("no column '" + name + "'");
    }
    const std::string& at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }
};

inline std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}
inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline double to_double(const std::string& s) {
    if (s.empty()) return 0;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'", 0);
    return v;
}

inline std::int64_t to_int(const std::string& s) {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "'", 0);
    return v;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const Table& t) {
    auto line = [&](const std::vector<std::string>& f) {
        for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << detail::csv_field(f[i]);
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

inline std::string to_csv(const Table& t) {
    std::ostringstream s;
    write_csv(s, t);
    return s.str();
}

inline Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        bool q = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (q) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    q = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                q = true;
            } else if (c == ',') {
                f.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (q) throw ParseError("unterminated quote", n);
        f.push_back(std::move(cur));
        if (t.header.empty()) {
            t.header = std::move(f);
        } else {
            if (f.size() != t.header.size()) throw ParseError("wrong field count", n);
            t.rows.push_back(std::move(f));
        }
    }
    return t;
}

inline Table csv_from_string(const std::string& s) {
    std::istringstream in(s);
    return read_csv(in);
}

// ---------------------------------------------------------------------------
// Design points

/// Flat record of one enumerated design, as written to designs.csv.
struct DesignRecord {
    std::int64_t index = 0;
    Topology topology = Topology::SRAM8T;
    int n_read = 1, n_write = 1, n_l = 1;
    int subarrays_x = 1, subarrays_y = 1, mats = 1, rows = 1, cols = 0;
    bool feasible = false;
    std::string reasons;  ///< ';'-joined
    double area = 0, rct = 0, t_read = 0, t_write = 0, access_latency = 0;
    double static_power = 0, e_read = 0, e_write = 0, bandwidth = 0;

    bool operator==(const DesignRecord&) const = default;
};

inline DesignRecord record(const DesignPoint& d) {
    DesignRecord r;
    r.index = std::int64_t(d.index);
    r.topology = d.topology;
    r.n_read = d.ports.n_read;
    r.n_write = d.ports.n_write;
    r.n_l = d.n_l;
    r.subarrays_x = d.subarrays_x;
    r.subarrays_y = d.subarrays_y;
    r.mats = d.mats_per_subarray;
    r.rows = d.rows;
    r.cols = d.cols;
    r.feasible = d.feasible();
    for (const auto& s : d.reasons) r.reasons += (r.reasons.empty() ? "" : ";") + s;
    if (d.ppa) {
        r.area = d.ppa->area;
        r.rct = d.ppa->rct;
        r.t_read = d.ppa->t_read;
        r.t_write = d.ppa->t_write;
        r.access_latency = d.ppa->access_latency;
        r.static_power = d.ppa->static_power;
        r.e_read = d.ppa->e_read;
        r.e_write = d.ppa->e_write;
        r.bandwidth = d.ppa->bandwidth;
    }
    return r;
}

inline const std::vector<std::string>& design_columns() {
    static const std::vector<std::string> c{
        "index",   "topology", "n_read",  "n_write",        "n_l",          "subarrays_x", "subarrays_y",
        "mats",    "rows",     "cols",    "feasible",       "reasons",      "area_m2",     "rct_s",
        "t_read_s", "t_write_s", "access_latency_s", "static_power_w", "e_read_j", "e_write_j", "bandwidth_bps"};
    return c;
}

inline Table designs_table(const std::vector<DesignPoint>& pts) {
    Table t;
    t.header = design_columns();
    for (const auto& d : pts) {
        const auto r = record(d);
        t.rows.push_back({fmt(r.index), std::string(to_string(r.topology)), fmt(r.n_read), fmt(r.n_write), fmt(r.n_l),
                          fmt(r.subarrays_x), fmt(r.subarrays_y), fmt(r.mats), fmt(r.rows), fmt(r.cols),
                          r.feasible ? "1" : "0", r.reasons, fmt(r.area), fmt(r.rct), fmt(r.t_read), fmt(r.t_write),
                          fmt(r.access_latency), fmt(r.static_power), fmt(r.e_read), fmt(r.e_write),
                          fmt(r.bandwidth)});
    }
    return t;
}

inline std::vector<DesignRecord> designs_from_table(const Table& t) {
    if (t.header != design_columns()) throw ParseError("designs.csv header mismatch", 1);
    std::vector<DesignRecord> out;
    for (const auto& f : t.rows) {
        DesignRecord r;
        std::size_t i = 0;
        r.index = detail::to_int(f[i++]);
        r.topology = topology_from_string(f[i++]);
        r.n_read = int(detail::to_int(f[i++]));
        r.n_write = int(detail::to_int(f[i++]));
        r.n_l = int(detail::to_int(f[i++]));
        r.subarrays_x = int(detail::to_int(f[i++]));
        r.subarrays_y = int(detail::to_int(f[i++]));
        r.mats = int(detail::to_int(f[i++]));
        r.rows = int(detail::to_int(f[i++]));
        r.cols = int(detail::to_int(f[i++]));
        r.feasible = f[i++] == "1";
        r.reasons = f[i++];
        for (double* p : {&r.area, &r.rct, &r.t_read, &r.t_write, &r.access_latency, &r.static_power, &r.e_read,
                          &r.e_write, &r.bandwidth})
            *p = detail::to_double(f[i++]);
        out.push_back(r);
    }
    return out;
}

inline json to_json(const DesignRecord& r) {
    return json{{"index", r.index},
                {"topology", to_string(r.topology)},
                {"n_read", r.n_read},
                {"n_write", r.n_write},
                {"n_l", r.n_l},
                {"subarrays_x", r.subarrays_x},
                {"subarrays_y", r.subarrays_y},
                {"mats", r.mats},
                {"rows", r.rows},
                {"cols", r.cols},
                {"feasible", r.feasible},
                {"reasons", r.reasons},
                {"area_m2", r.area},
                {"rct_s", r.rct},
                {"t_read_s", r.t_read},
                {"t_write_s", r.t_write},
                {"access_latency_s", r.access_latency},
                {"static_power_w", r.static_power},
                {"e_read_j", r.e_read},
                {"e_write_j", r.e_write},
                {"bandwidth_bps", r.bandwidth}};
}

inline DesignRecord design_record_from_json(const json& j) {
    DesignRecord r;
    r.index = j.at("index").get<std::int64_t>();
    r.topology = topology_from_string(j.at("topology").get<std::string>());
    r.n_read = j.at("n_read");
    r.n_write = j.at("n_write");
    r.n_l = j.at("n_l");
    r.subarrays_x = j.at("subarrays_x");
    r.subarrays_y = j.at("subarrays_y");
    r.mats = j.at("mats");
    r.rows = j.at("rows");
    r.cols = j.at("cols");
    r.feasible = j.at("feasible");
    r.reasons = j.at("reasons");
    r.area = j.at("area_m2");
    r.rct = j.at("rct_s");
    r.t_read = j.at("t_read_s");
    r.t_write = j.at("t_write_s");
    r.access_latency = j.at("access_latency_s");
    r.static_power = j.at("static_power_w");
    r.e_read = j.at("e_read_j");
    r.e_write = j.at("e_write_j");
    r.bandwidth = j.at("bandwidth_bps");
    return r;
}

inline json pareto_json(const std::vector<DesignPoint>& front) {
    json arr = json::array();
    for (const auto& d : front) arr.push_back(to_json(record(d)));
    return json{{"objectives", {"area_m2", "rct_s", "static_power_w", "e_read_j"}}, {"front", arr}};
}

// ---------------------------------------------------------------------------
// L2 configurations

inline json to_json(const L2Config& c) {
    json j{{"id", c.id},
           {"topology", to_string(c.topology)},
           {"mode", to_string(c.mode)},
           {"partitions", c.partitions},
           {"banks_per_partition", c.banks_per_partition},
           {"bank_capacity_bytes", c.bank_capacity},
           {"total_capacity_bytes", total_capacity(c)},
           {"n_l", c.n_l},
           {"line_size_bytes", c.line_size},
           {"w_block_bits", c.w_block},
           {"associativity", c.associativity},
           {"mshr_entries", c.mshr_entries},
           {"mshr_merge_depth", c.mshr_merge_depth},
           {"miss_queue_depth", c.miss_queue_depth},
           {"input_queue_depth", c.input_queue_depth},
           {"hit_latency_cycles", c.hit_latency},
           {"rop_latency_cycles", c.rop_latency},
           {"rop_latency_delta_cycles", c.rop_latency_delta},
           {"clock_mhz", c.clock_mhz},
           {"dram_latency_cycles", c.dram_latency},
           {"dram_bandwidth_bytes_per_cycle", c.dram_bandwidth},
           {"dram_energy_per_byte_j", c.dram_energy_per_byte},
           {"bank_area_m2", c.bank_area},
           {"area_per_partition_m2", c.bank_area * c.banks_per_partition},
           {"rct_s", c.rct},
           {"access_latency_s", c.access_latency},
           {"costs",
            {{"static_power_w", c.costs.static_power},
             {"e_read_j", c.costs.e_read},
             {"e_write_j", c.costs.e_write},
             {"e_refresh_line_j", c.costs.e_refresh_line}}}};
    if (c.refresh)
        j["refresh"] = {{"period_s", c.refresh->period},
                        {"period_cycles", refresh_period_cycles(c)},
                        {"duration_cycles", c.refresh->duration},
                        {"rows", c.refresh->rows},
                        {"tiers", c.refresh->tiers}};
    else
        j["refresh"] = nullptr;
    return j;
}

inline L2Mode l2_mode_from_string(const std::string& s) {
    for (auto m : {L2Mode::Baseline, L2Mode::IB, L2Mode::IBC})
        if (to_string(m) == s) return m;
    throw ParseError("unknown L2 mode '" + s + "'", 0);
}

inline L2Config l2_config_from_json(const json& j) {
    try {
        L2Config c;
        c.id = j.at("id");
        c.topology = topology_from_string(j.at("topology").get<std::string>());
        c.mode = l2_mode_from_string(j.at("mode"));
        c.partitions = j.at("partitions");
        c.banks_per_partition = j.at("banks_per_partition");
        c.bank_capacity = j.at("bank_capacity_bytes");
        c.n_l = j.at("n_l");
        c.line_size = j.at("line_size_bytes");
        c.w_block = j.at("w_block_bits");
        c.associativity = j.at("associativity");
        c.mshr_entries = j.at("mshr_entries");
        c.mshr_merge_depth = j.at("mshr_merge_depth");
        c.miss_queue_depth = j.at("miss_queue_depth");
        c.input_queue_depth = j.at("input_queue_depth");
        c.hit_latency = j.at("hit_latency_cycles");
        c.rop_latency = j.at("rop_latency_cycles");
        c.rop_latency_delta = j.at("rop_latency_delta_cycles");
        c.clock_mhz = j.at("clock_mhz");
        c.dram_latency = j.at("dram_latency_cycles");
        c.dram_bandwidth = j.at("dram_bandwidth_bytes_per_cycle");
        c.dram_energy_per_byte = j.at("dram_energy_per_byte_j");
        c.bank_area = j.at("bank_area_m2");
        c.rct = j.at("rct_s");
        c.access_latency = j.at("access_latency_s");
        const auto& k = j.at("costs");
        c.costs = {k.at("static_power_w"), k.at("e_read_j"), k.at("e_write_j"), k.at("e_refresh_line_j")};
        if (!j.at("refresh").is_null()) {
            const auto& r = j.at("refresh");
            c.refresh = RefreshSpec{r.at("period_s"), r.at("duration_cycles"), r.at("rows"), r.at("tiers")};
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("L2 config: ") + e.what(), 0);
    }
}

inline json l2_configs_json(const std::vector<L2Config>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(to_json(c));
    return json{{"configs", arr}};
}

inline std::vector<L2Config> l2_configs_from_json(const json& j) {
    std::vector<L2Config> out;
    if (!j.contains("configs") || !j["configs"].is_array()) throw ParseError("l2configs: missing 'configs' array", 0);
    for (const auto& c : j["configs"]) out.push_back(l2_config_from_json(c));
    return out;
}

inline const L2Config& find_l2(const std::vector<L2Config>& cs, const std::string& id) {
    for (const auto& c : cs)
        if (c.id == id) return c;
    throw ConfigError("no L2 config with id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Simulation results

inline json to_json(const SimStats& s) {
    json f = json::object();
    for (auto m : all_failure_modes) f[std::string(to_string(m))] = s.failure(m);
    return json{{"accesses", s.accesses},
                {"hits", s.hits},
                {"misses", s.misses},
                {"merged", s.merged},
                {"reads", s.reads},
                {"writes", s.writes},
                {"fills", s.fills},
                {"writebacks", s.writebacks},
                {"dram_bytes", s.dram_bytes},
                {"reservation_failures", f},
                {"refresh_events", s.refresh_events},
                {"refresh_blocked_cycles", s.refresh_blocked_cycles},
                {"total_cycles", s.total_cycles},
                {"walltime_s", s.walltime},
                {"energy_j",
                 {{"static", s.energy.static_energy},
                  {"dyn_read", s.energy.dyn_read},
                  {"dyn_write", s.energy.dyn_write},
                  {"refresh", s.energy.refresh},
                  {"dram", s.energy.dram},
                  {"total", s.energy.total()}}}};
}

inline SimStats sim_stats_from_json(const json& j) {
    try {
        SimStats s;
        s.accesses = j.at("accesses");
        s.hits = j.at("hits");
        s.misses = j.at("misses");
        s.merged = j.at("merged");
        s.reads = j.at("reads");
        s.writes = j.at("writes");
        s.fills = j.at("fills");
        s.writebacks = j.at("writebacks");
        s.dram_bytes = j.at("dram_bytes");
        for (const auto& [k, v] : j.at("reservation_failures").items())
            s.failures[static_cast<std::size_t>(failure_mode_from_string(k))] = v.get<std::int64_t>();
        s.refresh_events = j.at("refresh_events");
        s.refresh_blocked_cycles = j.at("refresh_blocked_cycles");
        s.total_cycles = j.at("total_cycles");
        s.walltime = j.at("walltime_s");
        const auto& e = j.at("energy_j");
        s.energy = {e.at("static"), e.at("dyn_read"), e.at("dyn_write"), e.at("refresh"), e.at("dram")};
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("stats: ") + e.what(), 0);
    }
}

inline Table energy_table(const std::vector<EnergyReport>& reports) {
    Table t;
    t.header = {"run", "component", "energy_j", "share", "normalized_to_baseline"};
    for (const auto& r : reports) {
        for (const auto& [k, v] : r.components)
            t.rows.push_back({r.run_id, k, fmt(v), fmt(r.total > 0 ? v / r.total : 0.0), fmt(r.normalized(v))});
        t.rows.push_back({r.run_id, "total", fmt(r.total), fmt(r.total > 0 ? 1.0 : 0.0), fmt(r.normalized(r.total))});
    }
    return t;
}

/// Failure-mode distribution; fractions are failed attempts per accepted access.
inline Table failures_table(const std::vector<std::pair<std::string, SimStats>>& runs) {
    Table t;
    t.header = {"config", "failure_mode", "count", "fraction_of_accesses"};
    for (const auto& [id, s] : runs)
        for (auto m : all_failure_modes)
            t.rows.push_back({id, std::string(to_string(m)), fmt(s.failure(m)),
                              fmt(s.accesses ? double(s.failure(m)) / s.accesses : 0.0)});
    return t;
}

inline json to_json(const RegLifetimeReport& r) {
    json cdf = json::array();
    for (const auto& [x, p] : r.cdf) cdf.push_back({x, p});
    json ratio = json::object();
    for (const auto& [k, v] : r.read_write_ratio) ratio[std::to_string(k)] = v;
    return json{{"window_cycles", r.window},
                {"samples", r.samples.size()},
                {"fraction_within_window", r.fraction_within},
                {"read_write_ratio", ratio},
                {"cdf", cdf}};
}

}  // namespace beolmem
