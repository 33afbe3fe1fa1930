#pragma once

// Exhaustive bank design-space search, Pareto extraction, and the register
// file / density / bank-distribution / L2 study generators built on it.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "beolmem/bank.hpp"

namespace beolmem {

struct SearchSpace {
    std::vector<Topology> topologies{Topology::SRAM8T};
    std::vector<PortConfig> ports{{1, 1}};
    std::vector<int> n_l{1};
    std::vector<int> subarrays_x{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> subarrays_y{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> mats_per_subarray{1, 2, 4, 8, 16, 32, 64};
    std::vector<int> mat_rows{16, 32, 64, 128};
    int max_cols = 1024;
};

inline void validate(const SearchSpace& s) {
    if (s.topologies.empty() || s.ports.empty() || s.n_l.empty() || s.subarrays_x.empty() ||
        s.subarrays_y.empty() || s.mats_per_subarray.empty() || s.mat_rows.empty())
        throw InputDomainError("search space axes must be non-empty");
}

inline std::size_t space_size(const SearchSpace& s) {
    return s.topologies.size() * s.ports.size() * s.n_l.size() * s.subarrays_x.size() * s.subarrays_y.size() *
           s.mats_per_subarray.size() * s.mat_rows.size();
}

struct Constraint {
    std::optional<double> rct_max;
    std::optional<double> footprint_max;  ///< m^2
    std::int64_t capacity = 8 * 1024;     ///< bytes
    int w_block = 128;
    bool include_restore = true;
};

/// Everything the models need besides the design itself.
struct ModelContext {
    DeviceSet devices;
    PeripheralParams periph;
    TechnologyRules rules;
    CellLibraryParams lib;
    std::map<Topology, CellDesign> cell_overrides;
};

inline CellDesign cell_for(const ModelContext& ctx, Topology t, PortConfig ports) {
    if (auto it = ctx.cell_overrides.find(t); it != ctx.cell_overrides.end()) {
        CellDesign c = it->second;
        if (t == Topology::GC_NR1W && !(c.ports == ports)) {
            // Keep the proportional write-device widening for other port counts.
            c.w_wa = c.w_wa / std::max(1, c.ports.n_read) * ports.n_read;
        }
        c.ports = ports;
        return c;
    }
    return default_cell(t, ports);
}

struct DesignPoint {
    std::size_t index = 0;
    Topology topology = Topology::SRAM8T;
    PortConfig ports;
    int n_l = 1;
    int subarrays_x = 1;
    int subarrays_y = 1;
    int mats_per_subarray = 1;
    int rows = 1;
    int cols = 0;
    std::optional<BankDesign> design;
    std::optional<BankPPA> ppa;
    std::vector<std::string> reasons;
    bool feasible() const { return reasons.empty(); }
};

/// Geometry key used for deterministic ordering and tie-breaks.
inline auto geometry_key(const DesignPoint& p) {
    return std::make_tuple(static_cast<int>(p.topology), p.ports.n_read, p.ports.n_write, p.n_l, p.subarrays_x,
                           p.subarrays_y, p.mats_per_subarray, p.rows);
}

namespace detail {

inline DesignPoint evaluate_point(DesignPoint pt, const Constraint& k, const ModelContext& ctx, int max_cols) {
    auto fail = [&](const std::string& r) { pt.reasons.push_back(r); };
    if (k.rct_max && *k.rct_max <= 0) fail("rct");
    CellDesign cell;
    try {
        cell = cell_for(ctx, pt.topology, pt.ports);
        validate_ports(cell);
    } catch (const CapabilityError&) {
        fail("capability");
        return pt;
    }
    if (pt.n_l > 1 && !is_stackable(pt.topology)) {
        fail("capability");
        return pt;
    }
    if (pt.rows > max_rows(pt.topology, false)) fail("rows");
    const std::int64_t bits = k.capacity * 8;
    const std::int64_t per_col =
        std::int64_t(pt.rows) * pt.n_l * pt.mats_per_subarray * pt.subarrays_x * pt.subarrays_y;
    if (bits % per_col != 0 || bits / per_col < 1) {
        fail("geometry");
        return pt;
    }
    if (bits / per_col > max_cols) {
        fail("cols");
        return pt;
    }
    pt.cols = static_cast<int>(bits / per_col);
    const int active = pt.subarrays_x * pt.mats_per_subarray;
    if (k.w_block % active != 0 || k.w_block / active > pt.cols || pt.cols % (k.w_block / active) != 0) {
        fail("block");
        return pt;
    }
    if (!pt.reasons.empty() && pt.reasons != std::vector<std::string>{"rct"}) return pt;
    const auto mat = make_mat(pt.rows, pt.cols, pt.n_l, cell);
    auto bank = make_bank(mat, pt.mats_per_subarray, pt.subarrays_x, pt.subarrays_y, k.w_block);
    BankModelOptions opt;
    opt.include_restore = k.include_restore;
    const auto ppa = bank_ppa(bank, ctx.devices, ctx.periph, ctx.rules, ctx.lib, opt);
    pt.design = bank;
    pt.ppa = ppa;
    if (k.rct_max && *k.rct_max > 0 && ppa.rct > *k.rct_max) fail("rct");
    if (k.footprint_max && ppa.area > *k.footprint_max) fail("footprint");
    return pt;
}

}  // namespace detail

/// Cartesian product of the space in canonical order (no evaluation).
inline std::vector<DesignPoint> enumerate_geometry(const SearchSpace& s) {
    validate(s);
    std::vector<DesignPoint> out;
    out.reserve(space_size(s));
    for (auto t : s.topologies)
        for (auto p : s.ports)
            for (int nl : s.n_l)
                for (int sx : s.subarrays_x)
                    for (int sy : s.subarrays_y)
                        for (int m : s.mats_per_subarray)
                            for (int r : s.mat_rows) {
                                DesignPoint d;
                                d.index = out.size();
                                d.topology = t;
                                d.ports = p;
                                d.n_l = nl;
                                d.subarrays_x = sx;
                                d.subarrays_y = sy;
                                d.mats_per_subarray = m;
                                d.rows = r;
                                out.push_back(d);
                            }
    return out;
}

/// Evaluates every point of the space. Output order is the enumeration order
/// regardless of `jobs`.
inline std::vector<DesignPoint> enumerate(const SearchSpace& s, const Constraint& k, const ModelContext& ctx = {},
                                          unsigned jobs = 1) {
    auto pts = enumerate_geometry(s);
    const std::size_t n = pts.size();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (auto& p : pts) p = detail::evaluate_point(std::move(p), k, ctx, s.max_cols);
        return pts;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) pts[i] = detail::evaluate_point(std::move(pts[i]), k, ctx, s.max_cols);
        });
    for (auto& t : pool) t.join();
    return pts;
}

struct Objectives {
    double area, rct, static_power, e_access;
};

inline Objectives objectives(const DesignPoint& p) {
    return {p.ppa->area, p.ppa->rct, p.ppa->static_power, p.ppa->e_read};
}

inline bool dominates(const Objectives& a, const Objectives& b) {
    const bool le = a.area <= b.area && a.rct <= b.rct && a.static_power <= b.static_power && a.e_access <= b.e_access;
    const bool lt = a.area < b.area || a.rct < b.rct || a.static_power < b.static_power || a.e_access < b.e_access;
    return le && lt;
}

/// Non-dominated feasible points, sorted by (area, rct, static power, energy, geometry).
inline std::vector<DesignPoint> pareto(const std::vector<DesignPoint>& pts) {
    std::vector<const DesignPoint*> cand;
    for (const auto& p : pts)
        if (p.feasible() && p.ppa) cand.push_back(&p);
    auto less = [](const DesignPoint* a, const DesignPoint* b) {
        const auto oa = objectives(*a), ob = objectives(*b);
        return std::tie(oa.area, oa.rct, oa.static_power, oa.e_access) <
                   std::tie(ob.area, ob.rct, ob.static_power, ob.e_access) ||
               (std::tie(oa.area, oa.rct, oa.static_power, oa.e_access) ==
                    std::tie(ob.area, ob.rct, ob.static_power, ob.e_access) &&
                geometry_key(*a) < geometry_key(*b));
    };
    std::sort(cand.begin(), cand.end(), less);
    // In this order a point can only be dominated by an earlier one.
    std::vector<const DesignPoint*> front;
    for (const auto* p : cand) {
        const auto op = objectives(*p);
        bool dominated = false;
        for (const auto* f : front)
            if (dominates(objectives(*f), op)) {
                dominated = true;
                break;
            }
        if (!dominated) front.push_back(p);
    }
    std::vector<DesignPoint> out;
    out.reserve(front.size());
    for (const auto* p : front) out.push_back(*p);
    return out;
}

/// Summary of why a search came back empty: reason code -> number of points.
inline std::string binding_constraints(const std::vector<DesignPoint>& pts) {
    std::map<std::string, std::size_t> counts;
    for (const auto& p : pts)
        for (const auto& r : p.reasons) ++counts[r];
    std::string s;
    for (const auto& [r, c] : counts) s += (s.empty() ? "" : ", ") + r + "=" + std::to_string(c);
    return s.empty() ? "empty search space" : s;
}

inline bool min_area_less(const DesignPoint& a, const DesignPoint& b) {
    const auto &pa = *a.ppa, &pb = *b.ppa;
    if (pa.area != pb.area) return pa.area < pb.area;
    if (pa.rct != pb.rct) return pa.rct < pb.rct;
    if (pa.static_power != pb.static_power) return pa.static_power < pb.static_power;
    return geometry_key(a) < geometry_key(b);
}

inline DesignPoint min_area(const std::vector<DesignPoint>& pts) {
    const DesignPoint* best = nullptr;
    for (const auto& p : pts)
        if (p.feasible() && p.ppa && (!best || min_area_less(p, *best))) best = &p;
    if (!best) throw InfeasibleError("no feasible design; binding constraints: " + binding_constraints(pts));
    return *best;
}

inline DesignPoint min_area(const SearchSpace& s, const Constraint& k, const ModelContext& ctx = {},
                            unsigned jobs = 1) {
    return min_area(enumerate(s, k, ctx, jobs));
}

// Register-file study ------------------------------------------------------

inline SearchSpace rf_space(Topology t, PortConfig ports, std::vector<int> n_l) {
    SearchSpace s;
    s.topologies = {t};
    s.ports = {ports};
    s.n_l = std::move(n_l);
    return s;
}

inline Constraint rf_constraint() {
    Constraint k;
    k.rct_max = 750 * units::ps;
    k.capacity = 8 * 1024;
    k.w_block = 128;
    return k;
}

// Density study --------------------------------------------------------------

struct DensityPoint {
    Topology topology;
    int n_l;
    std::int64_t capacity;
    double density_mb_mm2;
    double rct;
    double area;
    bool feasible;
};

struct DensityStudySpec {
    std::vector<Topology> topologies{Topology::SRAM6T, Topology::GC_NR1W, Topology::GC_3T0C,
                                     Topology::EDRAM_1T1C_VGAA};
    std::int64_t capacity_base = 64 * 1024;
    std::vector<int> n_l_sweep{1, 2, 4, 8};
    double rct_max = 1 * units::ns;
    int w_block = 256;
};

/// Densest single-subarray design per (topology, n_l) with capacity scaled by
/// the tier count. SRAM stays single-tier and is evaluated at each capacity.
inline std::vector<DensityPoint> density_study(const DensityStudySpec& spec, const ModelContext& ctx = {},
                                               unsigned jobs = 1) {
    std::vector<DensityPoint> out;
    for (auto t : spec.topologies) {
        for (int nl : spec.n_l_sweep) {
            SearchSpace s;
            s.topologies = {t};
            s.ports = {{1, 1}};
            s.n_l = {is_stackable(t) ? nl : 1};
            s.subarrays_x = {1};
            s.subarrays_y = {1};
            Constraint k;
            k.rct_max = spec.rct_max;
            k.capacity = spec.capacity_base * nl;
            k.w_block = spec.w_block;
            k.include_restore = false;
            const auto pts = enumerate(s, k, ctx, jobs);
            DensityPoint d{t, s.n_l[0], k.capacity, 0, 0, 0, false};
            try {
                const auto best = min_area(pts);
                d.area = best.ppa->area;
                d.rct = best.ppa->rct;
                d.density_mb_mm2 = density(*best.design, *best.ppa);
                d.feasible = true;
            } catch (const InfeasibleError&) {
            }
            out.push_back(d);
        }
    }
    return out;
}

/// Highest density reached by a topology in a study.
inline double peak_density(const std::vector<DensityPoint>& pts, Topology t) {
    double best = 0;
    for (const auto& p : pts)
        if (p.topology == t && p.feasible) best = std::max(best, p.density_mb_mm2);
    return best;
}

inline double density_at(const std::vector<DensityPoint>& pts, Topology t, int n_l) {
    for (const auto& p : pts)
        if (p.topology == t && p.n_l == n_l && p.feasible) return p.density_mb_mm2;
    return 0;
}

// Bank distribution study -------------------------------------------------------

struct Summary {
    double min = 0, median = 0, max = 0;
    std::size_t count = 0;
};

inline Summary summarize(std::vector<double> v) {
    Summary s;
    s.count = v.size();
    if (v.empty()) return s;
    std::sort(v.begin(), v.end());
    s.min = v.front();
    s.max = v.back();
    const std::size_t n = v.size();
    s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    return s;
}

struct DistributionEntry {
    Topology topology;
    int n_l;
    Summary area, access_time, static_power;
};

inline std::vector<DistributionEntry> bank_distribution_study(
    std::int64_t capacity, std::optional<double> footprint_max, const std::vector<Topology>& topologies,
    const std::vector<int>& n_l_sweep, int w_block = 256, const ModelContext& ctx = {}, unsigned jobs = 1) {
    std::vector<DistributionEntry> out;
    for (auto t : topologies) {
        for (int nl : n_l_sweep) {
            if (nl > 1 && !is_stackable(t)) continue;
            SearchSpace s;
            s.topologies = {t};
            s.ports = {{1, 1}};
            s.n_l = {nl};
            Constraint k;
            k.capacity = capacity;
            k.footprint_max = footprint_max;
            k.w_block = w_block;
            k.include_restore = false;
            const auto pts = enumerate(s, k, ctx, jobs);
            std::vector<double> a, l, p;
            for (const auto& d : pts)
                if (d.feasible()) {
                    a.push_back(d.ppa->area);
                    l.push_back(d.ppa->access_latency);
                    p.push_back(d.ppa->static_power);
                }
            if (a.empty()) continue;
            out.push_back({t, nl, summarize(a), summarize(l), summarize(p)});
        }
    }
    return out;
}

// L2 configuration generator ---------------------------------------------------

enum class L2Mode { Baseline, IB, IBC };

inline std::string_view to_string(L2Mode m) {
    switch (m) {
        case L2Mode::Baseline: return "baseline";
        case L2Mode::IB: return "IB";
        case L2Mode::IBC: return "IBC";
    }
    return "?";
}

struct RefreshSpec {
    double period = 0;        ///< seconds between line refreshes in one bank
    int duration = 1;         ///< cycles
    int rows = 0;             ///< rows per bank tier
    int tiers = 1;
};

struct BankCosts {
    double static_power = 0;  ///< W per bank
    double e_read = 0;        ///< J per access
    double e_write = 0;
    double e_refresh_line = 0;
};

struct L2Config {
    std::string id;
    Topology topology = Topology::SRAM6T;
    L2Mode mode = L2Mode::Baseline;
    int partitions = 8;
    int banks_per_partition = 2;
    std::int64_t bank_capacity = 256 * 1024;
    int n_l = 1;
    int line_size = 128;
    int w_block = 256;            ///< bits per bank access
    int associativity = 16;
    int mshr_entries = 32;
    int mshr_merge_depth = 8;
    int miss_queue_depth = 16;
    int input_queue_depth = 64;
    int hit_latency = 1;          ///< bank occupancy per access in cycles
    int rop_latency = 120;        ///< L2 access latency proxy in cycles
    int rop_latency_delta = 0;
    double clock_mhz = 1000;
    int dram_latency = 200;
    double dram_bandwidth = 32;   ///< bytes per cycle per partition
    double dram_energy_per_byte = 20 * units::pJ;
    std::optional<RefreshSpec> refresh;
    BankCosts costs;
    double bank_area = 0;
    double rct = 0;
    double access_latency = 0;
};

inline std::int64_t total_capacity(const L2Config& c) {
    return std::int64_t(c.partitions) * c.banks_per_partition * c.bank_capacity;
}

struct L2StudySpec {
    int partitions = 8;
    int baseline_banks = 2;
    std::int64_t baseline_bank_capacity = 256 * 1024;
    double footprint_per_partition = 200000 * units::um2;
    std::vector<int> n_l_sweep{1, 2, 4, 8};
    int w_block = 256;
    int max_rows = 64;
    int max_capacity_factor = 16;
    int max_banks = 64;
    double gpu_clock_mhz = 1132;  ///< L2 clock ceiling
    int baseline_rop_latency = 120;
    std::map<Topology, double> t_ret{{Topology::GC_NR1W, 110 * units::ms},
                                      {Topology::EDRAM_1T1C_DG, 125 * units::ms},
                                      {Topology::EDRAM_1T1C_VGAA, 125 * units::ms}};
};

namespace detail {

inline std::optional<DesignPoint> fastest_bank(Topology t, int nl, std::int64_t capacity, double footprint,
                                               const L2StudySpec& spec, const ModelContext& ctx, unsigned jobs) {
    SearchSpace s;
    s.topologies = {t};
    s.ports = {{1, 1}};
    s.n_l = {nl};
    s.mat_rows = {std::min(spec.max_rows, max_rows(t, false))};
    Constraint k;
    k.capacity = capacity;
    k.footprint_max = footprint;
    k.w_block = spec.w_block;
    const auto pts = enumerate(s, k, ctx, jobs);
    const DesignPoint* best = nullptr;
    for (const auto& p : pts) {
        if (!p.feasible()) continue;
        if (!best || std::tie(p.ppa->access_latency, p.ppa->area) < std::tie(best->ppa->access_latency, best->ppa->area))
            best = &p;
    }
    if (!best) return std::nullopt;
    return *best;
}

inline L2Config make_l2(const DesignPoint& d, L2Mode mode, int banks, const L2StudySpec& spec,
                        const std::optional<DesignPoint>& baseline) {
    L2Config c;
    c.topology = d.topology;
    c.mode = mode;
    c.partitions = spec.partitions;
    c.banks_per_partition = banks;
    c.bank_capacity = d.design->capacity;
    c.n_l = d.n_l;
    c.w_block = spec.w_block;
    const auto& p = *d.ppa;
    c.clock_mhz = std::min(spec.gpu_clock_mhz, std::floor(1.0 / p.rct / units::MHz));
    c.bank_area = p.area;
    c.rct = p.rct;
    c.access_latency = p.access_latency;
    c.costs = {p.static_power, p.e_read, p.e_write, p.e_refresh_line};
    c.hit_latency = 1;
    if (baseline) {
        const double delta = p.access_latency - baseline->ppa->access_latency;
        c.rop_latency_delta = static_cast<int>(std::ceil(delta * c.clock_mhz * units::MHz - 1e-9));
    }
    c.rop_latency = spec.baseline_rop_latency + c.rop_latency_delta;
    if (is_capacitive(d.topology)) {
        const auto it = spec.t_ret.find(d.topology);
        const double t_ret = it != spec.t_ret.end() ? it->second : d.design->mat.cell.t_ret_target;
        RefreshSpec r;
        r.rows = d.rows;
        r.tiers = d.n_l;
        r.period = refresh_period(t_ret, d.rows, d.n_l);
        r.duration = is_edram(d.topology) ? 1 : 2;
        c.refresh = r;
    }
    std::string topo = d.topology == Topology::GC_NR1W   ? "2t0c"
                       : d.topology == Topology::GC_3T0C ? "3t0c"
                       : is_edram(d.topology)            ? "1t1c"
                                                         : "sram";
    c.id = mode == L2Mode::Baseline ? topo + "_baseline" : topo + (mode == L2Mode::IB ? "_ib" : "_ibc");
    return c;
}

}  // namespace detail

/// L2 configuration generator. Baseline: SRAM at the reference bank count and
/// capacity. IB: reference bank count; tiers grow and per-bank capacity grows
/// with them until no bank fits the partition footprint. IBC: reference bank
/// capacity; the largest power-of-two bank count that fits at any tier count
/// (lower access latency on ties). Within a choice the fastest bank is used.
inline L2Config generate_l2_config(L2Mode mode, Topology t, const L2StudySpec& spec = {},
                                   const ModelContext& ctx = {}, unsigned jobs = 1) {
    const double cap = spec.footprint_per_partition;
    const auto base = detail::fastest_bank(Topology::SRAM6T, 1, spec.baseline_bank_capacity,
                                           cap / spec.baseline_banks, spec, ctx, jobs);
    if (!base) throw InfeasibleError("SRAM baseline bank does not fit the partition footprint");
    if (mode == L2Mode::Baseline) return detail::make_l2(*base, mode, spec.baseline_banks, spec, std::nullopt);

    std::optional<DesignPoint> best;
    int best_banks = 0;
    if (mode == L2Mode::IB) {
        for (int nl : spec.n_l_sweep) {
            if (nl > 1 && !is_stackable(t)) break;
            auto d = detail::fastest_bank(t, nl, spec.baseline_bank_capacity * nl, cap / spec.baseline_banks,
                                          spec, ctx, jobs);
            if (!d) break;
            best = d;
        }
        best_banks = spec.baseline_banks;
    } else {
        for (int nl : spec.n_l_sweep) {
            if (nl > 1 && !is_stackable(t)) continue;
            for (int banks = spec.max_banks; banks >= 1 && banks >= best_banks; banks /= 2) {
                auto d = detail::fastest_bank(t, nl, spec.baseline_bank_capacity, cap / banks, spec, ctx, jobs);
                if (!d) continue;
                if (banks > best_banks || d->ppa->access_latency < best->ppa->access_latency) {
                    best = d;
                    best_banks = banks;
                }
                break;
            }
        }
    }
    if (!best)
        throw InfeasibleError(std::string("no ") + (mode == L2Mode::IB ? "IB" : "IBC") + " configuration fits " +
                              std::to_string(cap / units::um2) + " um^2 per partition");
    return detail::make_l2(*best, mode, best_banks, spec, base);
}

/// Fixed L2 organisation, e.g. a row of a published configuration table.
struct FixedL2 {
    std::string id;
    Topology topology = Topology::SRAM6T;
    L2Mode mode = L2Mode::Baseline;
    int banks_per_partition = 2;
    std::int64_t bank_capacity = 256 * 1024;
    int n_l = 1;
    std::optional<double> clock_mhz;  ///< overrides the clock derived from the bank RCT
};

/// Uses the fastest bank that fits the per-bank share of the partition
/// footprint, or the smallest bank when none fits.
inline L2Config fixed_l2_config(const FixedL2& f, const L2StudySpec& spec = {}, const ModelContext& ctx = {},
                                unsigned jobs = 1) {
    const double cap = spec.footprint_per_partition;
    const auto base = detail::fastest_bank(Topology::SRAM6T, 1, spec.baseline_bank_capacity,
                                           cap / spec.baseline_banks, spec, ctx, jobs);
    auto d = detail::fastest_bank(f.topology, f.n_l, f.bank_capacity, cap / f.banks_per_partition, spec, ctx, jobs);
    if (!d) {
        SearchSpace s;
        s.topologies = {f.topology};
        s.ports = {{1, 1}};
        s.n_l = {f.n_l};
        s.mat_rows = {std::min(spec.max_rows, max_rows(f.topology, false))};
        Constraint k;
        k.capacity = f.bank_capacity;
        k.w_block = spec.w_block;
        d = min_area(enumerate(s, k, ctx, jobs));
    }
    auto c = detail::make_l2(*d, f.mode, f.banks_per_partition, spec, base);
    if (f.clock_mhz) {
        c.clock_mhz = *f.clock_mhz;
        if (base) {
            const double delta = d->ppa->access_latency - base->ppa->access_latency;
            c.rop_latency_delta = static_cast<int>(std::ceil(delta * c.clock_mhz * units::MHz - 1e-9));
            c.rop_latency = spec.baseline_rop_latency + c.rop_latency_delta;
        }
    }
    if (!f.id.empty()) c.id = f.id;
    return c;
}

}  // namespace beolmem
