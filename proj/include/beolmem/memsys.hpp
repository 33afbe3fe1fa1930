#pragma once

// Cycle-stepped model of the L2 slices behind the GPU memory partitions:
// set-associative LRU banks with MSHRs, a per-bank miss queue, a fixed
// latency / bandwidth-capped DRAM channel per partition and distributed
// refresh. Plus the synthetic trace generators and the register-lifetime
// analyzer.
//
// Address layout, from the least significant bit:
//   [ line offset | partition | bank | set | tag ]
// with partition = line % P, bank = (line / P) % B, set = (line / (P B)) % S.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "beolmem/dse.hpp"
#include "beolmem/error.hpp"
#include "beolmem/units.hpp"

namespace beolmem {

enum class EventKind { Read, Write, RegRead, RegWrite };

inline std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Read: return "R";
        case EventKind::Write: return "W";
        case EventKind::RegRead: return "RR";
        case EventKind::RegWrite: return "RW";
    }
    return "?";
}

struct TraceEvent {
    std::int64_t cycle = 0;  ///< issue cycle, core clock
    EventKind kind = EventKind::Read;
    std::uint64_t address = 0;  ///< byte address, or register id for RR/RW
    std::uint32_t size = 4;
    int stream_id = 0;

    bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

inline void validate(const Trace& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].size == 0) throw InputDomainError("trace event " + std::to_string(i) + " has zero size");
        if (t[i].cycle < 0) throw InputDomainError("trace event " + std::to_string(i) + " has a negative cycle");
        if (i && t[i].cycle < t[i - 1].cycle)
            throw InputDomainError("trace cycles decrease at event " + std::to_string(i));
    }
}

enum class FailureMode { LineAlloc, MshrEntry, MshrMerge, MissQueue, RefreshRead, RefreshWrite };

inline constexpr std::array<FailureMode, 6> all_failure_modes{
    FailureMode::LineAlloc, FailureMode::MshrEntry,   FailureMode::MshrMerge,
    FailureMode::MissQueue, FailureMode::RefreshRead, FailureMode::RefreshWrite};

inline std::string_view to_string(FailureMode f) {
    switch (f) {
        case FailureMode::LineAlloc: return "LINE_ALLOC";
        case FailureMode::MshrEntry: return "MSHR_ENTRY";
        case FailureMode::MshrMerge: return "MSHR_MERGE";
        case FailureMode::MissQueue: return "MISS_QUEUE";
        case FailureMode::RefreshRead: return "REFRESH_READ";
        case FailureMode::RefreshWrite: return "REFRESH_WRITE";
    }
    return "?";
}

inline FailureMode failure_mode_from_string(std::string_view s) {
    for (auto f : all_failure_modes)
        if (to_string(f) == s) return f;
    throw ParseError("unknown failure mode '" + std::string(s) + "'", 0);
}

struct EnergyBreakdown {
    double static_energy = 0;
    double dyn_read = 0;
    double dyn_write = 0;
    double refresh = 0;
    double dram = 0;
    double total() const { return static_energy + dyn_read + dyn_write + refresh + dram; }
};

enum class Disposition { Pending, Hit, Miss, MergedMiss };

inline std::string_view to_string(Disposition d) {
    switch (d) {
        case Disposition::Pending: return "pending";
        case Disposition::Hit: return "hit";
        case Disposition::Miss: return "miss";
        case Disposition::MergedMiss: return "merged";
    }
    return "?";
}

/// Final disposition of one line request.
struct Outcome {
    std::int64_t serial = 0;
    std::int64_t event_index = 0;
    std::uint64_t line = 0;
    Disposition disposition = Disposition::Pending;
    std::int64_t accept_cycle = -1;
    std::int64_t complete_cycle = -1;
};

struct SimStats {
    std::int64_t accesses = 0;  ///< accepted line requests; hits + misses
    std::int64_t hits = 0;
    std::int64_t misses = 0;    ///< includes requests merged into an outstanding miss
    std::int64_t merged = 0;
    std::int64_t reads = 0;
    std::int64_t writes = 0;
    std::int64_t fills = 0;
    std::int64_t writebacks = 0;
    std::int64_t dram_bytes = 0;
    std::array<std::int64_t, 6> failures{};
    std::int64_t refresh_events = 0;
    std::int64_t refresh_blocked_cycles = 0;
    std::int64_t total_cycles = 0;  ///< L2 clock
    double walltime = 0;
    EnergyBreakdown energy;
    std::vector<Outcome> outcomes;  ///< filled when SimOptions::record_outcomes

    std::int64_t failure(FailureMode f) const { return failures[static_cast<std::size_t>(f)]; }
    std::int64_t total_failures() const { return std::accumulate(failures.begin(), failures.end(), std::int64_t{0}); }
    double miss_rate() const { return accesses ? double(misses) / accesses : 0.0; }
};

struct SimOptions {
    double core_clock_mhz = 1132;  ///< clock of the trace cycle stamps
    std::size_t retry_queue_depth = std::size_t{1} << 18;  ///< per bank
    bool record_outcomes = false;
};

struct RefreshEvent {
    std::int64_t cycle = 0;
    int row = 0;
    int tier = 0;
};

inline std::int64_t refresh_period_cycles(const L2Config& c) {
    if (!c.refresh) return 0;
    return static_cast<std::int64_t>(std::floor(c.refresh->period * c.clock_mhz * units::MHz + 1e-9));
}

/// Cycle of the first refresh of bank `b` (of the partition); banks are
/// spread evenly across one period.
inline std::int64_t refresh_phase(const L2Config& c, int b) {
    return refresh_period_cycles(c) * b / std::max(1, c.banks_per_partition);
}

inline void validate_refresh(const L2Config& c) {
    if (!c.refresh) return;
    const auto& r = *c.refresh;
    if (r.duration != 1 && r.duration != 2) throw ConfigError("refresh duration must be 1 or 2 cycles");
    if (r.rows < 1 || r.tiers < 1) throw ConfigError("refresh needs rows >= 1 and tiers >= 1");
    if (!(r.period > 0)) throw ConfigError("refresh period must be positive");
    if (refresh_period_cycles(c) < r.duration)
        throw ConfigError("refresh period of " + std::to_string(refresh_period_cycles(c)) +
                          " cycles is shorter than the refresh duration");
}

/// Line-refresh events of one bank in [0, horizon): one every period, rotating
/// round-robin over every (row, tier) pair.
inline std::vector<RefreshEvent> schedule_refresh(const L2Config& c, std::int64_t horizon, int bank = 0) {
    validate_refresh(c);
    std::vector<RefreshEvent> out;
    if (!c.refresh) return out;
    const auto period = refresh_period_cycles(c);
    const int rows = c.refresh->rows;
    const std::int64_t slots = std::int64_t(rows) * c.refresh->tiers;
    std::int64_t k = 0;
    for (std::int64_t t = refresh_phase(c, bank); t < horizon; t += period, ++k)
        out.push_back({t, int(k % slots % rows), int(k % slots / rows)});
    return out;
}

inline void validate(const L2Config& c) {
    if (c.partitions < 1 || c.banks_per_partition < 1) throw ConfigError("partitions and banks must be >= 1");
    if (c.line_size < 1 || c.associativity < 1) throw ConfigError("line size and associativity must be >= 1");
    if (c.bank_capacity < std::int64_t(c.line_size) * c.associativity ||
        c.bank_capacity % (std::int64_t(c.line_size) * c.associativity) != 0)
        throw ConfigError("bank capacity must be a multiple of line size x associativity");
    if (c.mshr_entries < 1 || c.mshr_merge_depth < 1 || c.miss_queue_depth < 1)
        throw ConfigError("MSHR entries, merge depth and miss queue depth must be >= 1");
    if (c.hit_latency < 1 || c.dram_latency < 0) throw ConfigError("latencies out of range");
    if (!(c.clock_mhz > 0) || !(c.dram_bandwidth > 0)) throw ConfigError("clock and DRAM bandwidth must be positive");
    if (c.w_block < 1) throw ConfigError("w_block must be >= 1");
    validate_refresh(c);
}

namespace detail {

struct Way {
    std::uint64_t tag = 0;
    bool valid = false;
    bool reserved = false;
    bool dirty = false;
    std::uint64_t last_use = 0;
};

struct Request {
    std::int64_t serial;
    std::int64_t arrival;
    std::uint64_t line;
    std::uint32_t bytes;
    bool write;
};

struct MshrEntry {
    std::vector<std::int64_t> waiting;
    bool write = false;
};

struct Fill {
    std::int64_t ready;
    std::uint64_t line;
};

struct Bank {
    std::vector<Way> ways;  // sets x associativity
    std::deque<Request> pending;
    std::unordered_map<std::uint64_t, MshrEntry> mshr;
    std::deque<std::uint64_t> miss_queue;
    std::deque<Fill> fills;
    std::int64_t busy_until = 0;
    std::uint64_t use_clock = 0;
    std::int64_t phase = 0;
    bool idle() const { return pending.empty() && miss_queue.empty() && fills.empty(); }
};

}  // namespace detail

/// Runs `trace` through the L2 of `c`. Memory events are split into line
/// requests; register events are ignored.
inline SimStats run(const Trace& trace, const L2Config& c, const SimOptions& opt = {}) {
    validate(c);
    validate(trace);
    if (!(opt.core_clock_mhz > 0)) throw ConfigError("core clock must be positive");
    const int P = c.partitions, B = c.banks_per_partition, A = c.associativity;
    const std::int64_t sets = c.bank_capacity / (std::int64_t(c.line_size) * A);
    const double clock = c.clock_mhz * units::MHz;
    const double line_cycles = c.line_size / c.dram_bandwidth;
    const int line_accesses = std::max(1, (c.line_size * 8 + c.w_block - 1) / c.w_block);
    const auto period = refresh_period_cycles(c);
    const int duration = c.refresh ? c.refresh->duration : 0;

    std::vector<detail::Bank> banks(std::size_t(P) * B);
    for (int p = 0; p < P; ++p)
        for (int b = 0; b < B; ++b) {
            auto& bk = banks[std::size_t(p) * B + b];
            bk.ways.resize(std::size_t(sets) * A);
            bk.phase = refresh_phase(c, b);
        }
    std::vector<double> dram_free(P, 0.0);
    std::vector<int> dram_rr(P, 0);

    SimStats st;
    std::int64_t bank_accesses_read = 0, bank_accesses_write = 0;
    auto fail = [&](FailureMode f) { ++st.failures[static_cast<std::size_t>(f)]; };
    auto blocked = [&](const detail::Bank& bk, std::int64_t now) {
        if (!period || now < bk.phase) return false;
        return (now - bk.phase) % period < duration;
    };
    const double ratio = c.clock_mhz / opt.core_clock_mhz;
    auto l2_cycle = [&](std::int64_t core) {
        return static_cast<std::int64_t>(std::floor(double(core) * ratio + 1e-9));
    };

    std::int64_t serial = 0;
    std::size_t next_event = 0;
    std::int64_t now = 0;
    std::int64_t last_activity = -1;
    std::size_t busy_banks = 0;

    auto complete = [&](std::int64_t s, std::int64_t cyc) {
        if (opt.record_outcomes) st.outcomes[std::size_t(s)].complete_cycle = cyc;
    };

    while (true) {
        // Admit trace events whose (L2-clock) issue cycle has arrived.
        while (next_event < trace.size() && l2_cycle(trace[next_event].cycle) <= now) {
            const auto& e = trace[next_event];
            if (e.kind == EventKind::Read || e.kind == EventKind::Write) {
                const std::uint64_t first = e.address / c.line_size;
                const std::uint64_t last = (e.address + e.size - 1) / c.line_size;
                for (std::uint64_t line = first; line <= last; ++line) {
                    const std::uint64_t lo = std::max<std::uint64_t>(e.address, line * c.line_size);
                    const std::uint64_t hi = std::min<std::uint64_t>(e.address + e.size, (line + 1) * c.line_size);
                    auto& bk = banks[std::size_t(line % P) * B + std::size_t(line / P % B)];
                    if (bk.pending.size() >= opt.retry_queue_depth)
                        throw ConfigError("retry queue overflow at cycle " + std::to_string(now) +
                                          "; raise retry_queue_depth or slow the trace");
                    if (bk.idle()) ++busy_banks;
                    bk.pending.push_back({serial, now, line, std::uint32_t(hi - lo), e.kind == EventKind::Write});
                    if (opt.record_outcomes) st.outcomes.push_back({serial, std::int64_t(next_event), line});
                    ++serial;
                }
            }
            ++next_event;
        }

        if (busy_banks == 0) {
            if (next_event >= trace.size()) break;
            now = std::max(now + 1, l2_cycle(trace[next_event].cycle));
            continue;
        }

        for (int p = 0; p < P; ++p) {
            for (int b = 0; b < B; ++b) {
                auto& bk = banks[std::size_t(p) * B + b];
                if (bk.idle()) continue;

                while (!bk.fills.empty() && bk.fills.front().ready <= now) {
                    const auto f = bk.fills.front();
                    bk.fills.pop_front();
                    const std::uint64_t local = f.line / std::uint64_t(P) / std::uint64_t(B);
                    const std::size_t set = std::size_t(local % std::uint64_t(sets));
                    const std::uint64_t tag = local / std::uint64_t(sets);
                    auto node = bk.mshr.extract(f.line);
                    for (int w = 0; w < A; ++w) {
                        auto& way = bk.ways[set * A + w];
                        if (way.reserved && way.tag == tag) {
                            way.reserved = false;
                            way.valid = true;
                            way.dirty = node.mapped().write;
                            way.last_use = ++bk.use_clock;
                            break;
                        }
                    }
                    ++st.fills;
                    bank_accesses_write += line_accesses;
                    for (auto s : node.mapped().waiting) complete(s, now);
                    last_activity = now;
                }

                if (!bk.pending.empty() && now >= bk.busy_until) {
                    auto& rq = bk.pending.front();
                    const std::uint64_t local = rq.line / std::uint64_t(P) / std::uint64_t(B);
                    const std::size_t set = std::size_t(local % std::uint64_t(sets));
                    const std::uint64_t tag = local / std::uint64_t(sets);
                    auto* ways = &bk.ways[set * A];
                    std::optional<Disposition> done;
                    if (blocked(bk, now)) {
                        fail(rq.write ? FailureMode::RefreshWrite : FailureMode::RefreshRead);
                    } else {
                        int hit = -1, victim = -1;
                        for (int w = 0; w < A; ++w)
                            if ((ways[w].valid || ways[w].reserved) && ways[w].tag == tag) hit = w;
                        if (hit >= 0 && ways[hit].valid) {
                            ways[hit].last_use = ++bk.use_clock;
                            if (rq.write) ways[hit].dirty = true;
                            done = Disposition::Hit;
                            complete(rq.serial, now + c.hit_latency);
                        } else if (hit >= 0) {
                            auto& entry = bk.mshr.at(rq.line);
                            if (int(entry.waiting.size()) >= c.mshr_merge_depth) {
                                fail(FailureMode::MshrMerge);
                            } else {
                                entry.waiting.push_back(rq.serial);
                                entry.write = entry.write || rq.write;
                                done = Disposition::MergedMiss;
                            }
                        } else {
                            for (int w = 0; w < A; ++w) {
                                if (ways[w].reserved) continue;
                                if (!ways[w].valid) {
                                    victim = w;
                                    break;
                                }
                                if (victim < 0 || ways[w].last_use < ways[victim].last_use) victim = w;
                            }
                            if (victim < 0) {
                                fail(FailureMode::LineAlloc);
                            } else if (int(bk.mshr.size()) >= c.mshr_entries) {
                                fail(FailureMode::MshrEntry);
                            } else if (int(bk.miss_queue.size()) >= c.miss_queue_depth) {
                                fail(FailureMode::MissQueue);
                            } else {
                                auto& v = ways[victim];
                                if (v.valid && v.dirty) {
                                    ++st.writebacks;
                                    bank_accesses_read += line_accesses;
                                    st.dram_bytes += c.line_size;
                                    dram_free[p] = std::max(dram_free[p], double(now)) + line_cycles;
                                }
                                v = {tag, false, true, false, ++bk.use_clock};
                                bk.mshr[rq.line] = {{rq.serial}, rq.write};
                                bk.miss_queue.push_back(rq.line);
                                done = Disposition::Miss;
                            }
                        }
                    }
                    if (done) {
                        ++st.accesses;
                        const int n = std::max<int>(1, (int(rq.bytes) * 8 + c.w_block - 1) / c.w_block);
                        if (rq.write) {
                            ++st.writes;
                            bank_accesses_write += n;
                        } else {
                            ++st.reads;
                            bank_accesses_read += n;
                        }
                        if (*done == Disposition::Hit) ++st.hits;
                        else ++st.misses;
                        if (*done == Disposition::MergedMiss) ++st.merged;
                        if (opt.record_outcomes) {
                            auto& o = st.outcomes[std::size_t(rq.serial)];
                            o.disposition = *done;
                            o.accept_cycle = now;
                        }
                        bk.busy_until = now + c.hit_latency;
                        bk.pending.pop_front();
                    }
                    last_activity = now;
                }
                if (bk.idle()) --busy_banks;
            }

            // DRAM channel of this partition: round-robin over its banks.
            for (int k = 0; k < B && dram_free[p] <= double(now); ++k) {
                const int b = (dram_rr[p] + k) % B;
                auto& bk = banks[std::size_t(p) * B + b];
                while (!bk.miss_queue.empty() && dram_free[p] <= double(now)) {
                    bk.fills.push_back({now + c.dram_latency + std::int64_t(std::ceil(line_cycles)), bk.miss_queue.front()});
                    bk.miss_queue.pop_front();
                    st.dram_bytes += c.line_size;
                    dram_free[p] = std::max(dram_free[p], double(now)) + line_cycles;
                    dram_rr[p] = (b + 1) % B;
                    last_activity = now;
                }
            }
        }
        ++now;
    }

    st.total_cycles = last_activity + 1;
    st.walltime = st.total_cycles / clock;
    if (period) {
        for (int b = 0; b < B; ++b) {
            const std::int64_t ph = refresh_phase(c, b);
            if (st.total_cycles <= ph) continue;
            const std::int64_t events = (st.total_cycles - 1 - ph) / period + 1;
            const std::int64_t last_start = ph + (events - 1) * period;
            st.refresh_events += events * P;
            st.refresh_blocked_cycles +=
                P * ((events - 1) * duration + std::min<std::int64_t>(duration, st.total_cycles - last_start));
        }
    }
    const double n_banks = double(P) * B;
    st.energy.static_energy = c.costs.static_power * n_banks * st.walltime;
    st.energy.dyn_read = c.costs.e_read * double(bank_accesses_read);
    st.energy.dyn_write = c.costs.e_write * double(bank_accesses_write);
    st.energy.refresh = c.costs.e_refresh_line * double(st.refresh_events);
    st.energy.dram = c.dram_energy_per_byte * double(st.dram_bytes);
    return st;
}

// ---------------------------------------------------------------------------
// Energy report

struct EnergyReport {
    std::string run_id;
    std::string baseline_id;
    std::vector<std::pair<std::string, double>> components;  ///< J
    double total = 0;
    double baseline_total = 0;
    double normalized(double x) const { return baseline_total > 0 ? x / baseline_total : 0.0; }
};

inline EnergyReport energy_report(const SimStats& s, std::string run_id = "run") {
    EnergyReport r;
    r.run_id = std::move(run_id);
    r.components = {{"static", s.energy.static_energy},
                    {"dyn_read", s.energy.dyn_read},
                    {"dyn_write", s.energy.dyn_write},
                    {"refresh", s.energy.refresh},
                    {"dram", s.energy.dram}};
    for (const auto& [_, v] : r.components) r.total += v;
    return r;
}

/// One report per run, normalized to the total of `baseline_id`.
inline std::vector<EnergyReport> energy_report(const std::map<std::string, SimStats>& runs,
                                               const std::string& baseline_id) {
    const auto it = runs.find(baseline_id);
    if (it == runs.end()) throw ReportError("baseline run '" + baseline_id + "' is missing");
    const double base = energy_report(it->second).total;
    std::vector<EnergyReport> out;
    for (const auto& [id, s] : runs) {
        auto r = energy_report(s, id);
        r.baseline_id = baseline_id;
        r.baseline_total = base;
        out.push_back(std::move(r));
    }
    return out;
}

inline double share(const EnergyReport& r, std::string_view component) {
    for (const auto& [k, v] : r.components)
        if (k == component) return r.total > 0 ? v / r.total : 0.0;
    throw ReportError("no energy component '" + std::string(component) + "'");
}

/// Share within the L2 banks alone, off-chip DRAM energy excluded.
inline double bank_share(const EnergyReport& r, std::string_view component) {
    double bank = 0, x = -1;
    for (const auto& [k, v] : r.components) {
        if (k != "dram") bank += v;
        if (k == component) x = v;
    }
    if (x < 0 || component == "dram") throw ReportError("no bank energy component '" + std::string(component) + "'");
    return bank > 0 ? x / bank : 0.0;
}

// ---------------------------------------------------------------------------
// Register lifetimes

struct RegLifetimeReport {
    std::vector<std::int64_t> samples;  ///< sorted
    std::vector<std::pair<std::int64_t, double>> cdf;  ///< (lifetime, P[L <= lifetime])
    std::int64_t window = 100000;
    double fraction_within = 0;
    std::map<int, double> read_write_ratio;  ///< per kernel (stream id)

    double cdf_at(std::int64_t x) const {
        const auto it = std::upper_bound(samples.begin(), samples.end(), x);
        return samples.empty() ? 0.0 : double(it - samples.begin()) / samples.size();
    }
};

/// A written value lives until its last read; a value that is never read
/// lives until it is overwritten or the kernel ends (eviction).
inline RegLifetimeReport analyze_register_lifetimes(const Trace& trace, std::int64_t window = 100000) {
    struct Live {
        std::int64_t written;
        std::int64_t last_read = -1;
    };
    struct Kernel {
        std::map<std::uint64_t, Live> regs;
        std::int64_t reads = 0, writes = 0, end = 0;
    };
    std::map<int, Kernel> kernels;
    RegLifetimeReport r;
    r.window = window;
    auto close = [&](const Live& v, std::int64_t end) {
        r.samples.push_back((v.last_read >= 0 ? v.last_read : end) - v.written);
    };
    for (const auto& e : trace) {
        if (e.kind != EventKind::RegRead && e.kind != EventKind::RegWrite) continue;
        auto& k = kernels[e.stream_id];
        k.end = std::max(k.end, e.cycle);
        if (e.kind == EventKind::RegWrite) {
            ++k.writes;
            auto [it, fresh] = k.regs.try_emplace(e.address, Live{e.cycle});
            if (!fresh) {
                close(it->second, e.cycle);
                it->second = Live{e.cycle};
            }
        } else {
            ++k.reads;
            auto it = k.regs.find(e.address);
            if (it != k.regs.end()) it->second.last_read = e.cycle;
        }
    }
    for (auto& [id, k] : kernels) {
        for (const auto& [_, v] : k.regs) close(v, k.end);
        r.read_write_ratio[id] = k.writes ? double(k.reads) / k.writes : 0.0;
    }
    std::sort(r.samples.begin(), r.samples.end());
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        if (i + 1 == r.samples.size() || r.samples[i + 1] != r.samples[i])
            r.cdf.emplace_back(r.samples[i], double(i + 1) / r.samples.size());
    r.fraction_within = r.cdf_at(window);
    return r;
}

// ---------------------------------------------------------------------------
// Synthetic traces

enum class TraceModel { Stream, Strided, Zipf, PointerChase, Register };

inline std::string_view to_string(TraceModel m) {
    switch (m) {
        case TraceModel::Stream: return "stream";
        case TraceModel::Strided: return "strided";
        case TraceModel::Zipf: return "zipf";
        case TraceModel::PointerChase: return "pointer_chase";
        case TraceModel::Register: return "register";
    }
    return "?";
}

inline TraceModel trace_model_from_string(std::string_view s) {
    for (auto m : {TraceModel::Stream, TraceModel::Strided, TraceModel::Zipf, TraceModel::PointerChase,
                   TraceModel::Register})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown trace model '" + std::string(s) + "'");
}

struct TraceParams {
    std::int64_t n = 10000;            ///< memory events, or writes for the register model
    std::uint64_t base = 0;
    std::uint32_t line_size = 128;
    std::uint32_t size = 128;          ///< bytes per event
    std::int64_t stride = 128;         ///< bytes, strided model
    std::uint64_t footprint = 64ull << 20;
    double zipf_s = 1.0;
    double write_fraction = 0.25;
    std::int64_t interval = 1;         ///< core cycles between issues
    int streams = 1;
    int registers = 64;
    double mean_lifetime = 21715;      ///< cycles, geometric on {1, 2, ...}
    int reads_per_write = 2;
    int kernels = 1;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

inline std::uint64_t below(std::mt19937_64& g, std::uint64_t n) {
    return static_cast<std::uint64_t>(unit_uniform(g) * double(n)) % n;
}

inline std::int64_t geometric(std::mt19937_64& g, double p) {
    const double u = 1.0 - unit_uniform(g);  // (0, 1]
    return 1 + static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

}  // namespace detail

/// Deterministic synthetic trace for (model, params, seed).
inline Trace generate_trace(TraceModel model, const TraceParams& p, std::uint64_t seed) {
    if (p.n < 0 || p.line_size == 0 || p.size == 0 || p.interval < 0 || p.streams < 1)
        throw ConfigError("trace parameters out of range");
    std::mt19937_64 g(seed);
    Trace t;
    const std::uint64_t lines = std::max<std::uint64_t>(1, p.footprint / p.line_size);
    auto kind = [&] { return detail::unit_uniform(g) < p.write_fraction ? EventKind::Write : EventKind::Read; };
    auto emit = [&](std::int64_t i, std::uint64_t addr) {
        t.push_back({i * p.interval, kind(), addr, p.size, int(i % p.streams)});
    };
    switch (model) {
        case TraceModel::Stream:
            for (std::int64_t i = 0; i < p.n; ++i) emit(i, p.base + std::uint64_t(i) * p.line_size);
            break;
        case TraceModel::Strided:
            for (std::int64_t i = 0; i < p.n; ++i)
                emit(i, p.base + (std::uint64_t(i) * std::uint64_t(p.stride)) % (lines * p.line_size));
            break;
        case TraceModel::Zipf: {
            if (p.zipf_s < 0) throw ConfigError("zipf exponent must be >= 0");
            std::vector<double> cdf(lines);
            double acc = 0;
            for (std::uint64_t k = 0; k < lines; ++k) cdf[k] = acc += std::pow(double(k + 1), -p.zipf_s);
            std::vector<std::uint64_t> perm(lines);
            std::iota(perm.begin(), perm.end(), 0);
            for (std::uint64_t i = lines; i > 1; --i) std::swap(perm[i - 1], perm[detail::below(g, i)]);
            for (std::int64_t i = 0; i < p.n; ++i) {
                const double u = detail::unit_uniform(g) * acc;
                const auto k = std::min<std::uint64_t>(
                    lines - 1, std::uint64_t(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()));
                emit(i, p.base + perm[k] * p.line_size);
            }
            break;
        }
        case TraceModel::PointerChase: {
            // Sattolo's algorithm: a single cycle through every line.
            std::vector<std::uint64_t> next(lines);
            std::iota(next.begin(), next.end(), 0);
            for (std::uint64_t i = lines - 1; i > 0; --i) std::swap(next[i], next[detail::below(g, i)]);
            std::uint64_t cur = 0;
            for (std::int64_t i = 0; i < p.n; ++i) {
                emit(i, p.base + cur * p.line_size);
                cur = next[cur];
            }
            break;
        }
        case TraceModel::Register: {
            if (!(p.mean_lifetime >= 1) || p.registers < 1 || p.reads_per_write < 0 || p.kernels < 1)
                throw ConfigError("register trace parameters out of range");
            const double q = 1.0 / p.mean_lifetime;
            for (int k = 0; k < p.kernels; ++k) {
                const std::size_t first = t.size();
                const std::int64_t writes = p.n / p.kernels;
                const std::int64_t per_reg = (writes + p.registers - 1) / p.registers;
                std::int64_t kernel_start = k == 0 ? 0 : t.back().cycle + 1;
                for (int r = 0; r < p.registers; ++r) {
                    std::int64_t cyc = kernel_start + std::int64_t(detail::below(g, 64));
                    for (std::int64_t w = 0; w < per_reg && r * per_reg + w < writes; ++w) {
                        const std::int64_t life = detail::geometric(g, q);
                        t.push_back({cyc, EventKind::RegWrite, std::uint64_t(r), 4, k});
                        for (int j = 0; j < p.reads_per_write; ++j) {
                            const std::int64_t at =
                                j + 1 == p.reads_per_write ? life : 1 + std::int64_t(detail::below(g, std::uint64_t(life)));
                            t.push_back({cyc + at, EventKind::RegRead, std::uint64_t(r), 4, k});
                        }
                        cyc += life + 1 + std::int64_t(detail::below(g, 16));
                    }
                }
                std::stable_sort(t.begin() + std::ptrdiff_t(first), t.end(),
                                 [](const TraceEvent& a, const TraceEvent& b) { return a.cycle < b.cycle; });
            }
            break;
        }
    }
    return t;
}

/// Analytic CDF of the register generator's lifetimes: P[L <= x] for the
/// geometric distribution on {1, 2, ...} with the given mean.
inline double geometric_lifetime_cdf(double mean, double x) {
    if (x < 1) return 0.0;
    return 1.0 - std::pow(1.0 - 1.0 / mean, std::floor(x));
}

}  // namespace beolmem
