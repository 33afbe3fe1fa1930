#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "beolmem/memsys.hpp"
#include "beolmem/report.hpp"
#include "beolmem/trace_io.hpp"
#include "oracles.hpp"

using namespace beolmem;
namespace fs = std::filesystem;
using namespace beolmem::oracle;

namespace {

L2Config tiny(int sets, int ways) {
    L2Config c;
    c.id = "tiny";
    c.partitions = 1;
    c.banks_per_partition = 1;
    c.line_size = 128;
    c.associativity = ways;
    c.bank_capacity = std::int64_t(sets) * ways * 128;
    c.clock_mhz = 1000;
    c.refresh.reset();
    return c;
}

SimOptions same_clock(const L2Config& c) {
    SimOptions o;
    o.core_clock_mhz = c.clock_mhz;
    o.record_outcomes = true;
    return o;
}

std::vector<fs::path> corpus() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(BEOLMEM_SOURCE_DIR) / "tests" / "corpus"))
        if (e.path().extension() == ".trace") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

Trace random_trace(std::uint64_t seed, int n, int lines, std::int64_t max_gap) {
    std::mt19937_64 g(seed);
    Trace t;
    std::int64_t cyc = 0;
    for (int i = 0; i < n; ++i) {
        cyc += std::int64_t(g() % std::uint64_t(max_gap + 1));
        const std::uint32_t size = std::array<std::uint32_t, 4>{4, 64, 128, 256}[g() % 4];
        t.push_back({cyc, g() % 4 == 0 ? EventKind::Write : EventKind::Read, (g() % std::uint64_t(lines)) * 128 + g() % 128,
                     size, 0});
    }
    return t;
}

std::int64_t lines_spanned(const Trace& t, int line_size) {
    std::int64_t n = 0;
    for (const auto& e : t)
        if (e.kind == EventKind::Read || e.kind == EventKind::Write)
            n += std::int64_t((e.address + e.size - 1) / line_size - e.address / line_size + 1);
    return n;
}

}  // namespace

// Brute-force equivalence ---------------------------------------------------

TEST(Lru, MatchesReferenceOnCorpus) {
    const auto files = corpus();
    ASSERT_GE(files.size(), 40u);
    for (const auto& f : files) {
        const auto trace = read_trace(f.string());
        ASSERT_LE(trace.size(), 50u) << f;
        for (int sets : {1, 2, 4})
            for (int ways : {1, 2}) {
                const auto c = tiny(sets, ways);
                const auto st = run(trace, c, same_clock(c));
                LruRef ref(sets, ways);
                std::int64_t hits = 0;
                ASSERT_EQ(std::int64_t(st.outcomes.size()), lines_spanned(trace, 128));
                std::int64_t event = -1;
                for (const auto& o : st.outcomes) {
                    if (o.event_index != event) ref.end_event();
                    event = o.event_index;
                    const bool write = trace[std::size_t(o.event_index)].kind == EventKind::Write;
                    const bool hit = ref.access(o.line, write);
                    hits += hit;
                    ASSERT_EQ(o.disposition, hit ? Disposition::Hit : Disposition::Miss)
                        << f.filename() << " sets " << sets << " ways " << ways << " serial " << o.serial;
                }
                EXPECT_EQ(st.hits, hits);
                EXPECT_EQ(st.writebacks, ref.writebacks) << f.filename();
            }
    }
}

TEST(Lru, EmptyTrace) {
    const auto c = tiny(2, 2);
    const auto st = run({}, c, same_clock(c));
    EXPECT_EQ(st.accesses, 0);
    EXPECT_EQ(st.total_failures(), 0);
    EXPECT_EQ(st.miss_rate(), 0.0);
}

TEST(Lru, SingleColdRead) {
    const auto c = tiny(2, 2);
    const auto st = run({{0, EventKind::Read, 0, 4, 0}}, c, same_clock(c));
    EXPECT_EQ(st.accesses, 1);
    EXPECT_EQ(st.misses, 1);
    EXPECT_EQ(st.fills, 1);
    EXPECT_EQ(st.dram_bytes, 128);
    ASSERT_EQ(st.outcomes.size(), 1u);
    EXPECT_GE(st.outcomes[0].complete_cycle, c.dram_latency);
}

TEST(Lru, StackPropertyMoreWaysNeverFewerHits) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto t = random_trace(seed, 200, 48, 0);
        for (std::size_t i = 0; i < t.size(); ++i) t[i].cycle = std::int64_t(i) * 1000;
        std::int64_t prev = -1;
        for (int ways : {1, 2, 4, 8}) {
            const auto c = tiny(4, ways);
            const auto st = run(t, c, same_clock(c));
            EXPECT_GE(st.hits, prev) << "seed " << seed << " ways " << ways;
            prev = st.hits;
        }
    }
}

// Conservation and determinism -----------------------------------------------

TEST(Conservation, EveryRequestReachesOneDisposition) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = tiny(4, 2);
        c.partitions = 2;
        c.banks_per_partition = 2;
        c.mshr_entries = 2;
        c.mshr_merge_depth = 2;
        c.miss_queue_depth = 2;
        c.dram_latency = 50;
        if (seed % 2) c.refresh = RefreshSpec{40e-9, 1 + int(seed % 4 == 1), 8, 1};
        const auto trace = random_trace(seed, 150, 24, 3);
        auto opt = same_clock(c);
        const auto a = run(trace, c, opt);
        ASSERT_EQ(std::int64_t(a.outcomes.size()), lines_spanned(trace, 128));
        std::set<std::int64_t> serials;
        std::int64_t hits = 0, misses = 0, merged = 0;
        for (const auto& o : a.outcomes) {
            ASSERT_NE(o.disposition, Disposition::Pending) << "seed " << seed;
            ASSERT_GE(o.accept_cycle, 0);
            ASSERT_GE(o.complete_cycle, o.accept_cycle);
            serials.insert(o.serial);
            hits += o.disposition == Disposition::Hit;
            misses += o.disposition != Disposition::Hit;
            merged += o.disposition == Disposition::MergedMiss;
        }
        EXPECT_EQ(serials.size(), a.outcomes.size());
        EXPECT_EQ(a.accesses, std::int64_t(a.outcomes.size()));
        EXPECT_EQ(a.hits, hits);
        EXPECT_EQ(a.misses, misses);
        EXPECT_EQ(a.merged, merged);
        EXPECT_EQ(a.hits + a.misses, a.accesses);
        EXPECT_EQ(a.reads + a.writes, a.accesses);

        const auto b = run(trace, c, opt);
        EXPECT_EQ(to_json(a).dump(), to_json(b).dump()) << "seed " << seed;
        EXPECT_EQ(a.energy.total(), b.energy.total());
    }
}

TEST(Conservation, ContentionProducesEachStructuralFailure) {
    auto c = tiny(4, 1);
    c.mshr_entries = 1;
    c.mshr_merge_depth = 1;
    c.miss_queue_depth = 1;
    Trace t;
    // Two lines back to back (MSHR entry), then the same line twice (merge limit).
    t.push_back({0, EventKind::Read, 0, 4, 0});
    t.push_back({0, EventKind::Read, 128, 4, 0});
    t.push_back({2000, EventKind::Read, 0x800, 4, 0});
    t.push_back({2000, EventKind::Read, 0x800, 4, 0});
    // Two lines of one set with one way (line allocation).
    t.push_back({5000, EventKind::Read, 0x10000, 4, 0});
    t.push_back({5000, EventKind::Read, 0x10000 + 4 * 128, 4, 0});
    const auto st = run(t, c, same_clock(c));
    EXPECT_GT(st.failure(FailureMode::MshrMerge), 0);
    EXPECT_GT(st.failure(FailureMode::MshrEntry), 0);
    EXPECT_GT(st.failure(FailureMode::LineAlloc), 0);
    EXPECT_EQ(st.accesses, 6);
}

TEST(Conservation, MissQueueFullIsReported) {
    auto c = tiny(8, 2);
    c.miss_queue_depth = 1;
    c.dram_bandwidth = 1;  // 128 cycles per line keeps the queue occupied
    Trace t;
    for (int i = 0; i < 6; ++i) t.push_back({0, EventKind::Read, std::uint64_t(i) * 128, 4, 0});
    const auto st = run(t, c, same_clock(c));
    EXPECT_GT(st.failure(FailureMode::MissQueue), 0);
    EXPECT_EQ(st.accesses, 6);
}

// Refresh ------------------------------------------------------------------------

TEST(Refresh, BlockedFractionMatchesDutyCycle) {
    for (int duration : {1, 2})
        for (double period_ns : {7.0, 50.0, 333.0}) {
            auto c = tiny(4, 2);
            c.banks_per_partition = 3;
            c.partitions = 2;
            c.refresh = RefreshSpec{period_ns * units::ns, duration, 64, 2};
            const auto trace = random_trace(duration * 1000 + std::uint64_t(period_ns), 400, 64, 40);
            const auto st = run(trace, c, same_clock(c));
            // Count every blocked cycle directly.
            const auto period = refresh_period_cycles(c);
            std::int64_t blocked = 0;
            for (int b = 0; b < c.banks_per_partition; ++b) {
                const auto ph = refresh_phase(c, b);
                for (std::int64_t t = ph; t < st.total_cycles; ++t)
                    if ((t - ph) % period < duration) ++blocked;
            }
            blocked *= c.partitions;
            EXPECT_EQ(st.refresh_blocked_cycles, blocked);
            const double banks = double(c.partitions) * c.banks_per_partition;
            const double frac = double(st.refresh_blocked_cycles) / (banks * double(st.total_cycles));
            EXPECT_NEAR(frac, double(duration) / double(period), double(duration + period) / double(st.total_cycles));
            if (st.total_cycles > 10 * period) {
                EXPECT_GT(st.failure(FailureMode::RefreshRead) + st.failure(FailureMode::RefreshWrite), 0);
            }
        }
}

TEST(Refresh, ScheduleRotatesOverEveryRowAndTier) {
    auto c = tiny(4, 2);
    c.clock_mhz = 724;
    c.banks_per_partition = 16;
    c.refresh = RefreshSpec{refresh_period(125 * units::ms, 64, 8), 1, 64, 8};
    EXPECT_EQ(refresh_period_cycles(c), 176757);
    const auto ev = schedule_refresh(c, refresh_phase(c, 3) + 512 * 176757, 3);
    ASSERT_EQ(ev.size(), 512u);
    std::set<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        EXPECT_EQ(ev[i].cycle, refresh_phase(c, 3) + std::int64_t(i) * 176757);
        slots.insert({ev[i].row, ev[i].tier});
    }
    EXPECT_EQ(slots.size(), 512u);
}

TEST(Refresh, PeriodShorterThanDurationRejected) {
    auto c = tiny(4, 2);
    c.refresh = RefreshSpec{1 * units::ns, 2, 64, 1};
    EXPECT_THROW(run({}, c), ConfigError);
    c.refresh = RefreshSpec{1 * units::us, 3, 64, 1};
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, InconsistentCapacityRejected) {
    auto c = tiny(4, 2);
    c.bank_capacity += 64;
    EXPECT_THROW(run({}, c), ConfigError);
}

// Register lifetimes -----------------------------------------------------------

TEST(Lifetimes, HandTrace) {
    const Trace t{{0, EventKind::RegWrite, 1, 4, 0},  {5, EventKind::RegRead, 1, 4, 0},
                  {9, EventKind::RegRead, 1, 4, 0},   {10, EventKind::RegWrite, 2, 4, 0},
                  {20, EventKind::RegWrite, 1, 4, 0}, {30, EventKind::RegRead, 1, 4, 0},
                  {40, EventKind::Read, 0x100, 4, 0}, {50, EventKind::RegRead, 3, 4, 0}};
    const auto r = analyze_register_lifetimes(t, 10);
    // r1: 0->9, r1: 20->30, r2 unread until kernel end (50).
    EXPECT_EQ(r.samples, (std::vector<std::int64_t>{9, 10, 40}));
    EXPECT_NEAR(r.fraction_within, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.read_write_ratio.at(0), 4.0 / 3.0, 1e-15);
    ASSERT_FALSE(r.cdf.empty());
    EXPECT_DOUBLE_EQ(r.cdf.back().second, 1.0);
    for (std::size_t i = 1; i < r.cdf.size(); ++i) {
        EXPECT_GT(r.cdf[i].first, r.cdf[i - 1].first);
        EXPECT_GT(r.cdf[i].second, r.cdf[i - 1].second);
    }
}

TEST(Lifetimes, GeometricTraceMatchesClosedForm) {
    TraceParams p;
    p.n = 40000;
    p.mean_lifetime = 21715;
    p.registers = 64;
    const auto t = generate_trace(TraceModel::Register, p, 11);
    const auto r = analyze_register_lifetimes(t, 100000);
    EXPECT_EQ(r.samples.size(), 40000u);
    EXPECT_NEAR(r.fraction_within, geometric_lifetime_cdf(p.mean_lifetime, 100000), 0.005);
    for (double x : {1000.0, 10000.0, 50000.0})
        EXPECT_NEAR(r.cdf_at(std::int64_t(x)), geometric_lifetime_cdf(p.mean_lifetime, x), 0.01);
}

// Trace generation ----------------------------------------------------------------

TEST(Generator, SameSeedSameTrace) {
    TraceParams p;
    p.n = 2000;
    p.footprint = 1 << 20;
    for (auto m : {TraceModel::Stream, TraceModel::Strided, TraceModel::Zipf, TraceModel::PointerChase,
                   TraceModel::Register}) {
        EXPECT_EQ(generate_trace(m, p, 5), generate_trace(m, p, 5)) << to_string(m);
        if (m != TraceModel::Stream && m != TraceModel::Strided) {
            EXPECT_NE(generate_trace(m, p, 5), generate_trace(m, p, 6)) << to_string(m);
        }
    }
}

TEST(Generator, StreamAndPointerChaseTouchEachLineOnce) {
    TraceParams p;
    p.footprint = 512 * 128;
    p.n = 512;
    for (auto m : {TraceModel::Stream, TraceModel::PointerChase}) {
        std::set<std::uint64_t> seen;
        for (const auto& e : generate_trace(m, p, 9)) seen.insert(e.address / 128);
        EXPECT_EQ(seen.size(), 512u) << to_string(m);
    }
}

TEST(Generator, FlatZipfIsUniform) {
    TraceParams p;
    p.zipf_s = 0;
    p.footprint = 32 * 128;
    p.n = 64000;
    std::map<std::uint64_t, int> counts;
    for (const auto& e : generate_trace(TraceModel::Zipf, p, 17)) ++counts[e.address / 128];
    ASSERT_EQ(counts.size(), 32u);
    const double expect = p.n / 32.0;
    double chi2 = 0;
    for (const auto& [_, n] : counts) chi2 += (n - expect) * (n - expect) / expect;
    // 31 degrees of freedom; 99.9th percentile is about 61.1.
    EXPECT_LT(chi2, 61.1);
}

TEST(Generator, ZipfSkewFavoursFewLines) {
    TraceParams p;
    p.zipf_s = 1.2;
    p.footprint = 1024 * 128;
    p.n = 20000;
    std::map<std::uint64_t, int> counts;
    for (const auto& e : generate_trace(TraceModel::Zipf, p, 3)) ++counts[e.address / 128];
    int top = 0;
    for (const auto& [_, n] : counts) top = std::max(top, n);
    EXPECT_GT(top, p.n / 10);
}

TEST(Generator, BadParametersRejected) {
    TraceParams p;
    p.line_size = 0;
    EXPECT_THROW(generate_trace(TraceModel::Stream, p, 1), ConfigError);
    EXPECT_THROW(trace_model_from_string("bogus"), ConfigError);
}

// Trace I/O --------------------------------------------------------------------------

TEST(TraceIo, ParseErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            parse_trace(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("0 R 0x0 4\n# c\n1 X 0x0 4\n"), 3u);
    EXPECT_EQ(line_of("0 R 0x0 4\n1 R zz 4\n"), 2u);
    EXPECT_EQ(line_of("5 R 0x0 4\n4 R 0x0 4\n"), 2u);
    EXPECT_EQ(line_of("0 R 0x0 0\n"), 1u);
    EXPECT_EQ(line_of("0 R 0x0\n"), 1u);
    EXPECT_EQ(line_of("0 R 0x0 4 # fine\n\n   \n"), 0u);
}

TEST(TraceIo, RoundTripPlainAndCompressed) {
    TraceParams p;
    p.n = 300;
    auto t = generate_trace(TraceModel::Zipf, p, 2);
    const auto r = generate_trace(TraceModel::Register, p, 2);
    t.insert(t.end(), r.begin(), r.end());
    std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.cycle < b.cycle; });
    const auto dir = fs::temp_directory_path() / "beolmem_trace_io";
    fs::create_directories(dir);
    for (const char* name : {"t.trace", "t.trace.gz"}) {
        const auto path = (dir / name).string();
        write_trace(path, t);
        EXPECT_EQ(read_trace(path), t) << name;
    }
    EXPECT_THROW(read_trace((dir / "missing.trace").string()), ConfigError);
}

// Energy report ---------------------------------------------------------------------

TEST(Energy, ReportIdentityAndNormalization) {
    SimStats a, b;
    a.energy = {1, 2, 3, 0.5, 4};
    b.energy = {2, 2, 2, 0, 2};
    const auto r = energy_report(a, "a");
    double sum = 0;
    for (const auto& [_, v] : r.components) sum += v;
    EXPECT_DOUBLE_EQ(r.total, sum);
    EXPECT_DOUBLE_EQ(r.total, a.energy.total());
    EXPECT_DOUBLE_EQ(share(r, "refresh"), 0.5 / 10.5);
    EXPECT_DOUBLE_EQ(bank_share(r, "refresh"), 0.5 / 6.5);
    EXPECT_THROW(share(r, "bogus"), ReportError);
    EXPECT_THROW(bank_share(r, "dram"), ReportError);

    const auto rs = energy_report(std::map<std::string, SimStats>{{"a", a}, {"b", b}}, "b");
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_DOUBLE_EQ(rs[0].normalized(rs[0].total), 10.5 / 8);
    EXPECT_DOUBLE_EQ(rs[1].normalized(rs[1].total), 1.0);
    EXPECT_THROW(energy_report(std::map<std::string, SimStats>{{"a", a}}, "b"), ReportError);
}

TEST(Energy, SimulatedRunAccountsEachComponent) {
    auto c = tiny(4, 2);
    c.costs = {1e-3, 1e-12, 2e-12, 5e-12};
    c.refresh = RefreshSpec{100 * units::ns, 1, 8, 1};
    const auto trace = random_trace(4, 100, 16, 20);
    const auto st = run(trace, c, same_clock(c));
    EXPECT_DOUBLE_EQ(st.energy.refresh, 5e-12 * double(st.refresh_events));
    EXPECT_DOUBLE_EQ(st.energy.dram, c.dram_energy_per_byte * double(st.dram_bytes));
    EXPECT_DOUBLE_EQ(st.energy.static_energy, 1e-3 * double(st.total_cycles) / (c.clock_mhz * units::MHz));
    EXPECT_GT(st.energy.dyn_read, 0);
}
