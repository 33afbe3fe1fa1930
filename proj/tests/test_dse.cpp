#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "beolmem/dse.hpp"
#include "beolmem/report.hpp"

using namespace beolmem;

namespace {

SearchSpace small_space() {
    SearchSpace s;
    s.topologies = {Topology::GC_NR1W};
    s.ports = {{1, 1}, {2, 1}};
    s.n_l = {1, 2};
    s.subarrays_x = {1, 2, 4};
    s.subarrays_y = {1, 2, 4};
    s.mats_per_subarray = {1, 2, 4, 8};
    s.mat_rows = {16, 32, 64};
    return s;
}

}  // namespace

TEST(Enumerate, CartesianCount) {
    SearchSpace s;
    s.topologies = {Topology::GC_NR1W};
    s.n_l = {1, 2};
    s.subarrays_x = {1, 2};
    s.subarrays_y = {1, 2};
    s.mats_per_subarray = {1, 2};
    s.mat_rows = {32, 64};
    EXPECT_EQ(space_size(s), 32u);
    const auto pts = enumerate(s, Constraint{});
    ASSERT_EQ(pts.size(), 32u);
    std::set<decltype(geometry_key(pts[0]))> keys;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(pts[i].index, i);
        keys.insert(geometry_key(pts[i]));
        // Feasible and infeasible are exclusive and exhaustive.
        EXPECT_NE(pts[i].feasible(), !pts[i].reasons.empty());
    }
    EXPECT_EQ(keys.size(), 32u);
}

TEST(Enumerate, EmptyAxisRejected) {
    SearchSpace s;
    s.mat_rows.clear();
    EXPECT_THROW(enumerate(s, Constraint{}), InputDomainError);
}

TEST(Enumerate, ZeroCycleTimeMakesEverythingInfeasible) {
    Constraint k;
    k.rct_max = 0.0;
    for (const auto& p : enumerate(small_space(), k)) {
        EXPECT_FALSE(p.feasible());
        EXPECT_NE(std::find(p.reasons.begin(), p.reasons.end(), "rct"), p.reasons.end());
    }
    try {
        min_area(small_space(), k);
        FAIL() << "expected infeasibility";
    } catch (const InfeasibleError& e) {
        EXPECT_NE(std::string(e.what()).find("rct="), std::string::npos);
    }
}

TEST(Pareto, MatchesQuadraticFilter) {
    Constraint k;
    k.rct_max = 1 * units::ns;
    const auto pts = enumerate(small_space(), k);
    ASSERT_LE(pts.size(), 1000u);
    std::set<std::size_t> brute;
    for (const auto& p : pts) {
        if (!p.feasible()) continue;
        bool dominated = false;
        for (const auto& q : pts)
            if (q.feasible() && dominates(objectives(q), objectives(p))) dominated = true;
        if (!dominated) brute.insert(p.index);
    }
    const auto front = pareto(pts);
    std::set<std::size_t> got;
    for (const auto& p : front) {
        EXPECT_TRUE(p.feasible());
        got.insert(p.index);
    }
    EXPECT_EQ(got, brute);
    EXPECT_GT(got.size(), 1u);
    for (const auto& a : front)
        for (const auto& b : front) EXPECT_FALSE(dominates(objectives(a), objectives(b)));
}

TEST(Pareto, DominanceDefinition) {
    const Objectives a{1, 1, 1, 1}, b{1, 1, 1, 2}, c{2, 0, 1, 1};
    EXPECT_TRUE(dominates(a, b));
    EXPECT_FALSE(dominates(b, a));
    EXPECT_FALSE(dominates(a, a));
    EXPECT_FALSE(dominates(a, c));
    EXPECT_FALSE(dominates(c, a));
}

TEST(Determinism, OutputIndependentOfWorkers) {
    Constraint k;
    k.rct_max = 1 * units::ns;
    const auto a = to_csv(designs_table(enumerate(small_space(), k, {}, 1)));
    const auto b = to_csv(designs_table(enumerate(small_space(), k, {}, 4)));
    const auto c = to_csv(designs_table(enumerate(small_space(), k, {}, 1)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(pareto_json(pareto(enumerate(small_space(), k, {}, 3))).dump(),
              pareto_json(pareto(enumerate(small_space(), k, {}, 1))).dump());
}

TEST(MinArea, NeverBeatenByFeasiblePoint) {
    Constraint k;
    k.rct_max = 1 * units::ns;
    const auto pts = enumerate(small_space(), k);
    const auto best = min_area(pts);
    ASSERT_TRUE(best.feasible());
    for (const auto& p : pts)
        if (p.feasible()) {
            EXPECT_GE(p.ppa->area, best.ppa->area);
            EXPECT_FALSE(min_area_less(p, best));
        }
}

TEST(MinArea, TieBreakIsTotal) {
    DesignPoint a, b;
    a.ppa = BankPPA{};
    b.ppa = BankPPA{};
    a.ppa->area = b.ppa->area = 1;
    a.ppa->rct = b.ppa->rct = 1;
    a.ppa->static_power = b.ppa->static_power = 1;
    a.rows = 32;
    b.rows = 64;
    EXPECT_TRUE(min_area_less(a, b));
    EXPECT_FALSE(min_area_less(b, a));
    b.ppa->rct = 0.5;
    EXPECT_TRUE(min_area_less(b, a));
}

TEST(RegisterFile, ThreeReadPortGainCellMeetsCycleTime) {
    const auto pts = enumerate(rf_space(Topology::GC_NR1W, {3, 1}, {2}), rf_constraint());
    EXPECT_TRUE(std::any_of(pts.begin(), pts.end(), [](const DesignPoint& p) { return p.feasible(); }));
    for (const auto& p : pts) {
        if (p.feasible()) {
            EXPECT_LE(p.ppa->rct, 750 * units::ps);
        }
    }
}

TEST(DensityStudy, SingleTierIsBaseline) {
    DensityStudySpec spec;
    spec.n_l_sweep = {1};
    spec.topologies = {Topology::GC_NR1W, Topology::SRAM6T};
    const auto pts = density_study(spec);
    ASSERT_EQ(pts.size(), 2u);
    for (const auto& p : pts) {
        EXPECT_EQ(p.n_l, 1);
        SearchSpace s;
        s.topologies = {p.topology};
        s.subarrays_x = {1};
        s.subarrays_y = {1};
        Constraint k;
        k.rct_max = spec.rct_max;
        k.capacity = spec.capacity_base;
        k.w_block = spec.w_block;
        k.include_restore = false;
        const auto d = min_area(s, k);
        EXPECT_DOUBLE_EQ(p.density_mb_mm2, density(*d.design, *d.ppa));
    }
}

TEST(Distribution, ShapeOfTheStudy) {
    const std::vector<Topology> topos{Topology::SRAM6T, Topology::GC_NR1W, Topology::GC_3T0C,
                                      Topology::EDRAM_1T1C_VGAA};
    const auto d = bank_distribution_study(256 * 1024, std::nullopt, topos, {1, 2, 4, 8});
    auto find = [&](Topology t, int nl) -> const DistributionEntry* {
        for (const auto& e : d)
            if (e.topology == t && e.n_l == nl) return &e;
        return nullptr;
    };
    ASSERT_NE(find(Topology::SRAM6T, 1), nullptr);
    EXPECT_EQ(find(Topology::SRAM6T, 2), nullptr);
    for (int nl : {1, 2, 4, 8}) {
        const auto* gc = find(Topology::GC_NR1W, nl);
        const auto* t3 = find(Topology::GC_3T0C, nl);
        ASSERT_TRUE(gc && t3);
        EXPECT_LT(gc->access_time.median, t3->access_time.median) << nl;
        EXPECT_LE(gc->area.min, gc->area.median);
        EXPECT_LE(gc->area.median, gc->area.max);
    }
    auto reduction = [&](Topology t) { return find(t, 8)->area.median / find(t, 1)->area.median; };
    EXPECT_LT(reduction(Topology::EDRAM_1T1C_VGAA), reduction(Topology::GC_NR1W));
    EXPECT_LT(reduction(Topology::EDRAM_1T1C_VGAA), reduction(Topology::GC_3T0C));
}

TEST(Summary, MedianOfEvenAndOdd) {
    EXPECT_DOUBLE_EQ(summarize({3, 1, 2}).median, 2);
    EXPECT_DOUBLE_EQ(summarize({4, 1, 2, 3}).median, 2.5);
    EXPECT_EQ(summarize({}).count, 0u);
}

// L2 generator -------------------------------------------------------------

TEST(L2, BaselineIsPlainSram) {
    const auto c = generate_l2_config(L2Mode::Baseline, Topology::SRAM6T);
    EXPECT_EQ(c.partitions, 8);
    EXPECT_EQ(c.banks_per_partition, 2);
    EXPECT_EQ(total_capacity(c), 4 * 1024 * 1024);
    EXPECT_EQ(c.n_l, 1);
    EXPECT_FALSE(c.refresh);
    EXPECT_LE(c.clock_mhz, 1132);
}

TEST(L2, IsoBankingKeepsBankCount) {
    const auto c = generate_l2_config(L2Mode::IB, Topology::GC_NR1W);
    EXPECT_EQ(c.banks_per_partition, 2);
    ASSERT_TRUE(c.refresh);
    EXPECT_NEAR(c.refresh->period, refresh_period(110 * units::ms, c.refresh->rows, c.n_l), 1e-15);
    EXPECT_EQ(c.refresh->duration, 2);
    EXPECT_LE(c.bank_area, 200000 * units::um2 / 2);
}

TEST(L2, IsoBankingGainCellStopsAtTwoTiers) {
    const auto c = generate_l2_config(L2Mode::IB, Topology::GC_NR1W);
    EXPECT_EQ(total_capacity(c), 8 * 1024 * 1024);
    EXPECT_EQ(c.n_l, 2);
    ASSERT_TRUE(c.refresh);
    EXPECT_NEAR(c.refresh->period / units::us, 859, 1);
}

TEST(L2, IsoCapacityEdramSixteenBanks) {
    const auto c = generate_l2_config(L2Mode::IBC, Topology::EDRAM_1T1C_VGAA);
    EXPECT_EQ(c.bank_capacity, 256 * 1024);
    EXPECT_EQ(c.banks_per_partition, 16);
    EXPECT_EQ(total_capacity(c), 32 * 1024 * 1024);
    EXPECT_EQ(c.n_l, 8);
    ASSERT_TRUE(c.refresh);
    EXPECT_NEAR(c.refresh->period / units::us, 244, 1);
    EXPECT_EQ(c.refresh->duration, 1);
}

TEST(L2, IsoCapacityFitsFootprint) {
    const auto c = generate_l2_config(L2Mode::IBC, Topology::EDRAM_1T1C_VGAA);
    EXPECT_LE(c.banks_per_partition * c.bank_area, 200000 * units::um2);
    EXPECT_GE(c.banks_per_partition, 2);
}

TEST(L2, NoFitIsReported) {
    L2StudySpec spec;
    spec.footprint_per_partition = 1000 * units::um2;
    EXPECT_THROW(generate_l2_config(L2Mode::IBC, Topology::GC_NR1W, spec), InfeasibleError);
}

TEST(L2, FixedOrganisationIsKept) {
    FixedL2 f;
    f.id = "t4";
    f.topology = Topology::EDRAM_1T1C_VGAA;
    f.mode = L2Mode::IBC;
    f.banks_per_partition = 16;
    f.n_l = 8;
    f.clock_mhz = 724;
    const auto c = fixed_l2_config(f);
    EXPECT_EQ(c.id, "t4");
    EXPECT_EQ(total_capacity(c), 32 * 1024 * 1024);
    EXPECT_DOUBLE_EQ(c.clock_mhz, 724);
    ASSERT_TRUE(c.refresh);
    EXPECT_NEAR(c.refresh->period / units::us, 244.140625, 1e-6);
}
