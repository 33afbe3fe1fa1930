#include <gtest/gtest.h>

#include <cmath>

#include "beolmem/cell.hpp"
#include "beolmem/device.hpp"

using namespace beolmem;

namespace {

const DeviceSet devs;

}  // namespace

// Device model ------------------------------------------------------------

TEST(Device, DeepSubthresholdSitsOnFloor) {
    const auto d = devs.gc_read;
    for (double vds : {0.05, 0.3, 0.75}) {
        const double i = drain_current(d, d.vt - 10 * d.ss, vds);
        EXPECT_LE(i, 1.01 * d.i_off_per_w * d.w);
    }
}

TEST(Device, ZeroDrainBiasGivesZeroCurrent) {
    for (const auto& d : {devs.gc_read, devs.si_n, devs.edram_access})
        for (double vgs : {-0.5, 0.0, 0.3, 1.2}) EXPECT_EQ(drain_current(d, vgs, 0.0), 0.0);
}

TEST(Device, NonFiniteBiasRejected) {
    EXPECT_THROW(drain_current(devs.gc_read, NAN, 0.1), InputDomainError);
    EXPECT_THROW(drain_current(devs.gc_read, 0.1, INFINITY), InputDomainError);
}

TEST(Device, GateCapacitanceFormula) {
    auto d = devs.gc_read;
    d.c_g_per_w = 1 * units::fF / units::um;
    d.c_ov_per_w = 0;
    d.w = 0.15 * units::um;
    EXPECT_NEAR(gate_capacitance(d), 0.15 * units::fF, 1e-30);
    d.w *= 2;
    EXPECT_NEAR(gate_capacitance(d), 0.30 * units::fF, 1e-30);
    d.c_ov_per_w = d.c_g_per_w;
    d.w = 0.1 * units::um;
    EXPECT_NEAR(gate_capacitance(d), 0.3 * units::fF, 1e-30);
}

TEST(Device, LeakageDropsOneDecadePerSwing) {
    for (const auto& d : {devs.gc_read, devs.si_n}) {
        const double base = off_leakage(d, 0.75);
        for (int n : {1, 2, 3}) {
            const double l = off_leakage(with_vt(d, d.vt + n * d.ss), 0.75);
            EXPECT_NEAR(l / base, std::pow(10.0, -n), 0.01 * std::pow(10.0, -n));
        }
        EXPECT_NEAR(off_leakage(with_width(d, 2 * d.w), 0.75) / base, 2.0, 1e-12);
    }
}

TEST(Device, ContinuousAcrossThreshold) {
    for (const auto& d : {devs.gc_read, devs.si_n, devs.gc_write})
        for (double vds : {0.01, 0.1, 0.75}) {
            const double lo = drain_current(d, d.vt - 1e-9, vds);
            const double hi = drain_current(d, d.vt + 1e-9, vds);
            EXPECT_LT(std::abs(hi - lo) / lo, 1e-6);
        }
}

TEST(Device, CurrentMonotoneInGateBias) {
    for (const auto& d : {devs.gc_read, devs.si_n, devs.edram_access})
        for (double vds = 0.0; vds <= 1.2; vds += 0.05) {
            double prev = drain_current(d, -1.0, vds);
            for (double vgs = -1.0; vgs <= 1.6; vgs += 0.005) {
                const double i = drain_current(d, vgs, vds);
                EXPECT_GE(i, prev) << "vgs " << vgs << " vds " << vds;
                prev = i;
            }
        }
}

TEST(Device, SiliconPortPairStandbyNearSramReference) {
    // Two-transistor Si read port, gate of R_G at 0, RBL precharged.
    const double i = drain_current(devs.sram_read, 0.0, 0.75);
    const double p = 0.75 * i;
    EXPECT_GT(p, 1 * units::pW);
    EXPECT_LT(p, 100 * units::pW);
}

// Cell footprint ----------------------------------------------------------

TEST(Cell, FootprintsMatchCellLibrary) {
    const TechnologyRules r;
    EXPECT_NEAR(cell_footprint(default_cell(Topology::SRAM6T), r) / units::um2, 0.0262, 1e-12);
    EXPECT_NEAR(cell_footprint(default_cell(Topology::SRAM8T), r) / units::um2, 0.0262 * 1.332, 1e-4);
    EXPECT_NEAR(cell_footprint(default_cell(Topology::GC_NR1W), r) / units::um2, 0.0195, 1e-12);
    EXPECT_NEAR(cell_footprint(default_cell(Topology::GC_3T0C), r) / units::um2, 0.0251, 1e-12);
    EXPECT_NEAR(cell_footprint(default_cell(Topology::EDRAM_1T1C_DG), r) / units::um2, 0.027, 1e-12);
    EXPECT_NEAR(cell_footprint(default_cell(Topology::EDRAM_1T1C_VGAA), r) / units::um2, 0.0182, 1e-12);
}

TEST(Cell, UnsupportedPortsRejected) {
    const TechnologyRules r;
    EXPECT_THROW(cell_footprint(default_cell(Topology::GC_NR1W, {6, 1}), r), CapabilityError);
    EXPECT_THROW(cell_footprint(default_cell(Topology::GC_NR1W, {2, 2}), r), CapabilityError);
}

TEST(Cell, GcFootprintHitsStackingCeilingAfterThreePorts) {
    const TechnologyRules r;
    double a[6];
    for (int n = 1; n <= 5; ++n) a[n] = cell_footprint(default_cell(Topology::GC_NR1W, {n, 1}), r);
    for (int n = 1; n < 5; ++n) EXPECT_GE(a[n + 1], a[n]);
    EXPECT_GT(a[4] - a[3], a[3] - a[2]);
}

TEST(Cell, SramMultiPortGrowsConvexly) {
    const TechnologyRules r;
    double a[6];
    for (int n = 1; n <= 5; ++n) a[n] = cell_footprint(default_cell(Topology::SRAM_MP, {n, 1}), r);
    for (int n = 2; n < 5; ++n) EXPECT_GT(a[n + 1] - a[n], a[n] - a[n - 1]);
}

// Storage node and standby -------------------------------------------------

TEST(Cell, StorageNodeSumsReadGates) {
    auto dev = devs.gc_read;
    dev.c_g_per_w = 0.2 * units::fF / (150 * units::nm);
    dev.c_ov_per_w = 0;
    auto c = default_cell(Topology::GC_NR1W, {3, 1});
    CellLibraryParams lib;
    lib.gc_sn_parasitic = 0;
    EXPECT_GE(storage_node_capacitance(c, dev, lib), 0.6 * units::fF * (1 - 1e-12));

    double prev = 0;
    for (int n = 1; n <= 5; ++n) {
        const double cs = storage_node_capacitance(default_cell(Topology::GC_NR1W, {n, 1}), devs.gc_read);
        EXPECT_GT(cs, prev);
        prev = cs;
    }
}

TEST(Cell, EdramStorageNodeIsDedicatedCapacitor) {
    auto c = default_cell(Topology::EDRAM_1T1C_VGAA);
    c.c_sn_dedicated = 10 * units::fF;
    auto dev = devs.edram_access;
    dev.c_ov_per_w = 0;
    EXPECT_DOUBLE_EQ(storage_node_capacitance(c, dev), 10 * units::fF);
}

TEST(Cell, RetentionPowerFormula) {
    EXPECT_NEAR(retention_power(1 * units::fF, 0.1, 10 * units::ms), 1 * units::fW, 1e-27);
    EXPECT_THROW(retention_power(1e-15, 0.1, 0), InputDomainError);
}

TEST(Cell, GainCellStandbyFourOrdersBelowSram) {
    for (int n = 1; n <= 5; ++n) {
        const double gc = cell_static_power(default_cell(Topology::GC_NR1W, {n, 1}), devs);
        const double sram = cell_static_power(default_cell(Topology::SRAM_MP, {n, 1}), devs);
        EXPECT_LE(gc, 1e-4 * sram) << n << "R1W";
    }
}

TEST(Cell, SramStandbyIncreasesWithReadPorts) {
    double prev = 0;
    for (int n = 1; n <= 5; ++n) {
        const double p = cell_static_power(default_cell(Topology::SRAM_MP, {n, 1}), devs);
        EXPECT_GT(p, prev);
        prev = p;
    }
}

TEST(Cell, ThreeTransistorCellLeakageAnchor) {
    const double p = cell_static_power(default_cell(Topology::GC_3T0C), devs);
    EXPECT_NEAR(p / units::pW, 2.67, 0.1 * 2.67);
}

// Coupling ----------------------------------------------------------------

TEST(Coupling, SinglePortFractions) {
    const auto f = coupling_fractions(default_cell(Topology::GC_NR1W, {1, 1}));
    EXPECT_NEAR(f.f_rwl, 150.0 / 330.0, 1e-15);
    EXPECT_NEAR(f.f_wwl, 30.0 / 330.0, 1e-15);
    EXPECT_THROW(coupling_fractions(default_cell(Topology::SRAM8T)), CapabilityError);
}

TEST(Coupling, PartitionOfUnityExact) {
    for (int n = 1; n <= 5; ++n)
        for (double wa : {10e-9, 30e-9, 90e-9, 137e-9}) {
            auto c = default_cell(Topology::GC_NR1W, {n, 1});
            c.w_wa = wa;
            const auto f = coupling_fractions_exact(c);
            EXPECT_EQ(f.f_wwl + (2 * n) * f.f_rwl, Rational::make(1, 1));
        }
}

TEST(Coupling, FourPortReductionAndLimit) {
    auto c1 = default_cell(Topology::GC_NR1W, {1, 1});
    auto c4 = c1;
    c4.ports = {4, 1};
    const auto r = coupling_fractions_exact(c1).f_rwl.value() / coupling_fractions_exact(c4).f_rwl.value();
    // 1230 / 330
    EXPECT_EQ(coupling_fractions_exact(c1).f_rwl, Rational::make(150, 330));
    EXPECT_EQ(coupling_fractions_exact(c4).f_rwl, Rational::make(150, 1230));
    EXPECT_NEAR(r, 1230.0 / 330.0, 1e-12);
    c1.w_wa = c4.w_wa = 1e-12;
    const auto lim = coupling_fractions_exact(c1).f_rwl.value() / coupling_fractions_exact(c4).f_rwl.value();
    EXPECT_NEAR(lim, 4.0, 1e-4);
}

// Write path --------------------------------------------------------------

TEST(WritePath, DefaultGainCellWritesIn400ps) {
    const auto c = default_cell(Topology::GC_NR1W);
    EXPECT_NEAR(write_time(c, devs.gc_write) / units::ps, 400, 40);
}

TEST(WritePath, DoubleWidthHalvesTime) {
    auto c = default_cell(Topology::GC_NR1W);
    const double cs = storage_node_capacitance(c, devs.gc_read);
    const double t1 = write_time(c, devs.gc_write, cs);
    c.w_wa *= 2;
    const double t2 = write_time(c, devs.gc_write, cs);
    EXPECT_NEAR(t2 / t1, 0.5, 0.05 * 0.5);
}

TEST(WritePath, ProportionalWideningPreservesTime) {
    auto c = default_cell(Topology::GC_NR1W, {3, 1});
    EXPECT_NEAR(c.w_wa, 90e-9, 1e-18);
    const double cs = 3 * storage_node_capacitance(default_cell(Topology::GC_NR1W), devs.gc_read);
    EXPECT_NEAR(write_time(c, devs.gc_write, cs) / units::ps, 400, 60);
}

TEST(WritePath, RetentionMeetsTenMilliseconds) {
    const auto c = default_cell(Topology::GC_NR1W);
    EXPECT_GE(retention_time(c, devs.gc_write, devs.gc_read), 10 * units::ms);
}
