#pragma once

// Array-level feasibility: 2T0C read transients under RWL IR drop and RBL
// sneak paths, 1T1C read margin and storage-capacitor bounds, 3T0C read-port
// speed/leakage tradeoff, and row limits.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beolmem/cell.hpp"
#include "beolmem/device.hpp"
#include "beolmem/error.hpp"
#include "beolmem/units.hpp"

namespace beolmem {

struct ArrayConfig {
    Topology topology = Topology::GC_NR1W;
    int n_row = 64;
    int n_col = 64;
    bool folded_bitline = false;
    double v_precharge = 0.75;
    double wire_r_per_cell = 20 * units::ohm;   ///< RWL segment
    double wire_c_per_cell = 0.05 * units::fF;  ///< RBL segment
    double cell_drain_c = 0.45 * units::fF;     ///< read-port terminal on the RBL
};

/// Double-gated AOS devices present both gate overlaps to each terminal.
inline double dg_terminal_capacitance(const DeviceParams& d) { return 2.0 * terminal_capacitance(d); }

inline void validate(const ArrayConfig& a) {
    if (a.n_row < 1 || a.n_col < 1) throw InputDomainError("array needs at least one row and column");
    if (!(a.wire_r_per_cell >= 0 && a.wire_c_per_cell >= 0 && a.cell_drain_c >= 0))
        throw InputDomainError("array parasitics must be non-negative");
    if (!std::isfinite(a.v_precharge)) throw InputDomainError("non-finite precharge voltage");
}

struct AllOnes {};
struct AllZeros {};
/// Stored bits of every row (row 0 is the selected row and is ignored).
struct Bitmap {
    std::vector<std::vector<bool>> bits;
};
using DataPattern = std::variant<AllOnes, AllZeros, Bitmap>;

struct ReadTransient {
    std::vector<double> time_grid;
    std::vector<double> rm_curve;     ///< worst column V_RBL(SN=0) - V_RBL(SN=1)
    std::vector<double> rbl_one;      ///< worst-column RBL with SN = 1
    std::vector<double> rbl_zero;     ///< same column with SN = 0
    double rm_peak = 0;
    double t_rm_saturate = 0;         ///< first time RM reaches 95 % of its peak
    std::optional<double> t_cross_200mV;
};

struct TransientOptions {
    double dt = 1 * units::ps;
    double t_end = 10 * units::ns;
    /// Stop early once no RBL moves more than this per step for `settle_steps` steps.
    double settle_dv = 1e-7;
    int settle_steps = 200;
    bool sneak = true;
};

namespace detail {

/// Count of unselected rows storing '1' in each column.
inline std::vector<int> ones_per_column(const ArrayConfig& a, const DataPattern& p) {
    std::vector<int> ones(a.n_col, 0);
    if (std::holds_alternative<AllOnes>(p)) {
        std::fill(ones.begin(), ones.end(), a.n_row - 1);
    } else if (const auto* bm = std::get_if<Bitmap>(&p)) {
        if (static_cast<int>(bm->bits.size()) != a.n_row)
            throw InputDomainError("bitmap row count does not match array");
        for (int r = 1; r < a.n_row; ++r) {
            if (static_cast<int>(bm->bits[r].size()) != a.n_col)
                throw InputDomainError("bitmap column count does not match array");
            for (int c = 0; c < a.n_col; ++c) ones[c] += bm->bits[r][c] ? 1 : 0;
        }
    }
    return ones;
}

/// Solves the selected RWL ladder: node 0 is the sink driver at 0 V, node j
/// (1-based) collects the read current of column j-1. Newton on the
/// tridiagonal KCL system, warm-started from `vw`.
inline void solve_rwl_ladder(const DeviceParams& dev, double v_sn, double r_seg,
                             const std::vector<double>& v_rbl, std::vector<double>& vw) {
    const int n = static_cast<int>(v_rbl.size());
    if (r_seg <= 0) {
        std::fill(vw.begin(), vw.end(), 0.0);
        return;
    }
    const double g = 1.0 / r_seg;
    std::vector<double> f(n), diag(n), lower(n), upper(n), cp(n), dp(n);
    for (int iter = 0; iter < 50; ++iter) {
        double max_step = 0;
        for (int j = 0; j < n; ++j) {
            const double left = j == 0 ? 0.0 : vw[j - 1];
            const double i_cell = channel_current(dev, v_sn, v_rbl[j], vw[j]);
            const double h = 1e-6;
            const double di = (channel_current(dev, v_sn, v_rbl[j], vw[j] + h) -
                               channel_current(dev, v_sn, v_rbl[j], vw[j] - h)) / (2 * h);
            double kcl = (left - vw[j]) * g + i_cell;
            double d = -g + di;
            if (j + 1 < n) {
                kcl += (vw[j + 1] - vw[j]) * g;
                d -= g;
            }
            f[j] = kcl;
            diag[j] = d;
            lower[j] = j == 0 ? 0.0 : g;
            upper[j] = j + 1 < n ? g : 0.0;
        }
        // Thomas algorithm for J * delta = -f.
        cp[0] = upper[0] / diag[0];
        dp[0] = -f[0] / diag[0];
        for (int j = 1; j < n; ++j) {
            const double m = diag[j] - lower[j] * cp[j - 1];
            cp[j] = upper[j] / m;
            dp[j] = (-f[j] - lower[j] * dp[j - 1]) / m;
        }
        for (int j = n - 1; j >= 0; --j) {
            const double delta = dp[j] - (j + 1 < n ? cp[j] * dp[j + 1] : 0.0);
            dp[j] = delta;
        }
        for (int j = 0; j < n; ++j) {
            vw[j] += dp[j];
            max_step = std::max(max_step, std::abs(dp[j]));
        }
        if (max_step < 1e-9) return;
    }
}

}  // namespace detail

/// Worst-case read of a 2T0C (single-transistor read port) array. The SN = 1
/// and SN = 0 cases are integrated side by side with forward Euler on the RBL
/// capacitances; unselected rows are lumped per column by stored value.
inline ReadTransient simulate_read_transient(const ArrayConfig& arr, const CellDesign& cell,
                                             const DeviceParams& dev, const DataPattern& pattern,
                                             const TransientOptions& opt = {}) {
    validate(arr);
    if (arr.topology != Topology::GC_NR1W || cell.topology != Topology::GC_NR1W)
        throw CapabilityError("read transient is modelled for the 2T0C read port only");
    if (!(opt.dt > 0)) throw InputDomainError("time step must be positive");

    const int ncol = arr.n_col;
    const double vdd = cell.v_dd;
    const double c_rbl = arr.n_row * (arr.cell_drain_c + arr.wire_c_per_cell);
    const auto ones = detail::ones_per_column(arr, pattern);

    std::vector<double> v1(ncol, arr.v_precharge), v0(ncol, arr.v_precharge);
    std::vector<double> w1(ncol, 0.0), w0(ncol, 0.0);
    std::vector<double> dv1(ncol), dv0(ncol);

    auto sneak = [&](int col, double v_rbl) {
        if (!opt.sneak || arr.n_row == 1) return 0.0;
        const int n1 = ones[col];
        const int n0 = arr.n_row - 1 - n1;
        // Unselected RWLs sit at V_dd; current flows into the RBL.
        return n1 * channel_current(dev, vdd, vdd, v_rbl) + n0 * channel_current(dev, 0.0, vdd, v_rbl);
    };

    ReadTransient out;
    auto record = [&](double t) {
        int worst = 0;
        double rm = 1e300;
        for (int j = 0; j < ncol; ++j) {
            const double m = v0[j] - v1[j];
            if (m < rm) rm = m, worst = j;
        }
        out.time_grid.push_back(t);
        out.rm_curve.push_back(rm);
        out.rbl_one.push_back(v1[worst]);
        out.rbl_zero.push_back(v0[worst]);
    };

    const auto steps = static_cast<long>(std::ceil(opt.t_end / opt.dt));
    const double guard = 0.05 * vdd;
    int quiet = 0;
    record(0.0);
    for (long s = 1; s <= steps; ++s) {
        detail::solve_rwl_ladder(dev, vdd, arr.wire_r_per_cell, v1, w1);
        detail::solve_rwl_ladder(dev, 0.0, arr.wire_r_per_cell, v0, w0);
        double max_dv = 0;
        for (int j = 0; j < ncol; ++j) {
            const double i1 = channel_current(dev, vdd, v1[j], w1[j]);
            const double i0 = channel_current(dev, 0.0, v0[j], w0[j]);
            dv1[j] = opt.dt * (sneak(j, v1[j]) - i1) / c_rbl;
            dv0[j] = opt.dt * (sneak(j, v0[j]) - i0) / c_rbl;
            max_dv = std::max({max_dv, std::abs(dv1[j]), std::abs(dv0[j])});
        }
        if (max_dv > guard)
            throw StepSizeError("RBL moved " + std::to_string(max_dv / vdd * 100) +
                                "% of V_dd in one step; reduce dt");
        for (int j = 0; j < ncol; ++j) {
            v1[j] += dv1[j];
            v0[j] += dv0[j];
        }
        record(s * opt.dt);
        quiet = max_dv < opt.settle_dv ? quiet + 1 : 0;
        if (quiet >= opt.settle_steps) break;
    }

    const auto& rm = out.rm_curve;
    out.rm_peak = *std::max_element(rm.begin(), rm.end());
    if (out.rm_peak > 0) {
        for (std::size_t i = 0; i < rm.size(); ++i)
            if (rm[i] >= 0.95 * out.rm_peak) {
                out.t_rm_saturate = out.time_grid[i];
                break;
            }
    }
    for (std::size_t i = 1; i < rm.size(); ++i) {
        if (rm[i] >= 0.2 && rm[i - 1] < 0.2) {
            const double frac = (0.2 - rm[i - 1]) / (rm[i] - rm[i - 1]);
            out.t_cross_200mV = out.time_grid[i - 1] + frac * (out.time_grid[i] - out.time_grid[i - 1]);
            break;
        }
    }
    return out;
}

/// Row limit per bitline for a topology; `other_cap` covers 3T0C and SRAM.
inline int max_rows(Topology t, bool folded, int other_cap = 128) {
    if (t == Topology::GC_NR1W) return folded ? 128 : 64;
    if (is_edram(t)) return 64;
    return other_cap;
}

struct BitlineBudget1T1C {
    double c_bl = 0;
    double c_sn = 0;
    double v_dd = 0;
    double i_leak = 0;
    double t_ret = 0;
};

/// Charge-sharing read margin of a 1T1C cell after retention losses.
inline double read_margin_1t1c(const BitlineBudget1T1C& b) {
    if (!(b.c_sn > 0)) throw InputDomainError("C_SN must be positive");
    if (b.c_bl < 0 || b.v_dd < 0 || b.i_leak < 0 || b.t_ret < 0)
        throw InputDomainError("bitline budget fields must be non-negative");
    return 1.0 / (1.0 + b.c_bl / b.c_sn) * (0.5 * b.v_dd - b.i_leak * b.t_ret / b.c_sn);
}

struct MinCsnOptions {
    double rm_target = 100 * units::mV;
    double wire_c_per_cell = 0.05 * units::fF;
    double v_hold = -0.3;
    double c_max = 1 * units::pF;
};

/// Bitline capacitance of a 1T1C column: wire plus the access device terminal.
inline double bitline_capacitance_1t1c(int n_row, double w_access, const DeviceParams& dev,
                                       double wire_c_per_cell) {
    return n_row * (wire_c_per_cell + terminal_capacitance(with_width(dev, w_access)));
}

/// Smallest storage capacitor meeting the read-margin target (bisection on a
/// margin that is strictly increasing in C_SN).
inline double min_csn_1t1c(int n_row, double w_access, double v_dd, double t_ret, const DeviceParams& dev,
                           const MinCsnOptions& opt = {}) {
    if (n_row < 1 || !(w_access > 0)) throw InputDomainError("min_csn_1t1c: bad geometry");
    const auto access = with_width(dev, w_access);
    BitlineBudget1T1C b;
    b.c_bl = bitline_capacitance_1t1c(n_row, w_access, dev, opt.wire_c_per_cell);
    b.v_dd = v_dd;
    b.t_ret = t_ret;
    // Stored '1' against a half-V_dd precharged bitline with the WL held low.
    b.i_leak = drain_current(access, opt.v_hold - 0.5 * v_dd, 0.5 * v_dd);
    auto margin = [&](double c) {
        b.c_sn = c;
        return read_margin_1t1c(b);
    };
    if (margin(opt.c_max) < opt.rm_target)
        throw InfeasibleError("no C_SN up to " + std::to_string(opt.c_max / units::fF) +
                              " fF reaches the read-margin target");
    double lo = 1e-21, hi = opt.c_max;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) >= opt.rm_target ? hi : lo) = mid;
    }
    return hi;
}

/// Worst-case (write '1' or write '0') time to bring the storage node within
/// 50 mV of its target through the access device, word line at V_cc.
inline double access_time_1t1c(double c_sn, const DeviceParams& dev, double v_cc = 0.75) {
    if (!(v_cc > 0)) throw InputDomainError("V_cc must be positive");
    constexpr int steps = 4000;
    const double span = v_cc - 0.05;
    const double dv = span / steps;
    double t_one = 0, t_zero = 0;
    for (int i = 0; i < steps; ++i) {
        const double v = (i + 0.5) * dv;  // distance travelled from the start level
        t_one += c_sn * dv / drain_current(dev, v_cc - v, v_cc - v);
        const double vsn = v_cc - v;      // discharging towards a grounded bitline
        t_zero += c_sn * dv / drain_current(dev, v_cc, vsn);
    }
    return std::max(t_one, t_zero);
}

struct TradeoffPoint {
    double vt = 0;
    double read_time = 0;       ///< RBL development of 200 mV [s]
    double port_leakage = 0;    ///< read-port leakage with R_G off [A]
    double standby_power = 0;   ///< V_dd * port_leakage [W]
};

namespace detail {

/// Current through R_G (top, gate at vg_top) in series with R_A (bottom, gate at
/// vg_bot) from the RBL at v_rbl to ground. Bisection on the internal node.
inline double stack_current(const DeviceParams& top, double vg_top, const DeviceParams& bot, double vg_bot,
                            double v_rbl) {
    double lo = 0, hi = v_rbl;
    for (int i = 0; i < 100; ++i) {
        const double x = 0.5 * (lo + hi);
        const double it = channel_current(top, vg_top, v_rbl, x);
        const double ib = channel_current(bot, vg_bot, x, 0.0);
        (it > ib ? lo : hi) = x;
    }
    const double x = 0.5 * (lo + hi);
    return channel_current(bot, vg_bot, x, 0.0);
}

}  // namespace detail

/// Read time and standby leakage of a 2T read port (R_A in series with R_G)
/// across a threshold sweep applied to both devices.
inline std::vector<TradeoffPoint> tradeoff_3t0c(const DeviceParams& r_a, const DeviceParams& r_g,
                                                const ArrayConfig& arr, const std::vector<double>& vt_sweep,
                                                double v_dd = 0.75) {
    validate(arr);
    const double c_rbl = arr.n_row * (arr.cell_drain_c + arr.wire_c_per_cell);
    std::vector<TradeoffPoint> out;
    for (double vt : vt_sweep) {
        const auto a = with_vt(r_a, vt);
        const auto g = with_vt(r_g, vt);
        constexpr int steps = 400;
        const double dv = 0.2 / steps;
        double t = 0;
        for (int i = 0; i < steps; ++i) {
            const double v = v_dd - (i + 0.5) * dv;
            t += c_rbl * dv / detail::stack_current(g, v_dd, a, v_dd, v);
        }
        TradeoffPoint p;
        p.vt = vt;
        p.read_time = t;
        p.port_leakage = detail::stack_current(g, 0.0, a, v_dd, v_dd);
        p.standby_power = v_dd * p.port_leakage;
        out.push_back(p);
    }
    return out;
}

}  // namespace beolmem
