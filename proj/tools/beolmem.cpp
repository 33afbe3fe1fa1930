// beolmem command-line front end.
//
// Exit status: 0 success, 1 no feasible design, 2 usage, config or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "beolmem/figures.hpp"
#include "beolmem/report.hpp"
#include "beolmem/settings.hpp"
#include "beolmem/trace_io.hpp"

namespace fs = std::filesystem;
using namespace beolmem;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string format = "csv";
};

void add_common(CLI::App* sub, Common& o) {
    sub->add_option("--config", o.config, "Config file (searched on BEOLMEM_CONFIG_PATH)");
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

Config load_checked(const Common& o) {
    Config c = o.config.empty() ? Config{} : Config::load(o.config);
    check_config(c);
    return c;
}

fs::path out_dir(const Common& o) {
    fs::create_directories(o.out);
    return o.out;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f || !(f << s)) throw ConfigError("cannot write '" + p.string() + "'");
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = r[i];
        rows.push_back(std::move(o));
    }
    return rows;
}

/// Writes `stem`.csv or `stem`.json depending on --format.
fs::path write_table(const Common& o, const std::string& stem, const Table& t) {
    const auto p = out_dir(o) / (stem + "." + o.format);
    write_text(p, o.format == "csv" ? to_csv(t) : table_json(t).dump(2) + "\n");
    return p;
}

Table kv_table(const std::vector<std::pair<std::string, std::string>>& kv) {
    Table t;
    t.header = {"quantity", "value"};
    for (const auto& [k, v] : kv) t.rows.push_back({k, v});
    return t;
}

int cmd_cell(const Common& o) {
    const Config c = load_checked(o);
    const auto ctx = load_context(c);
    const auto topo = topology_from_string(c.str("cell", "topology", "GC_NR1W"));
    const auto cell = load_cell(c, "cell", cell_for(ctx, topo, load_ports(c, "cell")));
    const auto& wd = write_device(cell.topology, ctx.devices);
    const auto& rd = read_device(cell.topology, ctx.devices);
    std::vector<std::pair<std::string, std::string>> kv{
        {"topology", std::string(to_string(cell.topology))},
        {"ports", std::to_string(cell.ports.n_read) + "R" + std::to_string(cell.ports.n_write) + "W"},
        {"footprint_um2", fmt(cell_footprint(cell, ctx.rules, ctx.lib) / units::um2)},
        {"c_sn_ff", fmt(storage_node_capacitance(cell, rd, ctx.lib) / units::fF)},
        {"static_power_w", fmt(cell_static_power(cell, ctx.devices, ctx.lib))},
        {"write_time_ps", fmt(write_time(cell, wd, std::nullopt, ctx.lib) / units::ps)}};
    if (is_capacitive(cell.topology))
        kv.push_back({"retention_time_s", fmt(retention_time(cell, wd, rd, ctx.lib))});
    if (is_gain_cell(cell.topology)) {
        const auto f = coupling_fractions(cell);
        kv.push_back({"f_wwl", fmt(f.f_wwl)});
        kv.push_back({"f_rwl", fmt(f.f_rwl)});
    }
    const auto p = write_table(o, "cell", kv_table(kv));
    for (const auto& [k, v] : kv) std::cout << k << " = " << v << "\n";
    std::cout << "wrote " << p.string() << "\n";
    return 0;
}

int cmd_array(const Common& o) {
    const Config c = load_checked(o);
    const auto ctx = load_context(c);
    const auto arr = load_array(c);
    const auto opt = load_transient(c);
    const auto cell = load_cell(c, "cell", cell_for(ctx, arr.topology, load_ports(c, "cell")));
    const auto r = simulate_read_transient(arr, cell, with_width(ctx.devices.gc_read, cell.w_ra), AllOnes{}, opt);
    Table t;
    t.header = {"time_ns", "rm", "rbl_one", "rbl_zero"};
    for (std::size_t i = 0; i < r.time_grid.size(); ++i)
        t.rows.push_back({fmt(r.time_grid[i] / units::ns), fmt(r.rm_curve[i]), fmt(r.rbl_one[i]), fmt(r.rbl_zero[i])});
    const auto p = write_table(o, "transient", t);
    std::cout << "rm_peak = " << fmt(r.rm_peak) << " V\n"
              << "t_sat_ns = " << fmt(r.t_rm_saturate / units::ns) << "\n"
              << "t_cross_ns = " << (r.t_cross_200mV ? fmt(*r.t_cross_200mV / units::ns) : "none") << "\n"
              << "wrote " << p.string() << "\n";
    return 0;
}

int cmd_bank(const Common& o) {
    const Config c = load_checked(o);
    const auto ctx = load_context(c);
    const auto pts = enumerate(load_search(c), load_constraint(c), ctx, o.jobs);
    const auto best = min_area(pts);
    const auto rec = record(best);
    write_text(out_dir(o) / "bank.json", to_json(rec).dump(2) + "\n");
    std::cout << to_json(rec).dump(2) << "\n";
    return 0;
}

std::vector<L2Config> l2_configs(const Config& c, const ModelContext& ctx, unsigned jobs) {
    const auto spec = load_l2_study(c);
    std::vector<L2Config> out;
    out.push_back(generate_l2_config(L2Mode::Baseline, Topology::SRAM6T, spec, ctx, jobs));
    for (auto t : {Topology::GC_NR1W, Topology::EDRAM_1T1C_VGAA})
        for (auto m : {L2Mode::IB, L2Mode::IBC}) {
            try {
                out.push_back(generate_l2_config(m, t, spec, ctx, jobs));
            } catch (const InfeasibleError& e) {
                std::cerr << "no " << to_string(m) << " config for " << to_string(t) << ": " << e.what() << "\n";
            }
        }
    for (const auto& f : load_fixed_l2(c)) out.push_back(fixed_l2_config(f, spec, ctx, jobs));
    for (auto& l : out)
        if (c.has_section("l2.cache")) apply_l2_overrides(c, "l2.cache", l);
    return out;
}

int cmd_dse(const Common& o) {
    const Config c = load_checked(o);
    const auto ctx = load_context(c);
    const auto pts = enumerate(load_search(c), load_constraint(c), ctx, o.jobs);
    const auto dir = out_dir(o);
    const auto t = designs_table(pts);
    if (o.format == "csv") write_text(dir / "designs.csv", to_csv(t));
    else {
        json a = json::array();
        for (const auto& p : pts) a.push_back(to_json(record(p)));
        write_text(dir / "designs.json", a.dump(2) + "\n");
    }
    const auto front = pareto(pts);
    write_text(dir / "pareto.json", pareto_json(front).dump(2) + "\n");
    std::size_t feasible = 0;
    for (const auto& p : pts) feasible += p.feasible();
    std::cout << pts.size() << " designs, " << feasible << " feasible, " << front.size() << " on the Pareto front\n";
    if (c.has_section("l2") || !load_fixed_l2(c).empty()) {
        const auto cs = l2_configs(c, ctx, o.jobs);
        write_text(dir / "l2configs.json", l2_configs_json(cs).dump(2) + "\n");
        for (const auto& l : cs)
            std::cout << l.id << ": " << l.partitions << "x" << l.banks_per_partition << " banks of "
                      << l.bank_capacity / 1024 << " kB, n_l " << l.n_l << ", " << fmt(l.clock_mhz) << " MHz\n";
    }
    if (!feasible) throw InfeasibleError("no feasible design; binding constraints: " + binding_constraints(pts));
    return 0;
}

L2Config load_l2_ref(const std::string& ref) {
    const auto hash = ref.rfind('#');
    if (hash == std::string::npos) throw ConfigError("--l2 expects <file>#<id>");
    std::ifstream f(ref.substr(0, hash));
    if (!f) throw ConfigError("cannot read '" + ref.substr(0, hash) + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError(ref.substr(0, hash) + ": " + e.what(), 0);
    }
    return find_l2(l2_configs_from_json(j), ref.substr(hash + 1));
}

Trace workload_trace(const Config& c, const std::string& id, std::uint64_t seed) {
    for (const auto& w : load_workloads(c))
        if (w.id == id) return generate_trace(w.model, w.params, seed);
    throw ConfigError("no [workload." + id + "] section");
}

int cmd_sim(const Common& o, const std::string& trace_path, const std::string& workload, const std::string& l2) {
    const Config c = load_checked(o);
    if (trace_path.empty() == workload.empty()) throw ConfigError("give exactly one of --trace or --workload");
    const Trace t = trace_path.empty() ? workload_trace(c, workload, o.seed) : read_trace(trace_path);
    const auto cfg = load_l2_ref(l2);
    const auto stats = run(t, cfg, load_sim_options(c));
    const auto dir = out_dir(o);
    write_text(dir / "stats.json", to_json(stats).dump(2) + "\n");
    write_table(o, "energy", energy_table({energy_report(stats, cfg.id)}));
    write_table(o, "failures", failures_table({{cfg.id, stats}}));
    const auto rep = energy_report(stats, cfg.id);
    std::cout << cfg.id << ": " << stats.accesses << " accesses, miss rate " << fmt(stats.miss_rate())
              << ", refresh events " << stats.refresh_events << ", refresh share (bank) "
              << fmt(bank_share(rep, "refresh")) << "\n";
    return 0;
}

int cmd_trace(const Common& o, const std::string& workload) {
    const Config c = load_checked(o);
    std::vector<std::string> ids;
    if (!workload.empty()) ids.push_back(workload);
    else
        for (const auto& w : load_workloads(c)) ids.push_back(w.id);
    if (ids.empty()) throw ConfigError("no [workload.<id>] sections");
    for (const auto& id : ids) {
        const auto p = out_dir(o) / (id + ".trace.gz");
        const auto t = workload_trace(c, id, o.seed);
        write_trace(p.string(), t);
        std::cout << "wrote " << p.string() << " (" << t.size() << " events)\n";
    }
    return 0;
}

int cmd_report(const Common& o, std::vector<std::string> figs, const std::vector<std::string>& runs,
               const std::string& baseline) {
    const Config c = load_checked(o);
    FigureInputs in;
    in.config = &c;
    in.ctx = load_context(c);
    in.jobs = o.jobs;
    in.baseline_run = baseline;
    for (const auto& r : runs) {
        const auto eq = r.find('=');
        if (eq == std::string::npos) throw ConfigError("--run expects <id>=<stats.json>");
        std::ifstream f(r.substr(eq + 1));
        if (!f) throw ReportError("cannot read run '" + r.substr(eq + 1) + "'");
        try {
            in.runs[r.substr(0, eq)] = sim_stats_from_json(json::parse(f));
        } catch (const json::exception& e) {
            throw ParseError(r.substr(eq + 1) + ": " + e.what(), 0);
        }
    }
    if (figs.size() == 1 && figs[0] == "all") {
        figs.clear();
        for (const auto& [id, _] : figure_registry())
            if (!needs_runs(id) || !in.runs.empty()) figs.push_back(id);
    }
    for (const auto& id : figs) {
        const auto p = write_table(o, id, figure(id, in));
        std::cout << "wrote " << p.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PPA models, design-space search and L2 simulation for monolithic-3D oxide-semiconductor memory"};
    app.require_subcommand(1);
    Common o;
    std::string trace_path, workload, l2, baseline = "sram_baseline";
    std::vector<std::string> figs, runs;

    auto* cell = app.add_subcommand("cell", "Evaluate the [cell] section");
    auto* array = app.add_subcommand("array", "Worst-case read transient of the [array] section");
    auto* bank = app.add_subcommand("bank", "Minimum-area bank for the [dse] space and constraint");
    auto* dse = app.add_subcommand("dse", "Enumerate the [dse] space; write designs, Pareto front and L2 configs");
    auto* sim = app.add_subcommand("sim", "Run a trace against an L2 configuration");
    auto* trace = app.add_subcommand("trace", "Generate synthetic traces from [workload.<id>] sections");
    auto* report = app.add_subcommand("report", "Emit figure data tables");
    for (auto* s : {cell, array, bank, dse, sim, trace, report}) add_common(s, o);
    sim->add_option("--trace", trace_path, "Trace file, plain or gzip")->check(CLI::ExistingFile);
    sim->add_option("--workload", workload, "Generate the trace from [workload.<id>] instead");
    sim->add_option("--l2", l2, "L2 config as <l2configs.json>#<id>")->required();
    trace->add_option("--workload", workload, "Only this workload id");
    report->add_option("--figure", figs, "Figure id, or 'all'")->required();
    report->add_option("--run", runs, "Simulator result as <id>=<stats.json>");
    report->add_option("--baseline", baseline, "Run id used for normalization")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (cell->parsed()) return cmd_cell(o);
        if (array->parsed()) return cmd_array(o);
        if (bank->parsed()) return cmd_bank(o);
        if (dse->parsed()) return cmd_dse(o);
        if (sim->parsed()) return cmd_sim(o, trace_path, workload, l2);
        if (trace->parsed()) return cmd_trace(o, workload);
        if (report->parsed()) return cmd_report(o, figs, runs, baseline);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
