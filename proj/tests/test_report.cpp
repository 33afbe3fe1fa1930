#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beolmem/figures.hpp"
#include "beolmem/report.hpp"

using namespace beolmem;
namespace fs = std::filesystem;

namespace {

SearchSpace small_space() {
    SearchSpace s;
    s.topologies = {Topology::GC_NR1W, Topology::SRAM6T};
    s.n_l = {1, 2};
    s.subarrays_x = {1, 2};
    s.subarrays_y = {1, 2};
    s.mats_per_subarray = {1, 4};
    s.mat_rows = {32, 64};
    return s;
}

SimStats some_run() {
    auto c = generate_l2_config(L2Mode::Baseline, Topology::SRAM6T);
    TraceParams p;
    p.n = 3000;
    p.interval = 2;
    p.footprint = 8 << 20;
    SimOptions o;
    o.core_clock_mhz = 1132;
    return run(generate_trace(TraceModel::Zipf, p, 11), c, o);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Csv, QuotingRoundTrip) {
    Table t;
    t.header = {"a", "b,c", "d"};
    t.rows = {{"x", "say \"hi\"", ""}, {"1,2", "3", "GC;SRAM"}};
    const auto back = csv_from_string(to_csv(t));
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_THROW(csv_from_string("a,b\n1\n"), ParseError);
    EXPECT_THROW(csv_from_string("a\n\"open\n"), ParseError);
}

TEST(Csv, NumbersRoundTripExactly) {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 1e-300, -2.5e-17})
        EXPECT_EQ(detail::to_double(fmt(v)), v);
}

TEST(Designs, CsvRoundTripIsLossless) {
    Constraint k;
    k.rct_max = 1 * units::ns;
    const auto pts = enumerate(small_space(), k);
    const auto recs = designs_from_table(csv_from_string(to_csv(designs_table(pts))));
    ASSERT_EQ(recs.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(recs[i], record(pts[i])) << i;
}

TEST(Designs, ParetoJsonRoundTrip) {
    Constraint k;
    k.rct_max = 1 * units::ns;
    const auto front = pareto(enumerate(small_space(), k));
    ASSERT_FALSE(front.empty());
    const auto j = json::parse(pareto_json(front).dump());
    std::size_t n = 0;
    for (const auto& e : j.at("front")) {
        EXPECT_EQ(design_record_from_json(e), record(front[n]));
        ++n;
    }
    EXPECT_EQ(n, front.size());
}

TEST(L2Configs, JsonRoundTrip) {
    std::vector<L2Config> cs{generate_l2_config(L2Mode::Baseline, Topology::SRAM6T),
                             generate_l2_config(L2Mode::IBC, Topology::EDRAM_1T1C_VGAA)};
    const auto text = l2_configs_json(cs).dump(2);
    const auto back = l2_configs_from_json(json::parse(text));
    ASSERT_EQ(back.size(), cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(to_json(back[i]).dump(), to_json(cs[i]).dump());
    EXPECT_EQ(find_l2(back, cs[1].id).id, cs[1].id);
    EXPECT_THROW(find_l2(back, "nope"), std::exception);
}

TEST(SimStatsJson, RoundTrip) {
    const auto s = some_run();
    ASSERT_GT(s.accesses, 0);
    const auto back = sim_stats_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
    EXPECT_THROW(sim_stats_from_json(json{{"accesses", 1}}), ParseError);
}

TEST(Figures, SchemasOfModelFigures) {
    const auto c = Config::load((fs::path(BEOLMEM_SOURCE_DIR) / "configs" / "figures.cfg").string());
    FigureInputs in;
    in.config = &c;
    in.ctx = load_context(c);
    const auto a = figure("fig8a", in);
    EXPECT_EQ(a.header, (std::vector<std::string>{"topology", "n_read", "area_um2"}));
    EXPECT_EQ(a.rows.size(), 10u);
    const auto d = figure("fig15a", in);
    for (const char* col : {"topology", "n_l", "density_mb_mm2", "rct_ns"}) EXPECT_NO_THROW(d.column(col));
    EXPECT_EQ(d.rows.size(), 16u);
}

TEST(Figures, FailureFigureSchema) {
    FigureInputs in;
    in.runs["sram_baseline"] = some_run();
    const auto t = figure("fig18", in);
    EXPECT_EQ(t.header, (std::vector<std::string>{"config", "failure_mode", "fraction_of_accesses"}));
    EXPECT_EQ(t.rows.size(), std::size(all_failure_modes));
    const auto e = figure("fig17", in);
    EXPECT_NO_THROW(e.column("normalized_to_baseline"));
}

TEST(Figures, UnknownOrUnfedFigure) {
    FigureInputs in;
    EXPECT_THROW(figure("fig99", in), ReportError);
    EXPECT_THROW(figure("fig18", in), ReportError);
}

TEST(Cli, ReportWritesRequestedFigures) {
    const auto out = fs::temp_directory_path() / "beolmem_report_cli";
    fs::remove_all(out);
    const std::string cmd = std::string("\"") + BEOLMEM_CLI + "\" report --figure fig8a --figure fig14b --config \"" +
                            BEOLMEM_SOURCE_DIR + "/configs/figures.cfg\" --out \"" + out.string() + "\" > /dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    const auto t = csv_from_string(slurp(out / "fig8a.csv"));
    EXPECT_EQ(t.header, (std::vector<std::string>{"topology", "n_read", "area_um2"}));
    EXPECT_TRUE(fs::exists(out / "fig14b.csv"));
}
