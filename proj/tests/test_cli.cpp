// End-to-end checks of the CLI binary: subcommand wiring, file outputs,
// exit codes, and reproducibility of result files.
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "graphtrack/csv.hpp"
#include "graphtrack/experiment.hpp"

using namespace graphtrack;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return GRAPHTRACK_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "graphtrack_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kTinySynthConfig = R"({
    "seed": 3,
    "methods": ["dpg", "primal_pg"],
    "solver": {"alpha": 0.05, "beta": 0.2},
    "scenario": {"model": "er", "n_nodes": 12, "p": 0.35, "horizon": 120},
    "export_signals": true
})";

}  // namespace

TEST_CASE("synth writes parseable records and is byte-reproducible") {
    const auto dir = fresh_dir("synth");
    write_file(dir / "cfg.json", kTinySynthConfig);

    REQUIRE(run_cli("synth --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out1").string()) == 0);
    REQUIRE(run_cli("synth --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out2").string()) == 0);

    const auto rows = read_csv_rows(dir / "out1" / "records.csv");
    CHECK(rows[0] == std::vector<std::string>{"t", "method", "error", "total_weight",
                                              "f_measure"});
    CHECK(rows.size() == 1 + 2 * 120);  // two methods
    for (std::size_t r = 1; r < rows.size(); ++r) {
        CHECK(rows[r].size() == 5);
        (void)parse_double(rows[r][2], "error");
        (void)parse_double(rows[r][3], "total_weight");
        (void)parse_double(rows[r][4], "f_measure");
    }

    CHECK(slurp(dir / "out1" / "records.csv") == slurp(dir / "out2" / "records.csv"));
    CHECK(slurp(dir / "out1" / "signals.csv") == slurp(dir / "out2" / "signals.csv"));
    CHECK(slurp(dir / "out1" / "error.svg") == slurp(dir / "out2" / "error.svg"));
    CHECK(fs::exists(dir / "out1" / "w_ref_segment0.csv"));
}

TEST_CASE("exported signals round-trip through the track command") {
    const auto dir = fresh_dir("roundtrip");
    write_file(dir / "cfg.json", kTinySynthConfig);
    REQUIRE(run_cli("synth --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "synth_out").string()) == 0);

    // track over the exported stream with the same solver settings
    write_file(dir / "track_cfg.json", R"({
        "seed": 3,
        "solver": {"alpha": 0.05, "beta": 0.2},
        "data": {"path": ")" + (dir / "synth_out" / "signals.csv").string() + R"("}
    })");
    REQUIRE(run_cli("track --config " + (dir / "track_cfg.json").string() + " --out " +
                    (dir / "track_out").string()) == 0);

    // the tracker consumed identical inputs, so total weights must match the
    // in-memory run recorded by synth
    const auto synth_rows = read_csv_rows(dir / "synth_out" / "records.csv");
    const auto track_rows = read_csv_rows(dir / "track_out" / "weight_evolution.csv");
    CHECK(track_rows[0] ==
          std::vector<std::string>{"t", "method", "total_weight", "is_event"});
    std::size_t checked = 0;
    for (std::size_t r = 1, tr = 1; r < synth_rows.size(); ++r) {
        if (synth_rows[r][1] != "dpg") continue;
        CHECK(synth_rows[r][3] == track_rows[tr][2]);
        ++tr;
        ++checked;
    }
    CHECK(checked == 120);
}

TEST_CASE("track emits snapshots, centralities, and the event marker") {
    const auto dir = fresh_dir("track");
    // piecewise signal stand-in: two channels drift apart after t=30
    std::ostringstream csv;
    for (int t = 1; t <= 60; ++t) {
        const double spread = t <= 30 ? 0.1 : 2.0;
        csv << 0.0 << ',' << spread << ',' << -spread << '\n';
    }
    write_file(dir / "signals.csv", csv.str());
    write_file(dir / "cfg.json", R"({
        "solver": {"alpha": 0.5, "beta": 0.5,
                   "memory": {"mode": "ewma", "gamma": 0.05}},
        "data": {"path": "signals.csv", "event_time": 30,
                 "snapshot_times": [20, 50]}
    })");
    REQUIRE(run_cli("track --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string()) == 0);

    CHECK(fs::exists(dir / "out" / "snapshot_t20.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_t50.csv"));
    CHECK(fs::exists(dir / "out" / "centrality_t20.csv"));
    CHECK(fs::exists(dir / "out" / "centrality_t50.csv"));
    CHECK(fs::exists(dir / "out" / "weight_evolution.svg"));

    const auto rows = read_csv_rows(dir / "out" / "weight_evolution.csv");
    CHECK(rows[30][0] == "30");
    CHECK(rows[30][3] == "1");  // marker row
    CHECK(rows[29][3] == "0");

    const auto cent = read_csv_rows(dir / "out" / "centrality_t20.csv");
    CHECK(cent[0] == std::vector<std::string>{"node", "closeness", "component"});
    CHECK(cent.size() == 4);
}

TEST_CASE("batch solves a committed fixture to the golden solution") {
    const auto dir = fresh_dir("batch");
    const fs::path data_dir = GRAPHTRACK_DATA_DIR;
    write_file(dir / "cfg.json", R"({
        "solver": {"alpha": 0.5, "beta": 0.5, "tol": 1e-10},
        "data": {"path": ")" + (data_dir / "n5_signals.csv").string() + R"("}
    })");
    REQUIRE(run_cli("batch --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string()) == 0);

    const PairIndexMap g(5);
    const auto w = read_edge_csv(dir / "out" / "w_star.csv", g);
    const auto golden = read_edge_vector_csv(data_dir / "n5_wstar_golden.csv");
    REQUIRE(w.size() == golden.size());
    double err = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) err += (w[k] - golden[k]) * (w[k] - golden[k]);
    CHECK(std::sqrt(err) <= 1e-6);

    // a random dual start lands on the same solution
    write_file(dir / "cfg2.json", R"({
        "solver": {"alpha": 0.5, "beta": 0.5, "tol": 1e-10, "lambda0_seed": 4242},
        "data": {"path": ")" + (data_dir / "n5_signals.csv").string() + R"("}
    })");
    REQUIRE(run_cli("batch --config " + (dir / "cfg2.json").string() + " --out " +
                    (dir / "out2").string()) == 0);
    const auto w2 = read_edge_csv(dir / "out2" / "w_star.csv", g);
    double dist = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) dist += (w[k] - w2[k]) * (w[k] - w2[k]);
    CHECK(std::sqrt(dist) <= 1e-6);
}

TEST_CASE("batch on zero-variance signals keeps all degrees positive") {
    const auto dir = fresh_dir("batch_const");
    std::ostringstream csv;
    for (int t = 0; t < 10; ++t) csv << "1,1,1,1\n";
    write_file(dir / "signals.csv", csv.str());
    write_file(dir / "cfg.json", R"({
        "solver": {"alpha": 1.0, "beta": 1.0},
        "data": {"path": "signals.csv"}
    })");
    REQUIRE(run_cli("batch --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string()) == 0);
    const PairIndexMap g(4);
    const auto w = read_edge_csv(dir / "out" / "w_star.csv", g);
    std::vector<double> d(4);
    serial::apply_degree_operator(g, w, d);
    for (double di : d) CHECK(di > 0.0);
}

TEST_CASE("exit codes distinguish config, data, and convergence failures") {
    const auto dir = fresh_dir("exit_codes");

    // 2: config errors
    write_file(dir / "bad.json", R"({"solvr": {}})");
    CHECK(run_cli("synth --config " + (dir / "bad.json").string()) == 2);
    CHECK(run_cli("synth --config " + (dir / "nonexistent.json").string()) == 2);

    // 3: data errors
    write_file(dir / "ragged.csv", "1,2,3\n4,5\n");
    write_file(dir / "cfg_ragged.json",
               R"({"solver": {}, "data": {"path": "ragged.csv"}})");
    CHECK(run_cli("track --config " + (dir / "cfg_ragged.json").string() + " --out " +
                  (dir / "out").string()) == 3);

    // 4: non-convergence, with the report still written
    std::ostringstream csv;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 5; ++t)
        csv << unif(rng) << ',' << unif(rng) << ',' << unif(rng) << '\n';
    write_file(dir / "signals.csv", csv.str());
    write_file(dir / "cfg_short.json", R"({
        "solver": {"alpha": 1.0, "beta": 1.0, "max_iter": 2, "tol": 1e-14},
        "data": {"path": "signals.csv"}
    })");
    CHECK(run_cli("batch --config " + (dir / "cfg_short.json").string() + " --out " +
                  (dir / "no_conv").string()) == 4);
    CHECK(fs::exists(dir / "no_conv" / "solve_report.json"));
    CHECK(fs::exists(dir / "no_conv" / "w_star.csv"));
}

TEST_CASE("plot regenerates an SVG purely from the CSV") {
    const auto dir = fresh_dir("plot");
    write_file(dir / "cfg.json", kTinySynthConfig);
    REQUIRE(run_cli("synth --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string()) == 0);

    const auto svg_from_synth = slurp(dir / "out" / "error.svg");
    fs::remove(dir / "out" / "error.svg");
    REQUIRE(run_cli("plot --input " + (dir / "out" / "records.csv").string()) == 0);
    const auto svg_regerated = slurp(dir / "out" / "records.svg");
    CHECK(svg_regerated.find("<polyline") != std::string::npos);

    // same series, same renderer: only the title differs between the two paths
    CHECK(svg_from_synth.find("<polyline") != std::string::npos);
}

TEST_CASE("gridsearch writes the score table and best parameters") {
    const auto dir = fresh_dir("gridsearch");
    write_file(dir / "cfg.json", R"({
        "seed": 5,
        "scenario": {"model": "er", "n_nodes": 10, "p": 0.4, "horizon": 80},
        "grid": {"alpha": [0.1], "beta": [0.5], "final_window": 20}
    })");
    REQUIRE(run_cli("gridsearch --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string()) == 0);
    const auto table = read_csv_rows(dir / "out" / "score_table.csv");
    CHECK(table[0] == std::vector<std::string>{"alpha", "beta", "mean_f"});
    CHECK(table.size() == 2);
    CHECK(fs::exists(dir / "out" / "best_params.json"));
    const auto best = slurp(dir / "out" / "best_params.json");
    CHECK(best.find("\"alpha\"") != std::string::npos);
}
