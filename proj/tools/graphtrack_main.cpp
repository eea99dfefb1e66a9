// graphtrack: identify and track graph topology from streaming smooth signals.
//
// Subcommands: synth, track, batch, gridsearch, plot. Exit codes: 0 success,
// 2 config error, 3 data error, 4 solver did not converge.

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphtrack/config.hpp"
#include "graphtrack/csv.hpp"
#include "graphtrack/dual_dpg.hpp"
#include "graphtrack/experiment.hpp"
#include "graphtrack/metrics.hpp"
#include "graphtrack/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace graphtrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNoConvergence = 4;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* copt = cmd->add_option("--config", args.config_path, "experiment config (JSON)");
    if (config_required) copt->required();
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--out", args.out_dir, "override the output directory");
    cmd->add_option("--format", args.format, "result table format")
        ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig load(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args.config_path);
    if (args.seed) {
        cfg.seed = *args.seed;
        if (cfg.scenario) cfg.scenario->seed = *args.seed;
    }
    if (args.out_dir) cfg.output_dir = *args.out_dir;
    return cfg;
}

std::string method_param_suffix(const ExperimentConfig& cfg) {
    return "alpha=" + format_double(cfg.solver.alpha) +
           " beta=" + format_double(cfg.solver.beta);
}

void write_records(const fs::path& path, const std::string& format,
                   std::span<const std::string> header,
                   const std::vector<std::vector<std::string>>& rows) {
    if (format == "csv") {
        write_table_csv(path, header, rows);
        return;
    }
    json arr = json::array();
    for (const auto& row : rows) {
        json obj;
        for (std::size_t c = 0; c < header.size(); ++c) obj[header[c]] = row[c];
        arr.push_back(obj);
    }
    fs::create_directories(path.parent_path());
    std::ofstream out(fs::path(path).replace_extension(".json"));
    out << arr.dump(2) << '\n';
}

std::vector<PlotSeries> error_series(const SynthRunResult& res) {
    std::vector<PlotSeries> series;
    for (const auto& curve : res.curves) {
        PlotSeries s;
        s.label = curve.method;
        for (std::size_t i = 0; i < curve.error.size(); ++i) {
            s.x.push_back(static_cast<double>(i + 1));
            s.y.push_back(curve.error[i]);
        }
        series.push_back(std::move(s));
    }
    return series;
}

int cmd_synth(const CommonArgs& args) {
    ExperimentConfig cfg = load(args);
    if (!cfg.scenario) throw ConfigError("synth: config must declare a scenario");
    const SynthRunResult res = run_synth_experiment(cfg);

    const fs::path out = cfg.output_dir;
    std::vector<std::vector<std::string>> rows;
    for (const auto& curve : res.curves)
        for (std::size_t i = 0; i < curve.error.size(); ++i)
            rows.push_back({std::to_string(i + 1), curve.method,
                            format_double(curve.error[i]),
                            format_double(curve.total_weight[i]),
                            format_double(curve.f_measure[i])});
    const std::vector<std::string> header{"t", "method", "error", "total_weight",
                                          "f_measure"};
    write_records(out / "records.csv", args.format, header, rows);

    const PairIndexMap g(cfg.scenario->n_nodes);
    for (std::size_t s = 0; s < res.w_ref_final.size(); ++s)
        write_edge_csv(out / ("w_ref_segment" + std::to_string(s) + ".csv"), g,
                       res.w_ref_final[s]);
    if (res.signals) write_signal_csv(out / "signals.csv", *res.signals);

    PlotOptions popt;
    popt.title = "tracking error, " + method_param_suffix(cfg);
    popt.y_label = "||w_t - w_t*||_2";
    popt.log_y = true;
    if (!cfg.scenario->switch_times.empty())
        popt.vline = static_cast<double>(cfg.scenario->switch_times.front());
    write_svg_lineplot(out / "error.svg", error_series(res), popt);

    std::cout << "synth: wrote " << (out / "records.csv").string() << " ("
              << rows.size() << " records, " << res.curves.size() << " methods)\n";
    return kExitOk;
}

int cmd_track(const CommonArgs& args) {
    ExperimentConfig cfg = load(args);
    if (!cfg.data) throw ConfigError("track: config must declare a data section");
    SignalMatrix m = read_signal_csv(cfg.data->path);
    if (cfg.data->kind != "signals")
        throw ConfigError("track: data.kind must be \"signals\"");
    if (cfg.data->zscore) zscore_channels(m);

    const TrackRunResult res = run_track_experiment(cfg, m);
    const fs::path out = cfg.output_dir;

    std::vector<std::vector<std::string>> rows;
    for (long t = 1; t <= res.steps; ++t)
        rows.push_back({std::to_string(t), "dpg", format_double(res.total_weight[t - 1]),
                        cfg.data->event_time && *cfg.data->event_time == t ? "1" : "0"});
    const std::vector<std::string> header{"t", "method", "total_weight", "is_event"};
    write_records(out / "weight_evolution.csv", args.format, header, rows);

    const PairIndexMap g(m.cols);
    for (std::size_t s = 0; s < res.snapshot_steps.size(); ++s) {
        const std::string tag = std::to_string(res.snapshot_steps[s]);
        write_edge_csv(out / ("snapshot_t" + tag + ".csv"), g, res.snapshots[s]);
        const double thr =
            default_edge_threshold(res.snapshots[s], cfg.solver.edge_threshold_rel);
        const auto cent = closeness_centrality(g, res.snapshots[s], thr);
        std::vector<std::vector<std::string>> crow;
        for (int i = 0; i < m.cols; ++i)
            crow.push_back({std::to_string(i + 1), format_double(cent.closeness[i]),
                            std::to_string(cent.component[i])});
        const std::vector<std::string> cheader{"node", "closeness", "component"};
        write_table_csv(out / ("centrality_t" + tag + ".csv"), cheader, crow);
    }

    PlotSeries s;
    s.label = "dpg";
    for (long t = 1; t <= res.steps; ++t) {
        s.x.push_back(static_cast<double>(t));
        s.y.push_back(res.total_weight[t - 1]);
    }
    PlotOptions popt;
    popt.title = "total edge weight, " + method_param_suffix(cfg);
    popt.y_label = "sum of edge weights";
    if (cfg.data->event_time) popt.vline = static_cast<double>(*cfg.data->event_time);
    write_svg_lineplot(out / "weight_evolution.svg", {s}, popt);

    std::cout << "track: " << res.steps << " steps, " << res.snapshot_steps.size()
              << " snapshots -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_batch(const CommonArgs& args) {
    ExperimentConfig cfg = load(args);
    if (!cfg.data) throw ConfigError("batch: config must declare a data section");

    std::vector<double> e;
    int n_nodes = 0;
    if (cfg.data->kind == "signals") {
        SignalMatrix m = read_signal_csv(cfg.data->path);
        if (cfg.data->zscore) zscore_channels(m);
        e = mean_dissimilarity(m);
        n_nodes = m.cols;
    } else {
        e = read_edge_vector_csv(cfg.data->path);
        // solve E = N(N-1)/2 for N
        const double nd = (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(e.size()))) / 2.0;
        n_nodes = static_cast<int>(nd + 0.5);
        if (n_nodes < 2 ||
            static_cast<std::size_t>(n_nodes) * (n_nodes - 1) / 2 != e.size())
            throw DataError("batch: dissimilarity length is not N(N-1)/2 for any N");
    }

    const PairIndexMap g(n_nodes);
    BatchOptions opt;
    opt.tol = cfg.solver.tol;
    opt.max_iter = cfg.solver.max_iter;
    opt.lambda0_seed = cfg.solver.lambda0_seed;
    const SolveReport rep = solve_batch(g, e, cfg.solver.alpha, cfg.solver.beta, opt);

    const fs::path out = cfg.output_dir;
    write_edge_csv(out / "w_star.csv", g, rep.w_star);
    write_edge_vector_csv(out / "w_star_flat.csv", rep.w_star);

    json jrep;
    jrep["n_nodes"] = n_nodes;
    jrep["alpha"] = cfg.solver.alpha;
    jrep["beta"] = cfg.solver.beta;
    jrep["iterations"] = rep.iterations;
    jrep["converged"] = rep.converged;
    jrep["lambda_final"] = rep.lambda_final;
    jrep["primal_change_history"] = rep.primal_change_history;
    fs::create_directories(out);
    std::ofstream jout(out / "solve_report.json");
    jout << jrep.dump(2) << '\n';

    std::cout << "batch: " << (rep.converged ? "converged" : "did NOT converge") << " in "
              << rep.iterations << " iterations -> " << (out / "w_star.csv").string()
              << "\n";
    return rep.converged ? kExitOk : kExitNoConvergence;
}

int cmd_gridsearch(const CommonArgs& args) {
    ExperimentConfig cfg = load(args);
    if (!cfg.scenario) throw ConfigError("gridsearch: config must declare a scenario");
    if (!cfg.grid) throw ConfigError("gridsearch: config must declare a grid");

    const GridSearchResult res =
        grid_search(*cfg.scenario, cfg.grid->alphas, cfg.grid->betas, cfg.solver.memory,
                    cfg.grid->final_window, cfg.solver.edge_threshold_rel);

    const fs::path out = cfg.output_dir;
    std::vector<std::vector<std::string>> rows;
    for (const auto& cell : res.table)
        rows.push_back({format_double(cell.alpha), format_double(cell.beta),
                        format_double(cell.mean_f)});
    const std::vector<std::string> header{"alpha", "beta", "mean_f"};
    write_table_csv(out / "score_table.csv", header, rows);

    json best;
    best["alpha"] = res.alpha;
    best["beta"] = res.beta;
    best["mean_f"] = res.mean_f;
    fs::create_directories(out);
    std::ofstream jout(out / "best_params.json");
    jout << best.dump(2) << '\n';

    std::cout << "gridsearch: best alpha=" << format_double(res.alpha)
              << " beta=" << format_double(res.beta)
              << " mean_f=" << format_double(res.mean_f) << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& input, const std::optional<std::string>& out_dir) {
    const fs::path in = input;
    const auto rows = read_csv_rows(in);
    if (rows.size() < 2) throw DataError("plot: '" + in.string() + "' has no data rows");
    const auto& header = rows[0];

    const fs::path out =
        (out_dir ? fs::path(*out_dir) : in.parent_path()) / in.stem().concat(".svg");

    auto column = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError("plot: column '" + std::string(name) + "' missing in '" +
                            in.string() + "'");
        return static_cast<std::size_t>(it - header.begin());
    };

    if (std::find(header.begin(), header.end(), "error") != header.end()) {
        const auto t_col = column("t"), m_col = column("method"), e_col = column("error");
        std::vector<PlotSeries> series;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& method = rows[r][m_col];
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const PlotSeries& s) { return s.label == method; });
            if (it == series.end()) {
                series.push_back({method, {}, {}});
                it = series.end() - 1;
            }
            it->x.push_back(parse_double(rows[r][t_col], "plot t"));
            it->y.push_back(parse_double(rows[r][e_col], "plot error"));
        }
        PlotOptions popt;
        popt.title = "tracking error";
        popt.y_label = "||w_t - w_t*||_2";
        popt.log_y = true;
        write_svg_lineplot(out, series, popt);
    } else if (std::find(header.begin(), header.end(), "total_weight") != header.end()) {
        const auto t_col = column("t"), w_col = column("total_weight");
        PlotSeries s;
        s.label = "total weight";
        std::optional<double> vline;
        const bool has_event = std::find(header.begin(), header.end(), "is_event") != header.end();
        for (std::size_t r = 1; r < rows.size(); ++r) {
            s.x.push_back(parse_double(rows[r][t_col], "plot t"));
            s.y.push_back(parse_double(rows[r][w_col], "plot total_weight"));
            if (has_event && rows[r][column("is_event")] == "1") vline = s.x.back();
        }
        PlotOptions popt;
        popt.title = "total edge weight";
        popt.y_label = "sum of edge weights";
        popt.vline = vline;
        write_svg_lineplot(out, {s}, popt);
    } else {
        throw DataError("plot: '" + in.string() +
                        "' has neither an error nor a total_weight column");
    }
    std::cout << "plot: wrote " << out.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph topology identification and tracking from smooth signals"};
    app.require_subcommand(1);

    CommonArgs synth_args, track_args, batch_args, grid_args;
    std::string plot_input;
    std::optional<std::string> plot_out;

    auto* synth = app.add_subcommand("synth", "run a synthetic scenario experiment");
    add_common(synth, synth_args);
    auto* track = app.add_subcommand("track", "track topology over a signal CSV");
    add_common(track, track_args);
    auto* batch = app.add_subcommand("batch", "batch-solve a signal or dissimilarity file");
    add_common(batch, batch_args);
    auto* grid = app.add_subcommand("gridsearch", "tune alpha/beta by edge F-measure");
    add_common(grid, grid_args);
    auto* plot = app.add_subcommand("plot", "regenerate the SVG plot from a result CSV");
    plot->add_option("--input", plot_input, "result CSV")->required();
    plot->add_option("--out", plot_out, "output directory (default: next to the input)");

    try {
        app.parse(argc, argv);
        if (synth->parsed()) return cmd_synth(synth_args);
        if (track->parsed()) return cmd_track(track_args);
        if (batch->parsed()) return cmd_batch(batch_args);
        if (grid->parsed()) return cmd_gridsearch(grid_args);
        if (plot->parsed()) return cmd_plot(plot_input, plot_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
