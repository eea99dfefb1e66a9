#include "graphtrack/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace graphtrack {

namespace {
using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(where + "." + key, "unknown key");
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
    return obj[key].get<double>();
}

long get_integer(const json& obj, const std::string& where, const char* key,
                 long fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) fail(where + "." + key, "expected an integer");
    return obj[key].get<long>();
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) fail(where + "." + key, "expected true/false");
    return obj[key].get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) fail(where + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const std::string& where,
                                    const char* key) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    if (!obj[key].is_array()) fail(where + "." + key, "expected an array of numbers");
    for (const auto& v : obj[key]) {
        if (!v.is_number()) fail(where + "." + key, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<long> get_integer_list(const json& obj, const std::string& where,
                                   const char* key) {
    std::vector<long> out;
    if (!obj.contains(key)) return out;
    if (!obj[key].is_array()) fail(where + "." + key, "expected an array of integers");
    for (const auto& v : obj[key]) {
        if (!v.is_number_integer()) fail(where + "." + key, "expected an array of integers");
        out.push_back(v.get<long>());
    }
    return out;
}

MemoryMode parse_memory(const json& solver, const std::string& where) {
    if (!solver.contains("memory")) return InfiniteMemory{};
    const auto& mem = solver["memory"];
    const std::string mwhere = where + ".memory";
    if (mem.is_string()) {
        const auto s = mem.get<std::string>();
        if (s == "infinite") return InfiniteMemory{};
        if (s == "ewma") return Ewma{kDefaultGamma};
        fail(mwhere, "expected \"infinite\", \"ewma\", or {\"mode\":...}");
    }
    if (!mem.is_object()) fail(mwhere, "expected a string or an object");
    require_keys(mem, mwhere, {"mode", "gamma"});
    const auto mode = get_string(mem, mwhere, "mode", "");
    if (mode == "infinite") {
        if (mem.contains("gamma")) fail(mwhere + ".gamma", "not valid for infinite memory");
        return InfiniteMemory{};
    }
    if (mode == "ewma") {
        const double gamma = get_number(mem, mwhere, "gamma", kDefaultGamma);
        if (!(gamma > 0.0 && gamma < 1.0)) fail(mwhere + ".gamma", "must lie in (0,1)");
        return Ewma{gamma};
    }
    fail(mwhere + ".mode", "expected \"infinite\" or \"ewma\"");
}

SolverSection parse_solver(const json& root) {
    SolverSection s;
    if (!root.contains("solver")) return s;
    const auto& solver = root["solver"];
    const std::string where = "solver";
    if (!solver.is_object()) fail(where, "expected an object");
    require_keys(solver, where,
                 {"alpha", "beta", "memory", "tol", "max_iter", "inner_steps",
                  "lambda0_seed", "eta", "degree_floor", "edge_threshold_rel"});
    s.alpha = get_number(solver, where, "alpha", s.alpha);
    s.beta = get_number(solver, where, "beta", s.beta);
    if (!(s.alpha > 0.0)) fail(where + ".alpha", "must be > 0");
    if (!(s.beta > 0.0)) fail(where + ".beta", "must be > 0");
    s.memory = parse_memory(solver, where);
    s.tol = get_number(solver, where, "tol", s.tol);
    if (!(s.tol > 0.0)) fail(where + ".tol", "must be > 0");
    s.max_iter = get_integer(solver, where, "max_iter", s.max_iter);
    if (s.max_iter < 1) fail(where + ".max_iter", "must be >= 1");
    s.inner_steps = static_cast<int>(get_integer(solver, where, "inner_steps", 1));
    if (s.inner_steps < 1) fail(where + ".inner_steps", "must be >= 1");
    if (solver.contains("lambda0_seed"))
        s.lambda0_seed = static_cast<std::uint64_t>(
            get_integer(solver, where, "lambda0_seed", 0));
    if (solver.contains("eta")) {
        s.eta = get_number(solver, where, "eta", 0.0);
        if (!(*s.eta > 0.0)) fail(where + ".eta", "must be > 0");
    }
    s.degree_floor = get_number(solver, where, "degree_floor", s.degree_floor);
    if (!(s.degree_floor > 0.0)) fail(where + ".degree_floor", "must be > 0");
    s.edge_threshold_rel =
        get_number(solver, where, "edge_threshold_rel", s.edge_threshold_rel);
    if (!(s.edge_threshold_rel > 0.0)) fail(where + ".edge_threshold_rel", "must be > 0");
    return s;
}

GraphScenario parse_scenario(const json& root, std::uint64_t seed) {
    GraphScenario sc;
    const auto& scen = root["scenario"];
    const std::string where = "scenario";
    if (!scen.is_object()) fail(where, "expected an object");
    require_keys(scen, where,
                 {"model", "n_nodes", "p", "blocks", "p_in", "p_out", "switch_times",
                  "resample_fraction", "noise_sigma", "horizon"});
    sc.seed = seed;
    sc.n_nodes = static_cast<int>(get_integer(scen, where, "n_nodes", 100));
    if (sc.n_nodes < 2) fail(where + ".n_nodes", "must be >= 2");
    const auto model = get_string(scen, where, "model", "er");
    if (model == "er") {
        ErModel er;
        er.p = get_number(scen, where, "p", er.p);
        if (!(er.p > 0.0 && er.p <= 1.0)) fail(where + ".p", "must lie in (0,1]");
        for (const char* k : {"blocks", "p_in", "p_out"})
            if (scen.contains(k)) fail(where + "." + k, "not valid for the er model");
        sc.model = er;
    } else if (model == "sbm") {
        SbmModel sbm;
        for (long b : get_integer_list(scen, where, "blocks")) {
            if (b < 1) fail(where + ".blocks", "block sizes must be >= 1");
            sbm.blocks.push_back(static_cast<int>(b));
        }
        if (sbm.blocks.empty())
            sbm.blocks = {sc.n_nodes / 2, sc.n_nodes - sc.n_nodes / 2};
        sbm.p_in = get_number(scen, where, "p_in", sbm.p_in);
        sbm.p_out = get_number(scen, where, "p_out", sbm.p_out);
        if (!(sbm.p_in >= 0.0 && sbm.p_in <= 1.0)) fail(where + ".p_in", "must lie in [0,1]");
        if (!(sbm.p_out >= 0.0 && sbm.p_out <= 1.0))
            fail(where + ".p_out", "must lie in [0,1]");
        if (scen.contains("p")) fail(where + ".p", "not valid for the sbm model");
        sc.model = sbm;
    } else {
        fail(where + ".model", "expected \"er\" or \"sbm\"");
    }
    sc.switch_times = get_integer_list(scen, where, "switch_times");
    sc.resample_fraction =
        get_number(scen, where, "resample_fraction", sc.resample_fraction);
    if (!(sc.resample_fraction >= 0.0 && sc.resample_fraction <= 1.0))
        fail(where + ".resample_fraction", "must lie in [0,1]");
    sc.noise_sigma = get_number(scen, where, "noise_sigma", kDefaultNoiseSigma);
    if (sc.noise_sigma < 0.0) fail(where + ".noise_sigma", "must be >= 0");
    sc.horizon = get_integer(scen, where, "horizon", sc.horizon);
    if (sc.horizon < 1) fail(where + ".horizon", "must be >= 1");
    for (long st : sc.switch_times)
        if (st < 1 || st >= sc.horizon)
            fail(where + ".switch_times", "switch times must lie in [1, horizon)");
    return sc;
}

DataSection parse_data(const json& root, const std::filesystem::path& base_dir) {
    DataSection d;
    const auto& data = root["data"];
    const std::string where = "data";
    if (!data.is_object()) fail(where, "expected an object");
    require_keys(data, where, {"path", "zscore", "kind", "event_time", "snapshot_times"});
    const auto p = get_string(data, where, "path", "");
    if (p.empty()) fail(where + ".path", "required");
    d.path = std::filesystem::path(p);
    if (d.path.is_relative()) d.path = base_dir / d.path;
    if (!std::filesystem::exists(d.path))
        fail(where + ".path", "file does not exist: " + d.path.string());
    d.zscore = get_bool(data, where, "zscore", false);
    d.kind = get_string(data, where, "kind", "signals");
    if (d.kind != "signals" && d.kind != "dissimilarity")
        fail(where + ".kind", "expected \"signals\" or \"dissimilarity\"");
    if (data.contains("event_time")) d.event_time = get_integer(data, where, "event_time", 0);
    d.snapshot_times = get_integer_list(data, where, "snapshot_times");
    return d;
}

GridSection parse_grid(const json& root) {
    GridSection g;
    const auto& grid = root["grid"];
    const std::string where = "grid";
    if (!grid.is_object()) fail(where, "expected an object");
    require_keys(grid, where, {"alpha", "beta", "final_window"});
    g.alphas = get_number_list(grid, where, "alpha");
    g.betas = get_number_list(grid, where, "beta");
    if (g.alphas.empty()) fail(where + ".alpha", "non-empty grid required");
    if (g.betas.empty()) fail(where + ".beta", "non-empty grid required");
    for (double a : g.alphas)
        if (!(a > 0.0)) fail(where + ".alpha", "grid values must be > 0");
    for (double b : g.betas)
        if (!(b > 0.0)) fail(where + ".beta", "grid values must be > 0");
    g.final_window = get_integer(grid, where, "final_window", g.final_window);
    if (g.final_window < 1) fail(where + ".final_window", "must be >= 1");
    return g;
}
}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        const long line =
            1 + static_cast<long>(std::count(text.begin(), text.begin() +
                                             std::min<std::size_t>(err.byte, text.size()), '\n'));
        throw ConfigError("'" + path.string() + "' line " + std::to_string(line) + ": " +
                          err.what());
    }
    if (!root.is_object()) throw ConfigError("'" + path.string() + "': expected a JSON object");
    require_keys(root, "config",
                 {"seed", "output_dir", "methods", "reference", "export_signals", "solver",
                  "scenario", "data", "grid"});

    ExperimentConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(get_integer(root, "config", "seed", 1));
    cfg.output_dir = get_string(root, "config", "output_dir", "out");
    if (root.contains("methods")) {
        const auto& methods = root["methods"];
        if (!methods.is_array()) fail("config.methods", "expected an array of method names");
        cfg.run_dpg = cfg.run_primal = false;
        for (const auto& m : methods) {
            if (!m.is_string()) fail("config.methods", "expected strings");
            const auto name = m.get<std::string>();
            if (name == "dpg")
                cfg.run_dpg = true;
            else if (name == "primal_pg")
                cfg.run_primal = true;
            else if (name == "both")
                cfg.run_dpg = cfg.run_primal = true;
            else
                fail("config.methods", "unknown method '" + name + "'");
        }
        if (!cfg.run_dpg && !cfg.run_primal) fail("config.methods", "no method selected");
    }
    cfg.reference = get_string(root, "config", "reference", cfg.reference);
    if (cfg.reference != "running" && cfg.reference != "segment")
        fail("config.reference", "expected \"running\" or \"segment\"");
    cfg.export_signals = get_bool(root, "config", "export_signals", false);
    cfg.solver = parse_solver(root);
    if (root.contains("scenario")) cfg.scenario = parse_scenario(root, cfg.seed);
    if (root.contains("data"))
        cfg.data = parse_data(root, std::filesystem::absolute(path).parent_path());
    if (root.contains("grid")) cfg.grid = parse_grid(root);
    return cfg;
}

}  // namespace graphtrack
