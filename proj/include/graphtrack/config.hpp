/*
 * Experiment configuration: a single JSON file with nested sections. Unknown
 * keys are errors (a typo in alpha or gamma must not silently corrupt an
 * experiment); ranges are validated up front; referenced paths must exist.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphtrack/defaults.hpp"
#include "graphtrack/dissimilarity.hpp"
#include "graphtrack/synth.hpp"

namespace graphtrack {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverSection {
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    MemoryMode memory = InfiniteMemory{};
    double tol = kDefaultTol;
    long max_iter = kDefaultMaxIter;
    int inner_steps = 1;
    std::optional<std::uint64_t> lambda0_seed;  // random dual start; default all-ones
    std::optional<double> eta;                  // primal step size; default beta/(N-1)
    double degree_floor = kDefaultDegreeFloor;
    double edge_threshold_rel = kDefaultEdgeThresholdRel;
};

struct DataSection {
    std::filesystem::path path;
    bool zscore = false;  // per-channel standardization before dissimilarities
    std::string kind = "signals";  // "signals" | "dissimilarity"
    std::optional<long> event_time;
    std::vector<long> snapshot_times;
};

struct GridSection {
    std::vector<double> alphas;
    std::vector<double> betas;
    long final_window = 200;
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
    bool run_dpg = true;
    bool run_primal = false;
    std::string reference = "running";  // "running" | "segment"
    bool export_signals = false;
    SolverSection solver;
    std::optional<GraphScenario> scenario;
    std::optional<DataSection> data;
    std::optional<GridSection> grid;
};

// Parses and validates; throws ConfigError with the offending key path (and
// the line for syntax errors).
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace graphtrack
