/*
 * Experiment orchestration shared by the CLI and the acceptance suite:
 * scenario streams, per-step tracking records, reference solutions, and the
 * real-data tracking pipeline.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphtrack/config.hpp"
#include "graphtrack/csv.hpp"
#include "graphtrack/synth.hpp"

namespace graphtrack {

enum class ReferenceMode {
    Running,       // batch solution on the samples seen so far in the segment
    SegmentFinal,  // batch solution on the full segment mean
};

ReferenceMode reference_mode_from_string(const std::string& name);

struct MethodCurve {
    std::string method;  // "dpg" | "primal_pg"
    std::vector<double> error;
    std::vector<double> total_weight;
    std::vector<double> f_measure;
};

struct SynthRunResult {
    std::vector<MethodCurve> curves;                 // values indexed by t-1
    std::vector<std::vector<double>> w_ref_final;    // per-segment reference at segment end
    std::optional<SignalMatrix> signals;             // filled when exporting
    long reference_iterations = 0;
};

// Generates the scenario stream, runs the configured methods, and scores each
// step against the time-varying reference solution.
SynthRunResult run_synth_experiment(const ExperimentConfig& cfg);

struct TrackRunResult {
    std::vector<double> total_weight;                 // per step
    std::vector<long> snapshot_steps;                 // realized snapshot times
    std::vector<std::vector<double>> snapshots;       // estimate at those times
    long steps = 0;
};

// Runs the online tracker over the rows of a signal matrix (no ground truth).
TrackRunResult run_track_experiment(const ExperimentConfig& cfg, const SignalMatrix& m);

// mean dissimilarity over all rows of a signal matrix
std::vector<double> mean_dissimilarity(const SignalMatrix& m);

// in-place per-channel standardization (constant channels are left centered)
void zscore_channels(SignalMatrix& m);

}  // namespace graphtrack
