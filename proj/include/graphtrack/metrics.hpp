/*
 * Evaluation utilities: tracking error, edge-set F-measure with parameter
 * grid search, and weighted closeness centrality for learned graphs.
 */
#pragma once

#include <span>
#include <vector>

#include "graphtrack/dissimilarity.hpp"
#include "graphtrack/edge_space.hpp"
#include "graphtrack/synth.hpp"

namespace graphtrack {

// ||w_hat - w_ref||_2
double tracking_error(std::span<const double> w_hat, std::span<const double> w_ref);

double total_weight(std::span<const double> w);

struct FScore {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

// predicted edge set {k : w_hat[k] > threshold} against binary truth
FScore f_measure(std::span<const double> w_hat, std::span<const double> w_true01,
                 double threshold);

// presence threshold used when none is configured: rel * max(w) (rel = 1e-4)
double default_edge_threshold(std::span<const double> w, double rel = 1e-4);

struct GridCell {
    double alpha = 0.0;
    double beta = 0.0;
    double mean_f = 0.0;
};

struct GridSearchResult {
    double alpha = 0.0;
    double beta = 0.0;
    double mean_f = 0.0;
    std::vector<GridCell> table;
};

// Runs the online tracker once per (alpha, beta) on the scenario's stream and
// scores the mean F-measure over the final window of steps against the active
// ground truth. Ties break toward smaller beta, then smaller alpha. Grid
// points run in parallel; all of them see the identical signal stream.
GridSearchResult grid_search(const GraphScenario& scenario,
                             std::span<const double> alphas,
                             std::span<const double> betas, const MemoryMode& memory,
                             long final_window = 200,
                             double edge_threshold_rel = 1e-4);

struct ClosenessResult {
    std::vector<double> closeness;  // 1 / sum of in-component distances; isolated: 0
    std::vector<int> component;     // component label per node
    bool connected = true;
};

// Shortest-path closeness with edge length 1/weight over edges above the
// threshold. Pairs in different components contribute nothing.
ClosenessResult closeness_centrality(const PairIndexMap& g, std::span<const double> w,
                                     double edge_threshold);

}  // namespace graphtrack
