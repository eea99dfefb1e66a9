/*
 * Seeded generators: ER / stochastic-block-model ground-truth graphs,
 * piecewise-constant rewiring dynamics, and smooth Gaussian signal streams
 * x ~ N(0, L^+ + sigma^2 I) driven by the ground-truth Laplacian.
 */
#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "graphtrack/edge_space.hpp"

namespace graphtrack {

struct ErModel {
    double p = 0.2;  // independent edge probability
};

struct SbmModel {
    std::vector<int> blocks;  // node count per community, sums to n_nodes
    double p_in = 0.3;
    double p_out = 0.05;
};

struct GraphScenario {
    std::variant<ErModel, SbmModel> model = ErModel{};
    int n_nodes = 100;
    std::vector<long> switch_times;  // topology changes take effect after each t
    double resample_fraction = 0.1;
    double noise_sigma = 0.01;
    long horizon = 2000;
    std::uint64_t seed = 1;
};

bool is_connected(const PairIndexMap& g, std::span<const double> w,
                  double threshold = 0.0);

// 0/1 weights, connected (bounded retries); deterministic in (seed, segment)
std::vector<double> generate_graph(const GraphScenario& scenario, int segment_index);

// move ceil(fraction * |E|) edges: remove uniformly among present ones, add
// the same number among pairs absent from the input; connected (retries)
std::vector<double> resample_edges(const PairIndexMap& g, std::span<const double> w01,
                                   double fraction, std::uint64_t seed);

// Samples x = V f(Lambda) z + sigma z' with z, z' standard normal, where
// L = V Lambda V' and f maps nonzero eigenvalues to 1/sqrt(lambda).
class SmoothSignalSampler {
public:
    SmoothSignalSampler(const PairIndexMap& g, std::span<const double> w_true,
                        double noise_sigma, std::uint64_t seed);

    void sample(long t, std::span<double> x_out) const;  // deterministic in (seed, t)
    std::vector<double> sample(long t) const;

    int n_nodes() const noexcept { return n_; }

private:
    int n_;
    double sigma_;
    std::uint64_t seed_;
    std::vector<double> factor_;  // row-major N x N square root V diag(f(Lambda))
};

std::vector<double> sample_signal(const PairIndexMap& g, std::span<const double> w_true,
                                  double noise_sigma, std::uint64_t seed, long t);

// Piecewise-constant scenario: per-segment ground truth plus signal stream.
class ScenarioStream {
public:
    explicit ScenarioStream(const GraphScenario& scenario);

    int n_segments() const noexcept { return static_cast<int>(graphs_.size()); }
    int segment_of(long t) const;  // t in [1, horizon]
    std::span<const double> truth(int segment) const { return graphs_.at(segment); }
    void signal(long t, std::span<double> x_out) const;
    const GraphScenario& scenario() const noexcept { return scenario_; }
    int n_nodes() const noexcept { return map_.n_nodes(); }

private:
    GraphScenario scenario_;
    PairIndexMap map_;
    std::vector<std::vector<double>> graphs_;
    std::vector<SmoothSignalSampler> samplers_;
};

}  // namespace graphtrack
