/*
 * Per-sample topology tracking: absorb one signal snapshot into the running
 * dissimilarity, take one dual proximal-gradient step, read out the estimate
 * from the refreshed dual variable. O(N^2) time and constant memory per step.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graphtrack/dissimilarity.hpp"
#include "graphtrack/dual_dpg.hpp"

namespace graphtrack {

struct TrackerOptions {
    double alpha = 1.0;
    double beta = 1.0;
    MemoryMode memory = InfiniteMemory{};
    int inner_steps = 1;  // dual steps per sample; 1 is the streaming regime
    std::optional<std::uint64_t> lambda0_seed;  // default: deterministic all-ones start
};

class OnlineTracker {
public:
    OnlineTracker(int n_nodes, const TrackerOptions& opt);

    // absorb x_t, update the dual variable, return the new estimate
    std::span<const double> step(std::span<const double> x_t);

    // estimate read off the current dual iterate; valid after the first step
    std::span<const double> current_estimate() const;

    long steps() const noexcept { return t_; }
    int n_nodes() const noexcept { return map_.n_nodes(); }
    double alpha() const noexcept { return opt_.alpha; }
    double beta() const noexcept { return opt_.beta; }
    std::span<const double> lambda() const noexcept { return lambda_; }
    std::span<const double> running_dissimilarity() const noexcept {
        return dissim_.running();
    }

    // total bytes held in growable buffers; constant over the tracker's life
    std::size_t memory_footprint_bytes() const noexcept;

private:
    PairIndexMap map_;
    TrackerOptions opt_;
    DissimilarityState dissim_;
    std::vector<double> lambda_;
    std::vector<double> w_hat_;
    std::vector<double> e_t_;
    std::vector<double> v_;
    DualStepScratch scratch_;
    long t_ = 0;
};

}  // namespace graphtrack
