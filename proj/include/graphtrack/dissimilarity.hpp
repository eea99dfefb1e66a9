/*
 * Streaming pairwise-dissimilarity statistic.
 *
 * Per snapshot x_t the dissimilarity is e_t[k] = (x_i - x_j)^2 over the
 * canonical pair order. DissimilarityState folds the stream into a running
 * e_{1:t} under either infinite-memory averaging or an EWMA with discount
 * gamma, using constant memory.
 */
#pragma once

#include <span>
#include <variant>
#include <vector>

#include "graphtrack/edge_space.hpp"

namespace graphtrack {

struct InfiniteMemory {};

struct Ewma {
    double gamma = 0.002;  // discount in (0,1); larger forgets faster
};

using MemoryMode = std::variant<InfiniteMemory, Ewma>;

// e_t[k] = (x_i - x_j)^2; rejects non-finite input
void snapshot_dissimilarity(const PairIndexMap& g, std::span<const double> x,
                            std::span<double> e_t);

namespace serial {
void snapshot_dissimilarity(const PairIndexMap& g, std::span<const double> x,
                            std::span<double> e_t);
}

class DissimilarityState {
public:
    DissimilarityState(int n_nodes, MemoryMode mode);

    // fold one per-snapshot dissimilarity vector into the running statistic
    void absorb(std::span<const double> e_t);

    std::span<const double> running() const noexcept { return e_; }
    long count() const noexcept { return count_; }
    int n_nodes() const noexcept { return map_.n_nodes(); }
    const MemoryMode& mode() const noexcept { return mode_; }

private:
    PairIndexMap map_;
    MemoryMode mode_;
    std::vector<double> e_;
    long count_ = 0;
};

}  // namespace graphtrack
