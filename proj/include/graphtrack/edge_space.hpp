/*
 * Compact edge-space parametrization of undirected weighted graphs.
 *
 * An N-node graph with zero diagonal and symmetric nonnegative weights is
 * stored as a length N(N-1)/2 vector w over the fixed lexicographic ordering
 * of node pairs (0,1),(0,2),...,(0,N-1),(1,2),...  The degree operator S
 * (d = S w) and its adjoint are applied as index-arithmetic loops; S itself
 * is never materialized.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace graphtrack {

// Parallelism cutovers: below these sizes the fork/join overhead outweighs
// the loop body (measured on the tracker workloads; see bench/kernel_bench).
inline constexpr int kParallelNodeCutoff = 192;        // node-indexed O(N^2) loops
inline constexpr std::size_t kParallelPairCutoff = 16384;  // edge-indexed loops

class PairIndexMap {
public:
    explicit PairIndexMap(int n_nodes);

    int n_nodes() const noexcept { return n_; }
    std::size_t num_pairs() const noexcept {
        return static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    }

    // flat index of pair (i,j), 0 <= i < j < N
    std::size_t index_of(int i, int j) const;

    // inverse of index_of
    std::pair<int, int> pair_of(std::size_t k) const;

    // pairs (i,i+1)..(i,N-1) occupy [row_offset(i), row_offset(i)+N-1-i)
    std::size_t row_offset(int i) const noexcept {
        return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i + 1) / 2;
    }

private:
    int n_;
};

// d = S w: nodal degrees from edge weights, O(N^2)
void apply_degree_operator(const PairIndexMap& g, std::span<const double> w,
                           std::span<double> d);

// out = S^T lambda: out[k] = lambda_i + lambda_j for pair k = (i,j)
void apply_degree_adjoint(const PairIndexMap& g, std::span<const double> lambda,
                          std::span<double> out);

// dense symmetric adjacency with zero diagonal, row-major N x N
std::vector<double> to_adjacency(const PairIndexMap& g, std::span<const double> w);
std::vector<double> from_adjacency(const PairIndexMap& g, std::span<const double> adj);

// TV(x) = x^T L x = 1/2 sum_{i!=j} W_ij (x_i - x_j)^2
double total_variation(const PairIndexMap& g, std::span<const double> w,
                       std::span<const double> x);

// Operator application counters (cost accounting in tests and benchmarks).
struct OperatorCounts {
    std::uint64_t degree_ops = 0;   // S applications
    std::uint64_t adjoint_ops = 0;  // S^T applications
};
OperatorCounts operator_counts();
void reset_operator_counts();

namespace serial {
// Reference implementations kept for testing the parallel kernels.
void apply_degree_operator(const PairIndexMap& g, std::span<const double> w,
                           std::span<double> d);
void apply_degree_adjoint(const PairIndexMap& g, std::span<const double> lambda,
                          std::span<double> out);
double total_variation(const PairIndexMap& g, std::span<const double> w,
                       std::span<const double> x);
}  // namespace serial

}  // namespace graphtrack
