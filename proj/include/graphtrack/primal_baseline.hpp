/*
 * Online projected-gradient baseline in the primal domain, matched to the
 * dual tracker's O(N^2) per-step cost. Smooth part of the objective:
 * h(w) = 2 e'w + beta ||w||^2 - alpha 1'log(S w); one step clamps
 * w - eta grad h at zero and backtracks eta if the degree floor is violated.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphtrack/dissimilarity.hpp"
#include "graphtrack/edge_space.hpp"

namespace graphtrack {

struct PrimalOptions {
    double alpha = 1.0;
    double beta = 1.0;
    MemoryMode memory = InfiniteMemory{};
    std::optional<double> step_size;  // default beta/(N-1)
    double degree_floor = 1e-9;
    int max_backtracks = 50;
};

struct PrimalStepInfo {
    bool accepted = true;
    int backtracks = 0;
};

struct PrimalScratch {
    std::vector<double> degrees;     // S w
    std::vector<double> node_terms;  // alpha / degree
    std::vector<double> grad_pair;   // S^T node_terms
    std::vector<double> candidate;
    explicit PrimalScratch(const PairIndexMap& g)
        : degrees(g.n_nodes(), 0.0),
          node_terms(g.n_nodes(), 0.0),
          grad_pair(g.num_pairs(), 0.0),
          candidate(g.num_pairs(), 0.0) {}
    std::size_t bytes() const noexcept {
        return (degrees.capacity() + node_terms.capacity() + grad_pair.capacity() +
                candidate.capacity()) *
               sizeof(double);
    }
};

// grad h(w) = 2e + 2 beta w - S^T(alpha / (S w)); requires S w > 0
void primal_gradient(const PairIndexMap& g, double alpha, double beta,
                     std::span<const double> e, std::span<const double> w,
                     std::span<double> grad_out, PrimalScratch& scratch);

// One projected-gradient step with frozen dissimilarity e. On success w is
// replaced by the accepted iterate; on rejection w is left untouched.
PrimalStepInfo primal_update(const PairIndexMap& g, const PrimalOptions& opt,
                             double eta, std::span<const double> e,
                             std::span<double> w, PrimalScratch& scratch);

class PrimalTracker {
public:
    PrimalTracker(int n_nodes, const PrimalOptions& opt);

    std::span<const double> step(std::span<const double> x_t);
    std::span<const double> current_estimate() const;

    const PrimalStepInfo& last_step_info() const noexcept { return last_info_; }
    long steps() const noexcept { return t_; }
    long rejected_steps() const noexcept { return rejected_; }
    double step_size() const noexcept { return eta_; }
    std::span<const double> running_dissimilarity() const noexcept {
        return dissim_.running();
    }
    std::size_t memory_footprint_bytes() const noexcept;

private:
    PairIndexMap map_;
    PrimalOptions opt_;
    double eta_;
    DissimilarityState dissim_;
    std::vector<double> w_;
    std::vector<double> e_t_;
    PrimalScratch scratch_;
    PrimalStepInfo last_info_;
    long t_ = 0;
    long rejected_ = 0;
};

}  // namespace graphtrack
