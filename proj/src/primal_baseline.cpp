#include "graphtrack/primal_baseline.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphtrack {

void primal_gradient(const PairIndexMap& g, double alpha, double beta,
                     std::span<const double> e, std::span<const double> w,
                     std::span<double> grad_out, PrimalScratch& scratch) {
    apply_degree_operator(g, w, scratch.degrees);
    const int n = g.n_nodes();
    for (int i = 0; i < n; ++i) {
        if (!(scratch.degrees[i] > 0.0))
            throw std::invalid_argument("primal_gradient: nonpositive degree");
        scratch.node_terms[i] = alpha / scratch.degrees[i];
    }
    apply_degree_adjoint(g, scratch.node_terms, scratch.grad_pair);
    const std::int64_t m = static_cast<std::int64_t>(w.size());
    if (m < static_cast<std::int64_t>(kParallelPairCutoff)) {
        for (std::int64_t k = 0; k < m; ++k)
            grad_out[k] = 2.0 * e[k] + 2.0 * beta * w[k] - scratch.grad_pair[k];
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < m; ++k)
        grad_out[k] = 2.0 * e[k] + 2.0 * beta * w[k] - scratch.grad_pair[k];
}

PrimalStepInfo primal_update(const PairIndexMap& g, const PrimalOptions& opt,
                             double eta, std::span<const double> e,
                             std::span<double> w, PrimalScratch& scratch) {
    // gradient at the current iterate, reused across backtracks
    apply_degree_operator(g, w, scratch.degrees);
    const int n = g.n_nodes();
    for (int i = 0; i < n; ++i) {
        if (!(scratch.degrees[i] > 0.0))
            throw std::invalid_argument("primal_update: infeasible starting point");
        scratch.node_terms[i] = opt.alpha / scratch.degrees[i];
    }
    apply_degree_adjoint(g, scratch.node_terms, scratch.grad_pair);

    const std::int64_t m = static_cast<std::int64_t>(w.size());
    PrimalStepInfo info;
    double step = eta;
    const bool small = m < static_cast<std::int64_t>(kParallelPairCutoff);
    for (int attempt = 0; attempt <= opt.max_backtracks; ++attempt) {
        if (small) {
            for (std::int64_t k = 0; k < m; ++k) {
                const double grad =
                    2.0 * e[k] + 2.0 * opt.beta * w[k] - scratch.grad_pair[k];
                const double cand = w[k] - step * grad;
                scratch.candidate[k] = cand > 0.0 ? cand : 0.0;
            }
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t k = 0; k < m; ++k) {
                const double grad =
                    2.0 * e[k] + 2.0 * opt.beta * w[k] - scratch.grad_pair[k];
                const double cand = w[k] - step * grad;
                scratch.candidate[k] = cand > 0.0 ? cand : 0.0;
            }
        }
        apply_degree_operator(g, scratch.candidate, scratch.degrees);
        const double min_degree =
            *std::min_element(scratch.degrees.begin(), scratch.degrees.end());
        if (min_degree > opt.degree_floor) {
            std::copy(scratch.candidate.begin(), scratch.candidate.end(), w.begin());
            info.backtracks = attempt;
            return info;
        }
        step *= 0.5;
    }
    info.accepted = false;
    info.backtracks = opt.max_backtracks;
    return info;
}

PrimalTracker::PrimalTracker(int n_nodes, const PrimalOptions& opt)
    : map_(n_nodes),
      opt_(opt),
      eta_(opt.step_size ? *opt.step_size : opt.beta / (n_nodes - 1)),
      dissim_(n_nodes, opt.memory),
      w_(map_.num_pairs(), 1.0),
      e_t_(map_.num_pairs(), 0.0),
      scratch_(map_) {
    if (!(opt.alpha > 0.0)) throw std::invalid_argument("PrimalTracker: alpha must be > 0");
    if (!(opt.beta > 0.0)) throw std::invalid_argument("PrimalTracker: beta must be > 0");
    if (!(eta_ > 0.0)) throw std::invalid_argument("PrimalTracker: step size must be > 0");
}

std::span<const double> PrimalTracker::step(std::span<const double> x_t) {
    snapshot_dissimilarity(map_, x_t, e_t_);
    dissim_.absorb(e_t_);
    last_info_ = primal_update(map_, opt_, eta_, dissim_.running(), w_, scratch_);
    if (!last_info_.accepted) ++rejected_;
    ++t_;
    return w_;
}

std::span<const double> PrimalTracker::current_estimate() const {
    if (t_ < 1)
        throw std::logic_error("PrimalTracker::current_estimate: no step taken yet");
    return w_;
}

std::size_t PrimalTracker::memory_footprint_bytes() const noexcept {
    return (w_.capacity() + e_t_.capacity() + dissim_.running().size()) * sizeof(double) +
           scratch_.bytes();
}

}  // namespace graphtrack
