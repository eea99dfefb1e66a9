#include "graphtrack/online_tracker.hpp"

#include <stdexcept>

#include "graphtrack/rng.hpp"

namespace graphtrack {

OnlineTracker::OnlineTracker(int n_nodes, const TrackerOptions& opt)
    : map_(n_nodes),
      opt_(opt),
      dissim_(n_nodes, opt.memory),
      w_hat_(map_.num_pairs(), 0.0),
      e_t_(map_.num_pairs(), 0.0),
      v_(map_.num_pairs(), 0.0),
      scratch_(n_nodes) {
    if (!(opt.alpha > 0.0)) throw std::invalid_argument("OnlineTracker: alpha must be > 0");
    if (!(opt.beta > 0.0)) throw std::invalid_argument("OnlineTracker: beta must be > 0");
    if (opt.inner_steps < 1)
        throw std::invalid_argument("OnlineTracker: inner_steps must be >= 1");
    if (opt.lambda0_seed) {
        auto rng = make_rng(*opt.lambda0_seed, RngStream::Lambda0);
        std::normal_distribution<double> normal(0.0, 1.0);
        lambda_.resize(n_nodes);
        for (auto& li : lambda_) li = normal(rng);
    } else {
        lambda_.assign(n_nodes, 1.0);
    }
}

std::span<const double> OnlineTracker::step(std::span<const double> x_t) {
    snapshot_dissimilarity(map_, x_t, e_t_);  // validates length and finiteness
    dissim_.absorb(e_t_);
    const Objective obj{opt_.alpha, opt_.beta, dissim_.running()};
    for (int s = 0; s < opt_.inner_steps; ++s)
        dual_step(map_, obj, lambda_, lambda_, v_, scratch_);
    primal_from_dual(map_, obj, lambda_, w_hat_);
    ++t_;
    return w_hat_;
}

std::span<const double> OnlineTracker::current_estimate() const {
    if (t_ < 1)
        throw std::logic_error("OnlineTracker::current_estimate: no step taken yet");
    return w_hat_;
}

std::size_t OnlineTracker::memory_footprint_bytes() const noexcept {
    return (lambda_.capacity() + w_hat_.capacity() + e_t_.capacity() + v_.capacity() +
            dissim_.running().size()) *
               sizeof(double) +
           scratch_.bytes();
}

}  // namespace graphtrack
