/*
 * Proximal gradient in the dual domain for the smoothness-regularized
 * topology problem
 *
 *      min_{w >= 0}  2 w'e + beta ||w||^2 - alpha 1'log(S w).
 *
 * Splitting d = S w and dualizing gives min_lambda F(lambda) + G(lambda)
 * with F the conjugate of the strongly convex part (gradient S v(lambda),
 * Lipschitz constant (N-1)/beta) and G the conjugate of the barrier, whose
 * prox is available in closed form. One dual step costs O(N^2) and is the
 * kernel shared with the online tracker.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphtrack/edge_space.hpp"

namespace graphtrack {

struct Objective {
    double alpha = 1.0;          // log-barrier weight, > 0
    double beta = 1.0;           // squared-norm weight, > 0 (0 rejected: L diverges)
    std::span<const double> e;   // pairwise dissimilarities, length N(N-1)/2
};

void validate_objective(const PairIndexMap& g, const Objective& obj);

// L = (N-1)/beta, the Lipschitz constant of grad F
double lipschitz_constant(int n_nodes, double beta);

// v(lambda) = max(0, (S^T lambda - 2e) / (2 beta)), the conjugate maximizer;
// also the topology estimate read off a dual iterate
void primal_from_dual(const PairIndexMap& g, const Objective& obj,
                      std::span<const double> lambda, std::span<double> w_out);

// F(lambda) = <S^T lambda, v> - f(v) at v = v(lambda), and the dual value
// F + G with G evaluated as -alpha sum log lambda_i (constant dropped).
// dual_objective is +inf unless lambda > 0.
double conjugate_value(const PairIndexMap& g, const Objective& obj,
                       std::span<const double> lambda);
double dual_objective(const PairIndexMap& g, const Objective& obj,
                      std::span<const double> lambda);

struct DualStepScratch {
    std::vector<double> sv;  // S v, length N
    explicit DualStepScratch(int n_nodes) : sv(n_nodes, 0.0) {}
    std::size_t bytes() const noexcept { return sv.capacity() * sizeof(double); }
};

// One proximal-gradient step on the dual. v_out receives the maximizer at
// lambda_in (so grad F = S v_out); lambda_out may alias lambda_in.
void dual_step(const PairIndexMap& g, const Objective& obj,
               std::span<const double> lambda_in, std::span<double> lambda_out,
               std::span<double> v_out, DualStepScratch& scratch);

struct BatchOptions {
    // stop when the relative change of the maximizer AND of the dual variable
    // both fall below tol (the primal alone can stall while clamped at zero)
    double tol = 1e-8;
    long max_iter = 50000;
    std::optional<std::vector<double>> lambda0;  // default: all ones
    std::optional<std::uint64_t> lambda0_seed;   // standard-normal start instead
    bool record_history = true;
};

struct SolveReport {
    std::vector<double> w_star;
    std::vector<double> lambda_final;
    long iterations = 0;
    bool converged = false;
    std::vector<double> primal_change_history;
};

SolveReport solve_batch(const PairIndexMap& g, std::span<const double> e,
                        double alpha, double beta, const BatchOptions& opt = {});

// In-place warm-started variant used for per-step reference solutions:
// iterates from the given lambda until the stopping rule, leaves the final
// maximizer in w_out, and returns the iteration count (negative if the
// budget ran out).
long solve_batch_warm(const PairIndexMap& g, std::span<const double> e,
                      double alpha, double beta, double tol, long max_iter,
                      std::span<double> lambda, std::span<double> w_out,
                      DualStepScratch& scratch);

}  // namespace graphtrack
