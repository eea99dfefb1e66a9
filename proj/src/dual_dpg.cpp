#include "graphtrack/dual_dpg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphtrack/rng.hpp"

namespace graphtrack {

void validate_objective(const PairIndexMap& g, const Objective& obj) {
    if (!(obj.alpha > 0.0)) throw std::invalid_argument("Objective: alpha must be > 0");
    if (!(obj.beta > 0.0)) throw std::invalid_argument("Objective: beta must be > 0");
    if (obj.e.size() != g.num_pairs())
        throw std::invalid_argument("Objective: dissimilarity length mismatch");
}

double lipschitz_constant(int n_nodes, double beta) {
    if (n_nodes < 2) throw std::invalid_argument("lipschitz_constant: need N >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("lipschitz_constant: beta must be > 0");
    return static_cast<double>(n_nodes - 1) / beta;
}

void primal_from_dual(const PairIndexMap& g, const Objective& obj,
                      std::span<const double> lambda, std::span<double> w_out) {
    validate_objective(g, obj);
    if (lambda.size() != static_cast<std::size_t>(g.n_nodes()))
        throw std::invalid_argument("primal_from_dual: lambda length mismatch");
    if (w_out.size() != g.num_pairs())
        throw std::invalid_argument("primal_from_dual: output length mismatch");
    const int n = g.n_nodes();
    const double inv2b = 1.0 / (2.0 * obj.beta);
    const double* e = obj.e.data();
    if (n < kParallelNodeCutoff) {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i) {
            const double li = lambda[i];
            for (int j = i + 1; j < n; ++j, ++k) {
                const double c = (li + lambda[j] - 2.0 * e[k]) * inv2b;
                w_out[k] = c > 0.0 ? c : 0.0;
            }
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i) {
        const double li = lambda[i];
        const std::size_t off = g.row_offset(i);
        double* row = w_out.data() + off;
        const double* erow = e + off;
        for (int j = i + 1; j < n; ++j) {
            const double c = (li + lambda[j] - 2.0 * erow[j - i - 1]) * inv2b;
            row[j - i - 1] = c > 0.0 ? c : 0.0;
        }
    }
}

double conjugate_value(const PairIndexMap& g, const Objective& obj,
                       std::span<const double> lambda) {
    validate_objective(g, obj);
    const int n = g.n_nodes();
    // F(lambda) = sum over pairs with c_k := (S^T lambda - 2e)_k > 0 of c_k^2/(4 beta)
    double acc = 0.0;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            const double c = lambda[i] + lambda[j] - 2.0 * obj.e[k];
            if (c > 0.0) acc += c * c;
        }
    return acc / (4.0 * obj.beta);
}

double dual_objective(const PairIndexMap& g, const Objective& obj,
                      std::span<const double> lambda) {
    double barrier = 0.0;
    for (double li : lambda) {
        if (!(li > 0.0)) return std::numeric_limits<double>::infinity();
        barrier += std::log(li);
    }
    return conjugate_value(g, obj, lambda) - obj.alpha * barrier;
}

void dual_step(const PairIndexMap& g, const Objective& obj,
               std::span<const double> lambda_in, std::span<double> lambda_out,
               std::span<double> v_out, DualStepScratch& scratch) {
    const int n = g.n_nodes();
    if (lambda_out.size() != static_cast<std::size_t>(n) ||
        scratch.sv.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("dual_step: dimension mismatch");
    primal_from_dual(g, obj, lambda_in, v_out);
    apply_degree_operator(g, v_out, scratch.sv);
    const double L = lipschitz_constant(n, obj.beta);
    const double inv_L = 1.0 / L;
    const double four_alpha_L = 4.0 * obj.alpha * L;
    for (int i = 0; i < n; ++i) {
        const double sv = scratch.sv[i];
        const double m = sv - L * lambda_in[i];
        const double u = 0.5 * (m + std::sqrt(m * m + four_alpha_L));
        lambda_out[i] = lambda_in[i] - inv_L * (sv - u);
    }
}

namespace {
double relative_change(std::span<const double> v, std::span<const double> v_prev) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double d = v[k] - v_prev[k];
        num += d * d;
        den += v_prev[k] * v_prev[k];
    }
    return std::sqrt(num) / std::fmax(1.0, std::sqrt(den));
}
}  // namespace

SolveReport solve_batch(const PairIndexMap& g, std::span<const double> e,
                        double alpha, double beta, const BatchOptions& opt) {
    Objective obj{alpha, beta, e};
    validate_objective(g, obj);
    if (!(opt.tol > 0.0)) throw std::invalid_argument("solve_batch: tol must be > 0");
    const int n = g.n_nodes();

    SolveReport rep;
    if (opt.lambda0) {
        if (opt.lambda0->size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("solve_batch: lambda0 length mismatch");
        rep.lambda_final = *opt.lambda0;
    } else if (opt.lambda0_seed) {
        auto rng = make_rng(*opt.lambda0_seed, RngStream::Lambda0);
        std::normal_distribution<double> normal(0.0, 1.0);
        rep.lambda_final.resize(n);
        for (auto& li : rep.lambda_final) li = normal(rng);
    } else {
        rep.lambda_final.assign(n, 1.0);
    }

    rep.w_star.assign(g.num_pairs(), 0.0);
    std::vector<double> v_prev(g.num_pairs(), 0.0);
    std::vector<double> lambda_prev(n, 0.0);
    DualStepScratch scratch(n);
    bool have_prev = false;
    for (long it = 0; it < opt.max_iter; ++it) {
        lambda_prev.assign(rep.lambda_final.begin(), rep.lambda_final.end());
        dual_step(g, obj, rep.lambda_final, rep.lambda_final, rep.w_star, scratch);
        ++rep.iterations;
        if (have_prev) {
            const double change = relative_change(rep.w_star, v_prev);
            if (opt.record_history) rep.primal_change_history.push_back(change);
            // the primal criterion alone can stall while v is clamped at zero
            // and lambda still climbs toward the active region
            if (change <= opt.tol &&
                relative_change(rep.lambda_final, lambda_prev) <= opt.tol) {
                rep.converged = true;
                break;
            }
        }
        std::swap(rep.w_star, v_prev);
        have_prev = true;
    }
    if (!rep.converged) rep.w_star = v_prev;  // last computed maximizer
    return rep;
}

long solve_batch_warm(const PairIndexMap& g, std::span<const double> e,
                      double alpha, double beta, double tol, long max_iter,
                      std::span<double> lambda, std::span<double> w_out,
                      DualStepScratch& scratch) {
    Objective obj{alpha, beta, e};
    validate_objective(g, obj);
    std::vector<double> v_prev(g.num_pairs(), 0.0);
    std::vector<double> lambda_prev(lambda.size(), 0.0);
    bool have_prev = false;
    for (long it = 1; it <= max_iter; ++it) {
        lambda_prev.assign(lambda.begin(), lambda.end());
        dual_step(g, obj, lambda, lambda, w_out, scratch);
        if (have_prev && relative_change(w_out, v_prev) <= tol &&
            relative_change(lambda, lambda_prev) <= tol)
            return it;
        v_prev.assign(w_out.begin(), w_out.end());
        have_prev = true;
    }
    return -max_iter;
}

}  // namespace graphtrack
