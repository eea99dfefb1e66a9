#include "graphtrack/edge_space.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace graphtrack {

namespace {
std::atomic<std::uint64_t> g_degree_ops{0};
std::atomic<std::uint64_t> g_adjoint_ops{0};

void check_edge_size(const PairIndexMap& g, std::size_t got, const char* what) {
    if (got != g.num_pairs())
        throw std::invalid_argument(std::string(what) + ": edge vector length mismatch");
}
void check_node_size(const PairIndexMap& g, std::size_t got, const char* what) {
    if (got != static_cast<std::size_t>(g.n_nodes()))
        throw std::invalid_argument(std::string(what) + ": node vector length mismatch");
}

// Unchecked loop bodies. Small problems take the plain loops: an outlined
// OpenMP region costs a few microseconds per call even with the if-clause
// false, which swamps the O(N^2) work below the cutoffs.

void degrees_scatter(int n, const double* w, double* d) {
    for (int i = 0; i < n; ++i) d[i] = 0.0;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            d[i] += w[k];
            d[j] += w[k];
        }
}

void degrees_gather_parallel(const PairIndexMap& g, const double* w, double* d) {
    const int n = g.n_nodes();
    // one writer per d[i]: result independent of schedule and thread count
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) acc += w[g.row_offset(j) + (i - j - 1)];
        const double* row = w + g.row_offset(i);
        for (int j = 0; j < n - 1 - i; ++j) acc += row[j];
        d[i] = acc;
    }
}

void adjoint_plain(int n, const double* lambda, double* out) {
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) out[k] = lambda[i] + lambda[j];
}

void adjoint_parallel(const PairIndexMap& g, const double* lambda, double* out) {
    const int n = g.n_nodes();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i) {
        const double li = lambda[i];
        double* row = out + g.row_offset(i);
        for (int j = i + 1; j < n; ++j) row[j - i - 1] = li + lambda[j];
    }
}

double tv_plain(int n, const double* w, const double* x) {
    double tv = 0.0;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            const double diff = x[i] - x[j];
            tv += w[k] * diff * diff;
        }
    return tv;
}
}  // namespace

PairIndexMap::PairIndexMap(int n_nodes) : n_(n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("PairIndexMap: need at least 2 nodes");
}

std::size_t PairIndexMap::index_of(int i, int j) const {
    if (i < 0 || j <= i || j >= n_) throw std::invalid_argument("index_of: need 0 <= i < j < N");
    return row_offset(i) + static_cast<std::size_t>(j - i - 1);
}

std::pair<int, int> PairIndexMap::pair_of(std::size_t k) const {
    if (k >= num_pairs()) throw std::invalid_argument("pair_of: index out of range");
    // smallest i with row_offset(i+1) > k, seeded by the closed-form root
    double nd = static_cast<double>(n_);
    double disc = (nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(k);
    int i = static_cast<int>(nd - 0.5 - std::sqrt(disc > 0 ? disc : 0));
    if (i < 0) i = 0;
    if (i >= n_ - 1) i = n_ - 2;
    while (i > 0 && row_offset(i) > k) --i;
    while (row_offset(i + 1) <= k) ++i;
    int j = i + 1 + static_cast<int>(k - row_offset(i));
    return {i, j};
}

void apply_degree_operator(const PairIndexMap& g, std::span<const double> w,
                           std::span<double> d) {
    check_edge_size(g, w.size(), "apply_degree_operator");
    check_node_size(g, d.size(), "apply_degree_operator");
    if (g.n_nodes() < kParallelNodeCutoff)
        degrees_scatter(g.n_nodes(), w.data(), d.data());
    else
        degrees_gather_parallel(g, w.data(), d.data());
    g_degree_ops.fetch_add(1, std::memory_order_relaxed);
}

void apply_degree_adjoint(const PairIndexMap& g, std::span<const double> lambda,
                          std::span<double> out) {
    check_node_size(g, lambda.size(), "apply_degree_adjoint");
    check_edge_size(g, out.size(), "apply_degree_adjoint");
    if (g.n_nodes() < kParallelNodeCutoff)
        adjoint_plain(g.n_nodes(), lambda.data(), out.data());
    else
        adjoint_parallel(g, lambda.data(), out.data());
    g_adjoint_ops.fetch_add(1, std::memory_order_relaxed);
}

std::vector<double> to_adjacency(const PairIndexMap& g, std::span<const double> w) {
    check_edge_size(g, w.size(), "to_adjacency");
    const int n = g.n_nodes();
    std::vector<double> adj(static_cast<std::size_t>(n) * n, 0.0);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            adj[static_cast<std::size_t>(i) * n + j] = w[k];
            adj[static_cast<std::size_t>(j) * n + i] = w[k];
        }
    return adj;
}

std::vector<double> from_adjacency(const PairIndexMap& g, std::span<const double> adj) {
    const int n = g.n_nodes();
    if (adj.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("from_adjacency: matrix size mismatch");
    std::vector<double> w(g.num_pairs());
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) w[k] = adj[static_cast<std::size_t>(i) * n + j];
    return w;
}

double total_variation(const PairIndexMap& g, std::span<const double> w,
                       std::span<const double> x) {
    check_edge_size(g, w.size(), "total_variation");
    check_node_size(g, x.size(), "total_variation");
    const int n = g.n_nodes();
    if (n < kParallelNodeCutoff) return tv_plain(n, w.data(), x.data());
    double tv = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : tv)
    for (int i = 0; i < n - 1; ++i) {
        const double xi = x[i];
        const double* row = w.data() + g.row_offset(i);
        double acc = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double diff = xi - x[j];
            acc += row[j - i - 1] * diff * diff;
        }
        tv += acc;
    }
    return tv;
}

OperatorCounts operator_counts() {
    return {g_degree_ops.load(std::memory_order_relaxed),
            g_adjoint_ops.load(std::memory_order_relaxed)};
}

void reset_operator_counts() {
    g_degree_ops.store(0, std::memory_order_relaxed);
    g_adjoint_ops.store(0, std::memory_order_relaxed);
}

namespace serial {

void apply_degree_operator(const PairIndexMap& g, std::span<const double> w,
                           std::span<double> d) {
    check_edge_size(g, w.size(), "apply_degree_operator");
    check_node_size(g, d.size(), "apply_degree_operator");
    degrees_scatter(g.n_nodes(), w.data(), d.data());
}

void apply_degree_adjoint(const PairIndexMap& g, std::span<const double> lambda,
                          std::span<double> out) {
    check_node_size(g, lambda.size(), "apply_degree_adjoint");
    check_edge_size(g, out.size(), "apply_degree_adjoint");
    adjoint_plain(g.n_nodes(), lambda.data(), out.data());
}

double total_variation(const PairIndexMap& g, std::span<const double> w,
                       std::span<const double> x) {
    check_edge_size(g, w.size(), "total_variation");
    check_node_size(g, x.size(), "total_variation");
    return tv_plain(g.n_nodes(), w.data(), x.data());
}

}  // namespace serial
}  // namespace graphtrack
