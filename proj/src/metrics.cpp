#include "graphtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "graphtrack/online_tracker.hpp"

namespace graphtrack {

double tracking_error(std::span<const double> w_hat, std::span<const double> w_ref) {
    if (w_hat.size() != w_ref.size())
        throw std::invalid_argument("tracking_error: dimension mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < w_hat.size(); ++k) {
        const double d = w_hat[k] - w_ref[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double total_weight(std::span<const double> w) {
    double acc = 0.0;
    for (double wk : w) acc += wk;
    return acc;
}

FScore f_measure(std::span<const double> w_hat, std::span<const double> w_true01,
                 double threshold) {
    if (w_hat.size() != w_true01.size())
        throw std::invalid_argument("f_measure: dimension mismatch");
    if (!(threshold > 0.0)) throw std::invalid_argument("f_measure: threshold must be > 0");
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t k = 0; k < w_hat.size(); ++k) {
        const bool pred = w_hat[k] > threshold;
        const bool truth = w_true01[k] > 0.0;
        tp += pred && truth;
        fp += pred && !truth;
        fn += !pred && truth;
    }
    FScore s;
    s.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    s.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    s.f = s.precision + s.recall > 0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                                     : 0.0;
    return s;
}

double default_edge_threshold(std::span<const double> w, double rel) {
    double mx = 0.0;
    for (double wk : w) mx = std::max(mx, wk);
    return mx > 0.0 ? rel * mx : std::numeric_limits<double>::infinity();
}

GridSearchResult grid_search(const GraphScenario& scenario,
                             std::span<const double> alphas,
                             std::span<const double> betas, const MemoryMode& memory,
                             long final_window, double edge_threshold_rel) {
    if (alphas.empty() || betas.empty())
        throw std::invalid_argument("grid_search: grids must be non-empty");
    if (final_window < 1 || final_window > scenario.horizon)
        throw std::invalid_argument("grid_search: final_window outside [1, horizon]");

    const ScenarioStream stream(scenario);
    const int n = scenario.n_nodes;
    const long T = scenario.horizon;
    GridSearchResult res;
    res.table.resize(alphas.size() * betas.size());

    const std::int64_t cells = static_cast<std::int64_t>(res.table.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < cells; ++c) {
        const double alpha = alphas[c / betas.size()];
        const double beta = betas[c % betas.size()];
        OnlineTracker tracker(
            n, {.alpha = alpha, .beta = beta, .memory = memory, .inner_steps = 1,
                .lambda0_seed = {}});
        std::vector<double> x(n);
        double f_acc = 0.0;
        for (long t = 1; t <= T; ++t) {
            stream.signal(t, x);
            auto w_hat = tracker.step(x);
            if (t > T - final_window) {
                const double thr = default_edge_threshold(w_hat, edge_threshold_rel);
                f_acc += f_measure(w_hat, stream.truth(stream.segment_of(t)), thr).f;
            }
        }
        res.table[c] = {alpha, beta, f_acc / static_cast<double>(final_window)};
    }

    // argmax; exact ties break toward smaller beta, then smaller alpha
    const GridCell* best = &res.table[0];
    for (const auto& cell : res.table) {
        if (cell.mean_f > best->mean_f ||
            (cell.mean_f == best->mean_f &&
             (cell.beta < best->beta ||
              (cell.beta == best->beta && cell.alpha < best->alpha))))
            best = &cell;
    }
    res.alpha = best->alpha;
    res.beta = best->beta;
    res.mean_f = best->mean_f;
    return res;
}

ClosenessResult closeness_centrality(const PairIndexMap& g, std::span<const double> w,
                                     double edge_threshold) {
    const int n = g.n_nodes();
    if (w.size() != g.num_pairs())
        throw std::invalid_argument("closeness_centrality: edge vector length mismatch");

    // adjacency lists over edges above threshold, length = 1/weight
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if (w[k] > edge_threshold) {
                const double len = 1.0 / w[k];
                adj[i].emplace_back(j, len);
                adj[j].emplace_back(i, len);
            }

    ClosenessResult res;
    res.closeness.assign(n, 0.0);
    res.component.assign(n, -1);

    // component labels via BFS
    int n_comp = 0;
    for (int s = 0; s < n; ++s) {
        if (res.component[s] >= 0) continue;
        std::vector<int> stack{s};
        res.component[s] = n_comp;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [v, len] : adj[u])
                if (res.component[v] < 0) {
                    res.component[v] = n_comp;
                    stack.push_back(v);
                }
        }
        ++n_comp;
    }
    res.connected = n_comp == 1;

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    using Item = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[u]) continue;
            for (const auto& [v, len] : adj[u]) {
                const double dv = du + len;
                if (dv < dist[v]) {
                    dist[v] = dv;
                    heap.emplace(dv, v);
                }
            }
        }
        double sum = 0.0;
        for (int v = 0; v < n; ++v)
            if (v != s && res.component[v] == res.component[s]) sum += dist[v];
        res.closeness[s] = sum > 0.0 ? 1.0 / sum : 0.0;
    }
    return res;
}

}  // namespace graphtrack
