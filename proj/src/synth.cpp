#include "graphtrack/synth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphtrack/rng.hpp"

namespace graphtrack {

namespace {
constexpr int kMaxConnectivityRetries = 100;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

bool is_connected(const PairIndexMap& g, std::span<const double> w, double threshold) {
    const int n = g.n_nodes();
    UnionFind uf(n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if (w[k] > threshold) uf.unite(i, j);
    const int root = uf.find(0);
    for (int i = 1; i < n; ++i)
        if (uf.find(i) != root) return false;
    return true;
}

std::vector<double> generate_graph(const GraphScenario& scenario, int segment_index) {
    const PairIndexMap g(scenario.n_nodes);
    const int n = g.n_nodes();

    std::vector<int> block_of;  // community labels when the model is SBM
    if (const auto* sbm = std::get_if<SbmModel>(&scenario.model)) {
        const int total = std::accumulate(sbm->blocks.begin(), sbm->blocks.end(), 0);
        if (total != n)
            throw std::invalid_argument("generate_graph: block sizes must sum to n_nodes");
        if (!(sbm->p_in >= 0 && sbm->p_in <= 1 && sbm->p_out >= 0 && sbm->p_out <= 1))
            throw std::invalid_argument("generate_graph: probabilities must lie in [0,1]");
        block_of.reserve(n);
        for (std::size_t b = 0; b < sbm->blocks.size(); ++b)
            block_of.insert(block_of.end(), sbm->blocks[b], static_cast<int>(b));
    } else {
        const double p = std::get<ErModel>(scenario.model).p;
        if (!(p > 0 && p <= 1))
            throw std::invalid_argument(
                "generate_graph: edge probability must lie in (0,1] for a connected draw");
    }

    std::vector<double> w(g.num_pairs());
    for (int attempt = 0; attempt < kMaxConnectivityRetries; ++attempt) {
        auto rng = make_rng(scenario.seed, RngStream::GraphGen,
                            static_cast<std::uint64_t>(segment_index) * 1000 + attempt);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                double p;
                if (block_of.empty())
                    p = std::get<ErModel>(scenario.model).p;
                else {
                    const auto& sbm = std::get<SbmModel>(scenario.model);
                    p = block_of[i] == block_of[j] ? sbm.p_in : sbm.p_out;
                }
                w[k] = unif(rng) < p ? 1.0 : 0.0;
            }
        if (is_connected(g, w)) return w;
    }
    throw std::runtime_error("generate_graph: no connected draw within retry budget");
}

std::vector<double> resample_edges(const PairIndexMap& g, std::span<const double> w01,
                                   double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("resample_edges: fraction must lie in [0,1]");
    if (w01.size() != g.num_pairs())
        throw std::invalid_argument("resample_edges: edge vector length mismatch");

    std::vector<std::size_t> present, absent;
    for (std::size_t k = 0; k < w01.size(); ++k)
        (w01[k] > 0 ? present : absent).push_back(k);
    const auto n_move =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(present.size())));
    if (n_move == 0) return std::vector<double>(w01.begin(), w01.end());
    if (absent.size() < n_move)
        throw std::runtime_error("resample_edges: not enough absent pairs to rewire into");

    for (int attempt = 0; attempt < kMaxConnectivityRetries; ++attempt) {
        auto rng = make_rng(seed, RngStream::Resample, attempt);
        std::vector<std::size_t> rem = present, add = absent;
        std::shuffle(rem.begin(), rem.end(), rng);
        std::shuffle(add.begin(), add.end(), rng);
        std::vector<double> out(w01.begin(), w01.end());
        for (std::size_t m = 0; m < n_move; ++m) {
            out[rem[m]] = 0.0;
            out[add[m]] = 1.0;
        }
        if (is_connected(g, out)) return out;
    }
    throw std::runtime_error("resample_edges: no connected rewiring within retry budget");
}

SmoothSignalSampler::SmoothSignalSampler(const PairIndexMap& g,
                                         std::span<const double> w_true,
                                         double noise_sigma, std::uint64_t seed)
    : n_(g.n_nodes()), sigma_(noise_sigma), seed_(seed) {
    if (noise_sigma < 0.0)
        throw std::invalid_argument("SmoothSignalSampler: noise_sigma must be >= 0");
    const auto adj = to_adjacency(g, w_true);
    Eigen::MatrixXd lap(n_, n_);
    for (int i = 0; i < n_; ++i) {
        double deg = 0.0;
        for (int j = 0; j < n_; ++j) deg += adj[static_cast<std::size_t>(i) * n_ + j];
        for (int j = 0; j < n_; ++j)
            lap(i, j) = (i == j ? deg : 0.0) - adj[static_cast<std::size_t>(i) * n_ + j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("SmoothSignalSampler: eigendecomposition failed");
    const auto& evals = eig.eigenvalues();
    const double cutoff = 1e-9 * evals(n_ - 1);
    Eigen::VectorXd f(n_);
    for (int i = 0; i < n_; ++i)
        f(i) = evals(i) > cutoff ? 1.0 / std::sqrt(evals(i)) : 0.0;
    const Eigen::MatrixXd factor = eig.eigenvectors() * f.asDiagonal();
    factor_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) factor_[static_cast<std::size_t>(i) * n_ + j] = factor(i, j);
}

void SmoothSignalSampler::sample(long t, std::span<double> x_out) const {
    if (x_out.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("SmoothSignalSampler::sample: output length mismatch");
    auto rng = make_rng(seed_, RngStream::Signal, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(n_);
    for (int i = 0; i < n_; ++i) z[i] = normal(rng);
    for (int i = 0; i < n_; ++i) {
        const double* row = factor_.data() + static_cast<std::size_t>(i) * n_;
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += row[j] * z[j];
        x_out[i] = acc;
    }
    if (sigma_ > 0.0)
        for (int i = 0; i < n_; ++i) x_out[i] += sigma_ * normal(rng);
}

std::vector<double> SmoothSignalSampler::sample(long t) const {
    std::vector<double> x(n_);
    sample(t, x);
    return x;
}

std::vector<double> sample_signal(const PairIndexMap& g, std::span<const double> w_true,
                                  double noise_sigma, std::uint64_t seed, long t) {
    return SmoothSignalSampler(g, w_true, noise_sigma, seed).sample(t);
}

ScenarioStream::ScenarioStream(const GraphScenario& scenario)
    : scenario_(scenario), map_(scenario.n_nodes) {
    if (scenario.horizon < 1)
        throw std::invalid_argument("ScenarioStream: horizon must be >= 1");
    for (std::size_t s = 0; s < scenario.switch_times.size(); ++s) {
        const long st = scenario.switch_times[s];
        if (st < 1 || st >= scenario.horizon)
            throw std::invalid_argument("ScenarioStream: switch time outside horizon");
        if (s > 0 && st <= scenario.switch_times[s - 1])
            throw std::invalid_argument("ScenarioStream: switch times must increase");
    }
    graphs_.push_back(generate_graph(scenario, 0));
    for (std::size_t s = 0; s < scenario.switch_times.size(); ++s)
        graphs_.push_back(resample_edges(map_, graphs_.back(), scenario.resample_fraction,
                                         scenario.seed + s + 1));
    samplers_.reserve(graphs_.size());
    for (std::size_t s = 0; s < graphs_.size(); ++s)
        samplers_.emplace_back(map_, graphs_[s], scenario.noise_sigma,
                               scenario.seed + 7919 * (s + 1));
}

int ScenarioStream::segment_of(long t) const {
    if (t < 1 || t > scenario_.horizon)
        throw std::invalid_argument("ScenarioStream::segment_of: t outside [1, horizon]");
    int seg = 0;
    for (long st : scenario_.switch_times)
        if (st < t) ++seg;
    return seg;
}

void ScenarioStream::signal(long t, std::span<double> x_out) const {
    samplers_[segment_of(t)].sample(t, x_out);
}

}  // namespace graphtrack
