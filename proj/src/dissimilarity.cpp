#include "graphtrack/dissimilarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphtrack {

namespace {
void validate_snapshot(const PairIndexMap& g, std::span<const double> x,
                       std::span<const double> e_t) {
    const int n = g.n_nodes();
    if (x.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("snapshot_dissimilarity: signal length mismatch");
    if (e_t.size() != g.num_pairs())
        throw std::invalid_argument("snapshot_dissimilarity: output length mismatch");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(x[i]))
            throw std::invalid_argument("snapshot_dissimilarity: non-finite signal entry");
}

void sq_diffs_plain(int n, const double* x, double* e_t) {
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            const double diff = x[i] - x[j];
            e_t[k] = diff * diff;
        }
}

void sq_diffs_parallel(const PairIndexMap& g, const double* x, double* e_t) {
    const int n = g.n_nodes();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i) {
        const double xi = x[i];
        double* row = e_t + g.row_offset(i);
        for (int j = i + 1; j < n; ++j) {
            const double diff = xi - x[j];
            row[j - i - 1] = diff * diff;
        }
    }
}
}  // namespace

void snapshot_dissimilarity(const PairIndexMap& g, std::span<const double> x,
                            std::span<double> e_t) {
    validate_snapshot(g, x, e_t);
    if (g.n_nodes() < kParallelNodeCutoff)
        sq_diffs_plain(g.n_nodes(), x.data(), e_t.data());
    else
        sq_diffs_parallel(g, x.data(), e_t.data());
}

namespace serial {
void snapshot_dissimilarity(const PairIndexMap& g, std::span<const double> x,
                            std::span<double> e_t) {
    validate_snapshot(g, x, e_t);
    sq_diffs_plain(g.n_nodes(), x.data(), e_t.data());
}
}  // namespace serial

DissimilarityState::DissimilarityState(int n_nodes, MemoryMode mode)
    : map_(n_nodes), mode_(mode), e_(map_.num_pairs(), 0.0) {
    if (const auto* ew = std::get_if<Ewma>(&mode_)) {
        if (!(ew->gamma > 0.0 && ew->gamma < 1.0))
            throw std::invalid_argument("DissimilarityState: gamma must lie in (0,1)");
    }
}

void DissimilarityState::absorb(std::span<const double> e_t) {
    if (e_t.size() != e_.size())
        throw std::invalid_argument("DissimilarityState::absorb: dimension mismatch");
    const std::int64_t m = static_cast<std::int64_t>(e_.size());
    double* e = e_.data();
    const double* et = e_t.data();
    const bool small = m < static_cast<std::int64_t>(kParallelPairCutoff);
    if (std::holds_alternative<InfiniteMemory>(mode_)) {
        const double inv_t = 1.0 / static_cast<double>(count_ + 1);
        if (small) {
            for (std::int64_t k = 0; k < m; ++k) e[k] += (et[k] - e[k]) * inv_t;
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t k = 0; k < m; ++k) e[k] += (et[k] - e[k]) * inv_t;
        }
    } else {
        const double gamma = std::get<Ewma>(mode_).gamma;
        if (count_ == 0) {
            // seed with the first sample to avoid a transient toward zero
            std::copy(e_t.begin(), e_t.end(), e_.begin());
        } else if (small) {
            for (std::int64_t k = 0; k < m; ++k) e[k] += gamma * (et[k] - e[k]);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t k = 0; k < m; ++k) e[k] += gamma * (et[k] - e[k]);
        }
    }
    ++count_;
}

}  // namespace graphtrack
