#include "graphtrack/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphtrack/metrics.hpp"
#include "graphtrack/online_tracker.hpp"
#include "graphtrack/primal_baseline.hpp"

namespace graphtrack {

ReferenceMode reference_mode_from_string(const std::string& name) {
    if (name == "running") return ReferenceMode::Running;
    if (name == "segment") return ReferenceMode::SegmentFinal;
    throw std::invalid_argument("unknown reference mode '" + name + "'");
}

namespace {

// Time-varying reference w_t*: the batch solution a (hypothetical) batch
// learner would reach from the samples of the current segment. In Running
// mode it is refreshed every step from the warm-started previous dual point;
// in SegmentFinal mode it is the solution on the full segment mean.
class ReferenceTracker {
public:
    ReferenceTracker(const PairIndexMap& g, double alpha, double beta, double tol,
                     long max_iter)
        : map_(g),
          alpha_(alpha),
          beta_(beta),
          tol_(tol),
          max_iter_(max_iter),
          lambda_(g.n_nodes(), 1.0),
          mean_(g.num_pairs(), 0.0),
          w_ref_(g.num_pairs(), 0.0),
          scratch_(g.n_nodes()) {}

    void start_segment() {
        count_ = 0;
        std::fill(mean_.begin(), mean_.end(), 0.0);
        std::fill(lambda_.begin(), lambda_.end(), 1.0);
    }

    void absorb(std::span<const double> e_t) {
        ++count_;
        const double inv = 1.0 / static_cast<double>(count_);
        for (std::size_t k = 0; k < mean_.size(); ++k)
            mean_[k] += (e_t[k] - mean_[k]) * inv;
    }

    // resolve the batch problem on the current mean (warm start)
    void refresh() {
        const long its = solve_batch_warm(map_, mean_, alpha_, beta_, tol_, max_iter_,
                                          lambda_, w_ref_, scratch_);
        iterations_ += its < 0 ? -its : its;
    }

    std::span<const double> reference() const noexcept { return w_ref_; }
    std::span<const double> mean() const noexcept { return mean_; }
    long iterations() const noexcept { return iterations_; }

private:
    PairIndexMap map_;
    double alpha_, beta_, tol_;
    long max_iter_;
    std::vector<double> lambda_, mean_, w_ref_;
    DualStepScratch scratch_;
    long count_ = 0;
    long iterations_ = 0;
};

}  // namespace

SynthRunResult run_synth_experiment(const ExperimentConfig& cfg) {
    if (!cfg.scenario) throw std::invalid_argument("run_synth_experiment: scenario required");
    const ScenarioStream stream(*cfg.scenario);
    const int n = stream.n_nodes();
    const long T = cfg.scenario->horizon;
    const PairIndexMap g(n);
    const ReferenceMode ref_mode = reference_mode_from_string(cfg.reference);

    SynthRunResult res;
    std::optional<OnlineTracker> dpg;
    std::optional<PrimalTracker> primal;
    if (cfg.run_dpg) {
        dpg.emplace(n, TrackerOptions{.alpha = cfg.solver.alpha,
                                      .beta = cfg.solver.beta,
                                      .memory = cfg.solver.memory,
                                      .inner_steps = cfg.solver.inner_steps,
                                      .lambda0_seed = cfg.solver.lambda0_seed});
        res.curves.push_back({"dpg", {}, {}, {}});
    }
    if (cfg.run_primal) {
        primal.emplace(n, PrimalOptions{.alpha = cfg.solver.alpha,
                                        .beta = cfg.solver.beta,
                                        .memory = cfg.solver.memory,
                                        .step_size = cfg.solver.eta,
                                        .degree_floor = cfg.solver.degree_floor});
        res.curves.push_back({"primal_pg", {}, {}, {}});
    }
    for (auto& c : res.curves) {
        c.error.reserve(T);
        c.total_weight.reserve(T);
        c.f_measure.reserve(T);
    }

    ReferenceTracker ref(g, cfg.solver.alpha, cfg.solver.beta, cfg.solver.tol,
                         cfg.solver.max_iter);
    if (cfg.export_signals) {
        res.signals.emplace();
        res.signals->rows = T;
        res.signals->cols = n;
        res.signals->values.resize(static_cast<std::size_t>(T) * n);
    }

    // SegmentFinal mode needs the per-segment means before scoring
    std::vector<std::vector<double>> segment_refs;
    if (ref_mode == ReferenceMode::SegmentFinal) {
        std::vector<double> x(n), e_t(g.num_pairs());
        for (int s = 0; s < stream.n_segments(); ++s) {
            ref.start_segment();
            for (long t = 1; t <= T; ++t) {
                if (stream.segment_of(t) != s) continue;
                stream.signal(t, x);
                snapshot_dissimilarity(g, x, e_t);
                ref.absorb(e_t);
            }
            ref.refresh();
            segment_refs.emplace_back(ref.reference().begin(), ref.reference().end());
        }
    }

    std::vector<double> x(n), e_t(g.num_pairs());
    int current_segment = 0;
    ref.start_segment();
    for (long t = 1; t <= T; ++t) {
        stream.signal(t, x);
        if (res.signals)
            std::copy(x.begin(), x.end(),
                      res.signals->values.begin() + static_cast<std::size_t>(t - 1) * n);
        const int seg = stream.segment_of(t);
        if (seg != current_segment) {
            current_segment = seg;
            ref.start_segment();
        }

        std::span<const double> w_ref;
        if (ref_mode == ReferenceMode::Running) {
            snapshot_dissimilarity(g, x, e_t);
            ref.absorb(e_t);
            ref.refresh();
            w_ref = ref.reference();
        } else {
            w_ref = segment_refs[seg];
        }

        const auto truth = stream.truth(seg);
        std::size_t ci = 0;
        if (dpg) {
            const auto w_hat = dpg->step(x);
            res.curves[ci].error.push_back(tracking_error(w_hat, w_ref));
            res.curves[ci].total_weight.push_back(total_weight(w_hat));
            res.curves[ci].f_measure.push_back(
                f_measure(w_hat, truth,
                          default_edge_threshold(w_hat, cfg.solver.edge_threshold_rel))
                    .f);
            ++ci;
        }
        if (primal) {
            const auto w_hat = primal->step(x);
            res.curves[ci].error.push_back(tracking_error(w_hat, w_ref));
            res.curves[ci].total_weight.push_back(total_weight(w_hat));
            res.curves[ci].f_measure.push_back(
                f_measure(w_hat, truth,
                          default_edge_threshold(w_hat, cfg.solver.edge_threshold_rel))
                    .f);
        }

        const bool segment_ends = t == T || stream.segment_of(t + 1) != seg;
        if (segment_ends) {
            if (ref_mode == ReferenceMode::Running) {
                res.w_ref_final.emplace_back(w_ref.begin(), w_ref.end());
            } else if (static_cast<std::size_t>(seg) >= res.w_ref_final.size()) {
                res.w_ref_final.push_back(segment_refs[seg]);
            }
        }
    }
    res.reference_iterations = ref.iterations();
    return res;
}

TrackRunResult run_track_experiment(const ExperimentConfig& cfg, const SignalMatrix& m) {
    if (m.rows < 1 || m.cols < 2)
        throw DataError("track: need at least one row and two channels");
    const int n = m.cols;
    OnlineTracker tracker(n, TrackerOptions{.alpha = cfg.solver.alpha,
                                            .beta = cfg.solver.beta,
                                            .memory = cfg.solver.memory,
                                            .inner_steps = cfg.solver.inner_steps,
                                            .lambda0_seed = cfg.solver.lambda0_seed});
    TrackRunResult res;
    res.total_weight.reserve(m.rows);
    std::vector<long> wanted =
        cfg.data ? cfg.data->snapshot_times : std::vector<long>{};
    for (long t = 1; t <= m.rows; ++t) {
        const auto w_hat = tracker.step(m.row(t - 1));
        res.total_weight.push_back(total_weight(w_hat));
        if (std::find(wanted.begin(), wanted.end(), t) != wanted.end()) {
            res.snapshot_steps.push_back(t);
            res.snapshots.emplace_back(w_hat.begin(), w_hat.end());
        }
    }
    res.steps = m.rows;
    return res;
}

std::vector<double> mean_dissimilarity(const SignalMatrix& m) {
    if (m.rows < 1 || m.cols < 2)
        throw DataError("mean_dissimilarity: need at least one row and two channels");
    const PairIndexMap g(m.cols);
    DissimilarityState state(m.cols, InfiniteMemory{});
    std::vector<double> e_t(g.num_pairs());
    for (long r = 0; r < m.rows; ++r) {
        snapshot_dissimilarity(g, m.row(r), e_t);
        state.absorb(e_t);
    }
    return std::vector<double>(state.running().begin(), state.running().end());
}

void zscore_channels(SignalMatrix& m) {
    for (int c = 0; c < m.cols; ++c) {
        double mean = 0.0;
        for (long r = 0; r < m.rows; ++r) mean += m.values[static_cast<std::size_t>(r) * m.cols + c];
        mean /= static_cast<double>(m.rows);
        double var = 0.0;
        for (long r = 0; r < m.rows; ++r) {
            const double d = m.values[static_cast<std::size_t>(r) * m.cols + c] - mean;
            var += d * d;
        }
        var /= static_cast<double>(m.rows);
        const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
        for (long r = 0; r < m.rows; ++r) {
            auto& v = m.values[static_cast<std::size_t>(r) * m.cols + c];
            v = (v - mean) * scale;
        }
    }
}

}  // namespace graphtrack
