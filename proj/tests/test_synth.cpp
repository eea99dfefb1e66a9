#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "graphtrack/synth.hpp"
#include "oracles.hpp"

using namespace graphtrack;

TEST_CASE("ER generation: complete, degenerate, and binomial edge counts") {
    GraphScenario sc;
    sc.n_nodes = 8;
    sc.model = ErModel{1.0};
    const auto complete = generate_graph(sc, 0);
    for (double wk : complete) CHECK(wk == 1.0);

    sc.model = ErModel{0.0};
    CHECK_THROWS(generate_graph(sc, 0));

    // N=100, p=0.2: expected 990 edges, sd = sqrt(4950 * 0.2 * 0.8) ~ 28.1
    sc.n_nodes = 100;
    sc.model = ErModel{0.2};
    const double mean = 990.0, sd = std::sqrt(4950 * 0.2 * 0.8);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        sc.seed = seed;
        const auto w = generate_graph(sc, 0);
        double edges = 0;
        for (double wk : w) edges += wk;
        CHECK(std::abs(edges - mean) <= 3.0 * sd);
    }
}

TEST_CASE("generated graphs are connected and deterministic") {
    GraphScenario sc;
    sc.n_nodes = 30;
    sc.model = ErModel{0.1};
    sc.seed = 42;
    const PairIndexMap g(30);
    const auto a = generate_graph(sc, 0);
    const auto b = generate_graph(sc, 0);
    CHECK(a == b);
    CHECK(is_connected(g, a));
    const auto c = generate_graph(sc, 1);
    CHECK(a != c);  // distinct segment stream
}

TEST_CASE("SBM respects block structure statistically") {
    GraphScenario sc;
    sc.n_nodes = 60;
    sc.model = SbmModel{{30, 30}, 0.6, 0.05};
    sc.seed = 7;
    const PairIndexMap g(60);
    const auto w = generate_graph(sc, 0);
    long in_edges = 0, in_pairs = 0, out_edges = 0, out_pairs = 0;
    std::size_t k = 0;
    for (int i = 0; i < 60; ++i)
        for (int j = i + 1; j < 60; ++j, ++k) {
            const bool same = (i < 30) == (j < 30);
            (same ? in_pairs : out_pairs) += 1;
            if (w[k] > 0) (same ? in_edges : out_edges) += 1;
        }
    CHECK(static_cast<double>(in_edges) / in_pairs > 0.45);
    CHECK(static_cast<double>(out_edges) / out_pairs < 0.15);

    SbmModel bad{{10, 10}, 0.5, 0.1};
    GraphScenario sc_bad;
    sc_bad.n_nodes = 30;
    sc_bad.model = bad;
    CHECK_THROWS_AS(generate_graph(sc_bad, 0), std::invalid_argument);
}

TEST_CASE("edge resampling moves the right number of edges") {
    const PairIndexMap g(20);
    GraphScenario sc;
    sc.n_nodes = 20;
    sc.model = ErModel{0.25};
    sc.seed = 11;
    const auto w = generate_graph(sc, 0);

    SUBCASE("fraction zero is the identity") {
        CHECK(resample_edges(g, w, 0.0, 5) == std::vector<double>(w.begin(), w.end()));
    }
    SUBCASE("edge count is preserved and moves match ceil(fraction |E|)") {
        const auto w2 = resample_edges(g, w, 0.1, 5);
        double before = 0, after = 0;
        long removed = 0, added = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            before += w[k];
            after += w2[k];
            removed += w[k] > 0 && w2[k] == 0;
            added += w[k] == 0 && w2[k] > 0;
        }
        CHECK(before == after);
        const auto expected = static_cast<long>(std::ceil(0.1 * before));
        CHECK(removed == expected);
        CHECK(added == expected);
        CHECK(is_connected(g, w2));
    }
    SUBCASE("exactly one edge moves in a 10-edge graph at fraction 0.1") {
        // path graph over 11 nodes has 10 edges
        const PairIndexMap gp(11);
        std::vector<double> path(gp.num_pairs(), 0.0);
        for (int i = 0; i + 1 < 11; ++i) path[gp.index_of(i, i + 1)] = 1.0;
        const auto moved = resample_edges(gp, path, 0.1, 3);
        long removed = 0;
        for (std::size_t k = 0; k < path.size(); ++k)
            removed += path[k] > 0 && moved[k] == 0;
        CHECK(removed == 1);
    }
    SUBCASE("near-complete graphs cannot absorb the rewire") {
        const PairIndexMap g4(4);
        std::vector<double> almost(g4.num_pairs(), 1.0);
        almost[0] = 0.0;  // 5 of 6 edges present, one absent pair
        CHECK_THROWS_AS(resample_edges(g4, almost, 0.9, 1), std::runtime_error);
    }
}

TEST_CASE("signal sampler: determinism and the K2 variance") {
    const PairIndexMap g(2);
    const std::vector<double> single_edge{1.0};
    const SmoothSignalSampler sampler(g, single_edge, 0.0, 123);

    const auto a = sampler.sample(17);
    const auto b = sampler.sample(17);
    CHECK(a == b);
    CHECK(a != sampler.sample(18));

    // L of K2 has eigenvalue 2 on the difference direction, so the pseudo-
    // inverse puts variance 1/2 on (x1 - x2)/sqrt(2)
    const long n_draws = 100000;
    double acc = 0.0, mean_acc = 0.0;
    for (long t = 1; t <= n_draws; ++t) {
        const auto x = sampler.sample(t);
        const double d = (x[0] - x[1]) / std::sqrt(2.0);
        acc += d * d;
        mean_acc += x[0] + x[1];
    }
    CHECK(acc / n_draws == doctest::Approx(0.5).epsilon(0.05));
    CHECK(std::abs(mean_acc / (2 * n_draws)) < 0.01);
}

TEST_CASE("empirical covariance matches pinv(L) + sigma^2 I") {
    const int n = 10;
    const PairIndexMap g(n);
    GraphScenario sc;
    sc.n_nodes = n;
    sc.model = ErModel{0.5};
    sc.seed = 31;
    const auto w = generate_graph(sc, 0);
    const double sigma = 0.3;
    const SmoothSignalSampler sampler(g, w, sigma, 31);

    const long draws = 100000;
    std::vector<double> cov(n * n, 0.0);
    std::vector<double> x(n);
    for (long t = 1; t <= draws; ++t) {
        sampler.sample(t, x);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cov[i * n + j] += x[i] * x[j];
    }
    for (auto& c : cov) c /= draws;

    // reference pinv through the dense Laplacian eigensystem is overkill here;
    // use the identity (L + 11'/n)^{-1} - 11'/n = pinv(L) for connected graphs
    const auto adj = to_adjacency(g, w);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        double deg = 0;
        for (int j = 0; j < n; ++j) deg += adj[i * n + j];
        for (int j = 0; j < n; ++j)
            m[i][j] = (i == j ? deg : 0.0) - adj[i * n + j] + 1.0 / n;
    }
    // Gauss-Jordan inverse
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double scale = m[col][col];
        for (int c = 0; c < n; ++c) {
            m[col][c] /= scale;
            inv[col][c] /= scale;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = m[r][col];
            for (int c = 0; c < n; ++c) {
                m[r][c] -= factor * m[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double target =
                inv[i][j] - 1.0 / n + (i == j ? sigma * sigma : 0.0);
            const double diff = cov[i * n + j] - target;
            num += diff * diff;
            den += target * target;
        }
    CHECK(std::sqrt(num / den) <= 0.05);
}

TEST_CASE("mean total variation matches rank(L) + sigma^2 trace(L)") {
    const int n = 10;
    const PairIndexMap g(n);
    GraphScenario sc;
    sc.n_nodes = n;
    sc.model = ErModel{0.4};
    sc.seed = 37;
    const auto w = generate_graph(sc, 0);
    const double sigma = 0.2;
    const SmoothSignalSampler sampler(g, w, sigma, 37);

    // E[TV] = trace(L (pinv(L) + sigma^2 I)) = rank(L) + sigma^2 trace(L);
    // trace(L) = sum of degrees = 2 |E|, rank = n-1 for a connected graph
    double edges = 0;
    for (double wk : w) edges += wk;
    const double expected = (n - 1) + sigma * sigma * 2.0 * edges;

    const long draws = 10000;
    double acc = 0.0;
    std::vector<double> x(n);
    for (long t = 1; t <= draws; ++t) {
        sampler.sample(t, x);
        acc += total_variation(g, w, x);
    }
    CHECK(acc / draws == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("scenario stream: segments, switches, and bit-exact replay") {
    GraphScenario sc;
    sc.n_nodes = 16;
    sc.model = ErModel{0.3};
    sc.switch_times = {50};
    sc.horizon = 100;
    sc.seed = 5;
    const ScenarioStream s1(sc), s2(sc);
    CHECK(s1.n_segments() == 2);
    CHECK(s1.segment_of(1) == 0);
    CHECK(s1.segment_of(50) == 0);
    CHECK(s1.segment_of(51) == 1);
    CHECK(s1.segment_of(100) == 1);
    CHECK_THROWS_AS(s1.segment_of(0), std::invalid_argument);
    CHECK_THROWS_AS(s1.segment_of(101), std::invalid_argument);

    CHECK(std::vector<double>(s1.truth(0).begin(), s1.truth(0).end()) !=
          std::vector<double>(s1.truth(1).begin(), s1.truth(1).end()));

    std::vector<double> xa(16), xb(16);
    for (long t = 1; t <= 100; ++t) {
        s1.signal(t, xa);
        s2.signal(t, xb);
        CHECK(xa == xb);
    }
}
