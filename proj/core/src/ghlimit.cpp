#include "vaisman/ghlimit.hpp"

#include <cmath>
#include <queue>

#include "vaisman/parallel.hpp"

namespace vaisman {

namespace {

double euclid2(const Pt<double>& a, const Pt<double>& b) {
    double s = 0.0;
    for (int i = 0; i < a.n2; ++i) {
        double d = a.x[i] - b.x[i];
        s += d * d;
    }
    return s;
}

Pt<double> midpoint(const Pt<double>& a, const Pt<double>& b) {
    Pt<double> m;
    m.n2 = a.n2;
    for (int i = 0; i < a.n2; ++i) m.x[i] = 0.5 * (a.x[i] + b.x[i]);
    return m;
}

// g(t)-length of the straight chart segment from a to b (midpoint rule)
double segment_length(const HermitianModel& metric_model, const Pt<double>& a, const Pt<double>& b) {
    SymMat<double> g = real_metric_from_form(metric_model.omega(midpoint(a, b)));
    const int n2 = a.n2;
    double q = 0.0;
    for (int mu = 0; mu < n2; ++mu)
        for (int nu = 0; nu < n2; ++nu)
            q += g[static_cast<size_t>(mu) * n2 + nu] * (b.x[mu] - a.x[mu]) * (b.x[nu] - a.x[nu]);
    return std::sqrt(std::max(q, 0.0));
}

Pt<double> apply_map(const std::vector<C>& mat, int n, const Pt<double>& x) {
    Pt<double> out;
    out.n2 = x.n2;
    for (int j = 0; j < n; ++j) {
        C zj{};
        for (int l = 0; l < n; ++l)
            zj += mat[static_cast<size_t>(j) * n + l] * C{x.x[2 * l], x.x[2 * l + 1]};
        out.x[2 * j] = zj.re;
        out.x[2 * j + 1] = zj.im;
    }
    return out;
}

std::vector<C> invert_deck(const std::vector<C>& mat, int n) {
    // deck maps are unitary up to a positive scale on each block; invert by
    // Gauss-Jordan on the small complex matrix
    std::vector<C> a = mat;
    std::vector<C> inv(static_cast<size_t>(n) * n, C{});
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = C{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (abs2(a[static_cast<size_t>(r) * n + col]) > abs2(a[static_cast<size_t>(piv) * n + col])) piv = r;
        for (int c2 = 0; c2 < n; ++c2) {
            std::swap(a[static_cast<size_t>(piv) * n + c2], a[static_cast<size_t>(col) * n + c2]);
            std::swap(inv[static_cast<size_t>(piv) * n + c2], inv[static_cast<size_t>(col) * n + c2]);
        }
        C d = a[static_cast<size_t>(col) * n + col];
        for (int c2 = 0; c2 < n; ++c2) {
            a[static_cast<size_t>(col) * n + c2] = a[static_cast<size_t>(col) * n + c2] / d;
            inv[static_cast<size_t>(col) * n + c2] = inv[static_cast<size_t>(col) * n + c2] / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            C f = a[static_cast<size_t>(r) * n + col];
            for (int c2 = 0; c2 < n; ++c2) {
                a[static_cast<size_t>(r) * n + c2] -= f * a[static_cast<size_t>(col) * n + c2];
                inv[static_cast<size_t>(r) * n + c2] -= f * inv[static_cast<size_t>(col) * n + c2];
            }
        }
    }
    return inv;
}

}  // namespace

SampleCloud sample_cloud(const HermitianModel& model_in, double c, int N, int k, uint64_t seed) {
    if (N < 100) throw std::invalid_argument("sample_cloud: need N >= 100");
    if (k < 8) throw std::invalid_argument("sample_cloud: need k >= 8");

    SampleCloud cloud;
    cloud.model = with_suspension(model_in, suspension_data(model_in, c));
    cloud.c = c;
    cloud.lambda = std::log(c * c);
    cloud.seed = seed;
    cloud.k = k;

    Rng rng(seed);
    cloud.points.resize(N);
    cloud.angle.resize(N);
    ScalarField lr2 = cloud.model.log_rho2;
    for (int i = 0; i < N; ++i) {
        cloud.points[i] = cloud.model.sample(rng);
        // F_c = exp(2 pi i (-2 phi) / lambda); store the fraction of a turn
        double phi = 0.5 * lr2(cloud.points[i]).re;
        double u = std::fmod(-2.0 * phi / cloud.lambda, 1.0);
        if (u < 0.0) u += 1.0;
        cloud.angle[i] = u;
    }

    // candidate positions: the point itself and its two deck translates
    const int n = cloud.model.n;
    std::vector<C> deck_inv = invert_deck(cloud.model.deck, n);
    std::vector<Pt<double>> image(3 * static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) {
        image[i] = cloud.points[i];
        image[N + i] = apply_map(cloud.model.deck, n, cloud.points[i]);
        image[2 * N + i] = apply_map(deck_inv, n, cloud.points[i]);
    }

    cloud.adjacency.assign(N, {});
    std::vector<std::vector<SampleCloud::Edge>> found(N);
    parallel_for(N, [&](int i) {
        // preselect by Euclidean chart distance, then rank by g(0) length
        const int pre = std::min(4 * k, 3 * N - 1);
        std::vector<std::pair<double, int>> near;
        near.reserve(3 * static_cast<size_t>(N));
        for (int j = 0; j < 3 * N; ++j) {
            if (j % N == i) continue;
            near.emplace_back(euclid2(cloud.points[i], image[j]), j);
        }
        std::partial_sort(near.begin(), near.begin() + pre, near.end());
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(pre);
        for (int u = 0; u < pre; ++u) {
            int j = near[u].second;
            ranked.emplace_back(segment_length(cloud.model, cloud.points[i], image[j]), j);
        }
        std::sort(ranked.begin(), ranked.end());
        for (int u = 0; u < k && u < static_cast<int>(ranked.size()); ++u) {
            int j = ranked[u].second;
            int shift = j < N ? 0 : (j < 2 * N ? 1 : -1);
            found[i].push_back({j % N, shift, image[j]});
        }
    });

    // symmetrize: the mirror of (i -> deck^s q) is (q -> deck^{-s} p), which
    // has the same g-length since the deck map is an isometry
    for (int i = 0; i < N; ++i)
        for (const auto& e : found[i]) {
            cloud.adjacency[i].push_back(e);
            Pt<double> back = cloud.points[i];
            if (e.shift == 1) back = apply_map(deck_inv, n, back);
            if (e.shift == -1) back = apply_map(cloud.model.deck, n, back);
            cloud.adjacency[e.to].push_back({i, -e.shift, back});
        }
    for (int i = 0; i < N; ++i) {
        auto& adj = cloud.adjacency[i];
        std::sort(adj.begin(), adj.end(), [](const auto& a, const auto& b) {
            return a.to != b.to ? a.to < b.to : a.shift < b.shift;
        });
        adj.erase(std::unique(adj.begin(), adj.end(), [](const auto& a, const auto& b) {
            return a.to == b.to && a.shift == b.shift;
        }), adj.end());
        for (const auto& e : adj)
            if (e.shift != 0) ++cloud.deck_edges;
    }
    cloud.deck_edges /= 2;

    // connectivity
    std::vector<char> seen(N, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : cloud.adjacency[v])
            if (!seen[e.to]) {
                seen[e.to] = 1;
                ++reached;
                stack.push_back(e.to);
            }
    }
    if (reached != N)
        throw std::runtime_error("sample_cloud: graph disconnected (" + std::to_string(N - reached) +
                                 " unreachable); increase k or the sample count");
    return cloud;
}

std::vector<double> edge_weights(const SampleCloud& cloud, double t) {
    HermitianModel mt = flow_metric(cloud.model, t);
    size_t total = 0;
    for (const auto& adj : cloud.adjacency) total += adj.size();
    std::vector<double> w(total);
    std::vector<size_t> offset(cloud.adjacency.size() + 1, 0);
    for (size_t i = 0; i < cloud.adjacency.size(); ++i)
        offset[i + 1] = offset[i] + cloud.adjacency[i].size();
    parallel_for(static_cast<int>(cloud.adjacency.size()), [&](int i) {
        size_t base = offset[i];
        for (size_t u = 0; u < cloud.adjacency[i].size(); ++u)
            w[base + u] = segment_length(mt, cloud.points[i], cloud.adjacency[i][u].via);
    });
    return w;
}

DistanceTable graph_distance(const SampleCloud& cloud, double t, int max_sources) {
    const int N = static_cast<int>(cloud.points.size());
    std::vector<double> w = edge_weights(cloud, t);
    std::vector<size_t> offset(N + 1, 0);
    for (int i = 0; i < N; ++i) offset[i + 1] = offset[i] + cloud.adjacency[i].size();

    DistanceTable table;
    int S = std::min(max_sources, N);
    table.sources.resize(S);
    for (int s = 0; s < S; ++s) table.sources[s] = s;
    table.dist.assign(S, {});

    parallel_for(S, [&](int s) {
        std::vector<double> dist(N, std::numeric_limits<double>::infinity());
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[v]) continue;
            for (size_t u = 0; u < cloud.adjacency[v].size(); ++u) {
                int to = cloud.adjacency[v][u].to;
                double nd = d + w[offset[v] + u];
                if (nd < dist[to]) {
                    dist[to] = nd;
                    heap.emplace(nd, to);
                }
            }
        }
        table.dist[s] = std::move(dist);
    });
    return table;
}

namespace {

double distortion_from_table(const SampleCloud& cloud, const DistanceTable& table) {
    double worst = 0.0;
    for (size_t s = 0; s < table.sources.size(); ++s) {
        int src = table.sources[s];
        for (size_t v = 0; v < table.dist[s].size(); ++v)
            worst = std::max(worst, std::abs(table.dist[s][v] - circle_distance(cloud, src, static_cast<int>(v))));
    }
    return worst;
}

}  // namespace

double distortion_estimate(const SampleCloud& cloud, double t, int max_sources) {
    return distortion_from_table(cloud, graph_distance(cloud, t, max_sources));
}

std::vector<DistortionRow> gh_diagnostics(const SampleCloud& cloud, const std::vector<double>& ts,
                                          int max_sources) {
    const int n = cloud.model.n;
    // C0 upper-bounds diam(M, g(0)) by the graph diameter over sampled pairs
    DistanceTable at0 = graph_distance(cloud, 0.0, max_sources);
    double c0 = 0.0;
    for (const auto& row : at0.dist)
        for (double d : row) c0 = std::max(c0, d);

    std::vector<DistortionRow> rows;
    for (double t : ts) {
        std::vector<double> w = edge_weights(cloud, t);
        double max_edge = 0.0;
        for (double e : w) max_edge = std::max(max_edge, e);
        DistortionRow row;
        row.t = t;
        row.mesh_eps = 2.0 * max_edge;
        row.distortion = distortion_estimate(cloud, t, max_sources);
        row.bound_rhs = c0 * (1.0 - 0.5 * n * t) + row.mesh_eps;
        row.pass = row.distortion <= row.bound_rhs;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace vaisman
