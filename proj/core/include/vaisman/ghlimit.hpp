#pragma once

// Numerical Gromov-Hausdorff collapse diagnostics. The suspension's
// fundamental domain (log rho in [0, log c)) is sampled, the distance d_t is
// approximated by shortest paths in a k-NN graph whose edge weights are
// g(t)-lengths of straight chart segments (midpoint metric rule), boundary
// wraparound is realized by edges to deck images, and the circle projection
// F_c([x,phi]) = exp(2 pi i (-2 phi) / log(c^2)) gives the comparison metric
// d_{S^1} with scale lambda = log(c^2).

#include "vaisman/flow.hpp"
#include "vaisman/rng.hpp"

namespace vaisman {

struct SampleCloud {
    HermitianModel model;     // base model with the deck for parameter c
    double c = 0.0;
    double lambda = 0.0;      // log(c^2)
    uint64_t seed = 0;
    int k = 0;

    std::vector<Pt<double>> points;
    std::vector<double> angle;  // F_c as a fraction of a full turn, in [0,1)

    struct Edge {
        int to = 0;
        int shift = 0;   // deck power applied to the endpoint: -1, 0, +1
        Pt<double> via;  // position of the endpoint, deck^shift(points[to])
    };
    std::vector<std::vector<Edge>> adjacency;
    int deck_edges = 0;  // edges that cross the fundamental-domain boundary
};

// N >= 100 points uniform on (sphere measure) x [0, log c); k >= 8 neighbors.
// Throws if the resulting graph is disconnected (with an increase-k hint).
SampleCloud sample_cloud(const HermitianModel& model, double c, int N, int k, uint64_t seed);

// Edge weights at flow time t, in adjacency order (flattened).
std::vector<double> edge_weights(const SampleCloud& cloud, double t);

struct DistanceTable {
    std::vector<int> sources;
    std::vector<std::vector<double>> dist;  // dist[s][v], graph metric
};

// Single-source shortest paths from up to `max_sources` sample points.
DistanceTable graph_distance(const SampleCloud& cloud, double t, int max_sources = 256);

// Circle distance between the projections of two sample points.
inline double circle_distance(const SampleCloud& cloud, int i, int j) {
    double du = std::abs(cloud.angle[i] - cloud.angle[j]);
    du = std::min(du, 1.0 - du);
    return cloud.lambda * du;
}

struct DistortionRow {
    double t = 0.0;
    double distortion = 0.0;  // max over sampled pairs |d_t(p,q) - d_{S1}(F_c p, F_c q)|
    double bound_rhs = 0.0;   // C0 (1 - n t / 2) + mesh_eps
    double mesh_eps = 0.0;    // 2 x max edge length at t
    bool pass = false;
};

// Distortion of the correspondence R(F_c) over the sampled pairs, with the
// collapse bound evaluated against C0 = graph diameter at t = 0.
double distortion_estimate(const SampleCloud& cloud, double t, int max_sources = 256);

std::vector<DistortionRow> gh_diagnostics(const SampleCloud& cloud, const std::vector<double>& ts,
                                          int max_sources = 256);

}  // namespace vaisman
