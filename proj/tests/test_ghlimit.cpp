#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "vaisman/ghlimit.hpp"

using namespace vaisman;
using namespace vaisman::testing;

namespace {

SampleCloud small_cloud(int N = 400, int k = 10, uint64_t seed = 7) {
    HermitianModel h = hopf_cone(2);
    return sample_cloud(h, std::exp(1.0), N, k, seed);
}

}  // namespace

TEST_CASE("cloud construction: determinism, deck gluing, connectivity, validation") {
    SampleCloud a = small_cloud();
    SampleCloud b = small_cloud();
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i)
        for (int d = 0; d < 4; ++d) CHECK(a.points[i].x[d] == b.points[i].x[d]);

    CHECK(a.deck_edges > 0);
    CHECK(a.lambda == doctest::Approx(2.0));

    HermitianModel h = hopf_cone(2);
    CHECK_THROWS_AS(sample_cloud(h, std::exp(1.0), 50, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(sample_cloud(h, std::exp(1.0), 400, 4, 7), std::invalid_argument);

    // the smallest accepted cloud still connects
    SampleCloud c = sample_cloud(h, std::exp(1.0), 100, 10, 7);
    CHECK(c.points.size() == 100);
}

TEST_CASE("points stay in the fundamental domain and project consistently") {
    SampleCloud cloud = small_cloud();
    ScalarField lr2 = cloud.model.log_rho2;
    for (size_t i = 0; i < cloud.points.size(); ++i) {
        double logrho = 0.5 * lr2(cloud.points[i]).re;
        CHECK(logrho >= -1e-12);
        CHECK(logrho < 1.0 + 1e-12);  // log c = 1
        CHECK(cloud.angle[i] >= 0.0);
        CHECK(cloud.angle[i] < 1.0);
    }
}

TEST_CASE("circle side: deck-equivalent points have identical projections") {
    SampleCloud cloud = small_cloud(200);
    ScalarField lr2 = cloud.model.log_rho2;
    for (int i = 0; i < 50; ++i) {
        Pt<double> gx = deck_apply(cloud.model, cloud.points[i]);
        double phi = 0.5 * lr2(gx).re;
        double u = std::fmod(-2.0 * phi / cloud.lambda, 1.0);
        if (u < 0.0) u += 1.0;
        double du = std::abs(u - cloud.angle[i]);
        du = std::min(du, 1.0 - du);
        CHECK(du < 1e-12);
    }
}

TEST_CASE("graph metric: zero diagonal, symmetry, triangle inequality") {
    SampleCloud cloud = small_cloud();
    DistanceTable table = graph_distance(cloud, 0.2, 24);
    const int S = static_cast<int>(table.sources.size());
    for (int s = 0; s < S; ++s) CHECK(table.dist[s][table.sources[s]] == 0.0);
    for (int s1 = 0; s1 < S; ++s1)
        for (int s2 = 0; s2 < S; ++s2) {
            CHECK(table.dist[s1][table.sources[s2]] ==
                  doctest::Approx(table.dist[s2][table.sources[s1]]).epsilon(1e-12));
            // triangle inequality through every third source
            for (int s3 = 0; s3 < S; ++s3)
                CHECK(table.dist[s1][table.sources[s2]] <=
                      table.dist[s1][table.sources[s3]] + table.dist[s3][table.sources[s2]] + 1e-12);
        }
}

TEST_CASE("graph distances dominate circle distances (submersion shrinks)") {
    SampleCloud cloud = small_cloud();
    for (double t : {0.0, 0.4}) {
        DistanceTable table = graph_distance(cloud, t, 16);
        for (size_t s = 0; s < table.sources.size(); ++s)
            for (size_t v = 0; v < table.dist[s].size(); ++v)
                CHECK(table.dist[s][v] >= circle_distance(cloud, table.sources[s], static_cast<int>(v)) - 1e-9);
    }
}

TEST_CASE("same-fiber distances shrink as t grows") {
    SampleCloud cloud = small_cloud();
    // find a pair of sources with nearly equal circle projection
    DistanceTable d0 = graph_distance(cloud, 0.0, 32);
    DistanceTable d3 = graph_distance(cloud, 0.3, 32);
    int best_i = -1, best_j = -1;
    double best = 1e300;
    for (size_t i = 0; i < d0.sources.size(); ++i)
        for (size_t j = i + 1; j < d0.sources.size(); ++j) {
            double dc = circle_distance(cloud, d0.sources[i], d0.sources[j]);
            double dg = d0.dist[i][d0.sources[j]];
            if (dc < 0.02 && dg > 0.5 && dc < best) {
                best = dc;
                best_i = static_cast<int>(i);
                best_j = static_cast<int>(j);
            }
        }
    REQUIRE(best_i >= 0);
    CHECK(d3.dist[best_i][d3.sources[best_j]] < d0.dist[best_i][d0.sources[best_j]]);
}

TEST_CASE("distortion: zero for coincident pairs, strictly decreasing along the flow") {
    SampleCloud cloud = small_cloud();
    double T = 1.0;  // n = 2
    std::vector<double> ts{0.0, 0.2, 0.4};
    double prev = 1e300;
    for (double t : ts) {
        double dis = distortion_estimate(cloud, t, 32);
        CHECK(dis < prev);
        prev = dis;
    }
    std::vector<DistortionRow> rows = gh_diagnostics(cloud, {0.5 * T, 0.7 * T, 0.9 * T}, 32);
    CHECK(rows[0].distortion > rows[1].distortion);
    CHECK(rows[1].distortion > rows[2].distortion);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.bound_rhs));
        CHECK(r.mesh_eps > 0.0);
    }
}

TEST_CASE("distortion decays at the square-root rate of the collapsing factor") {
    // the contact distribution carries metric alpha(t) * g0, so fiber lengths
    // scale by sqrt(alpha); the ratio distortion/sqrt(T-t) stays within a
    // modest band while distortion/(T-t) diverges as t -> T
    SampleCloud cloud = small_cloud(600, 12, 11);
    double T = 1.0;
    std::vector<double> ts{0.5, 0.7, 0.9};
    std::vector<double> dis;
    for (double t : ts) dis.push_back(distortion_estimate(cloud, t, 48));
    double r_lo = 1e300, r_hi = 0.0, lin_lo = 1e300, lin_hi = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        double rs = dis[i] / std::sqrt(T - ts[i]);
        double rl = dis[i] / (T - ts[i]);
        r_lo = std::min(r_lo, rs);
        r_hi = std::max(r_hi, rs);
        lin_lo = std::min(lin_lo, rl);
        lin_hi = std::max(lin_hi, rl);
    }
    CHECK(r_hi / r_lo < lin_hi / lin_lo);  // sqrt normalization is flatter
    CHECK(r_hi / r_lo < 1.7);  // mesh floor keeps the band from tightening further
}
