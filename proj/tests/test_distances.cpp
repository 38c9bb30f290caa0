#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fpd/datagen.hpp"
#include "fpd/distances.hpp"
#include "fpd/rips.hpp"
#include "oracles.hpp"

using namespace fpd;

namespace {

PersistenceDiagram random_diagram(std::mt19937_64& gen, int n, double scale = 1.0) {
    std::vector<DiagramPoint> pts;
    auto u = [&] { return (gen() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < n; ++i) {
        double b = u() * scale;
        pts.push_back({b, b + u() * scale + 1e-9});
    }
    return PersistenceDiagram(1, std::move(pts));
}

}  // namespace

TEST_CASE("wasserstein2 basics") {
    PersistenceDiagram d(1, {{0.0, 1.0}, {0.5, 2.0}});
    CHECK(wasserstein2(d, d) == doctest::Approx(0.0).epsilon(1e-15));

    PersistenceDiagram single(1, {{0.0, 1.0}});
    PersistenceDiagram empty(1, {});
    CHECK(wasserstein2(single, empty) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(wasserstein2(empty, empty) == 0.0);

    // direct match (cost 4) beats sending both points to the diagonal (2+8)
    PersistenceDiagram a(1, {{0.0, 2.0}});
    PersistenceDiagram b(1, {{0.0, 4.0}});
    CHECK(wasserstein2(a, b) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(oracle::w2_squared(a, b) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("wasserstein2 equals the exhaustive transport oracle") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 60; ++trial) {
        auto d1 = random_diagram(gen, trial % 5);
        auto d2 = random_diagram(gen, (trial * 3 + 1) % 5);
        double w = wasserstein2(d1, d2);
        CHECK(w * w == doctest::Approx(oracle::w2_squared(d1, d2)).epsilon(1e-10));
    }
}

TEST_CASE("bottleneck basics") {
    PersistenceDiagram d(1, {{0.0, 1.0}});
    CHECK(bottleneck(d, d) == 0.0);
    PersistenceDiagram big(1, {{0.0, 2.0}});
    PersistenceDiagram empty(1, {});
    CHECK(bottleneck(big, empty) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bottleneck equals the exhaustive matching oracle") {
    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 60; ++trial) {
        auto d1 = random_diagram(gen, trial % 5);
        auto d2 = random_diagram(gen, (trial * 7 + 2) % 5);
        CHECK(bottleneck(d1, d2) == doctest::Approx(oracle::bottleneck(d1, d2)).epsilon(1e-12));
    }
}

TEST_CASE("distances are symmetric, non-negative, and vanish on equal input") {
    std::mt19937_64 gen(77);
    PersistenceImageGrid grid;
    for (int trial = 0; trial < 15; ++trial) {
        auto d1 = random_diagram(gen, 1 + trial % 4);
        auto d2 = random_diagram(gen, 1 + (trial * 5) % 4);
        grid = PersistenceImageGrid::from_corpus({d1, d2}, 8, -1.0);
        double fwd[5] = {wasserstein2(d1, d2), bottleneck(d1, d2), sliced_wasserstein(d1, d2, 16),
                         pi_l2(d1, d2, grid), heat_kernel_distance(d1, d2, 0.05)};
        double rev[5] = {wasserstein2(d2, d1), bottleneck(d2, d1), sliced_wasserstein(d2, d1, 16),
                         pi_l2(d2, d1, grid), heat_kernel_distance(d2, d1, 0.05)};
        for (int i = 0; i < 5; ++i) {
            CHECK(fwd[i] >= 0.0);
            CHECK(fwd[i] == doctest::Approx(rev[i]).epsilon(1e-9));
        }
        CHECK(wasserstein2(d1, d1) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(sliced_wasserstein(d1, d1, 16) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(pi_l2(d1, d1, grid) == 0.0);
        CHECK(heat_kernel_distance(d1, d1, 0.05) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("w2 and bottleneck satisfy the triangle inequality on sampled triples") {
    std::mt19937_64 gen(303);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_diagram(gen, 1 + trial % 6);
        auto b = random_diagram(gen, 1 + (trial * 3) % 6);
        auto c = random_diagram(gen, 1 + (trial * 5) % 6);
        CHECK(wasserstein2(a, c) <= wasserstein2(a, b) + wasserstein2(b, c) + 1e-9);
        CHECK(bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-9);
    }
}

TEST_CASE("bottleneck is bounded by the largest pair cost of the W2 matching") {
    std::mt19937_64 gen(404);
    for (int trial = 0; trial < 30; ++trial) {
        auto d1 = random_diagram(gen, 1 + trial % 5);
        auto d2 = random_diagram(gen, 1 + (trial * 7) % 5);
        auto m = hungarian(augment(d1, d2));
        const auto& a = d1.points();
        const auto& b = d2.points();
        double max_linf = 0.0;
        for (std::size_t i = 0; i < a.size() + b.size(); ++i) {
            std::size_t j = m.row_to_col[i];
            double cost;
            if (i < a.size() && j < b.size())
                cost = detail::linf(a[i], b[j]);
            else if (i < a.size())
                cost = detail::linf_to_diagonal(a[i]);
            else if (j < b.size())
                cost = detail::linf_to_diagonal(b[j]);
            else
                cost = 0.0;
            max_linf = std::max(max_linf, cost);
        }
        CHECK(bottleneck(d1, d2) <= max_linf + 1e-12);
    }
}

TEST_CASE("sliced wasserstein: diagonal-direction projections cancel persistence-only differences") {
    // both points project identically along the diagonal direction (1,1)/sqrt(2)
    PersistenceDiagram d1(1, {{1.0, 2.0}});
    PersistenceDiagram d2(1, {{0.5, 2.5}});
    double theta = std::numbers::pi / 4.0;  // the diagonal direction
    double cx = std::cos(theta), cy = std::sin(theta);
    auto proj = [&](const DiagramPoint& p) { return cx * p.birth + cy * p.death; };
    CHECK(proj(d1.points()[0]) == doctest::Approx(proj(d2.points()[0])).epsilon(1e-12));
}

TEST_CASE("sliced wasserstein matches a hand-computed projection sum") {
    PersistenceDiagram d1(1, {{0.0, 1.0}, {1.0, 3.0}});
    PersistenceDiagram d2(1, {{0.5, 2.0}});
    const int directions = 4;
    // independent evaluation of the same definition
    auto diag = [](const DiagramPoint& p) {
        double m = 0.5 * (p.birth + p.death);
        return DiagramPoint{m, m};
    };
    double expected = 0.0;
    for (int k = 0; k < directions; ++k) {
        double theta = -std::numbers::pi / 2.0 + std::numbers::pi * k / directions;
        double cx = std::cos(theta), cy = std::sin(theta);
        auto proj = [&](const DiagramPoint& p) { return cx * p.birth + cy * p.death; };
        std::vector<double> a{proj(d1.points()[0]), proj(d1.points()[1]), proj(diag(d2.points()[0]))};
        std::vector<double> b{proj(d2.points()[0]), proj(diag(d1.points()[0])),
                              proj(diag(d1.points()[1]))};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (int i = 0; i < 3; ++i) expected += std::fabs(a[i] - b[i]);
    }
    expected /= directions;
    CHECK(sliced_wasserstein(d1, d2, directions) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("persistence image: empty diagram maps to the zero vector") {
    PersistenceDiagram ref(1, {{0.2, 0.9}});
    auto grid = PersistenceImageGrid::from_corpus({ref}, 5, 0.1);
    PersistenceDiagram empty(1, {});
    auto img = persistence_image(empty, grid);
    for (double v : img) CHECK(v == 0.0);
    CHECK(pi_l2(ref, ref, grid) == 0.0);
}

TEST_CASE("persistence image: single point concentrates mass in the centre cell") {
    PersistenceDiagram d(1, {{0.5, 1.0}});  // (birth, persistence) = (0.5, 0.5)
    PersistenceImageGrid grid;
    grid.resolution = 3;
    grid.bandwidth = 0.05;
    grid.birth_lo = 0.35;
    grid.birth_hi = 0.65;
    grid.pers_lo = 0.35;
    grid.pers_hi = 0.65;
    grid.max_persistence = 0.5;
    auto img = persistence_image(d, grid);
    REQUIRE(img.size() == 9);
    for (std::size_t i = 0; i < img.size(); ++i)
        if (i != 4) CHECK(img[4] > img[i]);

    // cross-check the centre cell mass with midpoint quadrature
    const int steps = 400;
    double cell_lo = 0.45, cell_hi = 0.55, h = (cell_hi - cell_lo) / steps;
    double quad = 0.0;
    for (int i = 0; i < steps; ++i)
        for (int j = 0; j < steps; ++j) {
            double x = cell_lo + (i + 0.5) * h, y = cell_lo + (j + 0.5) * h;
            double dx = x - 0.5, dy = y - 0.5;
            double g = std::exp(-(dx * dx + dy * dy) / (2 * grid.bandwidth * grid.bandwidth)) /
                       (2 * std::numbers::pi * grid.bandwidth * grid.bandwidth);
            quad += g * h * h;
        }
    CHECK(img[4] == doctest::Approx(quad).epsilon(1e-4));  // weight = pers/max_pers = 1
}

TEST_CASE("persistence image grid rejects an empty corpus") {
    PersistenceDiagram empty(1, {});
    CHECK_THROWS_AS(PersistenceImageGrid::from_corpus({empty}, 5, 0.1), std::invalid_argument);
}

TEST_CASE("heat kernel distance matches the scalar formula on one-point diagrams") {
    PersistenceDiagram f(1, {{0.0, 1.0}});
    PersistenceDiagram g(1, {{0.5, 2.0}});
    double t = 0.07;
    auto k = [t](const DiagramPoint& p, const DiagramPoint& q) {
        double db = p.birth - q.birth, dd = p.death - q.death;
        double direct = db * db + dd * dd;
        double mb = p.birth - q.death, md = p.death - q.birth;
        double mirrored = mb * mb + md * md;
        return (std::exp(-direct / (8 * t)) - std::exp(-mirrored / (8 * t))) /
               (8 * std::numbers::pi * t);
    };
    double expected = std::sqrt(k(f.points()[0], f.points()[0]) + k(g.points()[0], g.points()[0]) -
                                2.0 * k(f.points()[0], g.points()[0]));
    CHECK(heat_kernel_distance(f, g, t) == doctest::Approx(expected).epsilon(1e-12));
    PersistenceDiagram empty(1, {});
    CHECK(heat_kernel_distance(empty, empty, t) == 0.0);
    CHECK_THROWS_AS(heat_kernel_distance(f, g, 0.0), std::invalid_argument);
}

TEST_CASE("uncapped diagrams are rejected") {
    PersistenceDiagram inf_d(1, {{0.0, kInf}});
    PersistenceDiagram fin(1, {{0.0, 1.0}});
    CHECK_THROWS(wasserstein2(inf_d, fin));
    CHECK_THROWS(bottleneck(inf_d, fin));
    CHECK_THROWS(sliced_wasserstein(inf_d, fin, 4));
    CHECK_THROWS(heat_kernel_distance(inf_d, fin, 0.1));
}

TEST_CASE("wasserstein2 is invariant under rigid motion of the underlying clouds") {
    std::mt19937_64 gen(555);
    auto make_cloud = [&](int n) {
        PointCloud pc;
        pc.dim = 2;
        auto u = [&] { return (gen() >> 11) * 0x1.0p-53; };
        for (int i = 0; i < n; ++i) pc.points.push_back({u(), u(), 0.0});
        return pc;
    };
    auto pc1 = make_cloud(20);
    auto pc2 = make_cloud(22);
    TransformSpec rot;
    rot.kind = TransformKind::rotate;
    rot.axis = 'z';
    rot.angle = 1.234;
    TransformSpec shift;
    shift.kind = TransformKind::translate;
    shift.vec[0] = -2.5;
    shift.vec[1] = 0.75;
    auto g1 = transform(transform(pc1, rot), shift);
    auto g2 = transform(transform(pc2, rot), shift);
    for (int p = 0; p < 2; ++p) {
        auto a1 = persistence(build_rips(pc1, 2, 2.0), p);
        auto a2 = persistence(build_rips(pc2, 2, 2.0), p);
        auto b1 = persistence(build_rips(g1, 2, 2.0), p);
        auto b2 = persistence(build_rips(g2, 2, 2.0), p);
        double cap = default_cap({a1, a2, b1, b2});
        auto capit = [cap](const PersistenceDiagram& d) {
            return d.all_finite() ? d : cap_infinities(d, cap);
        };
        CHECK(wasserstein2(capit(a1), capit(a2)) ==
              doctest::Approx(wasserstein2(capit(b1), capit(b2))).epsilon(1e-7));
    }
}
