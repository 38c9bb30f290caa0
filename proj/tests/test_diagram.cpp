#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fpd/diagram.hpp"

using namespace fpd;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

PersistenceDiagram random_finite_diagram(std::mt19937_64& gen, int dim, int n) {
    std::vector<DiagramPoint> pts;
    auto u = [&] { return (gen() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < n; ++i) {
        double b = u();
        pts.push_back({b, b + u() + 1e-6});
    }
    return PersistenceDiagram(dim, std::move(pts));
}

}  // namespace

TEST_CASE("distance to diagonal") {
    CHECK(distance_to_diagonal({0.0, 1.0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(distance_to_diagonal({3.7, 3.7}) == 0.0);
    CHECK(distance_to_diagonal({1.0, 3.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("distance to diagonal is non-negative and vanishes only on the diagonal") {
    std::mt19937_64 gen(7);
    auto u = [&] { return (gen() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 200; ++i) {
        double b = u() * 10 - 5, pers = u() * 3;
        DiagramPoint p{b, b + pers};
        double d = distance_to_diagonal(p);
        CHECK(d >= 0.0);
        CHECK((d == 0.0) == (pers == 0.0));
    }
}

TEST_CASE("capping replaces infinities and only infinities") {
    PersistenceDiagram d(0, {{0.0, kInf}, {0.0, 0.5}});
    auto capped = cap_infinities(d, 2.0);
    REQUIRE(capped.size() == 2);
    CHECK(capped.points()[0] == DiagramPoint{0.0, 0.5});
    CHECK(capped.points()[1] == DiagramPoint{0.0, 2.0});
    CHECK(capped.cap() == 2.0);

    PersistenceDiagram finite(0, {{0.0, 1.0}});
    auto same = cap_infinities(finite, 5.0);
    CHECK(same.points() == finite.points());

    PersistenceDiagram bad(0, {{0.0, kInf}, {0.0, 0.9}});
    CHECK_THROWS_AS(cap_infinities(bad, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cap_infinities(bad, 0.9), std::invalid_argument);
}

TEST_CASE("capping preserves point count and finite points") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = random_finite_diagram(gen, 1, 8);
        std::vector<DiagramPoint> pts = d.points();
        pts.push_back({0.25, kInf});
        PersistenceDiagram with_inf(1, pts);
        auto capped = cap_infinities(with_inf, 100.0);
        CHECK(capped.size() == with_inf.size());
        std::size_t finite_matches = 0;
        for (const auto& p : d.points())
            for (const auto& q : capped.points())
                if (p == q) ++finite_matches;
        CHECK(finite_matches >= d.size());
    }
}

TEST_CASE("zero-persistence points are dropped on construction") {
    PersistenceDiagram d(1, {{0.5, 0.5}, {0.0, 1.0}, {2.0, 2.0}});
    REQUIRE(d.size() == 1);
    CHECK(d.points()[0] == DiagramPoint{0.0, 1.0});
}

TEST_CASE("birth > death is rejected") {
    CHECK_THROWS_AS(PersistenceDiagram(1, {{2.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("default cap is twice the largest finite death") {
    PersistenceDiagram a(0, {{0.0, 1.5}, {0.0, kInf}});
    PersistenceDiagram b(0, {{0.0, 0.5}});
    CHECK(default_cap({a, b}) == 3.0);
    PersistenceDiagram only_inf(0, {{0.0, kInf}});
    CHECK(default_cap({only_inf}) == 1.0);
}

TEST_CASE("csv round trip is the identity on finite diagrams") {
    std::mt19937_64 gen(11);
    auto path = temp_path("fpd_roundtrip.csv");
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_finite_diagram(gen, trial % 3, 25);
        write_diagram(d, path);
        auto back = read_diagram(path);
        CHECK(back == d);
    }
    std::filesystem::remove(path);
}

TEST_CASE("json round trip is the identity on finite diagrams") {
    std::mt19937_64 gen(12);
    auto path = temp_path("fpd_roundtrip.json");
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_finite_diagram(gen, 2, 17);
        write_diagram(d, path);
        auto back = read_diagram(path);
        CHECK(back == d);
    }
    std::filesystem::remove(path);
}

TEST_CASE("csv parsing") {
    auto path = temp_path("fpd_parse.csv");
    {
        std::ofstream out(path);
        out << "1,0.0,1.5\n";
    }
    auto d = read_diagram(path);
    CHECK(d.dim() == 1);
    REQUIRE(d.size() == 1);
    CHECK(d.points()[0] == DiagramPoint{0.0, 1.5});

    {
        std::ofstream out(path);
        out << "dim,birth,death\n0,0,inf\n0,0,0.5\n";
    }
    auto with_inf = read_diagram(path);
    CHECK(with_inf.size() == 2);
    CHECK(!with_inf.all_finite());

    std::filesystem::remove(path);
}

TEST_CASE("csv errors carry line numbers") {
    auto path = temp_path("fpd_bad.csv");
    {
        std::ofstream out(path);
        out << "1,2.0,1.0\n";
    }
    try {
        read_diagram(path);
        FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(":1") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << "1,0.0,1.0\n1,oops,2.0\n";
    }
    try {
        read_diagram(path);
        FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("unknown format is rejected") {
    CHECK_THROWS(read_diagram("diagram.xml"));
}

TEST_CASE("json represents infinite deaths as null") {
    auto path = temp_path("fpd_inf.json");
    PersistenceDiagram d(0, {{0.0, kInf}, {0.0, 0.5}});
    write_diagram(d, path);
    auto back = read_diagram(path);
    REQUIRE(back.size() == 2);
    CHECK(back.points()[0] == DiagramPoint{0.0, 0.5});
    CHECK(!back.points()[1].finite());
    std::filesystem::remove(path);
}
