#include "doctest.h"

#include "conetree/generators.hpp"
#include "conetree/quasiconvex.hpp"
#include "test_helpers.hpp"

using namespace conetree;
using conetree::testing::cyc;
using conetree::testing::cycle_graph;

TEST_CASE("projection set") {
    auto c8 = cycle_graph(8);
    std::vector<VertexId> arc{c8.index(cyc(1, 8)), c8.index(cyc(2, 8)), c8.index(cyc(3, 8))};

    // a member projects to itself
    auto self = project(c8, arc, c8.index(cyc(2, 8)));
    CHECK(self == std::vector<VertexId>{c8.index(cyc(2, 8))});

    // complement of an antipodal pair: either endpoint sees both arc gates
    std::vector<VertexId> complement;
    for (int i = 1; i < 8; ++i)
        if (i != 4) complement.push_back(c8.index(cyc(i, 8)));
    auto two = project(c8, complement, c8.index(cyc(0, 8)));
    std::vector<VertexId> expected{c8.index(cyc(1, 8)), c8.index(cyc(7, 8))};
    std::sort(expected.begin(), expected.end());
    CHECK(two == expected);

    // subtrees of trees have unique gates
    auto t = gen::tree(3, 2);
    std::vector<VertexId> subtree{t.index("n0001"), t.index("n0003"), t.index("n0004")};
    for (VertexId x = 0; x < t.vertex_count(); ++x) CHECK(project(t, subtree, x).size() == 1);

    CHECK_THROWS_WITH_AS(project(c8, {}, 0), doctest::Contains("EmptySubset"), Error);
}

TEST_CASE("projection is idempotent") {
    for (const auto& g : conetree::testing::small_suite()) {
        std::vector<VertexId> target;
        for (VertexId v = 0; v < g.vertex_count(); v += 2) target.push_back(v);
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            for (VertexId y : project(g, target, x))
                CHECK(project(g, target, y) == std::vector<VertexId>{y});
    }
}

TEST_CASE("quasiconvexity constant") {
    auto c8 = cycle_graph(8);
    std::vector<VertexId> all;
    for (VertexId v = 0; v < 8; ++v) all.push_back(v);
    CHECK(quasiconvexity_constant(c8, all) == 0);

    auto t = gen::tree(3, 2);
    std::vector<VertexId> subtree{t.index("n0000"), t.index("n0001"), t.index("n0002")};
    CHECK(quasiconvexity_constant(t, subtree) == 0);

    std::vector<VertexId> antipodal{c8.index(cyc(0, 8)), c8.index(cyc(4, 8))};
    CHECK(quasiconvexity_constant(c8, antipodal) == 4);
    CHECK(quasiconvexity_constant(c8, antipodal, /*all_geodesics=*/true) == 4);
}

TEST_CASE("convex subtrees are 0-quasiconvex in every generated tree") {
    for (int depth = 2; depth <= 3; ++depth)
        for (int valence = 2; valence <= 3; ++valence) {
            auto t = gen::tree(depth, valence);
            // geodesic segments are convex in a tree
            for (VertexId a = 0; a < t.vertex_count(); a += 3)
                for (VertexId b = a + 1; b < t.vertex_count(); b += 5) {
                    auto segment = t.geodesic(a, b);
                    CHECK(quasiconvexity_constant(t, segment) == 0);
                }
        }
}

TEST_CASE("separation and coboundedness") {
    // two disjoint subtrees of a tree project to single gates
    auto t = gen::tree(3, 2);
    SubsetFamily fam;
    fam.members.push_back({"left", {t.index("n0003"), t.index("n0007"), t.index("n0008")}});
    fam.members.push_back({"right", {t.index("n0006"), t.index("n0013"), t.index("n0014")}});
    auto report = separation_and_coboundedness(t, fam);
    CHECK(report.cobounded_diameter == 0);
    CHECK(report.separation > 0);

    // two parallel columns of a grid see each other fully: D = 2L
    const int height = 4; // L = 3 unit edges
    auto g = gen::grid(5, height);
    SubsetFamily columns;
    SubsetFamily::Member a{"a", {}}, b{"b", {}};
    for (int y = 0; y < height; ++y) {
        a.vertices.push_back(g.index("x00y0" + std::to_string(y)));
        b.vertices.push_back(g.index("x04y0" + std::to_string(y)));
    }
    std::sort(a.vertices.begin(), a.vertices.end());
    std::sort(b.vertices.begin(), b.vertices.end());
    columns.members = {a, b};
    auto grid_report = separation_and_coboundedness(g, columns);
    CHECK(grid_report.cobounded_diameter == 2 * (height - 1));
    CHECK(grid_report.separation == 8);

    // permutation invariance
    SubsetFamily swapped;
    swapped.members = {b, a};
    auto swapped_report = separation_and_coboundedness(g, swapped);
    CHECK(swapped_report.cobounded_diameter == grid_report.cobounded_diameter);
    CHECK(swapped_report.separation == grid_report.separation);

    SubsetFamily singleton;
    singleton.members = {a};
    CHECK_FALSE(separation_and_coboundedness(g, singleton).coboundedness_defined);
}

TEST_CASE("projected path check") {
    auto g = gen::grid(7, 5);
    std::vector<VertexId> column;
    for (int y = 0; y < 5; ++y) column.push_back(g.index("x03y0" + std::to_string(y)));
    std::sort(column.begin(), column.end());

    // both points on the column, far apart: the path is the geodesic
    auto on = projected_path_check(g, column, g.index("x03y00"), g.index("x03y04"), 4);
    CHECK(on.k <= Rational(1, 1));
    CHECK(on.is_quasigeodesic);

    // opposite sides of the column: here the three-segment route is itself
    // a monotone staircase, so K stays at the geodesic level
    auto across = projected_path_check(g, column, g.index("x00y00"), g.index("x06y04"), 4);
    CHECK(across.is_quasigeodesic);
    CHECK(across.k <= Rational(3, 2));
    CHECK(g.path_length(across.path) >=
          g.distance(g.index("x00y00"), g.index("x06y04")));

    CHECK_THROWS_WITH_AS(
        projected_path_check(g, column, g.index("x00y02"), g.index("x06y02"), 4),
        doctest::Contains("Inapplicable"), Error);
}

TEST_CASE("large projections stay near the source across a growing family") {
    // corollary-style check: when Z projects onto Y with a big diameter,
    // the projection image lies in a uniform neighborhood of Z
    std::vector<Dist> bounds;
    for (int height : {4, 6, 8}) {
        auto g = gen::grid(4, height);
        std::vector<VertexId> y_col, z_col;
        for (int y = 0; y < height; ++y) {
            y_col.push_back(g.index("x00y0" + std::to_string(y)));
            z_col.push_back(g.index("x03y0" + std::to_string(y)));
        }
        std::sort(y_col.begin(), y_col.end());
        std::sort(z_col.begin(), z_col.end());

        std::vector<VertexId> image;
        for (VertexId z : z_col) {
            auto p = project(g, y_col, z);
            image.insert(image.end(), p.begin(), p.end());
        }
        Dist diam = 0, excursion = 0;
        for (VertexId a : image)
            for (VertexId b : image) diam = std::max(diam, g.distance(a, b));
        REQUIRE(diam >= 4);
        for (VertexId a : image) excursion = std::max(excursion, g.distance_to_set(a, z_col));
        bounds.push_back(excursion);
    }
    const auto [lo, hi] = std::minmax_element(bounds.begin(), bounds.end());
    CHECK(*hi - *lo <= 2);
}
