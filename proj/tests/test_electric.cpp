#include "doctest.h"

#include "conetree/electric.hpp"
#include "conetree/generators.hpp"
#include "conetree/hyperbolicity.hpp"
#include "test_helpers.hpp"

using namespace conetree;
using conetree::testing::cyc;
using conetree::testing::cycle_graph;
using conetree::testing::path_graph;

namespace {

SubsetFamily one_subset(const MetricGraph& g, const std::string& name,
                        const std::vector<std::string>& vertices) {
    SubsetFamily fam;
    SubsetFamily::Member m{name, {}};
    for (const auto& v : vertices) m.vertices.push_back(g.index(v));
    std::sort(m.vertices.begin(), m.vertices.end());
    fam.members.push_back(std::move(m));
    return fam;
}

} // namespace

TEST_CASE("cone_off basics") {
    auto p10 = path_graph(10);
    std::vector<std::string> all;
    for (VertexId v = 0; v < p10.vertex_count(); ++v) all.push_back(p10.name(v));
    auto cs = cone_off(p10, one_subset(p10, "H", all));
    CHECK(cs.graph().vertex_count() == 12);
    CHECK(cs.graph().diameter() <= 2);

    auto flagged = cone_off(p10, {});
    CHECK(flagged.empty_family_flag());
    CHECK(flagged.graph().vertex_count() == p10.vertex_count());

    // singleton cones do not shorten anything between distinct subsets
    auto c8 = cycle_graph(8);
    SubsetFamily fam;
    fam.members.push_back({"u", {c8.index(cyc(0, 8))}});
    fam.members.push_back({"v", {c8.index(cyc(4, 8))}});
    auto coned = cone_off(c8, fam);
    CHECK(coned.graph().distance(coned.to_graph(c8.index(cyc(0, 8))),
                                 coned.to_graph(c8.index(cyc(4, 8)))) == 8);
}

TEST_CASE("cone_off never increases distances and collapses subsets") {
    auto g = gen::grid(4, 4);
    std::vector<std::string> column{"x01y00", "x01y01", "x01y02", "x01y03"};
    auto cs = cone_off(g, one_subset(g, "col", column));
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            CHECK(cs.graph().distance(cs.to_graph(u), cs.to_graph(v)) <= g.distance(u, v));
    for (const auto& a : column)
        for (const auto& b : column)
            CHECK(cs.graph().distance(cs.to_graph(g.index(a)), cs.to_graph(g.index(b))) <= 2);
}

TEST_CASE("partial electrocution with point targets reproduces cone_off") {
    auto g = gen::grid(3, 3);
    auto fam = one_subset(g, "row", {"x00y00", "x01y00", "x02y00"});

    std::map<std::string, MetricGraph> targets;
    GraphBuilder point;
    point.add_vertex("pt");
    targets.emplace("row", point.build(false));
    std::map<std::string, std::map<std::string, std::string>> collapse;
    for (const auto& n : {"x00y00", "x01y00", "x02y00"}) collapse["row"][n] = "pt";

    auto pel = partially_electrocute(g, fam, targets, collapse);
    auto coned = cone_off(g, fam);
    CHECK(format_graph_text(pel.graph(), {}) == format_graph_text(coned.graph(), {}));
}

TEST_CASE("partial electrocution collapses a ladder rung-wise") {
    // 2 x 4 ladder; both rails in the subset, collapsed onto a 4-path
    auto g = gen::grid(4, 2);
    std::vector<std::string> rungs;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y) rungs.push_back("x0" + std::to_string(x) + "y0" + std::to_string(y));
    auto fam = one_subset(g, "lad", rungs);

    GraphBuilder pathb;
    for (int x = 0; x + 1 < 4; ++x)
        pathb.add_edge("q0" + std::to_string(x), "q0" + std::to_string(x + 1), 2);
    std::map<std::string, MetricGraph> targets;
    targets.emplace("lad", pathb.build());
    std::map<std::string, std::map<std::string, std::string>> collapse;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y)
            collapse["lad"]["x0" + std::to_string(x) + "y0" + std::to_string(y)] =
                "q0" + std::to_string(x);

    auto pel = partially_electrocute(g, fam, targets, collapse);
    // rail-to-rail along the subset: down a cylinder edge, along the path,
    // back up = d_L + 2
    const MetricGraph& h = pel.graph();
    CHECK(h.distance(h.index("x00y00"), h.index("x03y01")) == 3 * 2 + 2);
    CHECK(pel.pel_targets().at("lad").collapse_lipschitz <= Rational(1, 1));

    // NotOnto when an image vertex is never hit
    collapse["lad"]["x03y00"] = "q02";
    collapse["lad"]["x03y01"] = "q02";
    CHECK_THROWS_WITH_AS(partially_electrocute(g, fam, targets, collapse),
                         doctest::Contains("NotOnto"), Error);
}

TEST_CASE("electrocuting the targets of a partial electrocution gives the full cone") {
    auto g = gen::grid(4, 2);
    std::vector<std::string> rungs;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y) rungs.push_back("x0" + std::to_string(x) + "y0" + std::to_string(y));
    auto fam = one_subset(g, "lad", rungs);

    GraphBuilder pathb;
    for (int x = 0; x + 1 < 4; ++x)
        pathb.add_edge("q0" + std::to_string(x), "q0" + std::to_string(x + 1), 2);
    std::map<std::string, MetricGraph> targets;
    targets.emplace("lad", pathb.build());
    std::map<std::string, std::map<std::string, std::string>> collapse;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y)
            collapse["lad"]["x0" + std::to_string(x) + "y0" + std::to_string(y)] =
                "q0" + std::to_string(x);
    auto pel = partially_electrocute(g, fam, targets, collapse);

    // cone the cylinder target inside the partially electrocuted space
    SubsetFamily second;
    SubsetFamily::Member target_set{"lad2", {}};
    for (const auto& n : pel.pel_targets().at("lad").target_vertices)
        target_set.vertices.push_back(pel.graph().index(n));
    std::sort(target_set.vertices.begin(), target_set.vertices.end());
    second.members.push_back(target_set);
    auto twice = cone_off(pel.graph(), second);

    auto once = cone_off(g, fam);
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const Dist d2 = twice.graph().distance(twice.graph().index(g.name(u)),
                                                   twice.graph().index(g.name(v)));
            const Dist d1 = once.graph().distance(once.to_graph(u), once.to_graph(v));
            // a cylinder-cone-cylinder hop costs 4 half-units against the
            // direct cone hop's 2, so the two routes agree up to +2 per hop
            CHECK(d1 <= d2);
            CHECK(d2 <= d1 + 2);
        }
}

TEST_CASE("electric geodesics") {
    auto p10 = path_graph(10);
    auto no_family = cone_off(p10, {});
    CHECK(electric_geodesic(no_family, p10.index("p00"), p10.index("p10")) ==
          p10.geodesic(p10.index("p00"), p10.index("p10")));

    std::vector<std::string> all;
    for (VertexId v = 0; v < p10.vertex_count(); ++v) all.push_back(p10.name(v));
    auto cs = cone_off(p10, one_subset(p10, "H", all));
    auto through = electric_geodesic(cs, p10.index("p00"), p10.index("p10"));
    CHECK(cs.graph().path_length(through) == 2);
    CHECK(through.size() == 3);

    // the cone is taken only when the detour pays off
    auto g = gen::grid(9, 3);
    std::vector<std::string> col{"x04y00", "x04y01", "x04y02"};
    auto gc = cone_off(g, one_subset(g, "col", col));
    auto near = electric_geodesic(gc, g.index("x03y01"), g.index("x05y01"));
    CHECK(gc.graph().path_length(near) == 4); // straight across
    auto far = electric_geodesic(gc, g.index("x00y00"), g.index("x08y02"));
    bool uses_cone = false;
    for (VertexId v : far) uses_cone = uses_cone || gc.cone_subset_of(v).has_value();
    CHECK(uses_cone);
    CHECK(gc.graph().path_length(far) < g.distance(g.index("x00y00"), g.index("x08y02")));
}

TEST_CASE("penetration patterns") {
    auto g = gen::grid(9, 3);
    std::vector<std::string> col{"x04y00", "x04y01", "x04y02"};
    auto cs = cone_off(g, one_subset(g, "col", col));

    // a path that stays away from the column
    std::vector<VertexId> away{cs.graph().index("x00y00"), cs.graph().index("x01y00"),
                               cs.graph().index("x02y00")};
    auto p0 = penetration_pattern(cs, away, 2);
    CHECK(p0.visits.empty());
    CHECK(p0.without_backtracking());

    // straight through: one visit, no backtracking
    std::vector<VertexId> through;
    for (int x = 0; x < 9; ++x) through.push_back(cs.graph().index("x0" + std::to_string(x) + "y01"));
    auto p1 = penetration_pattern(cs, through, 2);
    CHECK(p1.visits.size() == 1);
    CHECK(p1.visits[0].subset == "col");
    CHECK(cs.graph().name(p1.visits[0].entry) == "x03y01");
    CHECK(cs.graph().name(p1.visits[0].exit) == "x05y01");
    CHECK(p1.without_backtracking());

    // leave and come back: flagged
    std::vector<std::string> wander{"x03y01", "x02y01", "x01y01", "x02y01", "x03y01"};
    std::vector<VertexId> wander_ids;
    for (const auto& n : wander) wander_ids.push_back(cs.graph().index(n));
    auto p2 = penetration_pattern(cs, wander_ids, 2);
    CHECK(p2.visits.size() == 2);
    CHECK(p2.violations.size() == 1);
}

TEST_CASE("pattern comparison") {
    auto g = gen::grid(9, 3);
    std::vector<std::string> col{"x04y00", "x04y01", "x04y02"};
    auto cs = cone_off(g, one_subset(g, "col", col));

    std::vector<VertexId> a, b;
    for (int x = 0; x < 9; ++x) a.push_back(cs.graph().index("x0" + std::to_string(x) + "y01"));
    auto pa = penetration_pattern(cs, a, 2);
    CHECK(compare_patterns(cs, pa, pa).max_discrepancy == 0);

    // same endpoints, pass on a different row: entries differ by one rung
    b.push_back(cs.graph().index("x00y01"));
    b.push_back(cs.graph().index("x00y00"));
    for (int x = 1; x < 9; ++x) b.push_back(cs.graph().index("x0" + std::to_string(x) + "y00"));
    b.push_back(cs.graph().index("x08y01"));
    auto pb = penetration_pattern(cs, b, 2);
    auto cmp = compare_patterns(cs, pa, pb);
    CHECK(cmp.max_discrepancy == compare_patterns(cs, pb, pa).max_discrepancy);
    CHECK(cmp.max_discrepancy <= 4);

    auto p_eps = penetration_pattern(cs, a, 4);
    CHECK_THROWS_WITH_AS(compare_patterns(cs, pa, p_eps), doctest::Contains("EpsilonMismatch"),
                         Error);
    std::vector<VertexId> other{cs.graph().index("x00y00"), cs.graph().index("x01y00")};
    auto p_other = penetration_pattern(cs, other, 2);
    CHECK_THROWS_WITH_AS(compare_patterns(cs, pa, p_other), doctest::Contains("EndpointMismatch"),
                         Error);
}

TEST_CASE("tracking constants") {
    auto p10 = path_graph(10);
    auto no_family = cone_off(p10, {});
    std::vector<std::pair<VertexId, VertexId>> pairs{{p10.index("p00"), p10.index("p10")}};
    auto t0 = tracking_constant(no_family, pairs);
    CHECK(t0.electric_hausdorff == 0);
    CHECK(t0.hyperbolic_hausdorff == 0);

    // a coned segment lying on the geodesic: electric detours cost
    // at most one half-unit hop off the geodesic
    auto seg = cone_off(p10, one_subset(p10, "mid", {"p04", "p05", "p06"}));
    auto t1 = tracking_constant(seg, pairs);
    CHECK(t1.electric_hausdorff <= 1);
    CHECK(t1.hyperbolic_hausdorff <= 4);
}

TEST_CASE("surgery removes backtracking") {
    auto g = gen::grid(9, 3);
    std::vector<std::string> col{"x04y00", "x04y01", "x04y02"};
    auto cs = cone_off(g, one_subset(g, "col", col));

    std::vector<std::string> wander{"x03y01", "x02y01", "x01y01", "x02y01", "x03y01",
                                    "x04y01", "x05y01"};
    std::vector<VertexId> ids;
    for (const auto& n : wander) ids.push_back(cs.graph().index(n));
    auto fixed = remove_backtracking(cs, ids, 2);
    CHECK(fixed.clean);
    CHECK(penetration_pattern(cs, fixed.path, 2).without_backtracking());
    CHECK(fixed.path.front() == ids.front());
    CHECK(fixed.path.back() == ids.back());
}
