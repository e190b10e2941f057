#include "doctest.h"

#include "conetree/generators.hpp"
#include "conetree/tree_of_spaces.hpp"
#include "test_helpers.hpp"

using namespace conetree;
using conetree::testing::cyc;
using conetree::testing::cycle_graph;

namespace {

TreeOfSpaces two_copies_identity(const MetricGraph& base, const SubsetFamily& fam_a,
                                 const SubsetFamily& fam_b, const SubsetFamily& fam_edge) {
    TreeOfSpaces tos;
    tos.vertices.push_back({"va", base, fam_a});
    tos.vertices.push_back({"vb", base, fam_b});
    TreeOfSpaces::EdgeSpace es;
    es.name = "eab";
    es.v0 = "va";
    es.v1 = "vb";
    es.space = base;
    es.family = fam_edge;
    for (VertexId v = 0; v < base.vertex_count(); ++v) {
        es.map0[v] = v;
        es.map1[v] = v;
    }
    tos.edges.push_back(std::move(es));
    return tos;
}

SubsetFamily arc_family(const MetricGraph& g, int len, int n) {
    SubsetFamily fam;
    SubsetFamily::Member m{"arc", {}};
    for (int i = 0; i < len; ++i) m.vertices.push_back(g.index(cyc(i, n)));
    std::sort(m.vertices.begin(), m.vertices.end());
    fam.members.push_back(std::move(m));
    return fam;
}

} // namespace

TEST_CASE("validate: single space and identity gluing") {
    TreeOfSpaces single;
    single.vertices.push_back({"v", cycle_graph(6), {}});
    auto report = validate(single);
    CHECK(report.strictly_type_preserving());
    CHECK(report.map_distortion.empty());

    auto base = cycle_graph(6);
    auto fam = arc_family(base, 2, 6);
    auto tos = two_copies_identity(base, fam, fam, fam);
    auto r2 = validate(tos);
    CHECK(r2.strictly_type_preserving());
    CHECK(r2.max_distortion == Rational(1, 1));
    CHECK(r2.max_coned_distortion == Rational(1, 1));
}

TEST_CASE("validate: type preservation violations are reported, not thrown") {
    auto base = cycle_graph(6);
    auto fam = arc_family(base, 2, 6);
    SubsetFamily half;
    half.members.push_back({"half", {base.index(cyc(0, 6))}}); // proper subset of the arc image
    auto tos = two_copies_identity(base, fam, fam, half);
    auto report = validate(tos);
    CHECK_FALSE(report.strictly_type_preserving());
    CHECK(report.type_violations.size() == 2); // both sides see the mismatch
    CHECK(report.type_violations[0].vertex_subset == "arc");

    CHECK_THROWS_WITH_AS(assemble_coned(tos), doctest::Contains("TypePreservationViolation"),
                         Error);
    CHECK_NOTHROW(assemble_total(tos)); // total assembly tolerates it
}

TEST_CASE("structure errors") {
    TreeOfSpaces empty;
    CHECK_THROWS_WITH_AS(empty.check_structure(), doctest::Contains("EmptyTree"), Error);

    auto base = cycle_graph(4);
    TreeOfSpaces cyclic;
    cyclic.vertices.push_back({"a", base, {}});
    cyclic.vertices.push_back({"b", base, {}});
    for (int i = 0; i < 2; ++i) {
        TreeOfSpaces::EdgeSpace es;
        es.name = "e" + std::to_string(i);
        es.v0 = "a";
        es.v1 = "b";
        es.space = base;
        for (VertexId v = 0; v < base.vertex_count(); ++v) {
            es.map0[v] = v;
            es.map1[v] = v;
        }
        cyclic.edges.push_back(std::move(es));
    }
    CHECK_THROWS_WITH_AS(cyclic.check_structure(), doctest::Contains("NotATree"), Error);
}

TEST_CASE("assemble_total shapes") {
    TreeOfSpaces single;
    single.vertices.push_back({"v", cycle_graph(6), {}});
    auto total = assemble_total(single);
    CHECK(total.vertex_count() == 6);
    CHECK(total.diameter() == cycle_graph(6).diameter());

    // two points joined through a point slab: length one unit
    GraphBuilder pt;
    pt.add_vertex("x");
    MetricGraph point = pt.build(false);
    TreeOfSpaces pair;
    pair.vertices.push_back({"a", point, {}});
    pair.vertices.push_back({"b", point, {}});
    TreeOfSpaces::EdgeSpace es;
    es.name = "e";
    es.v0 = "a";
    es.v1 = "b";
    es.space = point;
    es.map0[0] = 0;
    es.map1[0] = 0;
    pair.edges.push_back(es);
    auto two = assemble_total(pair);
    CHECK(two.vertex_count() == 3);
    CHECK(two.distance(two.index("a:x"), two.index("b:x")) == 2);
}

TEST_CASE("line of cycles: distances split into cycle part and tree part") {
    const int n = 6, L = 3;
    auto tos = gen::line_of_spaces(n, L, 1);
    auto total = assemble_total(tos);
    auto base = cycle_graph(n);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const std::string u = "t00" + std::to_string(i) + ":" + cyc(a, n);
                    const std::string v = "t00" + std::to_string(j) + ":" + cyc(b, n);
                    const Dist expect =
                        base.distance(base.index(cyc(a, n)), base.index(cyc(b, n))) +
                        2 * std::abs(i - j);
                    CHECK(total.distance(total.index(u), total.index(v)) == expect);
                }
}

TEST_CASE("assemble_coned equals assemble_total when no horospheres exist") {
    auto base = cycle_graph(6);
    auto tos = two_copies_identity(base, {}, {}, {});
    auto assembly = assemble_coned(tos);
    CHECK(format_graph_text(assembly.coned.graph(), {}) == format_graph_text(assembly.total, {}));
    CHECK(cone_locus(tos, assembly).components.empty());
}

TEST_CASE("assemble_coned on a single space is its electrification") {
    auto base = cycle_graph(6);
    auto fam = arc_family(base, 2, 6);
    TreeOfSpaces single;
    single.vertices.push_back({"v", base, fam});
    auto assembly = assemble_coned(single);
    auto direct = cone_off(base, fam);
    CHECK(assembly.coned.graph().vertex_count() == direct.graph().vertex_count());
    CHECK(assembly.coned.graph().diameter() == direct.graph().diameter());
}

TEST_CASE("cone locus of a matched line is a single path per subset") {
    const int L = 4;
    auto tos = gen::line_of_spaces(6, L, 1);
    auto assembly = assemble_coned(tos);
    auto locus = cone_locus(tos, assembly);
    REQUIRE(locus.components.size() == 1);
    CHECK(locus.is_forest);
    CHECK(locus.embeds_in_tree);
    // L vertex cones + L-1 slab cones in a path
    CHECK(locus.components[0].cone_points.size() == 2u * L - 1);
    CHECK(locus.components[0].edges.size() == 2u * (L - 1));
    CHECK(locus.components[0].tree_image.size() == static_cast<size_t>(L));
}

TEST_CASE("unmatched horospheres give singleton locus components") {
    // a point edge space attached away from both horospheres: preimages
    // are empty, so type preservation holds and the cone points stay alone
    auto base = cycle_graph(8);
    SubsetFamily fam_a;
    fam_a.members.push_back({"ha", {base.index(cyc(0, 8))}});
    SubsetFamily fam_b;
    fam_b.members.push_back({"hb", {base.index(cyc(4, 8))}});

    GraphBuilder pt;
    pt.add_vertex("x");
    TreeOfSpaces tos;
    tos.vertices.push_back({"va", base, fam_a});
    tos.vertices.push_back({"vb", base, fam_b});
    TreeOfSpaces::EdgeSpace es;
    es.name = "eab";
    es.v0 = "va";
    es.v1 = "vb";
    es.space = pt.build(false);
    es.map0[0] = base.index(cyc(2, 8));
    es.map1[0] = base.index(cyc(2, 8));
    tos.edges.push_back(std::move(es));

    auto assembly = assemble_coned(tos);
    auto locus = cone_locus(tos, assembly);
    CHECK(locus.components.size() == 2);
    for (const auto& comp : locus.components) CHECK(comp.cone_points.size() == 1);
}

TEST_CASE("parallel cones: two locus lines of the declared length") {
    const int N = 5, D0 = 3;
    auto tos = gen::parallel_cones(N, D0);
    auto assembly = assemble_coned(tos);
    CHECK(assembly.validation.strictly_type_preserving());
    auto locus = cone_locus(tos, assembly);
    REQUIRE(locus.components.size() == 2);
    for (const auto& comp : locus.components) {
        CHECK(comp.cone_points.size() == 2u * (N + 1) - 1);
        CHECK(comp.tree_image.size() == static_cast<size_t>(N + 1));
    }
}

TEST_CASE("tree projection never increases normalized distances") {
    auto tos = gen::line_of_spaces(5, 3, 1);
    auto assembly = assemble_coned(tos);
    const MetricGraph& xhat = assembly.coned.graph();

    // position of every coned vertex along the line, in half-units
    // (tree vertices at 0, 2, 4, ...; slabs halfway between)
    auto tree_pos = [&](const std::string& name) -> Dist {
        const std::string space = name.substr(0, name.find(':'));
        if (space[0] == 't') return 2 * static_cast<Dist>(std::stoi(space.substr(1)));
        return 2 * static_cast<Dist>(std::stoi(space.substr(1))) + 1;
    };
    for (VertexId u = 0; u < xhat.vertex_count(); ++u)
        for (VertexId v = 0; v < xhat.vertex_count(); ++v) {
            const Dist dt = std::abs(tree_pos(xhat.name(u)) - tree_pos(xhat.name(v)));
            CHECK(dt <= xhat.distance(u, v));
        }
}

TEST_CASE("cone lines are quasiconvex with a uniform constant") {
    std::vector<Dist> constants;
    for (int L : {4, 8}) {
        auto tos = gen::line_of_spaces(6, L, 1);
        auto assembly = assemble_coned(tos);
        auto locus = cone_locus(tos, assembly);
        REQUIRE(locus.components.size() == 1);
        const auto& ids = locus.components[0].subtree_coned_ids;
        Dist worst = 0;
        for (VertexId a : ids)
            for (VertexId b : ids)
                for (VertexId p : assembly.coned.graph().geodesic(a, b))
                    worst = std::max(worst,
                                     assembly.coned.graph().distance_to_set(p, ids));
        constants.push_back(worst);
    }
    CHECK(std::abs(constants[0] - constants[1]) <= 4);
}

TEST_CASE("inclusion properness profile is stable across line lengths") {
    const std::vector<Dist> radii{2, 4, 8};
    std::vector<std::vector<Dist>> profiles;
    for (int L : {3, 6}) {
        auto tos = gen::line_of_spaces(8, L, 1);
        auto total = assemble_total(tos);
        std::vector<Dist> row;
        for (const auto& [m, worst] : inclusion_properness(tos, total, radii)) row.push_back(worst);
        profiles.push_back(row);
    }
    CHECK(profiles[0] == profiles[1]);
    // identity-glued cycles embed undistorted: N(M) = M
    for (size_t i = 0; i < radii.size(); ++i) CHECK(profiles[0][i] == radii[i]);
}

TEST_CASE("two-step and one-step electrification agree within 4 half-units") {
    auto tos = gen::line_of_spaces(6, 3, 2);
    auto assembly = assemble_coned(tos);
    auto locus = cone_locus(tos, assembly);

    // one step: cone the C_alpha directly in the total space
    SubsetFamily calpha;
    for (size_t i = 0; i < locus.components.size(); ++i)
        calpha.members.push_back(
            {"C" + std::to_string(i), locus.components[i].horospheres_total_ids});
    auto one_step = cone_off(assembly.total, calpha);

    // two steps: cone the T_alpha inside the induced coned space
    SubsetFamily talpha;
    for (size_t i = 0; i < locus.components.size(); ++i)
        talpha.members.push_back(
            {"T" + std::to_string(i), locus.components[i].subtree_coned_ids});
    auto two_step = cone_off(assembly.coned.graph(), talpha);

    for (VertexId u = 0; u < assembly.total.vertex_count(); ++u)
        for (VertexId v = 0; v < assembly.total.vertex_count(); ++v) {
            const Dist d1 = one_step.graph().distance(one_step.to_graph(u), one_step.to_graph(v));
            const Dist d2 = two_step.graph().distance(
                two_step.graph().index(assembly.total.name(u)),
                two_step.graph().index(assembly.total.name(v)));
            CHECK(std::abs(d1 - d2) <= 4);
        }
}
