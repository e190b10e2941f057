#include "doctest.h"

#include "conetree/generators.hpp"
#include "conetree/hyperbolicity.hpp"

using namespace conetree;

TEST_CASE("tree generator") {
    auto t = gen::tree(3, 2);
    CHECK(t.vertex_count() == 15);
    CHECK(delta_four_point(t).delta_qu == 0);

    auto star = gen::tree(1, 5);
    CHECK(star.vertex_count() == 6);
}

TEST_CASE("cycle and grid generators") {
    CHECK(gen::cycle(8).diameter() == 8);
    auto g = gen::grid(5, 5);
    CHECK(g.vertex_count() == 25);
    CHECK(g.distance(g.index("x00y00"), g.index("x04y04")) == 16);
}

TEST_CASE("free ball counts follow the closed form") {
    // 1 + 4 + 12 + 36 vertices at radius 3, one more level at radius 4
    CHECK(gen::free_ball(2, 3).vertex_count() == 53);
    CHECK(gen::free_ball(2, 4).vertex_count() == 161);
    CHECK(gen::free_ball(1, 5).vertex_count() == 11); // a segment of Z
    CHECK(delta_four_point(gen::free_ball(2, 3)).delta_qu == 0);
}

TEST_CASE("horoball towers") {
    auto h = gen::horoball(16, 3);
    CHECK(h.graph.vertex_count() == 16 * 4);
    h.family.validate(h.graph);
    REQUIRE(h.family.members.size() == 1);
    CHECK(h.family.members[0].vertices.size() == 16);

    // the top level shortcuts the base: distances shrink with height
    const Dist base_far = h.graph.distance(h.graph.index("b0000l00"), h.graph.index("b0008l00"));
    CHECK(base_far <= 2 * 8);
    CHECK(h.graph.distance(h.graph.index("b0000l03"), h.graph.index("b0008l03")) == 2);

    // dumbbell variant: two full towers joined through a gate path
    auto twin = gen::horoball(8, 2, 2);
    twin.family.validate(twin.graph);
    CHECK(twin.family.members.size() == 2);
    CHECK(twin.family.members[0].name == "baseA");
    CHECK(twin.family.members[0].vertices.size() == 8 * 3);
    CHECK(twin.graph.connected());
    // the gate path separates the towers
    CHECK(twin.graph.distance(twin.graph.index("ta0000l00"), twin.graph.index("tb0000l00")) >=
          2 * (8 / 2));

    CHECK_THROWS_WITH_AS(gen::horoball(2, 1), doctest::Contains("ParamOutOfRange"), Error);
}

TEST_CASE("parallel cones instance shape") {
    auto tos = gen::parallel_cones(4, 3);
    CHECK(tos.vertices.size() == 5);
    CHECK(tos.edges.size() == 4);
    for (const auto& v : tos.vertices) {
        CHECK(v.family.members.size() == 2);
        CHECK(v.space.vertex_count() == 4);
    }
    CHECK(validate(tos).strictly_type_preserving());
}

TEST_CASE("generators are deterministic") {
    auto a = format_graph_text(gen::grid(4, 4), {});
    auto b = format_graph_text(gen::grid(4, 4), {});
    CHECK(a == b);
    CHECK(content_digest(a) == content_digest(b));

    auto ta = format_tos_text(gen::parallel_cones(3, 2));
    auto tb = format_tos_text(gen::parallel_cones(3, 2));
    CHECK(ta == tb);
}

TEST_CASE("generate dispatch") {
    CHECK(gen::generate("tree", {3, 2}).graph->graph.vertex_count() == 15);
    CHECK(gen::generate("cycle", {8}).graph->graph.vertex_count() == 8);
    CHECK(gen::generate("parallel_cones", {3, 2}).tos.has_value());
    CHECK(gen::generate("line_of_spaces", {6, 3}).tos.has_value());
    CHECK(gen::generate("mapping_torus", {8, 2}).tos.has_value());
    CHECK_THROWS_WITH_AS(gen::generate("mystery", {}), doctest::Contains("UnknownName"), Error);
    CHECK_THROWS_WITH_AS(gen::generate("cycle", {}), doctest::Contains("ParamOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(gen::generate("cycle", {2}), doctest::Contains("ParamOutOfRange"), Error);
}
