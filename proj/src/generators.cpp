#include "conetree/generators.hpp"

#include <algorithm>
#include <array>

#include "conetree/pseudo_anosov.hpp"

namespace conetree {
namespace gen {

namespace {

std::string padded(const std::string& prefix, long value, int width) {
    std::string s = std::to_string(value);
    if (static_cast<int>(s.size()) < width)
        s = std::string(static_cast<size_t>(width) - s.size(), '0') + s;
    return prefix + s;
}

} // namespace

MetricGraph tree(int depth, int valence) {
    if (depth < 1 || valence < 1) fail("ParamOutOfRange", "tree needs depth >= 1, valence >= 1");
    GraphBuilder b;
    long next = 1;
    std::vector<long> level{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<long> fresh;
        for (long parent : level)
            for (int c = 0; c < valence; ++c) {
                b.add_edge(padded("n", parent, 4), padded("n", next, 4), 2);
                fresh.push_back(next++);
            }
        level = std::move(fresh);
    }
    return b.build();
}

MetricGraph cycle(int n) {
    if (n < 3) fail("ParamOutOfRange", "cycle needs n >= 3");
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_edge(padded("c", i, 4), padded("c", (i + 1) % n, 4), 2);
    return b.build();
}

MetricGraph grid(int width, int height) {
    if (width < 2 || height < 2) fail("ParamOutOfRange", "grid needs width, height >= 2");
    GraphBuilder b;
    auto name = [](int x, int y) { return padded("x", x, 2) + padded("y", y, 2); };
    for (int x = 0; x < width; ++x)
        for (int y = 0; y < height; ++y) {
            if (x + 1 < width) b.add_edge(name(x, y), name(x + 1, y), 2);
            if (y + 1 < height) b.add_edge(name(x, y), name(x, y + 1), 2);
        }
    return b.build();
}

MetricGraph free_ball(int rank, int radius) {
    if (rank < 1 || radius < 1) fail("ParamOutOfRange", "free_ball needs rank, radius >= 1");
    // ball in the Cayley graph of the free group: the root has 2*rank
    // children, every other vertex 2*rank - 1
    GraphBuilder b;
    long next = 1;
    std::vector<long> level{0};
    for (int d = 0; d < radius; ++d) {
        std::vector<long> fresh;
        for (size_t i = 0; i < level.size(); ++i) {
            const int children = d == 0 ? 2 * rank : 2 * rank - 1;
            for (int c = 0; c < children; ++c) {
                b.add_edge(padded("f", level[i], 5), padded("f", next, 5), 2);
                fresh.push_back(next++);
            }
        }
        level = std::move(fresh);
    }
    return b.build();
}

ParsedGraph horoball(int base_n, int depth, int towers) {
    if (base_n < 4 || depth < 1) fail("ParamOutOfRange", "horoball needs base_n >= 4, depth >= 1");
    if (towers != 1 && towers != 2) fail("ParamOutOfRange", "towers must be 1 or 2");
    ParsedGraph out;
    GraphBuilder b;

    if (towers == 1) {
        // shortcut tower over a cycle: level k carries every span up to 2^k
        auto name = [&](int i, int k) { return padded("b", i, 4) + padded("l", k, 2); };
        for (int k = 0; k <= depth; ++k) {
            for (int i = 0; i < base_n; ++i) {
                for (long span = 1; span <= (1L << k) && span < base_n; ++span)
                    b.add_edge(name(i, k), name(static_cast<int>((i + span) % base_n), k), 2);
                if (k < depth) b.add_edge(name(i, k), name(i, k + 1), 2);
            }
        }
        out.graph = b.build();
        SubsetFamily::Member base{"base", {}};
        for (int i = 0; i < base_n; ++i) base.vertices.push_back(out.graph.index(name(i, 0)));
        std::sort(base.vertices.begin(), base.vertices.end());
        out.family.members.push_back(std::move(base));
        if (depth >= 2) out.family.properness_radius = 2;
        return out;
    }

    // dumbbell: two arc-based towers joined by a path, so the ambient
    // stays hyperbolic and each base projects onto the other through a
    // single gate
    const int gap = std::max(2, base_n / 2);
    auto tower_name = [&](int t, int i, int k) {
        return (t == 0 ? "ta" : "tb") + padded("", i, 4) + padded("l", k, 2);
    };
    for (int t = 0; t < 2; ++t)
        for (int k = 0; k <= depth; ++k) {
            for (int i = 0; i < base_n; ++i) {
                for (long span = 1; span <= (1L << k); ++span)
                    if (i + span < base_n)
                        b.add_edge(tower_name(t, i, k), tower_name(t, static_cast<int>(i + span), k), 2);
                if (k < depth) b.add_edge(tower_name(t, i, k), tower_name(t, i, k + 1), 2);
            }
        }
    b.add_edge(tower_name(0, base_n - 1, 0), padded("g", 0, 4), 2);
    for (int j = 0; j + 1 < gap; ++j) b.add_edge(padded("g", j, 4), padded("g", j + 1, 4), 2);
    b.add_edge(padded("g", gap - 1, 4), tower_name(1, 0, 0), 2);

    out.graph = b.build();
    // the horosphere-like sets are the full towers: every route between
    // them has to pass the gates, as in a horoball complement
    for (int t = 0; t < 2; ++t) {
        SubsetFamily::Member m{t == 0 ? "baseA" : "baseB", {}};
        for (int i = 0; i < base_n; ++i)
            for (int k = 0; k <= depth; ++k)
                m.vertices.push_back(out.graph.index(tower_name(t, i, k)));
        std::sort(m.vertices.begin(), m.vertices.end());
        out.family.members.push_back(std::move(m));
    }
    std::sort(out.family.members.begin(), out.family.members.end(),
              [](const auto& a, const auto& b2) { return a.name < b2.name; });
    out.family.properness_radius = 2;
    return out;
}

TreeOfSpaces line_of_spaces(int base_n, int length, int arc_len, int horoball_depth) {
    if (base_n < 3 || length < 1 || arc_len < 1 || arc_len >= base_n)
        fail("ParamOutOfRange", "line_of_spaces needs base_n >= 3, length >= 1, 1 <= arc < base_n");
    MetricGraph base;
    SubsetFamily family;
    if (horoball_depth > 0) {
        // horoball vertex spaces with their base as the horosphere-like set
        auto h = horoball(base_n, horoball_depth);
        base = h.graph;
        family = h.family;
    } else {
        base = cycle(base_n);
        SubsetFamily::Member arc{"arc", {}};
        for (int i = 0; i < arc_len; ++i) arc.vertices.push_back(base.index(padded("c", i, 4)));
        std::sort(arc.vertices.begin(), arc.vertices.end());
        family.members.push_back(std::move(arc));
    }

    TreeOfSpaces tos;
    for (int i = 0; i < length; ++i) tos.vertices.push_back({padded("t", i, 3), base, family});
    for (int i = 0; i + 1 < length; ++i) {
        TreeOfSpaces::EdgeSpace es;
        es.name = padded("e", i, 3);
        es.v0 = padded("t", i, 3);
        es.v1 = padded("t", i + 1, 3);
        es.space = base;
        es.family = family;
        for (VertexId x = 0; x < base.vertex_count(); ++x) {
            es.map0[x] = x;
            es.map1[x] = x;
        }
        tos.edges.push_back(std::move(es));
    }
    return tos;
}

TreeOfSpaces parallel_cones(int n, int d0) {
    if (n < 1 || d0 < 1) fail("ParamOutOfRange", "parallel_cones needs N >= 1, D0 >= 1");
    GraphBuilder b;
    for (int j = 0; j < d0; ++j) b.add_edge(padded("p", j, 2), padded("p", j + 1, 2), 2);
    MetricGraph path = b.build();
    SubsetFamily family;
    family.members.push_back({"H1", {path.index(padded("p", 0, 2))}});
    family.members.push_back({"H2", {path.index(padded("p", d0, 2))}});
    if (d0 >= 2) family.properness_radius = 2;

    TreeOfSpaces tos;
    for (int i = 0; i <= n; ++i) tos.vertices.push_back({padded("t", i, 3), path, family});
    for (int i = 0; i < n; ++i) {
        TreeOfSpaces::EdgeSpace es;
        es.name = padded("e", i, 3);
        es.v0 = padded("t", i, 3);
        es.v1 = padded("t", i + 1, 3);
        es.space = path;
        es.family = family;
        for (VertexId x = 0; x < path.vertex_count(); ++x) {
            es.map0[x] = x;
            es.map1[x] = x;
        }
        tos.edges.push_back(std::move(es));
    }
    return tos;
}

Instance generate(const std::string& name, const std::vector<long>& params) {
    auto need = [&](size_t lo, size_t hi) {
        if (params.size() < lo || params.size() > hi)
            fail("ParamOutOfRange", "wrong number of parameters for '" + name + "'");
    };
    Instance out;
    if (name == "tree") {
        need(2, 2);
        out.graph = ParsedGraph{tree(static_cast<int>(params[0]), static_cast<int>(params[1])), {}};
    } else if (name == "cycle") {
        need(1, 1);
        out.graph = ParsedGraph{cycle(static_cast<int>(params[0])), {}};
    } else if (name == "grid") {
        need(2, 2);
        out.graph = ParsedGraph{grid(static_cast<int>(params[0]), static_cast<int>(params[1])), {}};
    } else if (name == "free_ball") {
        need(2, 2);
        out.graph =
            ParsedGraph{free_ball(static_cast<int>(params[0]), static_cast<int>(params[1])), {}};
    } else if (name == "horoball") {
        need(2, 3);
        out.graph = horoball(static_cast<int>(params[0]), static_cast<int>(params[1]),
                             params.size() > 2 ? static_cast<int>(params[2]) : 1);
    } else if (name == "parallel_cones") {
        need(2, 2);
        out.tos = parallel_cones(static_cast<int>(params[0]), static_cast<int>(params[1]));
    } else if (name == "line_of_spaces") {
        need(2, 4);
        out.tos = line_of_spaces(static_cast<int>(params[0]), static_cast<int>(params[1]),
                                 params.size() > 2 ? static_cast<int>(params[2]) : 1,
                                 params.size() > 3 ? static_cast<int>(params[3]) : 0);
    } else if (name == "mapping_torus") {
        need(2, 2);
        out.tos = mapping_torus_line(LinearPA({2, 1, 1, 1}), static_cast<int>(params[0]),
                                     static_cast<int>(params[1]));
    } else {
        fail("UnknownName", "no generator named '" + name + "'");
    }
    return out;
}

} // namespace gen
} // namespace conetree
