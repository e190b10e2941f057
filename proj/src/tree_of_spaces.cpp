#include "conetree/tree_of_spaces.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace conetree {

const TreeOfSpaces::VertexSpace& TreeOfSpaces::vertex(std::string_view name) const {
    const VertexSpace* v = find_vertex(name);
    if (!v) fail("UnknownVertex", "no tree vertex named '" + std::string(name) + "'");
    return *v;
}

const TreeOfSpaces::VertexSpace* TreeOfSpaces::find_vertex(std::string_view name) const {
    for (const auto& v : vertices)
        if (v.name == name) return &v;
    return nullptr;
}

const TreeOfSpaces::EdgeSpace& TreeOfSpaces::edge(std::string_view name) const {
    for (const auto& e : edges)
        if (e.name == name) return e;
    fail("UnknownVertex", "no tree edge named '" + std::string(name) + "'");
}

void TreeOfSpaces::check_structure() const {
    if (vertices.empty()) fail("EmptyTree", "tree of spaces has no vertices");
    std::set<std::string> vertex_names;
    for (const auto& v : vertices)
        if (!vertex_names.insert(v.name).second)
            fail("DuplicateName", "tree vertex '" + v.name + "' repeats");
    if (edges.size() + 1 != vertices.size())
        fail("NotATree", "a tree on " + std::to_string(vertices.size()) + " vertices needs " +
                             std::to_string(vertices.size() - 1) + " edges, found " +
                             std::to_string(edges.size()));

    // connectivity via union-find
    std::map<std::string, std::string> parent;
    for (const auto& v : vertices) parent[v.name] = v.name;
    std::function<std::string(const std::string&)> root = [&](const std::string& x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    for (const auto& e : edges) {
        if (!vertex_names.count(e.v0) || !vertex_names.count(e.v1))
            fail("UnknownVertex", "edge '" + e.name + "' touches a missing tree vertex");
        auto r0 = root(e.v0), r1 = root(e.v1);
        if (r0 == r1) fail("NotATree", "edge '" + e.name + "' closes a cycle");
        parent[r0] = r1;
    }

    for (const auto& v : vertices) v.family.validate(v.space);
    for (const auto& e : edges) {
        e.family.validate(e.space);
        const auto& s0 = vertex(e.v0).space;
        const auto& s1 = vertex(e.v1).space;
        for (VertexId x = 0; x < e.space.vertex_count(); ++x) {
            auto i0 = e.map0.find(x);
            auto i1 = e.map1.find(x);
            if (i0 == e.map0.end() || i1 == e.map1.end())
                fail("PartialMap", "edge '" + e.name + "' map misses vertex '" + e.space.name(x) +
                                       "'");
            if (!s0.has_vertex(i0->second) || !s1.has_vertex(i1->second))
                fail("UnknownVertex", "edge '" + e.name + "' maps outside its target space");
        }
    }
}

int TreeOfSpaces::tree_diameter_edges() const {
    int best = 0;
    for (const auto& start : vertices) {
        // BFS in the tree
        std::map<std::string, int> depth{{start.name, 0}};
        std::vector<std::string> frontier{start.name};
        while (!frontier.empty()) {
            std::vector<std::string> next;
            for (const auto& v : frontier)
                for (const auto& n : tree_neighbors(v))
                    if (!depth.count(n)) {
                        depth[n] = depth[v] + 1;
                        best = std::max(best, depth[n]);
                        next.push_back(n);
                    }
            frontier = std::move(next);
        }
    }
    return best;
}

std::vector<std::string> TreeOfSpaces::tree_neighbors(const std::string& v) const {
    std::vector<std::string> out;
    for (const auto& e : edges) {
        if (e.v0 == v) out.push_back(e.v1);
        if (e.v1 == v) out.push_back(e.v0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const TreeOfSpaces::EdgeSpace* TreeOfSpaces::edge_between(const std::string& a,
                                                          const std::string& b) const {
    for (const auto& e : edges)
        if ((e.v0 == a && e.v1 == b) || (e.v0 == b && e.v1 == a)) return &e;
    return nullptr;
}

std::vector<std::vector<std::string>> TreeOfSpaces::tree_paths(int edge_count) const {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    std::function<void(const std::string&)> extend = [&](const std::string& v) {
        cur.push_back(v);
        if (static_cast<int>(cur.size()) == edge_count + 1) {
            out.push_back(cur);
        } else {
            for (const auto& n : tree_neighbors(v))
                if (cur.size() < 2 || n != cur[cur.size() - 2]) extend(n);
        }
        cur.pop_back();
    };
    for (const auto& v : vertices) extend(v.name);
    return out;
}

std::string EdgeMapCheck::str() const {
    return "edge=" + edge + " side=" + std::to_string(side) + " distortion=" + distortion.str();
}

const SubtreeIncidence* ValidationReport::incidence(std::string_view edge,
                                                    std::string_view edge_subset) const {
    for (const auto& i : incidences)
        if (i.edge == edge && i.edge_subset == edge_subset) return &i;
    return nullptr;
}

namespace {

Rational map_distortion(const MetricGraph& from, const MetricGraph& to,
                        const std::map<VertexId, VertexId>& phi) {
    Rational worst(1, 1);
    if (from.vertex_count() < 2) return worst;
    for (VertexId a = 0; a < from.vertex_count(); ++a)
        for (VertexId b = a + 1; b < from.vertex_count(); ++b) {
            const Dist d_from = from.distance(a, b);
            const Dist d_to = to.distance(phi.at(a), phi.at(b));
            if (d_to == 0) return Rational::infinity(); // collapsing map
            worst = max(worst, Rational(d_from, d_to));
            worst = max(worst, Rational(d_to, d_from));
        }
    return worst;
}

// image of an edge-space subset must land inside the named vertex subset
std::optional<std::string> image_target(const TreeOfSpaces::VertexSpace& vs,
                                        const TreeOfSpaces::EdgeSpace& es, int side,
                                        const SubsetFamily::Member& edge_subset) {
    const auto& phi = side == 0 ? es.map0 : es.map1;
    for (const auto& vm : vs.family.members) {
        std::set<VertexId> cover(vm.vertices.begin(), vm.vertices.end());
        bool all = true;
        for (VertexId x : edge_subset.vertices)
            if (!cover.count(phi.at(x))) {
                all = false;
                break;
            }
        if (all) return vm.name;
    }
    return std::nullopt;
}

} // namespace

ValidationReport validate(const TreeOfSpaces& tos, int delta_cap) {
    tos.check_structure();
    ValidationReport report;
    report.max_distortion = Rational(1, 1);
    report.max_coned_distortion = Rational(1, 1);

    // per-space coned-off delta (uniform hyperbolicity of the electrified
    // pieces); identical spaces along a line share one computation
    std::map<std::uint64_t, QuarterUnits> delta_memo;
    auto record_delta = [&](const std::string& name, const MetricGraph& g,
                            const SubsetFamily& fam) {
        const std::uint64_t key = content_digest(format_graph_text(g, fam));
        auto memo = delta_memo.find(key);
        QuarterUnits qu;
        if (memo != delta_memo.end()) {
            qu = memo->second;
        } else {
            ConedSpace cs = cone_off(g, fam);
            DeltaReport d;
            if (cs.graph().vertex_count() <= delta_cap)
                d = delta_four_point(cs.graph(), std::nullopt, delta_cap);
            else
                d = delta_four_point(cs.graph(), SampledMode{200000, 7}, delta_cap);
            qu = d.delta_qu;
            delta_memo.emplace(key, qu);
        }
        report.coned_space_delta.emplace_back(name, qu);
        report.max_coned_delta = std::max(report.max_coned_delta, qu);
    };
    for (const auto& v : tos.vertices) record_delta(v.name, v.space, v.family);
    for (const auto& e : tos.edges) record_delta(e.name, e.space, e.family);

    for (const auto& e : tos.edges) {
        for (int side = 0; side < 2; ++side) {
            const auto& phi = side == 0 ? e.map0 : e.map1;
            const auto& vs = tos.vertex(side == 0 ? e.v0 : e.v1);

            EdgeMapCheck check;
            check.edge = e.name;
            check.side = side;
            check.distortion = map_distortion(e.space, vs.space, phi);
            report.max_distortion = max(report.max_distortion, check.distortion);
            report.map_distortion.push_back(check);

            // strict type preservation: preimage of each vertex subset is
            // empty or exactly an edge subset
            for (const auto& vm : vs.family.members) {
                std::set<VertexId> target(vm.vertices.begin(), vm.vertices.end());
                std::vector<VertexId> preimage;
                for (VertexId x = 0; x < e.space.vertex_count(); ++x)
                    if (target.count(phi.at(x))) preimage.push_back(x);
                if (preimage.empty()) continue;
                bool matches = false;
                for (const auto& em : e.family.members)
                    if (em.vertices == preimage) {
                        matches = true;
                        break;
                    }
                if (!matches) {
                    TypeViolation tv;
                    tv.edge = e.name;
                    tv.side = side;
                    tv.vertex_subset = vm.name;
                    for (VertexId x : preimage) tv.partial_preimage.push_back(e.space.name(x));
                    report.type_violations.push_back(std::move(tv));
                }
            }
        }

        // incidence targets per edge subset (used for the cone locus)
        for (const auto& em : e.family.members) {
            SubtreeIncidence inc;
            inc.edge = e.name;
            inc.edge_subset = em.name;
            inc.target0 = image_target(tos.vertex(e.v0), e, 0, em);
            inc.target1 = image_target(tos.vertex(e.v1), e, 1, em);
            report.incidences.push_back(std::move(inc));
        }
    }

    // induced coned maps: extend each side map by cone point -> cone point
    if (report.strictly_type_preserving()) {
        std::map<std::string, ConedSpace> coned_memo;
        auto coned_of = [&](const std::string& name, const MetricGraph& g,
                            const SubsetFamily& fam) -> const ConedSpace& {
            auto it = coned_memo.find(name);
            if (it == coned_memo.end()) it = coned_memo.emplace(name, cone_off(g, fam)).first;
            return it->second;
        };
        for (const auto& e : tos.edges) {
            const ConedSpace& coned_e = coned_of(e.name, e.space, e.family);
            for (int side = 0; side < 2; ++side) {
                const auto& vs = tos.vertex(side == 0 ? e.v0 : e.v1);
                const ConedSpace& coned_v = coned_of(vs.name, vs.space, vs.family);
                std::map<VertexId, VertexId> phi_hat;
                const auto& phi = side == 0 ? e.map0 : e.map1;
                for (const auto& [x, y] : phi)
                    phi_hat[coned_e.graph().index(e.space.name(x))] =
                        coned_v.graph().index(vs.space.name(y));
                for (const auto& em : e.family.members) {
                    auto inc = report.incidence(e.name, em.name);
                    auto target = side == 0 ? inc->target0 : inc->target1;
                    if (!target) continue; // cone point with no image; left out of the measurement
                    phi_hat[coned_e.graph().index("cone:" + em.name)] =
                        coned_v.graph().index("cone:" + *target);
                }
                EdgeMapCheck check;
                check.edge = e.name;
                check.side = side;
                // distortion over the mapped part of the coned edge space
                Rational worst(1, 1);
                std::vector<VertexId> domain;
                for (const auto& [x, y] : phi_hat) domain.push_back(x);
                for (size_t a = 0; a < domain.size(); ++a)
                    for (size_t b = a + 1; b < domain.size(); ++b) {
                        Dist de = coned_e.graph().distance(domain[a], domain[b]);
                        Dist dv = coned_v.graph().distance(phi_hat[domain[a]], phi_hat[domain[b]]);
                        if (dv == 0) {
                            worst = Rational::infinity();
                            break;
                        }
                        if (de == 0) continue;
                        worst = max(worst, Rational(de, dv));
                        worst = max(worst, Rational(dv, de));
                    }
                check.distortion = worst;
                report.max_coned_distortion = max(report.max_coned_distortion, worst);
                report.coned_map_distortion.push_back(check);
            }
        }
    }
    return report;
}

namespace {

std::string scoped(const std::string& space, const std::string& vertex) {
    return space + ":" + vertex;
}

void add_space_copy(GraphBuilder& b, const std::string& prefix, const MetricGraph& g) {
    for (const auto& e : g.edge_list()) b.add_edge(scoped(prefix, e.u), scoped(prefix, e.v), e.w);
    if (g.vertex_count() == 1) b.add_vertex(scoped(prefix, g.name(0)));
}

} // namespace

MetricGraph assemble_total(const TreeOfSpaces& tos) {
    tos.check_structure();
    GraphBuilder b;
    for (const auto& v : tos.vertices) add_space_copy(b, v.name, v.space);
    for (const auto& e : tos.edges) {
        add_space_copy(b, e.name, e.space);
        for (VertexId x = 0; x < e.space.vertex_count(); ++x) {
            b.add_edge(scoped(e.name, e.space.name(x)), scoped(e.v0, tos.vertex(e.v0).space.name(e.map0.at(x))), 1);
            b.add_edge(scoped(e.name, e.space.name(x)), scoped(e.v1, tos.vertex(e.v1).space.name(e.map1.at(x))), 1);
        }
    }
    return b.build();
}

Assembly assemble_coned(const TreeOfSpaces& tos) {
    Assembly out;
    out.validation = validate(tos);
    if (!out.validation.strictly_type_preserving()) {
        const auto& tv = out.validation.type_violations.front();
        fail("TypePreservationViolation",
             "edge '" + tv.edge + "' side " + std::to_string(tv.side) + " hits subset '" +
                 tv.vertex_subset + "' in a proper partial preimage");
    }
    out.total = assemble_total(tos);

    GraphBuilder b;
    SubsetFamily global_family; // members named "<space>:<subset>", ids in the total space
    std::map<std::string, std::string> attribution;

    auto add_coned_copy = [&](const std::string& prefix, const MetricGraph& g,
                              const SubsetFamily& fam) {
        add_space_copy(b, prefix, g);
        for (const auto& m : fam.members) {
            const std::string cone = scoped(prefix, "cone:" + m.name);
            for (VertexId v : m.vertices) b.add_edge(cone, scoped(prefix, g.name(v)), 1);
            attribution[cone] = scoped(prefix, m.name);
            SubsetFamily::Member gm;
            gm.name = scoped(prefix, m.name);
            for (VertexId v : m.vertices) gm.vertices.push_back(out.total.index(scoped(prefix, g.name(v))));
            std::sort(gm.vertices.begin(), gm.vertices.end());
            global_family.members.push_back(std::move(gm));
        }
    };

    for (const auto& v : tos.vertices) {
        add_coned_copy(v.name, v.space, v.family);
        out.local.emplace(v.name, cone_off(v.space, v.family));
    }
    for (const auto& e : tos.edges) {
        add_coned_copy(e.name, e.space, e.family);
        out.local.emplace(e.name, cone_off(e.space, e.family));
        for (VertexId x = 0; x < e.space.vertex_count(); ++x) {
            b.add_edge(scoped(e.name, e.space.name(x)),
                       scoped(e.v0, tos.vertex(e.v0).space.name(e.map0.at(x))), 1);
            b.add_edge(scoped(e.name, e.space.name(x)),
                       scoped(e.v1, tos.vertex(e.v1).space.name(e.map1.at(x))), 1);
        }
        // induced cone-to-cone connectors along the locus
        for (const auto& em : e.family.members) {
            auto inc = out.validation.incidence(e.name, em.name);
            const std::string slab_cone = scoped(e.name, "cone:" + em.name);
            if (inc->target0)
                out.locus_edges.emplace_back(slab_cone, scoped(e.v0, "cone:" + *inc->target0));
            if (inc->target1)
                out.locus_edges.emplace_back(slab_cone, scoped(e.v1, "cone:" + *inc->target1));
        }
    }
    for (const auto& [a, c] : out.locus_edges) b.add_edge(a, c, 1);

    std::sort(global_family.members.begin(), global_family.members.end(),
              [](const auto& x, const auto& y) { return x.name < y.name; });
    out.coned = ConedSpace::from_parts(b.build(), out.total, std::move(global_family), attribution);
    return out;
}

ConeLocusReport cone_locus(const TreeOfSpaces& tos, const Assembly& assembly) {
    ConeLocusReport report;
    const MetricGraph& xhat = assembly.coned.graph();

    // collect cone points and locus adjacency
    std::vector<std::string> cones;
    for (VertexId v = 0; v < xhat.vertex_count(); ++v)
        if (assembly.coned.cone_subset_of(v)) cones.push_back(xhat.name(v));
    std::sort(cones.begin(), cones.end());

    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [a, b] : assembly.locus_edges) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    std::set<std::string> seen;
    for (const auto& seed : cones) {
        if (seen.count(seed)) continue;
        ConeLocusComponent comp;
        std::vector<std::string> stack{seed};
        seen.insert(seed);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.cone_points.push_back(v);
            for (const auto& n : adjacency[v])
                if (!seen.count(n)) {
                    seen.insert(n);
                    stack.push_back(n);
                }
        }
        std::sort(comp.cone_points.begin(), comp.cone_points.end());
        for (const auto& [a, b] : assembly.locus_edges) {
            if (std::binary_search(comp.cone_points.begin(), comp.cone_points.end(), a))
                comp.edges.emplace_back(a, b);
        }
        // forest check: |E| = |V| - 1 per component (locus edges are a simple graph)
        if (comp.edges.size() + 1 != comp.cone_points.size())
            fail("NotAForest", "cone locus component through '" + seed + "' contains a cycle");

        // resolve the spaces behind the cone points
        std::set<std::string> tree_image;
        for (const auto& cp : comp.cone_points) {
            const auto colon = cp.find(":cone:");
            const std::string space = cp.substr(0, colon);
            const std::string subset = cp.substr(colon + 6);
            comp.subtree_coned_ids.push_back(xhat.index(cp));
            if (tos.find_vertex(space)) {
                tree_image.insert(space);
                const auto& vs = tos.vertex(space);
                for (VertexId v : vs.family.member(subset).vertices)
                    comp.horospheres_total_ids.push_back(
                        assembly.total.index(space + ":" + vs.space.name(v)));
            } else {
                const auto& es = tos.edge(space);
                for (VertexId v : es.family.member(subset).vertices)
                    comp.horospheres_total_ids.push_back(
                        assembly.total.index(space + ":" + es.space.name(v)));
            }
        }
        comp.tree_image.assign(tree_image.begin(), tree_image.end());
        std::sort(comp.subtree_coned_ids.begin(), comp.subtree_coned_ids.end());
        std::sort(comp.horospheres_total_ids.begin(), comp.horospheres_total_ids.end());
        report.components.push_back(std::move(comp));
    }
    report.is_forest = true;

    // natural projection to T restricted to each component: vertex-space cone
    // points must hit pairwise distinct tree vertices (isomorphism onto a subtree)
    report.embeds_in_tree = true;
    for (const auto& comp : report.components) {
        std::set<std::string> spaces;
        size_t vertex_cones = 0;
        for (const auto& cp : comp.cone_points) {
            const std::string space = cp.substr(0, cp.find(":cone:"));
            if (tos.find_vertex(space)) {
                ++vertex_cones;
                if (!spaces.insert(space).second) report.embeds_in_tree = false;
            }
        }
        (void)vertex_cones;
    }
    return report;
}

std::vector<std::pair<Dist, Dist>> inclusion_properness(const TreeOfSpaces& tos,
                                                        const MetricGraph& total,
                                                        std::span<const Dist> probe_radii) {
    std::vector<std::pair<Dist, Dist>> profile;
    for (Dist m : probe_radii) profile.emplace_back(m, 0);

    for (const auto& vs : tos.vertices) {
        std::vector<VertexId> total_ids;
        for (VertexId x = 0; x < vs.space.vertex_count(); ++x)
            total_ids.push_back(total.index(vs.name + ":" + vs.space.name(x)));
        for (VertexId a = 0; a < vs.space.vertex_count(); ++a) {
            auto total_row = total.distance_row(total_ids[static_cast<size_t>(a)]);
            auto local_row = vs.space.distance_row(a);
            for (VertexId b = a + 1; b < vs.space.vertex_count(); ++b) {
                const Dist ambient = total_row[static_cast<size_t>(total_ids[static_cast<size_t>(b)])];
                const Dist intrinsic = local_row[static_cast<size_t>(b)];
                for (auto& [m, worst] : profile)
                    if (ambient <= m) worst = std::max(worst, intrinsic);
            }
        }
    }
    return profile;
}

// ---- text format -----------------------------------------------------------

TreeOfSpaces parse_tos_text(std::string_view text) {
    TreeOfSpaces tos;
    enum class Section { None, Tree, Space, Map };
    Section section = Section::None;
    std::string space_name;
    std::ostringstream space_buffer;
    std::string map_edge;
    int map_side = 0;
    std::vector<std::tuple<std::string, int, std::string, std::string>> raw_maps;
    std::vector<std::pair<std::string, std::string>> raw_spaces;
    std::vector<std::tuple<std::string, std::string, std::string>> raw_edges;
    std::vector<std::string> raw_vertices;

    auto flush_space = [&]() {
        if (section == Section::Space) raw_spaces.emplace_back(space_name, space_buffer.str());
        space_buffer.str("");
        space_buffer.clear();
    };

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "tree") {
            flush_space();
            section = Section::Tree;
        } else if (tag == "space") {
            flush_space();
            section = Section::Space;
            if (!(ls >> space_name)) fail("ParseError", "line " + std::to_string(lineno) + ": space needs a name");
        } else if (tag == "map") {
            flush_space();
            section = Section::Map;
            if (!(ls >> map_edge >> map_side) || (map_side != 0 && map_side != 1))
                fail("ParseError", "line " + std::to_string(lineno) + ": expected 'map <edge> <0|1>'");
        } else if (section == Section::Tree && tag == "tv") {
            std::string v;
            ls >> v;
            raw_vertices.push_back(v);
        } else if (section == Section::Tree && tag == "te") {
            std::string e, a, b;
            if (!(ls >> e >> a >> b)) fail("ParseError", "line " + std::to_string(lineno) + ": expected 'te <e> <v1> <v2>'");
            raw_edges.emplace_back(e, a, b);
        } else if (section == Section::Space) {
            space_buffer << line << "\n";
        } else if (section == Section::Map && tag == "m") {
            std::string x, y;
            if (!(ls >> x >> y)) fail("ParseError", "line " + std::to_string(lineno) + ": expected 'm <from> <to>'");
            raw_maps.emplace_back(map_edge, map_side, x, y);
        } else {
            fail("ParseError", "line " + std::to_string(lineno) + ": unexpected '" + tag + "'");
        }
    }
    flush_space();

    std::map<std::string, ParsedGraph> parsed;
    for (const auto& [name, body] : raw_spaces) parsed[name] = parse_graph_text(body);

    for (const auto& v : raw_vertices) {
        auto it = parsed.find(v);
        if (it == parsed.end()) fail("ParseError", "tree vertex '" + v + "' has no space block");
        tos.vertices.push_back({v, it->second.graph, it->second.family});
    }
    for (const auto& [e, a, b] : raw_edges) {
        auto it = parsed.find(e);
        if (it == parsed.end()) fail("ParseError", "tree edge '" + e + "' has no space block");
        TreeOfSpaces::EdgeSpace es;
        es.name = e;
        es.v0 = a;
        es.v1 = b;
        es.space = it->second.graph;
        es.family = it->second.family;
        tos.edges.push_back(std::move(es));
    }
    for (const auto& [e, side, x, y] : raw_maps) {
        bool found = false;
        for (auto& es : tos.edges)
            if (es.name == e) {
                const auto& target = tos.vertex(side == 0 ? es.v0 : es.v1).space;
                auto& phi = side == 0 ? es.map0 : es.map1;
                phi[es.space.index(x)] = target.index(y);
                found = true;
            }
        if (!found) fail("ParseError", "map block names unknown edge '" + e + "'");
    }
    return tos;
}

TreeOfSpaces load_tos_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tos_text(buffer.str());
}

std::string format_tos_text(const TreeOfSpaces& tos) {
    std::ostringstream out;
    out << "tree\n";
    auto vertices = tos.vertices;
    std::sort(vertices.begin(), vertices.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const auto& v : vertices) out << "tv " << v.name << "\n";
    auto edges_sorted = tos.edges;
    std::sort(edges_sorted.begin(), edges_sorted.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const auto& e : edges_sorted) out << "te " << e.name << " " << e.v0 << " " << e.v1 << "\n";
    for (const auto& v : vertices) {
        out << "space " << v.name << "\n";
        out << format_graph_text(v.space, v.family);
    }
    for (const auto& e : edges_sorted) {
        out << "space " << e.name << "\n";
        out << format_graph_text(e.space, e.family);
        for (int side = 0; side < 2; ++side) {
            out << "map " << e.name << " " << side << "\n";
            const auto& phi = side == 0 ? e.map0 : e.map1;
            const auto& target = tos.vertex(side == 0 ? e.v0 : e.v1).space;
            for (const auto& [x, y] : phi)
                out << "m " << e.space.name(x) << " " << target.name(y) << "\n";
        }
    }
    return out.str();
}

} // namespace conetree
