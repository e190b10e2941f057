#include "conetree/electric.hpp"

#include <algorithm>
#include <set>

#include "conetree/hyperbolicity.hpp"

namespace conetree {

void ConedSpace::index_parts(const std::map<std::string, std::string>& cone_attr) {
    base_to_graph_.assign(static_cast<size_t>(base_.vertex_count()), -1);
    graph_to_base_.assign(static_cast<size_t>(graph_.vertex_count()), -1);
    cone_attribution_.assign(static_cast<size_t>(graph_.vertex_count()), -1);

    for (VertexId b = 0; b < base_.vertex_count(); ++b) {
        VertexId g = graph_.index(base_.name(b));
        base_to_graph_[static_cast<size_t>(b)] = g;
        graph_to_base_[static_cast<size_t>(g)] = b;
    }
    for (const auto& [vertex_name, subset_name] : cone_attr) {
        VertexId g = graph_.index(vertex_name);
        int idx = -1;
        for (size_t i = 0; i < family_.members.size(); ++i)
            if (family_.members[i].name == subset_name) {
                idx = static_cast<int>(i);
                break;
            }
        if (idx < 0) fail("UnknownSubset", "cone attribution names unknown subset " + subset_name);
        cone_attribution_[static_cast<size_t>(g)] = idx;
        if (graph_to_base_[static_cast<size_t>(g)] >= 0)
            fail("NameCollision", "vertex '" + vertex_name + "' is both original and cone");
    }
}

std::optional<VertexId> ConedSpace::to_base(VertexId graph_id) const {
    VertexId b = graph_to_base_[static_cast<size_t>(graph_id)];
    if (b < 0) return std::nullopt;
    return b;
}

std::optional<int> ConedSpace::cone_subset_of(VertexId graph_id) const {
    int s = cone_attribution_[static_cast<size_t>(graph_id)];
    if (s < 0) return std::nullopt;
    return s;
}

std::vector<VertexId> ConedSpace::cone_vertices(int subset_index) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < graph_.vertex_count(); ++v)
        if (cone_attribution_[static_cast<size_t>(v)] == subset_index) out.push_back(v);
    return out;
}

ConedSpace ConedSpace::from_parts(MetricGraph augmented, MetricGraph base, SubsetFamily family,
                                  const std::map<std::string, std::string>& cone_attribution) {
    ConedSpace cs;
    cs.graph_ = std::move(augmented);
    cs.base_ = std::move(base);
    cs.family_ = std::move(family);
    cs.empty_family_ = cs.family_.empty();
    cs.index_parts(cone_attribution);
    return cs;
}

ConedSpace cone_off(const MetricGraph& g, const SubsetFamily& fam) {
    ConedSpace cs;
    cs.base_ = g;
    cs.family_ = fam;
    if (fam.empty()) {
        cs.graph_ = g;
        cs.empty_family_ = true;
        cs.index_parts({});
        return cs;
    }
    fam.validate(g);

    GraphBuilder b;
    for (const auto& e : g.edge_list()) b.add_edge(e.u, e.v, e.w);
    std::map<std::string, std::string> attribution;
    for (const auto& m : fam.members) {
        const std::string cone = "cone:" + m.name;
        if (g.find(cone)) fail("NameCollision", "vertex '" + cone + "' already exists");
        attribution[cone] = m.name;
        for (VertexId v : m.vertices) b.add_edge(cone, g.name(v), 1);
    }
    cs.graph_ = b.build();
    cs.index_parts(attribution);
    return cs;
}

ConedSpace partially_electrocute(
    const MetricGraph& g, const SubsetFamily& fam, const std::map<std::string, MetricGraph>& targets,
    const std::map<std::string, std::map<std::string, std::string>>& collapse) {
    ConedSpace cs;
    cs.base_ = g;
    cs.family_ = fam;
    if (fam.empty()) {
        cs.graph_ = g;
        cs.empty_family_ = true;
        cs.index_parts({});
        return cs;
    }
    fam.validate(g);

    GraphBuilder b;
    for (const auto& e : g.edge_list()) b.add_edge(e.u, e.v, e.w);
    std::map<std::string, std::string> attribution;

    for (const auto& m : fam.members) {
        auto t_it = targets.find(m.name);
        auto c_it = collapse.find(m.name);
        if (t_it == targets.end() || c_it == collapse.end())
            fail("UnknownSubset", "no target/collapse for subset '" + m.name + "'");
        const MetricGraph& target = t_it->second;
        const auto& gmap = c_it->second;

        // single-vertex targets degenerate to an ordinary cone
        const bool point_target = target.vertex_count() == 1;
        auto target_name = [&](const std::string& n) {
            return point_target ? "cone:" + m.name : "pel:" + m.name + ":" + n;
        };

        std::set<std::string> image;
        ConedSpace::PelTarget pel;
        for (VertexId v : m.vertices) {
            auto it = gmap.find(g.name(v));
            if (it == gmap.end())
                fail("UnknownVertex", "collapse map for '" + m.name + "' misses vertex '" +
                                          g.name(v) + "'");
            if (!target.find(it->second))
                fail("UnknownVertex", "collapse image '" + it->second + "' not in target space");
            image.insert(it->second);
            b.add_edge(target_name(it->second), g.name(v), 1); // cylinder edge, length 1/2
        }
        if (static_cast<int>(image.size()) != target.vertex_count())
            fail("NotOnto", "collapse map for '" + m.name + "' is not onto its target");

        for (const auto& e : target.edge_list()) b.add_edge(target_name(e.u), target_name(e.v), e.w);
        for (const auto& n : target.names()) {
            attribution[target_name(n)] = m.name;
            pel.target_vertices.push_back(target_name(n));
        }

        // measured Lipschitz constant of the collapse (single-constant form)
        Rational lip(0, 1);
        const auto& mem = m.vertices;
        for (size_t i = 0; i < mem.size(); ++i)
            for (size_t j = i + 1; j < mem.size(); ++j) {
                Dist dh = g.distance(mem[i], mem[j]);
                Dist dl = target.distance(target.index(gmap.at(g.name(mem[i]))),
                                          target.index(gmap.at(g.name(mem[j]))));
                if (dh > 0) lip = max(lip, Rational(dl, dh));
            }
        pel.collapse_lipschitz = lip;
        cs.pel_targets_[m.name] = std::move(pel);
    }
    cs.graph_ = b.build();
    cs.index_parts(attribution);
    return cs;
}

std::vector<VertexId> electric_geodesic(const ConedSpace& cs, VertexId base_u, VertexId base_v) {
    if (!cs.base().has_vertex(base_u) || !cs.base().has_vertex(base_v))
        fail("UnknownVertex", "electric geodesic endpoints must be base vertices");
    return cs.graph().geodesic(cs.to_graph(base_u), cs.to_graph(base_v));
}

namespace {

// per-subset membership masks for "inside the region": original vertices in
// N_eps(H) plus cone/target vertices attributed to the subset
std::vector<std::vector<char>> region_masks(const ConedSpace& cs, Dist eps) {
    const auto& fam = cs.family();
    std::vector<std::vector<char>> masks(fam.members.size());
    for (size_t s = 0; s < fam.members.size(); ++s) {
        auto& mask = masks[s];
        mask.assign(static_cast<size_t>(cs.graph().vertex_count()), 0);
        auto hood = cs.base().neighborhood(fam.members[s].vertices, eps);
        for (VertexId b : hood) mask[static_cast<size_t>(cs.to_graph(b))] = 1;
        for (VertexId c : cs.cone_vertices(static_cast<int>(s))) mask[static_cast<size_t>(c)] = 1;
    }
    return masks;
}

} // namespace

PenetrationPattern penetration_pattern(const ConedSpace& cs, std::span<const VertexId> path,
                                       Dist eps) {
    if (!cs.graph().is_edge_path(path)) fail("NotAPath", "pattern needs a valid path");
    PenetrationPattern out;
    out.eps = eps;
    out.path_front = path.front();
    out.path_back = path.back();

    const auto& fam = cs.family();
    auto masks = region_masks(cs, eps);

    for (size_t s = 0; s < fam.members.size(); ++s) {
        const auto& mask = masks[s];
        size_t i = 0;
        std::vector<Visit> runs;
        while (i < path.size()) {
            if (!mask[static_cast<size_t>(path[i])]) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j + 1 < path.size() && mask[static_cast<size_t>(path[j + 1])]) ++j;
            Visit v;
            v.subset = fam.members[s].name;
            v.entry_pos = i;
            v.exit_pos = j;
            for (size_t k = i; k <= j; ++k)
                if (cs.is_original(path[k])) {
                    v.entry = path[k];
                    v.entry_pos = k;
                    break;
                }
            for (size_t k = j + 1; k-- > i;)
                if (cs.is_original(path[k])) {
                    v.exit = path[k];
                    v.exit_pos = k;
                    break;
                }
            runs.push_back(v);
            i = j + 1;
        }
        for (size_t r = 1; r < runs.size(); ++r)
            out.violations.push_back(
                BacktrackViolation{fam.members[s].name, runs[r - 1].exit_pos, runs[r].entry_pos});
        out.visits.insert(out.visits.end(), runs.begin(), runs.end());
    }
    std::sort(out.visits.begin(), out.visits.end(),
              [](const Visit& a, const Visit& b) { return a.entry_pos < b.entry_pos; });
    return out;
}

namespace {

struct SubsetTrace {
    VertexId first_entry = -1;
    VertexId last_exit = -1;
    Dist max_span = 0; // intrinsic entry-to-exit over visits
    bool unreachable = false;
    bool seen = false;
};

std::map<std::string, SubsetTrace> trace_by_subset(const ConedSpace& cs,
                                                   const PenetrationPattern& p,
                                                   const std::map<std::string, MetricGraph>& hoods) {
    std::map<std::string, SubsetTrace> out;
    for (const auto& v : p.visits) {
        auto& t = out[v.subset];
        if (!t.seen) {
            t.first_entry = v.entry;
            t.seen = true;
        }
        t.last_exit = v.exit;
        if (v.entry >= 0 && v.exit >= 0) {
            auto d = MetricGraph::intrinsic_distance(hoods.at(v.subset), cs.graph().name(v.entry),
                                                     cs.graph().name(v.exit));
            if (!d)
                t.unreachable = true;
            else
                t.max_span = std::max(t.max_span, *d);
        }
    }
    return out;
}

} // namespace

PatternComparison compare_patterns(const ConedSpace& cs, const PenetrationPattern& a,
                                   const PenetrationPattern& b) {
    if (a.eps != b.eps) fail("EpsilonMismatch", "patterns computed with different eps");
    if (a.path_front != b.path_front || a.path_back != b.path_back)
        fail("EndpointMismatch", "patterns come from paths with different endpoints");

    // intrinsic metric of each visited neighborhood
    std::map<std::string, MetricGraph> hoods;
    for (const auto& m : cs.family().members) {
        bool used = false;
        for (const auto& v : a.visits) used = used || v.subset == m.name;
        for (const auto& v : b.visits) used = used || v.subset == m.name;
        if (!used) continue;
        auto hood = cs.base().neighborhood(m.vertices, a.eps);
        hoods.emplace(m.name, cs.base().induced_subgraph(hood, /*allow_disconnected=*/true));
    }

    auto ta = trace_by_subset(cs, a, hoods);
    auto tb = trace_by_subset(cs, b, hoods);

    PatternComparison out;
    auto consider = [&](const std::string& subset, Dist value, bool unreachable) {
        if (unreachable) out.unreachable = true;
        if (value > out.max_discrepancy) {
            out.max_discrepancy = value;
            out.worst_subset = subset;
        }
    };

    for (const auto& m : cs.family().members) {
        auto ia = ta.find(m.name);
        auto ib = tb.find(m.name);
        const bool in_a = ia != ta.end();
        const bool in_b = ib != tb.end();
        if (!in_a && !in_b) continue;
        if (in_a && in_b) {
            const auto& va = ia->second;
            const auto& vb = ib->second;
            bool bad = va.unreachable || vb.unreachable;
            Dist worst = 0;
            if (va.first_entry >= 0 && vb.first_entry >= 0) {
                auto d = MetricGraph::intrinsic_distance(hoods.at(m.name),
                                                         cs.graph().name(va.first_entry),
                                                         cs.graph().name(vb.first_entry));
                if (!d)
                    bad = true;
                else
                    worst = std::max(worst, *d);
            }
            if (va.last_exit >= 0 && vb.last_exit >= 0) {
                auto d = MetricGraph::intrinsic_distance(hoods.at(m.name),
                                                         cs.graph().name(va.last_exit),
                                                         cs.graph().name(vb.last_exit));
                if (!d)
                    bad = true;
                else
                    worst = std::max(worst, *d);
            }
            consider(m.name, worst, bad);
        } else {
            const auto& v = in_a ? ia->second : ib->second;
            consider(m.name, v.max_span, v.unreachable);
        }
    }
    return out;
}

TrackingReport tracking_constant(const ConedSpace& cs,
                                 std::span<const std::pair<VertexId, VertexId>> base_pairs) {
    TrackingReport out;
    for (const auto& [u, v] : base_pairs) {
        auto beta = electric_geodesic(cs, u, v);
        auto gamma_base = cs.base().geodesic(u, v);

        std::vector<VertexId> gamma_graph;
        for (VertexId b : gamma_base) gamma_graph.push_back(cs.to_graph(b));

        for (VertexId bv : beta) {
            Dist best = std::numeric_limits<Dist>::max();
            auto row = cs.graph().distance_row(bv);
            for (VertexId gv : gamma_graph) best = std::min(best, row[static_cast<size_t>(gv)]);
            out.electric_hausdorff = std::max(out.electric_hausdorff, best);
        }

        // the electric zero-neighborhood of beta: its original vertices
        // together with every horosphere-like set whose cone it crosses
        std::vector<VertexId> beta_zero;
        std::vector<char> subset_hit(cs.family().members.size(), 0);
        for (VertexId bv : beta) {
            if (auto ob = cs.to_base(bv)) beta_zero.push_back(*ob);
            if (auto s = cs.cone_subset_of(bv)) subset_hit[static_cast<size_t>(*s)] = 1;
        }
        for (size_t s = 0; s < subset_hit.size(); ++s)
            if (subset_hit[s])
                for (VertexId member : cs.family().members[s].vertices)
                    beta_zero.push_back(member);
        for (VertexId gv : gamma_base) {
            Dist best = std::numeric_limits<Dist>::max();
            auto row = cs.base().distance_row(gv);
            for (VertexId ov : beta_zero) best = std::min(best, row[static_cast<size_t>(ov)]);
            out.hyperbolic_hausdorff = std::max(out.hyperbolic_hausdorff, best);
        }
    }
    return out;
}

SurgeryResult remove_backtracking(const ConedSpace& cs, std::span<const VertexId> path, Dist eps) {
    SurgeryResult out;
    out.path.assign(path.begin(), path.end());

    // intrinsic neighborhoods are reused across iterations
    std::map<std::string, MetricGraph> hoods;
    for (const auto& m : cs.family().members) {
        auto hood = cs.base().neighborhood(m.vertices, eps);
        hoods.emplace(m.name, cs.base().induced_subgraph(hood, /*allow_disconnected=*/true));
    }

    const int budget = static_cast<int>(cs.family().members.size() * 4 + 8);
    for (int round = 0; round < budget; ++round) {
        auto pattern = penetration_pattern(cs, out.path, eps);
        if (pattern.violations.empty()) {
            out.clean = true;
            break;
        }
        // fix the subset whose first violation comes earliest
        std::string subset;
        size_t first_entry = out.path.size();
        size_t last_reentry = 0;
        for (const auto& v : pattern.violations)
            if (v.first_exit_pos < first_entry) {
                first_entry = v.first_exit_pos;
                subset = v.subset;
            }
        size_t cut_begin = 0;
        for (const auto& v : pattern.visits)
            if (v.subset == subset) {
                cut_begin = v.exit_pos;
                break;
            }
        for (const auto& v : pattern.visits)
            if (v.subset == subset) last_reentry = v.entry_pos;

        const MetricGraph& hood = hoods.at(subset);
        VertexId from = out.path[cut_begin];
        VertexId to = out.path[last_reentry];
        auto fi = hood.find(cs.graph().name(from));
        auto ti = hood.find(cs.graph().name(to));
        if (!fi || !ti) break; // cut endpoints fell outside the neighborhood; give up
        std::vector<VertexId> bridge_local;
        try {
            bridge_local = hood.geodesic(*fi, *ti); // throws when the hood is split
        } catch (const Error&) {
            break;
        }

        std::vector<VertexId> next(out.path.begin(), out.path.begin() + static_cast<long>(cut_begin));
        for (VertexId lv : bridge_local) next.push_back(cs.graph().index(hood.name(lv)));
        next.insert(next.end(), out.path.begin() + static_cast<long>(last_reentry) + 1,
                    out.path.end());
        out.path = std::move(next);
        ++out.surgeries;
    }
    if (!out.clean) out.clean = penetration_pattern(cs, out.path, eps).violations.empty();
    out.quasigeodesic_k = quasigeodesic_constant(cs.graph(), out.path);
    return out;
}

} // namespace conetree
