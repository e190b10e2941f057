#include "conetree/flare.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace conetree {

Rational lambda_of(const Hallway& h) {
    const Dist middle = h.girth();
    const Dist ends = std::max(h.column_lengths.front(), h.column_lengths.back());
    if (middle == 0) return Rational::infinity();
    return Rational(ends, middle);
}

namespace {

// vertex of the column nearest to arclength s (half-units from the start)
VertexId column_point(const MetricGraph& g, const std::vector<VertexId>& column, Dist s) {
    Dist cum = 0;
    VertexId best = column.front();
    Dist best_gap = s >= 0 ? s : -s;
    for (size_t i = 1; i < column.size(); ++i) {
        cum += *g.edge_weight(column[i - 1], column[i]);
        const Dist gap = cum > s ? cum - s : s - cum;
        if (gap < best_gap) {
            best_gap = gap;
            best = column[i];
        }
    }
    return best;
}

Dist measure_thinness(const MetricGraph& coned, const std::vector<std::vector<VertexId>>& columns,
                      const std::vector<Dist>& lengths) {
    Dist rho_hat = 0;
    for (size_t i = 0; i + 1 < columns.size(); ++i) {
        const Dist span = std::max<Dist>(std::max(lengths[i], lengths[i + 1]), 1);
        for (Dist k = 0; k <= span; ++k) {
            // matched samples after reparameterizing both columns to [0, span]
            const VertexId a = column_point(coned, columns[i],
                                            static_cast<Dist>((static_cast<std::int64_t>(k) * lengths[i]) / span));
            const VertexId b = column_point(coned, columns[i + 1],
                                            static_cast<Dist>((static_cast<std::int64_t>(k) * lengths[i + 1]) / span));
            rho_hat = std::max(rho_hat, coned.distance(a, b));
        }
    }
    return rho_hat;
}

struct Propagator {
    const TreeOfSpaces& tos;
    const Assembly& assembly;

    // generic step: original vertex x in the coned copy of `from` moves to
    // the image of the edge-space vertex whose `from`-side image is nearest
    std::optional<std::string> step_original(const std::string& from, const std::string& to,
                                             const std::string& local_name) const {
        const auto* e = tos.edge_between(from, to);
        if (!e) return std::nullopt;
        const int side_from = e->v0 == from ? 0 : 1;
        const auto& phi_from = side_from == 0 ? e->map0 : e->map1;
        const auto& phi_to = side_from == 0 ? e->map1 : e->map0;
        const auto& space_from = tos.vertex(from).space;
        const auto& space_to = tos.vertex(to).space;
        const ConedSpace& local = assembly.local.at(from);

        const VertexId x = local.graph().index(local_name);
        Dist best = std::numeric_limits<Dist>::max();
        VertexId best_y = -1;
        for (VertexId y = 0; y < e->space.vertex_count(); ++y) {
            const VertexId img = local.graph().index(space_from.name(phi_from.at(y)));
            const Dist d = local.graph().distance(img, x);
            if (d < best) {
                best = d;
                best_y = y;
            }
        }
        return space_to.name(phi_to.at(best_y));
    }

    // cone-bounded step follows the cone-locus incidence
    std::optional<std::string> step_cone(const std::string& from, const std::string& to,
                                         const std::string& subset) const {
        const auto* e = tos.edge_between(from, to);
        if (!e) return std::nullopt;
        const int side_from = e->v0 == from ? 0 : 1;
        for (const auto& em : e->family.members) {
            const auto* inc = assembly.validation.incidence(e->name, em.name);
            const auto& tgt_from = side_from == 0 ? inc->target0 : inc->target1;
            const auto& tgt_to = side_from == 0 ? inc->target1 : inc->target0;
            if (tgt_from && *tgt_from == subset && tgt_to) return *tgt_to;
        }
        return std::nullopt;
    }
};

} // namespace

std::vector<Hallway> sample_hallways(const TreeOfSpaces& tos, const Assembly& assembly,
                                     const HallwayParams& params) {
    if (params.m < 1) fail("ParamOutOfRange", "hallway half-length m must be >= 1");
    auto paths = tos.tree_paths(2 * params.m);
    if (paths.empty())
        fail("ParamOutOfRange",
             "tree has no geodesic of length " + std::to_string(2 * params.m));

    std::mt19937_64 rng(params.seed);
    std::vector<Hallway> out;
    const int budget = params.count * params.budget_factor;

    for (int attempt = 0; attempt < budget && static_cast<int>(out.size()) < params.count;
         ++attempt) {
        const auto& tree_path = paths[rng() % paths.size()];
        const std::string& mid = tree_path[static_cast<size_t>(params.m)];
        const ConedSpace& mid_local = assembly.local.at(mid);

        // middle column endpoints, as local names
        std::string top, bottom;
        bool top_is_cone = false, bottom_is_cone = false;
        if (params.cone_bounded_only) {
            std::vector<std::string> cones;
            for (VertexId v = 0; v < mid_local.graph().vertex_count(); ++v)
                if (mid_local.cone_subset_of(v)) cones.push_back(mid_local.graph().name(v));
            if (cones.size() < 2) fail("ParamOutOfRange", "cone-bounded sampling needs >= 2 cone points per space");
            top = cones[rng() % cones.size()];
            bottom = cones[rng() % cones.size()];
            if (top == bottom) continue;
            top_is_cone = bottom_is_cone = true;
        } else {
            const auto& base = tos.vertex(mid).space;
            top = base.name(static_cast<VertexId>(rng() % static_cast<std::uint64_t>(base.vertex_count())));
            bottom = base.name(static_cast<VertexId>(rng() % static_cast<std::uint64_t>(base.vertex_count())));
            if (top == bottom) continue;
        }

        Propagator prop{tos, assembly};
        // endpoint names per tree-path position
        std::vector<std::string> tops(tree_path.size()), bottoms(tree_path.size());
        tops[static_cast<size_t>(params.m)] = top;
        bottoms[static_cast<size_t>(params.m)] = bottom;
        bool ok = true;
        auto propagate = [&](int from_idx, int to_idx) {
            const auto& from = tree_path[static_cast<size_t>(from_idx)];
            const auto& to = tree_path[static_cast<size_t>(to_idx)];
            auto step = [&](const std::string& name, bool is_cone) -> std::optional<std::string> {
                if (is_cone) {
                    const std::string subset = name.substr(5); // "cone:<subset>"
                    auto nxt = prop.step_cone(from, to, subset);
                    if (!nxt) return std::nullopt;
                    return "cone:" + *nxt;
                }
                return prop.step_original(from, to, name);
            };
            auto t = step(tops[static_cast<size_t>(from_idx)], top_is_cone);
            auto b = step(bottoms[static_cast<size_t>(from_idx)], bottom_is_cone);
            if (!t || !b || *t == *b) return false;
            tops[static_cast<size_t>(to_idx)] = *t;
            bottoms[static_cast<size_t>(to_idx)] = *b;
            return true;
        };
        for (int i = params.m; ok && i < 2 * params.m; ++i) ok = propagate(i, i + 1);
        for (int i = params.m; ok && i > 0; --i) ok = propagate(i, i - 1);
        if (!ok) continue;

        Hallway h;
        h.tree_path = tree_path;
        h.cone_bounded = params.cone_bounded_only;
        for (size_t i = 0; i < tree_path.size(); ++i) {
            const ConedSpace& local = assembly.local.at(tree_path[i]);
            auto column_local = local.graph().geodesic(local.graph().index(tops[i]),
                                                       local.graph().index(bottoms[i]));
            std::vector<VertexId> column_global;
            for (VertexId v : column_local)
                column_global.push_back(
                    assembly.coned.graph().index(tree_path[i] + ":" + local.graph().name(v)));
            h.column_lengths.push_back(local.graph().path_length(column_local));
            h.columns.push_back(std::move(column_global));
        }
        h.rho_hat = measure_thinness(assembly.coned.graph(), h.columns, h.column_lengths);
        if (h.rho_hat > params.rho) continue;
        out.push_back(std::move(h));
    }
    return out;
}

FlareReport flare_report(const std::vector<Hallway>& samples, int m, Dist rho,
                         std::uint64_t seed) {
    if (samples.empty()) fail("EmptySample", "flare report needs at least one hallway");
    FlareReport report;
    report.m = m;
    report.rho = rho;
    report.seed = seed;
    for (const auto& h : samples)
        report.hallways.push_back(
            HallwaySummary{lambda_of(h), h.girth(), h.rho_hat, h.cone_bounded});

    // smallest girth threshold above which everything flares
    std::vector<Dist> girths{0};
    for (const auto& h : report.hallways) girths.push_back(h.girth);
    std::sort(girths.begin(), girths.end());
    girths.erase(std::unique(girths.begin(), girths.end()), girths.end());
    const Rational one(1, 1);
    for (Dist candidate : girths) {
        bool all_flare = true;
        Rational lambda_min = Rational::infinity();
        for (const auto& h : report.hallways) {
            if (h.girth < candidate) continue;
            if (!(h.lambda > one)) {
                all_flare = false;
                break;
            }
            lambda_min = min(lambda_min, h.lambda);
        }
        if (all_flare) {
            report.girth_threshold = candidate;
            report.girth_threshold_finite = true;
            report.lambda_min_above_threshold = lambda_min;
            break;
        }
    }
    report.flare_verdict = report.girth_threshold_finite;

    report.lambda_min_cone_bounded = Rational::infinity();
    for (const auto& h : report.hallways) {
        if (!h.cone_bounded) continue;
        report.has_cone_bounded = true;
        report.lambda_min_cone_bounded = min(report.lambda_min_cone_bounded, h.lambda);
    }
    report.strict_verdict = report.has_cone_bounded && report.lambda_min_cone_bounded > one;
    return report;
}

namespace {

std::vector<std::string> locus_path(const ConeLocusComponent& comp, const std::string& from,
                                    const std::string& to) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [a, b] : comp.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // DFS in a tree component
    std::vector<std::string> path{from};
    std::set<std::string> seen{from};
    std::function<bool(const std::string&)> walk = [&](const std::string& v) {
        if (v == to) return true;
        for (const auto& n : adj[v]) {
            if (seen.count(n)) continue;
            seen.insert(n);
            path.push_back(n);
            if (walk(n)) return true;
            path.pop_back();
        }
        return false;
    };
    if (!walk(from)) fail("InstanceShapeMismatch", "cone points not joined inside the locus");
    return path;
}

} // namespace

ConverseWitness converse_witness(const TreeOfSpaces& tos, const Assembly& assembly) {
    // shape: a line of spaces, two horosphere columns per space, a cone
    // locus with exactly two components spanning every tree vertex
    for (const auto& v : tos.vertices)
        if (tos.tree_neighbors(v.name).size() > 2)
            fail("InstanceShapeMismatch", "tree is not a line");
    for (const auto& v : tos.vertices)
        if (v.family.members.size() != 2)
            fail("InstanceShapeMismatch", "each vertex space needs exactly two horosphere-like sets");

    auto locus = cone_locus(tos, assembly);
    if (locus.components.size() != 2)
        fail("InstanceShapeMismatch", "expected exactly two cone-locus components");
    for (const auto& comp : locus.components)
        if (comp.tree_image.size() != tos.vertices.size())
            fail("InstanceShapeMismatch", "a cone line does not span the tree");

    // order the line
    std::vector<std::string> line;
    for (const auto& v : tos.vertices)
        if (tos.tree_neighbors(v.name).size() <= 1) line.push_back(v.name);
    std::sort(line.begin(), line.end());
    if (tos.vertices.size() == 1) line = {tos.vertices.front().name};
    std::vector<std::string> ordered{line.front()};
    while (ordered.size() < tos.vertices.size()) {
        for (const auto& n : tos.tree_neighbors(ordered.back()))
            if (ordered.size() < 2 || n != ordered[ordered.size() - 2]) {
                ordered.push_back(n);
                break;
            }
    }

    const std::string& first = ordered.front();
    const std::string& last = ordered.back();
    const auto& family0 = tos.vertex(first).family;
    const std::string s1 = family0.members[0].name;
    const std::string s2 = family0.members[1].name;

    const MetricGraph& xhat = assembly.coned.graph();
    auto global = [&](const std::string& space, const std::string& local) {
        return xhat.index(space + ":" + local);
    };

    // anchors: the least member vertex of each subset at both ends
    auto anchor = [&](const std::string& space, const std::string& subset) {
        const auto& vs = tos.vertex(space);
        return global(space, vs.space.name(vs.family.member(subset).vertices.front()));
    };
    const VertexId a0 = anchor(first, s1);
    const VertexId aN = anchor(last, s1);
    const VertexId b0 = anchor(first, s2);
    const VertexId bN = anchor(last, s2);

    const ConeLocusComponent* comp1 = nullptr;
    const ConeLocusComponent* comp2 = nullptr;
    for (const auto& comp : locus.components) {
        if (std::find(comp.cone_points.begin(), comp.cone_points.end(),
                      first + ":cone:" + s1) != comp.cone_points.end())
            comp1 = &comp;
        else
            comp2 = &comp;
    }
    if (!comp1 || !comp2) fail("InstanceShapeMismatch", "cone lines do not match the subsets");

    ConverseWitness out;

    // sigma_1: cone edge, ride the first cone line, cone edge out
    out.sigma1.push_back(a0);
    for (const auto& cp : locus_path(*comp1, first + ":cone:" + s1, last + ":cone:" + s1))
        out.sigma1.push_back(xhat.index(cp));
    out.sigma1.push_back(aN);

    // sigma_2: cross to the second column, ride its cone line, cross back
    auto local_geodesic = [&](const std::string& space, VertexId from_global, VertexId to_global) {
        const auto& vs = tos.vertex(space);
        const std::string prefix = space + ":";
        auto strip = [&](VertexId g) {
            return vs.space.index(xhat.name(g).substr(prefix.size()));
        };
        std::vector<VertexId> seg;
        for (VertexId v : vs.space.geodesic(strip(from_global), strip(to_global)))
            seg.push_back(global(space, vs.space.name(v)));
        return seg;
    };
    auto append = [](std::vector<VertexId>& path, const std::vector<VertexId>& seg) {
        for (VertexId v : seg) {
            if (!path.empty() && path.back() == v) continue;
            path.push_back(v);
        }
    };
    append(out.sigma2, local_geodesic(first, a0, b0));
    std::vector<VertexId> ride;
    for (const auto& cp : locus_path(*comp2, first + ":cone:" + s2, last + ":cone:" + s2))
        ride.push_back(xhat.index(cp));
    append(out.sigma2, ride);
    append(out.sigma2, {bN});
    append(out.sigma2, local_geodesic(last, bN, aN));

    // doubly electrified space: cone the two cone lines inside X-hat
    SubsetFamily lines;
    SubsetFamily::Member t1{"T1", comp1->subtree_coned_ids};
    SubsetFamily::Member t2{"T2", comp2->subtree_coned_ids};
    lines.members = {t1, t2};
    ConedSpace xhathat = cone_off(xhat, lines);
    const MetricGraph& dd = xhathat.graph();

    auto lift = [&](VertexId v) { return dd.index(xhat.name(v)); };
    std::vector<VertexId> sigma1_dd{lift(a0), lift(xhat.index(first + ":cone:" + s1)),
                                    dd.index("cone:T1"), lift(xhat.index(last + ":cone:" + s1)),
                                    lift(aN)};
    std::vector<VertexId> sigma2_dd;
    for (VertexId v : local_geodesic(first, a0, b0)) sigma2_dd.push_back(lift(v));
    sigma2_dd.push_back(lift(xhat.index(first + ":cone:" + s2)));
    sigma2_dd.push_back(dd.index("cone:T2"));
    sigma2_dd.push_back(lift(xhat.index(last + ":cone:" + s2)));
    sigma2_dd.push_back(lift(bN));
    for (VertexId v : local_geodesic(last, bN, aN))
        if (sigma2_dd.back() != lift(v)) sigma2_dd.push_back(lift(v));

    out.k1 = quasigeodesic_constant(dd, sigma1_dd);
    out.k2 = quasigeodesic_constant(dd, sigma2_dd);
    out.sigma1_double_length = dd.path_length(sigma1_dd);

    // penetration patterns against the two horosphere columns C_1, C_2
    SubsetFamily columns;
    SubsetFamily::Member c1{"C1", comp1->horospheres_total_ids};
    SubsetFamily::Member c2{"C2", comp2->horospheres_total_ids};
    columns.members = {c1, c2};
    std::map<std::string, std::string> attribution;
    for (const auto& cp : comp1->cone_points) attribution[cp] = "C1";
    for (const auto& cp : comp2->cone_points) attribution[cp] = "C2";
    ConedSpace view = ConedSpace::from_parts(xhat, assembly.total, columns, attribution);

    const Dist eps = 2;
    auto p1 = penetration_pattern(view, out.sigma1, eps);
    auto p2 = penetration_pattern(view, out.sigma2, eps);
    out.discrepancy = compare_patterns(view, p1, p2).max_discrepancy;
    return out;
}

} // namespace conetree
