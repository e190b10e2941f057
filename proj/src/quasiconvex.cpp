#include "conetree/quasiconvex.hpp"

#include <algorithm>

#include "conetree/hyperbolicity.hpp"

namespace conetree {

std::vector<VertexId> project(const MetricGraph& g, std::span<const VertexId> target, VertexId x) {
    if (target.empty()) fail("EmptySubset", "projection target is empty");
    const Dist d = g.distance_to_set(x, target);
    std::vector<VertexId> out;
    auto row = g.distance_row(x);
    for (VertexId y : target)
        if (row[static_cast<size_t>(y)] == d) out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Dist quasiconvexity_constant(const MetricGraph& g, std::span<const VertexId> subset,
                             bool all_geodesics) {
    if (subset.empty()) fail("EmptySubset", "quasiconvexity of empty set");
    // distance to the subset, per vertex
    std::vector<Dist> to_subset(static_cast<size_t>(g.vertex_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) to_subset[static_cast<size_t>(v)] =
        g.distance_to_set(v, subset);

    Dist worst = 0;
    for (VertexId a : subset)
        for (VertexId b : subset) {
            if (a == b) continue;
            if (all_geodesics) {
                for (const auto& path : g.all_geodesics(a, b))
                    for (VertexId p : path) worst = std::max(worst, to_subset[static_cast<size_t>(p)]);
            } else {
                for (VertexId p : g.geodesic(a, b))
                    worst = std::max(worst, to_subset[static_cast<size_t>(p)]);
            }
        }
    return worst;
}

std::string CoboundednessReport::str() const {
    return "eps=" + std::to_string(separation) + " D=" + std::to_string(cobounded_diameter) +
           " pair=" + (worst_pair.empty() ? "-" : worst_pair) +
           (coboundedness_defined ? "" : " singleton_family=1");
}

CoboundednessReport separation_and_coboundedness(const MetricGraph& g, const SubsetFamily& fam) {
    CoboundednessReport out;
    if (fam.members.size() < 2) {
        out.coboundedness_defined = false;
        return out;
    }
    out.separation = fam.measured_separation(g);

    for (size_t i = 0; i < fam.members.size(); ++i)
        for (size_t j = 0; j < fam.members.size(); ++j) {
            if (i == j) continue;
            // image of H_j under projection to H_i
            std::vector<VertexId> image;
            for (VertexId x : fam.members[j].vertices) {
                auto p = project(g, fam.members[i].vertices, x);
                image.insert(image.end(), p.begin(), p.end());
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            Dist diam = 0;
            for (size_t a = 0; a < image.size(); ++a) {
                auto row = g.distance_row(image[a]);
                for (size_t b = a + 1; b < image.size(); ++b)
                    diam = std::max(diam, row[static_cast<size_t>(image[b])]);
            }
            if (diam > out.cobounded_diameter || out.worst_pair.empty()) {
                out.cobounded_diameter = std::max(out.cobounded_diameter, diam);
                out.worst_pair = fam.members[i].name + "," + fam.members[j].name;
            }
        }
    return out;
}

ProjectedPathReport projected_path_check(const MetricGraph& g, std::span<const VertexId> target,
                                         VertexId x, VertexId y, Dist min_projection_gap,
                                         const Rational& k_bound) {
    auto px = project(g, target, x);
    auto py = project(g, target, y);
    const VertexId rx = px.front(); // lexicographic representative (least id)
    const VertexId ry = py.front();
    if (g.distance(rx, ry) < min_projection_gap)
        fail("Inapplicable", "projections are only " + std::to_string(g.distance(rx, ry)) +
                                 " half-units apart (need " + std::to_string(min_projection_gap) +
                                 ")");

    ProjectedPathReport out;
    auto append = [&](const std::vector<VertexId>& seg) {
        for (VertexId v : seg) {
            if (!out.path.empty() && out.path.back() == v) continue;
            out.path.push_back(v);
        }
    };
    append(g.geodesic(x, rx));
    append(g.geodesic(rx, ry));
    append(g.geodesic(ry, y));
    out.k = quasigeodesic_constant(g, out.path);
    out.is_quasigeodesic = out.k <= k_bound;
    return out;
}

} // namespace conetree
