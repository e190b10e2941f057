#ifndef CONETREE_QUASICONVEX_HPP
#define CONETREE_QUASICONVEX_HPP

#include <string>
#include <vector>

#include "conetree/metric_graph.hpp"
#include "conetree/rational.hpp"

namespace conetree {

/// Full nearest-point projection set { y in Y : d(x,y) = d(x,Y) }, sorted.
std::vector<VertexId> project(const MetricGraph& g, std::span<const VertexId> target, VertexId x);

/// Max over pairs of Y of the deepest excursion of the canonical geodesic
/// away from Y. With all_geodesics every shortest path is scanned
/// (exponential; only sensible for small graphs).
Dist quasiconvexity_constant(const MetricGraph& g, std::span<const VertexId> subset,
                             bool all_geodesics = false);

struct CoboundednessReport {
    Dist separation = 0;          // min pairwise distance between members
    Dist cobounded_diameter = 0;  // max over ordered pairs of diam of projection image
    std::string worst_pair;       // "i,j" subset names realizing the diameter
    bool coboundedness_defined = true; // false for families with < 2 members
    std::string str() const;
};

CoboundednessReport separation_and_coboundedness(const MetricGraph& g, const SubsetFamily& fam);

struct ProjectedPathReport {
    std::vector<VertexId> path; // [x, pi(x)] + [pi(x), pi(y)] + [pi(y), y]
    Rational k;
    bool is_quasigeodesic = false; // k <= k_bound
};

/// Builds the three-segment path through lexicographic projection
/// representatives and measures its quasigeodesic constant. Throws
/// Inapplicable when d(pi(x), pi(y)) < min_projection_gap.
ProjectedPathReport projected_path_check(const MetricGraph& g, std::span<const VertexId> target,
                                         VertexId x, VertexId y, Dist min_projection_gap,
                                         const Rational& k_bound = Rational(8, 1));

} // namespace conetree

#endif
