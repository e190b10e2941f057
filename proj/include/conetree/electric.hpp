#ifndef CONETREE_ELECTRIC_HPP
#define CONETREE_ELECTRIC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conetree/metric_graph.hpp"
#include "conetree/rational.hpp"

namespace conetree {

/// Electrification of a graph along a subset family: the augmented graph
/// plus the bookkeeping needed to move between it and the base space.
/// Also covers partial electrocution (mapping cylinders onto target
/// graphs) and plain views where an existing graph is reinterpreted as
/// "base + attributed cone vertices" without adding anything.
class ConedSpace {
public:
    struct PelTarget {
        std::vector<std::string> target_vertices; // names in the augmented graph
        Rational collapse_lipschitz;              // measured single-constant Lipschitz bound
    };

    const MetricGraph& graph() const { return graph_; }
    const MetricGraph& base() const { return base_; }
    const SubsetFamily& family() const { return family_; } // over base ids

    bool empty_family_flag() const { return empty_family_; }

    VertexId to_graph(VertexId base_id) const { return base_to_graph_[static_cast<size_t>(base_id)]; }
    std::optional<VertexId> to_base(VertexId graph_id) const;
    bool is_original(VertexId graph_id) const { return to_base(graph_id).has_value(); }

    /// Subset index a cone (or partial-electrocution target) vertex is
    /// attributed to; nullopt for original vertices.
    std::optional<int> cone_subset_of(VertexId graph_id) const;
    /// Cone vertices attributed to the given subset (graph ids).
    std::vector<VertexId> cone_vertices(int subset_index) const;

    const std::map<std::string, PelTarget>& pel_targets() const { return pel_targets_; }

    static ConedSpace from_parts(MetricGraph augmented, MetricGraph base, SubsetFamily family,
                                 const std::map<std::string, std::string>& cone_attribution);

private:
    MetricGraph graph_;
    MetricGraph base_;
    SubsetFamily family_;
    std::vector<VertexId> base_to_graph_;
    std::vector<VertexId> graph_to_base_; // -1 for non-original
    std::vector<int> cone_attribution_;   // subset index per graph vertex, -1 none
    std::map<std::string, PelTarget> pel_targets_;
    bool empty_family_ = false;

    friend ConedSpace cone_off(const MetricGraph&, const SubsetFamily&);
    friend ConedSpace partially_electrocute(
        const MetricGraph&, const SubsetFamily&, const std::map<std::string, MetricGraph>&,
        const std::map<std::string, std::map<std::string, std::string>>&);
    void index_parts(const std::map<std::string, std::string>& cone_attr);
};

/// One cone vertex per subset, joined to each member by a weight-1
/// (length one half) edge. An empty family returns the graph unchanged
/// with the empty_family flag set.
ConedSpace cone_off(const MetricGraph& g, const SubsetFamily& fam);

/// Glues the mapping cylinder of collapse[h] : H -> targets[h] for each
/// subset h: targets keep their own edges (vertices renamed
/// "pel:<subset>:<name>"), and every member x gains a weight-1 edge to
/// its image. Single-vertex targets reproduce cone_off exactly, cone
/// vertex name included.
ConedSpace partially_electrocute(
    const MetricGraph& g, const SubsetFamily& fam, const std::map<std::string, MetricGraph>& targets,
    const std::map<std::string, std::map<std::string, std::string>>& collapse);

/// Canonical geodesic between two base vertices in the augmented graph.
std::vector<VertexId> electric_geodesic(const ConedSpace& cs, VertexId base_u, VertexId base_v);

struct Visit {
    std::string subset;
    VertexId entry = -1; // graph ids of original vertices
    VertexId exit = -1;
    size_t entry_pos = 0;
    size_t exit_pos = 0;
};

struct BacktrackViolation {
    std::string subset;
    size_t first_exit_pos = 0;
    size_t reentry_pos = 0;
};

struct PenetrationPattern {
    std::vector<Visit> visits; // ordered by path position
    std::vector<BacktrackViolation> violations;
    Dist eps = 0;
    VertexId path_front = -1;
    VertexId path_back = -1;
    bool without_backtracking() const { return violations.empty(); }
};

/// Records the path's visits to each N_eps(H) (neighborhoods taken in the
/// base metric; cone vertices count as inside their own subset's region).
PenetrationPattern penetration_pattern(const ConedSpace& cs, std::span<const VertexId> path,
                                       Dist eps);

struct PatternComparison {
    Dist max_discrepancy = 0; // half-units, intrinsic to the neighborhoods
    std::string worst_subset;
    bool unreachable = false; // an entry/exit pair fell in different components
};

/// Pattern discrepancy: for subsets both paths visit, the
/// intrinsic distances between entry points and between exit points; for
/// subsets visited by exactly one, the intrinsic entry-to-exit span of the
/// visit. Returns the maximum over subsets.
PatternComparison compare_patterns(const ConedSpace& cs, const PenetrationPattern& a,
                                   const PenetrationPattern& b);

struct TrackingReport {
    Dist electric_hausdorff = 0;   // electric geodesic -> base geodesic, electric metric
    // base geodesic -> the electric geodesic's zero-neighborhood (its
    // original vertices plus every subset whose cone it crosses), base metric
    Dist hyperbolic_hausdorff = 0;
    Dist max() const { return electric_hausdorff > hyperbolic_hausdorff ? electric_hausdorff
                                                                        : hyperbolic_hausdorff; }
};

TrackingReport tracking_constant(const ConedSpace& cs,
                                 std::span<const std::pair<VertexId, VertexId>> base_pairs);

struct SurgeryResult {
    std::vector<VertexId> path; // graph ids
    Rational quasigeodesic_k;
    int surgeries = 0;
    bool clean = false; // no violations remain
};

/// Removes backtracking by excising everything between the first exit and
/// the last re-entry of an offending neighborhood and reconnecting through
/// the neighborhood's intrinsic geodesic; iterates until clean or the
/// iteration budget runs out.
SurgeryResult remove_backtracking(const ConedSpace& cs, std::span<const VertexId> path, Dist eps);

} // namespace conetree

#endif
