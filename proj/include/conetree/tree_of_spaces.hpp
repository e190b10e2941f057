#ifndef CONETREE_TREE_OF_SPACES_HPP
#define CONETREE_TREE_OF_SPACES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conetree/electric.hpp"
#include "conetree/hyperbolicity.hpp"
#include "conetree/metric_graph.hpp"
#include "conetree/rational.hpp"

namespace conetree {

/// A finite simplicial tree with a graph (and subset family) per vertex,
/// a graph per edge, and the two attaching vertex maps per edge.
struct TreeOfSpaces {
    struct VertexSpace {
        std::string name;
        MetricGraph space;
        SubsetFamily family;
    };
    struct EdgeSpace {
        std::string name;
        std::string v0, v1; // tree endpoints
        MetricGraph space;
        SubsetFamily family;
        std::map<VertexId, VertexId> map0; // X_e vertex -> X_{v0} vertex
        std::map<VertexId, VertexId> map1; // X_e vertex -> X_{v1} vertex
    };

    std::vector<VertexSpace> vertices;
    std::vector<EdgeSpace> edges;

    const VertexSpace& vertex(std::string_view name) const;
    const EdgeSpace& edge(std::string_view name) const;
    const VertexSpace* find_vertex(std::string_view name) const;

    /// Tree shape (connected, acyclic), totality of the attaching maps,
    /// space/family well-formedness. Throws on violation.
    void check_structure() const;

    int tree_diameter_edges() const;
    /// All simple tree paths with exactly `edges` edges.
    std::vector<std::vector<std::string>> tree_paths(int edge_count) const;
    std::vector<std::string> tree_neighbors(const std::string& v) const;
    const EdgeSpace* edge_between(const std::string& a, const std::string& b) const;
};

struct EdgeMapCheck {
    std::string edge;
    int side = 0;
    Rational distortion;   // two-sided multiplicative distortion; infinite when collapsing
    std::string str() const;
};

struct TypeViolation {
    std::string edge;
    int side = 0;
    std::string vertex_subset;
    std::vector<std::string> partial_preimage; // offending X_e vertices
};

struct SubtreeIncidence {
    std::string edge;
    std::string edge_subset;
    std::optional<std::string> target0; // vertex subset hit on each side, when any
    std::optional<std::string> target1;
};

struct ValidationReport {
    std::vector<EdgeMapCheck> map_distortion;
    std::vector<EdgeMapCheck> coned_map_distortion; // induced maps with cones matched
    std::vector<TypeViolation> type_violations;
    std::vector<std::pair<std::string, QuarterUnits>> coned_space_delta; // per space
    std::vector<SubtreeIncidence> incidences;
    Rational max_distortion;
    Rational max_coned_distortion;
    QuarterUnits max_coned_delta = 0;

    bool strictly_type_preserving() const { return type_violations.empty(); }
    const SubtreeIncidence* incidence(std::string_view edge, std::string_view edge_subset) const;
};

/// Measures the definition's conditions: per-edge-map distortion, strict
/// type preservation, per-space coned-off delta, induced coned-map
/// distortion. Violations are reported, not thrown.
ValidationReport validate(const TreeOfSpaces& tos, int delta_cap = 600);

/// The total space: disjoint copies of the vertex spaces plus, per tree
/// edge, a slab copy of the edge space joined to both images by weight-1
/// connectors, so crossing an edge costs one unit. Vertex names are
/// "<tree vertex>:<name>" and "<tree edge>:<name>".
MetricGraph assemble_total(const TreeOfSpaces& tos);

/// assemble_coned output bundled with everything downstream passes need.
struct Assembly {
    MetricGraph total;                           // X
    ConedSpace coned;                            // X-hat over base X
    std::map<std::string, ConedSpace> local;     // per tree vertex and edge: its own coned space
    ValidationReport validation;
    std::vector<std::pair<std::string, std::string>> locus_edges; // slab cone <-> vertex cone, X-hat names
};

/// The induced tree of coned-off spaces: every vertex/edge space replaced
/// by its electrification, with extra weight-1 edges joining slab cone
/// points to the vertex-space cone points they map into. Requires strict
/// type preservation (throws TypePreservationViolation otherwise).
Assembly assemble_coned(const TreeOfSpaces& tos);

struct ConeLocusComponent {
    std::vector<std::string> cone_points;                        // X-hat names, sorted
    std::vector<std::pair<std::string, std::string>> edges;      // locus incidences
    std::vector<std::string> tree_image;                         // covered tree vertices
    std::vector<VertexId> subtree_coned_ids;                     // T_alpha inside X-hat
    std::vector<VertexId> horospheres_total_ids;                 // C_alpha inside X
};

struct ConeLocusReport {
    std::vector<ConeLocusComponent> components;
    bool is_forest = false;
    bool embeds_in_tree = false; // each component projects isomorphically into T
};

/// Connected components of the cone locus; asserts the forest property
/// (throws NotAForest) and checks the projection to the tree.
ConeLocusReport cone_locus(const TreeOfSpaces& tos, const Assembly& assembly);

/// Properness profile of the vertex-space inclusions: for each probe
/// radius M, the largest intrinsic distance between vertex-space points
/// whose total-space distance stays within M. Finite instance families
/// are compared through the stability of this profile across sizes.
std::vector<std::pair<Dist, Dist>> inclusion_properness(const TreeOfSpaces& tos,
                                                        const MetricGraph& total,
                                                        std::span<const Dist> probe_radii);

// ---- sectioned text format -------------------------------------------------
//
//   tree
//   tv <v>
//   te <e> <v1> <v2>
//   space <v-or-e>
//   <graph text lines>
//   map <e> <0|1>
//   m <edge-space-vertex> <target-vertex>

TreeOfSpaces parse_tos_text(std::string_view text);
TreeOfSpaces load_tos_file(const std::string& path);
std::string format_tos_text(const TreeOfSpaces& tos);

} // namespace conetree

#endif
