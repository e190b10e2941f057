#ifndef CONETREE_METRIC_GRAPH_HPP
#define CONETREE_METRIC_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conetree/errors.hpp"

namespace conetree {

// All lengths are integer half-units: a weight-2 edge has length one,
// a weight-1 edge has length one half (cone edges, slab connectors).
using Weight = std::int32_t;
using Dist = std::int32_t;
using VertexId = std::int32_t;

struct EdgeSpec {
    std::string u;
    std::string v;
    Weight w = 2;
};

struct Neighbor {
    VertexId to;
    Weight w;
};

/// Finite connected weighted graph as an exact geodesic metric space.
/// Immutable after construction; vertex ids are indices into the
/// name table, which is sorted, so id order is the global vertex order
/// used for all lexicographic tie-breaking.
class MetricGraph {
public:
    MetricGraph() = default;

    // Rejects weights < 1, self-loops and disconnected input. Parallel
    // edges collapse to the lightest one.
    static MetricGraph from_edge_list(const std::vector<EdgeSpec>& edges);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const;
    const std::string& name(VertexId v) const { return names_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<VertexId> find(std::string_view name) const;
    VertexId index(std::string_view name) const; // throws UnknownVertex
    bool has_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }
    const std::vector<Neighbor>& neighbors(VertexId v) const {
        return adjacency_[static_cast<size_t>(v)];
    }
    std::optional<Weight> edge_weight(VertexId u, VertexId v) const;

    /// Edges in canonical order (lexicographic on sorted endpoint names).
    std::vector<EdgeSpec> edge_list() const;

    Dist distance(VertexId u, VertexId v) const;
    std::span<const Dist> distance_row(VertexId u) const;
    Dist distance_to_set(VertexId u, std::span<const VertexId> set) const;
    Dist diameter() const;

    /// Canonical geodesic: among shortest paths from u to v, the
    /// lexicographically least vertex sequence under the global order.
    std::vector<VertexId> geodesic(VertexId u, VertexId v) const;

    /// All shortest u-v paths (exponential; intended for small graphs).
    std::vector<std::vector<VertexId>> all_geodesics(VertexId u, VertexId v, size_t cap = 100000) const;

    /// { x : d(x, seeds) <= radius }, sorted by id.
    std::vector<VertexId> neighborhood(std::span<const VertexId> seeds, Dist radius) const;

    bool is_edge_path(std::span<const VertexId> path) const;
    Dist path_length(std::span<const VertexId> path) const; // throws NotAPath

    /// Subgraph induced on `keep` with inherited weights and its own
    /// (intrinsic) metric. Vertex names are preserved. Throws
    /// DisconnectedSubset unless `allow_disconnected`.
    MetricGraph induced_subgraph(std::span<const VertexId> keep, bool allow_disconnected = false) const;

    /// Intrinsic distance inside the induced subgraph on `keep`;
    /// nullopt when u, v land in different components.
    static std::optional<Dist> intrinsic_distance(const MetricGraph& sub, std::string_view u,
                                                  std::string_view v);

    bool connected() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Neighbor>> adjacency_;

    mutable std::shared_ptr<const std::vector<Dist>> table_; // n*n, row-major
    const std::vector<Dist>& table() const;
    void dijkstra_row(VertexId source, Dist* out) const;

    friend class GraphBuilder;
};

/// Incremental builder used by assemblers and generators; applies the
/// same validation as from_edge_list on build().
class GraphBuilder {
public:
    void add_edge(std::string u, std::string v, Weight w);
    void add_vertex(std::string v); // isolated vertices are rejected at build unless later connected
    MetricGraph build(bool require_connected = true) const;
    bool empty() const { return edges_.empty() && extra_vertices_.empty(); }
    const std::vector<EdgeSpec>& edges() const { return edges_; }

private:
    std::vector<EdgeSpec> edges_;
    std::vector<std::string> extra_vertices_;
};

/// Named, pairwise disjoint vertex subsets (the horosphere-like sets).
struct SubsetFamily {
    struct Member {
        std::string name;
        std::vector<VertexId> vertices; // sorted
    };

    std::vector<Member> members;
    Dist declared_separation = 1;
    std::optional<Dist> properness_radius; // when set, no member's R-ball may cover the graph

    bool empty() const { return members.empty(); }
    const Member& member(std::string_view name) const;
    const Member* find(std::string_view name) const;

    /// Checks nonemptiness, disjointness, measured separation >= declared,
    /// and the coarse-properness radius when asserted. Throws on violation.
    void validate(const MetricGraph& g) const;

    /// Minimum pairwise distance between members (0 when < 2 members).
    Dist measured_separation(const MetricGraph& g) const;

    /// Remaps the family onto another graph carrying the same vertex names.
    SubsetFamily renamed(const MetricGraph& from, const MetricGraph& to,
                         const std::string& prefix = "") const;
};

// ---- graph text format ----------------------------------------------------
//
//   # comment
//   e <u> <v> <half-units>
//   subset <name> <v1> <v2> ...
//
// plus two optional directives carried by the family:
//   separation <half-units>
//   properness <half-units>

struct ParsedGraph {
    MetricGraph graph;
    SubsetFamily family;
};

ParsedGraph parse_graph_text(std::string_view text);
ParsedGraph load_graph_file(const std::string& path);
std::string format_graph_text(const MetricGraph& g, const SubsetFamily& fam);

/// FNV-1a digest of a byte string; used to stamp reports with input identity.
std::uint64_t content_digest(std::string_view bytes);

} // namespace conetree

#endif
