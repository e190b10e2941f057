#ifndef CONETREE_GENERATORS_HPP
#define CONETREE_GENERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "conetree/metric_graph.hpp"
#include "conetree/tree_of_spaces.hpp"

namespace conetree {
namespace gen {

// Deterministic instance generators. All edges are unit length (weight 2)
// unless stated otherwise; repeated calls are byte-identical.

MetricGraph tree(int depth, int valence);
MetricGraph cycle(int n);
MetricGraph grid(int width, int height);
MetricGraph free_ball(int rank, int radius);

/// Shortcut tower over an n-cycle: level-k horizontal edges span 2^k base
/// steps, vertical edges join consecutive levels. The base cycle is the
/// horosphere-like set. With towers=2 the base is split into two arcs on
/// a longer ambient cycle, each carrying its own tower and subset.
ParsedGraph horoball(int base_n, int depth, int towers = 1);

/// Line of identical spaces glued by identity, each carrying one
/// horosphere-like set; cycle spaces with an arc subset by default, or
/// horoball towers over their base when horoball_depth > 0.
TreeOfSpaces line_of_spaces(int base_n, int length, int arc_len = 1, int horoball_depth = 0);

/// Line of path spaces with two singleton horosphere columns at distance
/// d0 (in units), identity gluings: the shape the converse pipeline witnesses against.
TreeOfSpaces parallel_cones(int n, int d0);

struct Instance {
    std::optional<ParsedGraph> graph;
    std::optional<TreeOfSpaces> tos;
};

/// Dispatch by name: tree(depth,valence), cycle(n), grid(w,h),
/// free_ball(rank,radius), horoball(base_n,depth[,towers]),
/// parallel_cones(N,D0), line_of_spaces(base_n,L[,arc[,horoball_depth]]),
/// mapping_torus(r,L).
Instance generate(const std::string& name, const std::vector<long>& params);

} // namespace gen
} // namespace conetree

#endif
