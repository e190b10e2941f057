#ifndef CONETREE_HYPERBOLICITY_HPP
#define CONETREE_HYPERBOLICITY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "conetree/metric_graph.hpp"
#include "conetree/rational.hpp"

namespace conetree {

// Hyperbolicity constants are reported in quarter-units so that halving
// a half-unit four-point defect stays integral.
using QuarterUnits = std::int64_t;

struct SampledMode {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct DeltaReport {
    QuarterUnits delta_qu = 0;
    std::string method;                  // "exhaustive" or "sampled(count,seed)"
    std::array<VertexId, 4> witness{-1, -1, -1, -1}; // triple reports use 3 slots
    std::string str() const;
};

/// (d(x,w) + d(y,w) - d(x,y)) in quarter-units: twice the usual Gromov
/// product, kept integral.
QuarterUnits gromov_product_qu(const MetricGraph& g, VertexId x, VertexId y, VertexId w);

/// Minimal delta with d(x,y)+d(z,w) <= max(other two pair sums) + 2*delta
/// over all vertex quadruples. Exhaustive mode scans every quadruple
/// (subject to `cap` vertices); sampled mode draws quadruples from a
/// seeded generator and is a lower bound for the exhaustive value.
DeltaReport delta_four_point(const MetricGraph& g,
                             std::optional<SampledMode> sampled = std::nullopt, int cap = 150,
                             int jobs = 1);

/// Minimal delta such that each side of every canonical geodesic triangle
/// lies in the delta-neighborhood of the union of the other two sides.
DeltaReport delta_slim(const MetricGraph& g, std::optional<SampledMode> sampled = std::nullopt,
                       int cap = 150);

/// Minimal K >= 0 with length(beta) <= K * d(endpoints) + K for every
/// subsegment beta of the path.
Rational quasigeodesic_constant(const MetricGraph& g, std::span<const VertexId> path);

} // namespace conetree

#endif
