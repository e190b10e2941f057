#include "conetree/hyperbolicity.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace conetree {

std::string DeltaReport::str() const {
    std::string s = "delta_qu=" + std::to_string(delta_qu) + " method=" + method + " witness=";
    bool first = true;
    for (VertexId v : witness) {
        if (v < 0) continue;
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    }
    return s;
}

QuarterUnits gromov_product_qu(const MetricGraph& g, VertexId x, VertexId y, VertexId w) {
    return static_cast<QuarterUnits>(g.distance(x, w)) + g.distance(y, w) - g.distance(x, y);
}

namespace {

struct QuadScanResult {
    Dist defect = 0; // half-units; delta_qu equals the max defect
    std::array<VertexId, 4> witness{-1, -1, -1, -1};

    void consider(Dist d, VertexId x, VertexId y, VertexId z, VertexId w) {
        if (d > defect) {
            defect = d;
            witness = {x, y, z, w};
        }
    }
    void merge(const QuadScanResult& o) {
        if (o.defect > defect || (o.defect == defect && o.witness < witness && o.witness[0] >= 0))
            *this = o;
    }
};

// four-point defect: largest pair-sum minus the second largest
inline Dist quad_defect(Dist a, Dist b, Dist c) {
    Dist hi = a, lo = b;
    if (lo > hi) std::swap(hi, lo);
    if (c > hi) return c - hi;
    return hi - std::max(lo, c);
}

QuadScanResult scan_quadruples(const MetricGraph& g, VertexId x_begin, VertexId x_end) {
    const int n = g.vertex_count();
    QuadScanResult best;
    for (VertexId x = x_begin; x < x_end; ++x) {
        const Dist* row_x = g.distance_row(x).data();
        for (VertexId y = x + 1; y < n; ++y) {
            const Dist d_xy = row_x[y];
            const Dist* row_y = g.distance_row(y).data();
            for (VertexId z = y + 1; z < n; ++z) {
                const Dist d_xz = row_x[z];
                const Dist d_yz = row_y[z];
                const Dist* row_z = g.distance_row(z).data();
                // the winning pairing's defect is bounded by its smaller
                // pair distance, so nothing here can beat the current max
                const Dist cap3 = std::max(std::max(d_xy, d_xz), d_yz);
                if (cap3 <= best.defect) continue;
                for (VertexId w = z + 1; w < n; ++w) {
                    const Dist d = quad_defect(d_xy + row_z[w], d_xz + row_y[w],
                                               d_yz + row_x[w]);
                    if (d > best.defect) best.consider(d, x, y, z, w);
                }
            }
        }
    }
    return best;
}

} // namespace

DeltaReport delta_four_point(const MetricGraph& g, std::optional<SampledMode> sampled, int cap,
                             int jobs) {
    const int n = g.vertex_count();
    DeltaReport report;

    if (!sampled) {
        if (n > cap)
            fail("CapExceeded", "exhaustive four-point scan capped at " + std::to_string(cap) +
                                    " vertices (graph has " + std::to_string(n) +
                                    "); use sampled mode");
        g.distance_row(0); // force the table before any worker threads start
        QuadScanResult best;
        if (jobs <= 1 || n < 16) {
            best = scan_quadruples(g, 0, n);
        } else {
            // deterministic merge regardless of worker timing
            const int workers = std::min(jobs, n);
            std::vector<QuadScanResult> parts(static_cast<size_t>(workers));
            std::vector<std::thread> threads;
            for (int t = 0; t < workers; ++t)
                threads.emplace_back([&, t] {
                    // stride partition balances the shrinking inner loops
                    QuadScanResult local;
                    for (VertexId x = t; x < n; x += workers)
                        local.merge(scan_quadruples(g, x, x + 1));
                    parts[static_cast<size_t>(t)] = local;
                });
            for (auto& th : threads) th.join();
            for (const auto& p : parts) best.merge(p);
        }
        report.delta_qu = best.defect;
        report.witness = best.witness;
        report.method = "exhaustive";
        return report;
    }

    g.distance_row(0);
    std::mt19937_64 rng(sampled->seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    QuadScanResult best;
    for (std::uint64_t i = 0; i < sampled->count; ++i) {
        VertexId x = pick(rng), y = pick(rng), z = pick(rng), w = pick(rng);
        const Dist* row_x = g.distance_row(x).data();
        const Dist* row_y = g.distance_row(y).data();
        const Dist* row_z = g.distance_row(z).data();
        const Dist d = quad_defect(row_x[y] + row_z[w], row_x[z] + row_y[w],
                                   row_x[w] + row_y[z]);
        if (d > best.defect) best.consider(d, x, y, z, w);
    }
    report.delta_qu = best.defect;
    report.witness = best.witness;
    report.method = "sampled(" + std::to_string(sampled->count) + "," +
                    std::to_string(sampled->seed) + ")";
    return report;
}

namespace {

Dist slim_value_for_triple(const MetricGraph& g, VertexId x, VertexId y, VertexId z) {
    const std::array<std::pair<VertexId, VertexId>, 3> sides{
        {{x, y}, {y, z}, {x, z}}};
    std::array<std::vector<VertexId>, 3> paths;
    for (int s = 0; s < 3; ++s) paths[s] = g.geodesic(sides[s].first, sides[s].second);
    Dist worst = 0;
    for (int s = 0; s < 3; ++s) {
        const auto& a = paths[(s + 1) % 3];
        const auto& b = paths[(s + 2) % 3];
        for (VertexId p : paths[s]) {
            Dist best = std::numeric_limits<Dist>::max();
            auto row = g.distance_row(p);
            for (VertexId q : a) best = std::min(best, row[static_cast<size_t>(q)]);
            for (VertexId q : b) best = std::min(best, row[static_cast<size_t>(q)]);
            worst = std::max(worst, best);
        }
    }
    return worst;
}

} // namespace

DeltaReport delta_slim(const MetricGraph& g, std::optional<SampledMode> sampled, int cap) {
    const int n = g.vertex_count();
    DeltaReport report;
    Dist worst = 0;
    std::array<VertexId, 4> witness{-1, -1, -1, -1};

    auto consider = [&](VertexId x, VertexId y, VertexId z) {
        Dist v = slim_value_for_triple(g, x, y, z);
        if (v > worst) {
            worst = v;
            witness = {x, y, z, -1};
        }
    };

    if (!sampled) {
        if (n > cap)
            fail("CapExceeded", "exhaustive slim scan capped at " + std::to_string(cap) +
                                    " vertices; use sampled mode");
        for (VertexId x = 0; x < n; ++x)
            for (VertexId y = x + 1; y < n; ++y)
                for (VertexId z = y + 1; z < n; ++z) consider(x, y, z);
        report.method = "exhaustive";
    } else {
        std::mt19937_64 rng(sampled->seed);
        std::uniform_int_distribution<VertexId> pick(0, n - 1);
        for (std::uint64_t i = 0; i < sampled->count; ++i)
            consider(pick(rng), pick(rng), pick(rng));
        report.method = "sampled(" + std::to_string(sampled->count) + "," +
                        std::to_string(sampled->seed) + ")";
    }
    report.delta_qu = 2 * static_cast<QuarterUnits>(worst); // half-units -> quarter-units
    report.witness = witness;
    return report;
}

Rational quasigeodesic_constant(const MetricGraph& g, std::span<const VertexId> path) {
    if (!g.is_edge_path(path)) fail("NotAPath", "quasigeodesic constant needs an edge path");
    const size_t m = path.size();
    if (m <= 1) return Rational(0, 1);

    std::vector<Dist> cum(m, 0);
    for (size_t i = 1; i < m; ++i) cum[i] = cum[i - 1] + *g.edge_weight(path[i - 1], path[i]);

    Rational best(0, 1);
    for (size_t i = 0; i < m; ++i) {
        auto row = g.distance_row(path[i]);
        for (size_t j = i + 1; j < m; ++j) {
            const Dist len = cum[j] - cum[i];
            const Dist d = row[static_cast<size_t>(path[j])];
            best = max(best, Rational(len, static_cast<std::int64_t>(d) + 1));
        }
    }
    return best;
}

} // namespace conetree
