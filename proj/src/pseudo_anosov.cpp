#include "conetree/pseudo_anosov.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace conetree {

LinearPA::LinearPA(std::array<std::int64_t, 4> entries) : m(entries) {
    if (det() != 1) fail("InvalidMatrix", "determinant must be 1, got " + std::to_string(det()));
    if (trace() <= 2)
        fail("InvalidMatrix", "trace must exceed 2 for a hyperbolic matrix, got " +
                                  std::to_string(trace()));
}

double LinearPA::stretch_factor() const {
    const double t = static_cast<double>(trace());
    return (t + std::sqrt(t * t - 4.0)) / 2.0;
}

namespace {

std::array<double, 2> unit(std::array<double, 2> v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1]);
    return {v[0] / n, v[1] / n};
}

std::array<double, 2> eigenvector(const std::array<std::int64_t, 4>& m, double eigenvalue) {
    const double a = static_cast<double>(m[0]);
    const double b = static_cast<double>(m[1]);
    const double c = static_cast<double>(m[2]);
    const double d = static_cast<double>(m[3]);
    if (std::abs(b) > 1e-12) return unit({b, eigenvalue - a});
    if (std::abs(c) > 1e-12) return unit({eigenvalue - d, c});
    return {1.0, 0.0}; // diagonal; excluded by the trace check
}

} // namespace

std::array<double, 2> LinearPA::unstable_direction() const {
    return eigenvector(m, stretch_factor());
}

std::array<double, 2> LinearPA::stable_direction() const {
    return eigenvector(m, 1.0 / stretch_factor());
}

std::array<double, 2> LinearPA::apply(const std::array<double, 2>& v) const {
    return {static_cast<double>(m[0]) * v[0] + static_cast<double>(m[1]) * v[1],
            static_cast<double>(m[2]) * v[0] + static_cast<double>(m[3]) * v[1]};
}

std::array<std::int64_t, 2> LinearPA::apply_mod(std::array<std::int64_t, 2> v,
                                                std::int64_t r) const {
    auto wrap = [r](std::int64_t x) { return ((x % r) + r) % r; };
    return {wrap(m[0] * v[0] + m[1] * v[1]), wrap(m[2] * v[0] + m[3] * v[1])};
}

LinearPA LinearPA::inverse() const {
    return LinearPA({m[3], -m[1], -m[2], m[0]});
}

bool LinearPA::shares_axis_with(const LinearPA& other, double tol) const {
    const std::array<std::array<double, 2>, 2> mine{unstable_direction(), stable_direction()};
    const std::array<std::array<double, 2>, 2> theirs{other.unstable_direction(),
                                                      other.stable_direction()};
    for (const auto& a : mine)
        for (const auto& b : theirs)
            if (std::abs(a[0] * b[0] + a[1] * b[1]) > 1.0 - tol) return true;
    return false;
}

FlatSegment stretch_components(const LinearPA& pa, const FlatSegment& seg, int n) {
    const double mu_n = std::pow(pa.stretch_factor(), n);
    return FlatSegment{seg.lam_us * mu_n, seg.lam_uu / mu_n};
}

StretchVerdict check_stretch(const LinearPA& pa, int n, double k,
                             std::span<const FlatSegment> segments) {
    if (k <= 1.0) fail("ParamOutOfRange", "stretch threshold k must exceed 1");
    const double mu = pa.stretch_factor();

    auto passes = [&](const FlatSegment& s, int iterate) {
        const double mu_n = std::pow(mu, iterate);
        // best of the forward iterate (stretches lam_us) and the backward
        // iterate (stretches lam_uu)
        return std::max(mu_n * s.lam_us, mu_n * s.lam_uu) >= k * s.electric_length();
    };

    StretchVerdict verdict;
    verdict.all = true;
    for (const auto& s : segments) {
        const bool ok = passes(s, n);
        verdict.per_segment.push_back(ok);
        verdict.all = verdict.all && ok;
    }
    for (int candidate = 0; candidate <= 256; ++candidate) {
        bool all = true;
        for (const auto& s : segments) all = all && passes(s, candidate);
        if (all) {
            verdict.minimal_n = candidate;
            return verdict;
        }
    }
    verdict.minimal_n = -1; // no iterate below the search cap works
    return verdict;
}

FlatSegment decompose(const LinearPA& pa, const std::array<double, 2>& v) {
    const auto u = pa.unstable_direction();
    const auto s = pa.stable_direction();
    const double det = u[0] * s[1] - u[1] * s[0];
    const double alpha = (v[0] * s[1] - v[1] * s[0]) / det;
    const double beta = (u[0] * v[1] - u[1] * v[0]) / det;
    return FlatSegment{std::abs(alpha), std::abs(beta)};
}

ThreeOfFourReport three_of_four(const LinearPA& phi, const LinearPA& psi, int n, double k,
                                std::span<const std::array<double, 2>> segments) {
    if (phi.shares_axis_with(psi)) fail("SharedAxes", "the two maps share an axis");
    if (k <= 1.0) fail("ParamOutOfRange", "stretch threshold k must exceed 1");

    auto count_passes = [&](const std::array<double, 2>& v, int iterate) {
        int passes = 0;
        for (const LinearPA* pa : {&phi, &psi}) {
            const FlatSegment seg = decompose(*pa, v);
            const double mu_n = std::pow(pa->stretch_factor(), iterate);
            const double len = seg.electric_length();
            if (mu_n * seg.lam_us + seg.lam_uu / mu_n >= k * len) ++passes; // forward
            if (seg.lam_us / mu_n + mu_n * seg.lam_uu >= k * len) ++passes; // backward
        }
        return passes;
    };

    ThreeOfFourReport report;
    report.all_pass_three = true;
    for (const auto& v : segments) {
        const int passes = count_passes(v, n);
        report.passes_per_segment.push_back(passes);
        report.all_pass_three = report.all_pass_three && passes >= 3;
    }
    for (int candidate = 1; candidate <= 256; ++candidate) {
        bool all = true;
        for (const auto& v : segments) all = all && count_passes(v, candidate) >= 3;
        if (all) {
            report.minimal_n = candidate;
            return report;
        }
    }
    report.minimal_n = -1;
    return report;
}

namespace {

std::string grid_name(std::int64_t x, std::int64_t y) {
    auto pad = [](std::int64_t v) {
        std::string s = std::to_string(v);
        return std::string(2 - std::min<size_t>(2, s.size()), '0') + s;
    };
    return "x" + pad(x) + "y" + pad(y);
}

} // namespace

TreeOfSpaces mapping_torus_line(const LinearPA& pa, int resolution, int length) {
    if (resolution < 4 || resolution > 99)
        fail("ParamOutOfRange", "grid resolution must be in [4, 99]");
    if (length < 2) fail("ParamOutOfRange", "line length must be >= 2");
    const std::int64_t r = resolution;

    // the matrix action must hit every grid vertex
    std::set<std::array<std::int64_t, 2>> image;
    for (std::int64_t x = 0; x < r; ++x)
        for (std::int64_t y = 0; y < r; ++y) image.insert(pa.apply_mod({x, y}, r));
    if (static_cast<std::int64_t>(image.size()) != r * r)
        fail("ResolutionTooCoarse", "matrix action is not surjective on the grid");

    // punctures: the fixed point plus the orbit of (1,0), which the matrix
    // permutes (it is invertible mod r, so every point is purely periodic);
    // a long orbit keeps the cone lines from running parallel
    std::set<std::array<std::int64_t, 2>> punctures{{0, 0}};
    const std::array<std::int64_t, 2> seed{1, 0};
    auto p = seed;
    do {
        punctures.insert(p);
        p = pa.apply_mod(p, r);
    } while (p != seed && punctures.size() <= 64);
    if (punctures.size() > 64) fail("ParamOutOfRange", "puncture orbit too long");

    // torus grid with the punctures as singleton horosphere-like sets
    GraphBuilder b;
    for (std::int64_t x = 0; x < r; ++x)
        for (std::int64_t y = 0; y < r; ++y) {
            b.add_edge(grid_name(x, y), grid_name((x + 1) % r, y), 2);
            b.add_edge(grid_name(x, y), grid_name(x, (y + 1) % r), 2);
        }
    MetricGraph grid = b.build();

    SubsetFamily family;
    family.properness_radius = 2;
    int index = 0;
    for (const auto& q : punctures) {
        SubsetFamily::Member m;
        m.name = "P" + std::to_string(index / 10) + std::to_string(index % 10);
        m.vertices = {grid.index(grid_name(q[0], q[1]))};
        family.members.push_back(std::move(m));
        ++index;
    }

    auto space_name = [](int i) {
        std::string s = std::to_string(i);
        return "s" + std::string(3 - std::min<size_t>(3, s.size()), '0') + s;
    };
    auto edge_name = [](int i) {
        std::string s = std::to_string(i);
        return "e" + std::string(3 - std::min<size_t>(3, s.size()), '0') + s;
    };

    TreeOfSpaces tos;
    for (int i = 0; i < length; ++i) tos.vertices.push_back({space_name(i), grid, family});
    for (int i = 0; i + 1 < length; ++i) {
        TreeOfSpaces::EdgeSpace es;
        es.name = edge_name(i);
        es.v0 = space_name(i);
        es.v1 = space_name(i + 1);
        es.space = grid;
        es.family = family;
        for (std::int64_t x = 0; x < r; ++x)
            for (std::int64_t y = 0; y < r; ++y) {
                const VertexId from = grid.index(grid_name(x, y));
                const auto img = pa.apply_mod({x, y}, r);
                es.map0[from] = from; // identity into the left copy
                es.map1[from] = grid.index(grid_name(img[0], img[1]));
            }
        tos.edges.push_back(std::move(es));
    }
    return tos;
}

} // namespace conetree
