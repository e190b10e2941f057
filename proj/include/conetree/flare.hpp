#ifndef CONETREE_FLARE_HPP
#define CONETREE_FLARE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conetree/tree_of_spaces.hpp"

namespace conetree {

/// A ladder of geodesic columns over a tree geodesic of 2m edges.
/// Column i is a canonical geodesic inside the coned copy of the i-th
/// vertex space, stored as vertex ids of the assembled coned space.
struct Hallway {
    std::vector<std::string> tree_path;             // 2m+1 tree vertices
    std::vector<std::vector<VertexId>> columns;     // coned-space ids per column
    std::vector<Dist> column_lengths;               // half-units
    Dist rho_hat = 0;                               // measured thinness
    bool essential = true;
    bool cone_bounded = false;

    int half_length() const { return (static_cast<int>(tree_path.size()) - 1) / 2; }
    Dist girth() const { return column_lengths[column_lengths.size() / 2]; }
};

/// max(end column lengths) / middle column length; infinite when the
/// middle column is a single vertex.
Rational lambda_of(const Hallway& h);

struct HallwayParams {
    int m = 1;
    Dist rho = 8;
    int count = 64;
    std::uint64_t seed = 1;
    bool cone_bounded_only = false;
    int budget_factor = 64; // candidates tried per requested hallway
};

/// Randomized hallway construction: pick a 2m tree geodesic and a middle
/// column, propagate its endpoints outward through the edge maps (nearest
/// image vertex; cone-locus incidences in cone-bounded mode), join by
/// canonical geodesics, and keep candidates whose measured thinness stays
/// within rho. Hallways are essential by construction. Returns fewer than
/// `count` when the candidate budget runs out.
std::vector<Hallway> sample_hallways(const TreeOfSpaces& tos, const Assembly& assembly,
                                     const HallwayParams& params);

struct HallwaySummary {
    Rational lambda;
    Dist girth = 0;
    Dist rho_hat = 0;
    bool cone_bounded = false;
};

struct FlareReport {
    int m = 0;
    Dist rho = 0;
    std::uint64_t seed = 0;
    std::vector<HallwaySummary> hallways;

    // hallways-flare estimate: smallest girth above which every sampled
    // hallway has lambda > 1 (finite flag false when none exists)
    Dist girth_threshold = 0;
    bool girth_threshold_finite = false;
    Rational lambda_min_above_threshold;
    bool flare_verdict = false;

    // strict variant over the cone-bounded subsample, no girth filter
    Rational lambda_min_cone_bounded;
    bool has_cone_bounded = false;
    bool strict_verdict = false;
};

FlareReport flare_report(const std::vector<Hallway>& samples, int m, Dist rho,
                         std::uint64_t seed);

struct ConverseWitness {
    std::vector<VertexId> sigma1; // paths in the coned space X-hat
    std::vector<VertexId> sigma2;
    Rational k1; // quasigeodesic constants in the doubly coned space
    Rational k2;
    Dist discrepancy = 0; // compare_patterns over {C_1, C_2}
    Dist sigma1_double_length = 0; // length of the sigma_1 shortcut downstairs
};

/// The explicit witness pair against bounded penetration on a
/// parallel-cones instance: sigma_1 rides the first cone line, sigma_2
/// crosses over (a path of length <= D_0), rides the second, and crosses
/// back. Their quasigeodesic constants in the doubly electrified space
/// stay bounded while their penetration patterns diverge linearly.
ConverseWitness converse_witness(const TreeOfSpaces& tos, const Assembly& assembly);

} // namespace conetree

#endif
