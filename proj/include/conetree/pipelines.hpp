#ifndef CONETREE_PIPELINES_HPP
#define CONETREE_PIPELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conetree/flare.hpp"
#include "conetree/quasiconvex.hpp"
#include "conetree/tree_of_spaces.hpp"

namespace conetree {

struct CombinationOptions {
    Dist eps = 2;
    int exhaustive_cap = 150;
    std::uint64_t seed = 1;
    int jobs = 1;
    Dist rho = 12;               // hallway thinness bound, half-units
    int hallway_count = 48;
    int max_m = 8;               // strict-flare search range
    std::uint64_t delta_samples = 400000;
    int pattern_pairs = 12;      // penetration-similarity sample
};

/// Measured verdict for the combination pipeline: the five hypotheses and
/// the conclusion, each mapped to concrete numbers.
struct CombinationVerdict {
    // (1) qi-embedded, (2) strictly type-preserving, (3) qi-preserving electrocution
    Rational map_distortion;
    bool qi_embedded = false;
    bool type_preserving = false;
    Rational coned_map_distortion;
    bool qi_preserving_electrocution = false;
    QuarterUnits per_space_delta_max = 0;

    // (4) hallways flare, (5) cone-bounded hallways strictly flare
    bool hallways_flare = false;
    Dist girth_threshold = 0;
    int flare_m = 0;
    bool strict_flare = false;
    Rational strict_lambda_min;
    int strict_m = 0;
    size_t cone_bounded_samples = 0;

    // conclusion: the coned total space is hyperbolic and the cone lines
    // are mutually cobounded; patterns of surgered electric quasigeodesics
    // track geodesic patterns
    QuarterUnits xhat_delta = 0;
    std::string xhat_delta_method;
    size_t xhat_vertices = 0;
    Dist subtree_separation = 0;
    Dist subtree_cobounded_diameter = 0;
    Dist pattern_discrepancy = 0;
    Dist subtree_quasiconvexity = 0; // deepest excursion of cone-pair geodesics

    bool pass = false;
    std::vector<std::string> lines; // key=value report lines, in stage order
};

CombinationVerdict verify_combination(const TreeOfSpaces& tos, const CombinationOptions& opt);

struct ConverseOptions {
    Dist eps = 2;
    std::uint64_t seed = 1;
};

struct ConverseVerdict {
    int n = 0;
    int d0 = 0;
    Rational k1;
    Rational k2;
    Dist discrepancy = 0;
    Dist sigma1_double_length = 0;
    bool discrepancy_grows = false; // discrepancy >= N/2 half-units
    bool pass = false;
    std::vector<std::string> lines;
};

ConverseVerdict verify_converse(int n, int d0, const ConverseOptions& opt);

} // namespace conetree

#endif
