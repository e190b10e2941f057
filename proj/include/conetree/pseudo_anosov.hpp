#ifndef CONETREE_PSEUDO_ANOSOV_HPP
#define CONETREE_PSEUDO_ANOSOV_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "conetree/tree_of_spaces.hpp"

namespace conetree {

/// Linear model of a pseudo-Anosov map: an SL(2,Z) matrix with trace > 2.
/// The stretch factor is the top eigenvalue; the unit eigenvectors give
/// the unstable (stretched) and stable (contracted) directions.
struct LinearPA {
    std::array<std::int64_t, 4> m{2, 1, 1, 1}; // row-major a,b,c,d

    LinearPA() = default;
    explicit LinearPA(std::array<std::int64_t, 4> entries);

    std::int64_t det() const { return m[0] * m[3] - m[1] * m[2]; }
    std::int64_t trace() const { return m[0] + m[3]; }
    double stretch_factor() const; // mu > 1
    std::array<double, 2> unstable_direction() const; // unit vector
    std::array<double, 2> stable_direction() const;

    std::array<double, 2> apply(const std::array<double, 2>& v) const;
    std::array<std::int64_t, 2> apply_mod(std::array<std::int64_t, 2> v, std::int64_t r) const;
    LinearPA inverse() const;

    bool shares_axis_with(const LinearPA& other, double tol = 1e-9) const;
};

/// Lengths of a flat segment's projections: lam_us scales by mu^n under
/// the n-th iterate, lam_uu by mu^-n. The segment's electric length is
/// the l1 combination lam_us + lam_uu.
struct FlatSegment {
    double lam_us = 0;
    double lam_uu = 0;
    double electric_length() const { return lam_us + lam_uu; }
};

FlatSegment stretch_components(const LinearPA& pa, const FlatSegment& seg, int n);

struct StretchVerdict {
    std::vector<bool> per_segment;
    bool all = false;
    int minimal_n = 0; // smallest n >= 1 making every segment pass
};

/// True for a segment when max(mu^n * lam_us, mu^n * lam_uu) >= k * (lam_us
/// + lam_uu), i.e. the better of the forward and backward n-th iterates
/// stretches it by at least k.
StretchVerdict check_stretch(const LinearPA& pa, int n, double k,
                             std::span<const FlatSegment> segments);

struct ThreeOfFourReport {
    std::vector<int> passes_per_segment; // how many of the four iterates stretch
    bool all_pass_three = false;
    int minimal_n = 0; // smallest uniform n over the sample
};

/// For each segment (a Euclidean vector, decomposed in each map's
/// eigenbasis) counts how many of the four maps phi^n, phi^-n, psi^n,
/// psi^-n stretch its flat length by >= k; requires distinct axis pairs.
ThreeOfFourReport three_of_four(const LinearPA& phi, const LinearPA& psi, int n, double k,
                                std::span<const std::array<double, 2>> segments);

/// Decomposition of a Euclidean vector into a FlatSegment relative to a
/// map's eigenbasis (component lengths along unstable/stable directions).
FlatSegment decompose(const LinearPA& pa, const std::array<double, 2>& v);

/// Discrete mapping-torus surrogate: a line of r x r torus grids glued by
/// the matrix action mod r, with an orbit of marked punctures (singleton
/// horosphere-like sets) that the matrix permutes, so the gluings are
/// strictly type-preserving by construction.
TreeOfSpaces mapping_torus_line(const LinearPA& pa, int resolution, int length);

} // namespace conetree

#endif
