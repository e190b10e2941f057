#include "doctest.h"

#include <cmath>
#include <random>

#include "conetree/pseudo_anosov.hpp"

using namespace conetree;

namespace {
const double kGolden = (3.0 + std::sqrt(5.0)) / 2.0;
}

TEST_CASE("linear model invariants") {
    LinearPA phi({2, 1, 1, 1});
    CHECK(phi.stretch_factor() == doctest::Approx(kGolden).epsilon(1e-12));
    CHECK(phi.stretch_factor() * (1.0 / phi.stretch_factor()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi.det() == 1);

    // symmetric matrix: orthogonal eigendirections
    auto u = phi.unstable_direction();
    auto s = phi.stable_direction();
    CHECK(std::abs(u[0] * s[0] + u[1] * s[1]) < 1e-9);

    CHECK_THROWS_WITH_AS(LinearPA({1, 0, 0, 1}), doctest::Contains("InvalidMatrix"), Error);
    CHECK_THROWS_WITH_AS(LinearPA({2, 0, 0, 1}), doctest::Contains("InvalidMatrix"), Error);

    CHECK(phi.inverse().trace() == phi.trace());
}

TEST_CASE("stretch components") {
    LinearPA phi({2, 1, 1, 1});
    FlatSegment seg{1.0, 1.0};

    auto id = stretch_components(phi, seg, 0);
    CHECK(id.lam_us == doctest::Approx(1.0));
    CHECK(id.lam_uu == doctest::Approx(1.0));

    auto fwd = stretch_components(phi, seg, 1);
    CHECK(fwd.lam_us == doctest::Approx(kGolden).epsilon(1e-12));
    CHECK(fwd.lam_uu == doctest::Approx(1.0 / kGolden).epsilon(1e-12));

    auto bwd = stretch_components(phi, seg, -1);
    CHECK(bwd.lam_us == doctest::Approx(fwd.lam_uu).epsilon(1e-12));
    CHECK(bwd.lam_uu == doctest::Approx(fwd.lam_us).epsilon(1e-12));
}

TEST_CASE("iterates preserve the component product") {
    LinearPA phi({2, 1, 1, 1});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        FlatSegment seg{pick(rng), pick(rng)};
        for (int n : {-3, -1, 1, 2, 5}) {
            auto out = stretch_components(phi, seg, n);
            CHECK(out.lam_us * out.lam_uu ==
                  doctest::Approx(seg.lam_us * seg.lam_uu).epsilon(1e-9));
        }
    }
}

TEST_CASE("flat segments obey the half inequality") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> pick(0.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        FlatSegment seg{pick(rng), pick(rng)};
        CHECK(std::max(seg.lam_us, seg.lam_uu) >= 0.5 * seg.electric_length() - 1e-12);
    }
}

TEST_CASE("check_stretch") {
    LinearPA phi({2, 1, 1, 1});

    // mu^n >= 2k forces a pass for any segment
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> pick(0.0, 3.0);
    std::vector<FlatSegment> sample;
    for (int i = 0; i < 300; ++i) sample.push_back({pick(rng), pick(rng)});
    const double k = 2.0;
    const int n = 3; // mu^3 ~ 17.94 >= 4
    CHECK(std::pow(phi.stretch_factor(), n) >= 2 * k);
    CHECK(check_stretch(phi, n, k, sample).all);

    // k = 1.3 already holds at n = 1 for the balanced segment
    std::vector<FlatSegment> balanced{{1.0, 1.0}};
    CHECK(check_stretch(phi, 1, 1.3, balanced).all);

    // a segment on one axis passes through the other iterate
    std::vector<FlatSegment> axis{{0.0, 1.0}};
    auto verdict = check_stretch(phi, 1, 2.0, axis);
    CHECK(verdict.all); // backward iterate stretches lam_uu by mu ~ 2.618
}

TEST_CASE("stretch verdicts are monotone in n for two-sided segments") {
    LinearPA phi({2, 1, 1, 1});
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pick(0.05, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FlatSegment> seg{{pick(rng), pick(rng)}};
        bool held = false;
        for (int n = 0; n <= 12; ++n) {
            const bool now = check_stretch(phi, n, 1.5, seg).all;
            if (held) CHECK(now);
            held = held || now;
        }
        CHECK(held); // large iterates always stretch
    }
}

TEST_CASE("three of four") {
    LinearPA phi({2, 1, 1, 1});
    LinearPA psi({1, 1, 1, 2});
    CHECK_FALSE(phi.shares_axis_with(psi));
    CHECK_THROWS_WITH_AS(three_of_four(phi, phi, 3, 2.0, {}), doctest::Contains("SharedAxes"),
                         Error);

    // on phi's stable axis the forward iterate fails, the rest pass
    std::vector<std::array<double, 2>> stable_axis{phi.stable_direction()};
    auto on_axis = three_of_four(phi, psi, 4, 2.0, stable_axis);
    CHECK(on_axis.passes_per_segment[0] == 3);
    CHECK(on_axis.all_pass_three);

    // generic segments pass all four for large n
    std::vector<std::array<double, 2>> generic{{1.0, 0.3}, {-0.4, 1.0}, {2.0, -1.0}};
    auto g = three_of_four(phi, psi, 6, 2.0, generic);
    for (int count : g.passes_per_segment) CHECK(count == 4);
    CHECK(g.minimal_n >= 1);
}

TEST_CASE("mapping torus line validates and has matched cone lines") {
    auto tos = mapping_torus_line(LinearPA({2, 1, 1, 1}), 8, 3);
    auto report = validate(tos, /*delta_cap=*/80);
    CHECK(report.strictly_type_preserving());
    CHECK_FALSE(report.max_distortion.is_infinite());

    auto assembly = assemble_coned(tos);
    auto locus = cone_locus(tos, assembly);
    CHECK(locus.is_forest);
    // punctures: fixed point + one periodic orbit; each component spans the line
    for (const auto& comp : locus.components)
        CHECK(comp.tree_image.size() == 3);

    CHECK_THROWS_WITH_AS(mapping_torus_line(LinearPA({2, 1, 1, 1}), 3, 3),
                         doctest::Contains("ParamOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(mapping_torus_line(LinearPA({2, 1, 1, 1}), 8, 1),
                         doctest::Contains("ParamOutOfRange"), Error);
}

TEST_CASE("mapping torus gluings distort by the matrix norm only") {
    auto tos = mapping_torus_line(LinearPA({2, 1, 1, 1}), 8, 2);
    auto report = validate(tos, /*delta_cap=*/80);
    CHECK(report.max_distortion >= Rational(2, 1));
    CHECK(report.max_distortion <= Rational(8, 1));
}
