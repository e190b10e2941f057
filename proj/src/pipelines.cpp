#include "conetree/pipelines.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "conetree/generators.hpp"

namespace conetree {

namespace {

void put(std::vector<std::string>& lines, const std::string& key, const std::string& value) {
    lines.push_back(key + "=" + value);
}

void put(std::vector<std::string>& lines, const std::string& key, std::int64_t value) {
    put(lines, key, std::to_string(value));
}

} // namespace

CombinationVerdict verify_combination(const TreeOfSpaces& tos, const CombinationOptions& opt) {
    CombinationVerdict v;
    auto& lines = v.lines;

    // hypotheses (1)-(3): measured on the validation report
    Assembly assembly = assemble_coned(tos); // throws on type violations
    const ValidationReport& val = assembly.validation;
    v.map_distortion = val.max_distortion;
    v.qi_embedded = !val.max_distortion.is_infinite();
    v.type_preserving = val.strictly_type_preserving();
    v.coned_map_distortion = val.max_coned_distortion;
    v.qi_preserving_electrocution = !val.max_coned_distortion.is_infinite();
    v.per_space_delta_max = val.max_coned_delta;
    put(lines, "hyp1_qi_embedded", v.qi_embedded ? 1 : 0);
    put(lines, "hyp1_map_distortion", v.map_distortion.str());
    put(lines, "hyp2_type_preserving", v.type_preserving ? 1 : 0);
    put(lines, "hyp3_qi_preserving_electrocution", v.qi_preserving_electrocution ? 1 : 0);
    put(lines, "hyp3_coned_map_distortion", v.coned_map_distortion.str());
    put(lines, "per_space_coned_delta_qu", v.per_space_delta_max);

    auto locus = cone_locus(tos, assembly);
    put(lines, "cone_locus_components", static_cast<std::int64_t>(locus.components.size()));

    // hypothesis (4): hallways flare, generic sampling at the largest m the
    // tree affords (capped)
    const int tree_diam = tos.tree_diameter_edges();
    const int m_max = std::min(opt.max_m, tree_diam / 2);
    if (m_max >= 1) {
        HallwayParams hp;
        hp.m = m_max;
        hp.rho = opt.rho;
        hp.count = opt.hallway_count;
        hp.seed = opt.seed;
        auto samples = sample_hallways(tos, assembly, hp);
        if (!samples.empty()) {
            auto report = flare_report(samples, hp.m, hp.rho, hp.seed);
            v.hallways_flare = report.flare_verdict;
            v.girth_threshold = report.girth_threshold;
            v.flare_m = hp.m;
            put(lines, "hyp4_hallways_flare", v.hallways_flare ? 1 : 0);
            put(lines, "hyp4_m", v.flare_m);
            put(lines, "hyp4_girth_threshold",
                report.girth_threshold_finite ? std::to_string(report.girth_threshold)
                                              : std::string("inf"));
            put(lines, "hyp4_sample", static_cast<std::int64_t>(samples.size()));
        } else {
            put(lines, "hyp4_hallways_flare", "no_sample");
        }

        // hypothesis (5): strict flare over cone-bounded hallways, smallest m
        bool cone_bounded_possible = true;
        for (int m = 1; m <= m_max && cone_bounded_possible; ++m) {
            HallwayParams cp = hp;
            cp.m = m;
            cp.cone_bounded_only = true;
            std::vector<Hallway> cone_samples;
            try {
                cone_samples = sample_hallways(tos, assembly, cp);
            } catch (const Error& e) {
                // fewer than two cone points per space: no cone-bounded
                // hallway exists at all
                if (e.kind() != "ParamOutOfRange") throw;
                cone_bounded_possible = false;
                break;
            }
            if (cone_samples.empty()) continue;
            auto report = flare_report(cone_samples, m, opt.rho, opt.seed);
            v.cone_bounded_samples = cone_samples.size();
            if (report.strict_verdict) {
                v.strict_flare = true;
                v.strict_lambda_min = report.lambda_min_cone_bounded;
                v.strict_m = m;
                break;
            }
        }
        put(lines, "hyp5_strict_flare",
            cone_bounded_possible ? std::to_string(v.strict_flare ? 1 : 0)
                                  : std::string("no_cone_bounded_hallways"));
        put(lines, "hyp5_m", v.strict_m);
        put(lines, "hyp5_lambda_min", v.strict_lambda_min.str());
        put(lines, "hyp5_sample", static_cast<std::int64_t>(v.cone_bounded_samples));
    }

    // conclusion: delta of the coned total space
    const MetricGraph& xhat = assembly.coned.graph();
    v.xhat_vertices = static_cast<size_t>(xhat.vertex_count());
    DeltaReport delta;
    if (xhat.vertex_count() <= opt.exhaustive_cap)
        delta = delta_four_point(xhat, std::nullopt, opt.exhaustive_cap, opt.jobs);
    else
        delta = delta_four_point(xhat, SampledMode{opt.delta_samples, opt.seed});
    v.xhat_delta = delta.delta_qu;
    v.xhat_delta_method = delta.method;
    put(lines, "xhat_vertices", static_cast<std::int64_t>(v.xhat_vertices));
    put(lines, "xhat_delta_qu", v.xhat_delta);
    put(lines, "xhat_delta_method", v.xhat_delta_method);

    // conclusion: mutual coboundedness and quasiconvexity of the cone lines
    SubsetFamily subtrees;
    for (size_t i = 0; i < locus.components.size(); ++i) {
        SubsetFamily::Member m;
        m.name = "T" + std::to_string(i);
        m.vertices = locus.components[i].subtree_coned_ids;
        subtrees.members.push_back(std::move(m));
    }
    if (subtrees.members.size() >= 2) {
        auto cb = separation_and_coboundedness(xhat, subtrees);
        v.subtree_separation = cb.separation;
        v.subtree_cobounded_diameter = cb.cobounded_diameter;
        put(lines, "talpha_separation", v.subtree_separation);
        put(lines, "talpha_cobounded_D", v.subtree_cobounded_diameter);
    }
    for (const auto& comp : locus.components) {
        if (comp.subtree_coned_ids.size() < 2) continue;
        v.subtree_quasiconvexity = std::max(
            v.subtree_quasiconvexity,
            quasiconvexity_constant(xhat, comp.subtree_coned_ids));
    }
    put(lines, "talpha_quasiconvexity", v.subtree_quasiconvexity);

    // conclusion: bounded-penetration spot check against the horosphere
    // columns; surgered electric quasigeodesics vs plain geodesics
    SubsetFamily columns;
    std::map<std::string, std::string> attribution;
    for (size_t i = 0; i < locus.components.size(); ++i) {
        SubsetFamily::Member m;
        m.name = "C" + std::to_string(i);
        m.vertices = locus.components[i].horospheres_total_ids;
        columns.members.push_back(std::move(m));
        for (const auto& cp : locus.components[i].cone_points)
            attribution[cp] = "C" + std::to_string(i);
    }
    if (!columns.members.empty()) {
        ConedSpace view = ConedSpace::from_parts(xhat, assembly.total, columns, attribution);
        std::mt19937_64 rng(opt.seed);
        Dist worst = 0;
        const int n_total = assembly.total.vertex_count();
        for (int p = 0; p < opt.pattern_pairs; ++p) {
            const VertexId u = static_cast<VertexId>(rng() % static_cast<std::uint64_t>(n_total));
            const VertexId w = static_cast<VertexId>(rng() % static_cast<std::uint64_t>(n_total));
            if (u == w) continue;
            auto beta = electric_geodesic(view, u, w);
            auto surgered = remove_backtracking(view, beta, opt.eps);
            auto gamma_base = assembly.total.geodesic(u, w);
            std::vector<VertexId> gamma;
            for (VertexId b : gamma_base) gamma.push_back(view.to_graph(b));
            auto pb = penetration_pattern(view, surgered.path, opt.eps);
            auto pg = penetration_pattern(view, gamma, opt.eps);
            worst = std::max(worst, compare_patterns(view, pb, pg).max_discrepancy);
        }
        v.pattern_discrepancy = worst;
        put(lines, "pattern_discrepancy", v.pattern_discrepancy);
    }

    v.pass = v.qi_embedded && v.type_preserving && v.qi_preserving_electrocution &&
             v.hallways_flare && v.strict_flare;
    put(lines, "pass", v.pass ? 1 : 0);
    return v;
}

ConverseVerdict verify_converse(int n, int d0, const ConverseOptions& opt) {
    (void)opt;
    ConverseVerdict v;
    v.n = n;
    v.d0 = d0;
    TreeOfSpaces tos = gen::parallel_cones(n, d0);
    Assembly assembly = assemble_coned(tos);
    ConverseWitness witness = converse_witness(tos, assembly);
    v.k1 = witness.k1;
    v.k2 = witness.k2;
    v.discrepancy = witness.discrepancy;
    v.sigma1_double_length = witness.sigma1_double_length;
    v.discrepancy_grows = v.discrepancy >= n; // >= N/2 in half-units, with margin
    v.pass = v.discrepancy_grows && !v.k1.is_infinite() && !v.k2.is_infinite();
    put(v.lines, "N", n);
    put(v.lines, "D0", d0);
    put(v.lines, "k1", v.k1.str());
    put(v.lines, "k2", v.k2.str());
    put(v.lines, "discrepancy_hu", v.discrepancy);
    put(v.lines, "sigma1_double_length_hu", v.sigma1_double_length);
    put(v.lines, "pass", v.pass ? 1 : 0);
    return v;
}

} // namespace conetree
