#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "conetree/flare.hpp"
#include "conetree/generators.hpp"
#include "conetree/pipelines.hpp"
#include "conetree/pseudo_anosov.hpp"
#include "conetree/quasiconvex.hpp"

using namespace conetree;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) fail("IoError", "cannot write '" + path + "'");
    out << content;
}

std::string hex_digest(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void emit_meta(std::ostream& os, std::uint64_t seed, const std::string& input) {
    os << "meta tool=conetree version=" << kVersion << " seed=" << seed
       << " input_digest=" << hex_digest(content_digest(input)) << "\n";
}

std::vector<VertexId> parse_path(const MetricGraph& g, const std::string& csv) {
    std::vector<VertexId> path;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) path.push_back(g.index(item));
    return path;
}

std::array<std::int64_t, 4> parse_matrix(const std::string& csv) {
    std::array<std::int64_t, 4> m{};
    std::istringstream in(csv);
    std::string item;
    for (auto& entry : m) {
        if (!std::getline(in, item, ',')) fail("ParseError", "matrix needs 4 entries a,b,c,d");
        entry = std::stoll(item);
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-geometry workbench: electric spaces, trees of spaces, flare conditions"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand

    Dist eps = 2;
    int cap = 150;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string output;
    app.add_option("--eps", eps, "neighborhood radius in half-units")->capture_default_str();
    app.add_option("--exhaustive-cap", cap, "vertex cap for exhaustive scans")->capture_default_str();
    app.add_option("--seed", seed, "seed for sampled modes")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for the quadruple scan")->capture_default_str();
    app.add_option("-o,--output", output, "output path (default stdout)");

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate a named instance");
    std::string gen_name;
    std::vector<long> gen_params;
    cmd_gen->add_option("name", gen_name)->required();
    cmd_gen->add_option("params", gen_params, "numeric parameters");

    // delta
    auto* cmd_delta = app.add_subcommand("delta", "hyperbolicity constant of a graph");
    std::string delta_file;
    bool delta_slim_mode = false;
    std::uint64_t delta_samples = 0;
    cmd_delta->add_option("file", delta_file)->required();
    cmd_delta->add_flag("--slim", delta_slim_mode, "slim-triangle variant");
    cmd_delta->add_option("--sampled", delta_samples, "sample count (0 = exhaustive)");

    // electrify
    auto* cmd_electrify = app.add_subcommand("electrify", "cone off the subsets of a graph");
    std::string electrify_file;
    cmd_electrify->add_option("file", electrify_file)->required();

    // patterns
    auto* cmd_patterns = app.add_subcommand("patterns", "penetration pattern of a path");
    std::string patterns_file, patterns_path, patterns_from, patterns_to;
    cmd_patterns->add_option("file", patterns_file)->required();
    cmd_patterns->add_option("--path", patterns_path, "comma-separated vertex names");
    cmd_patterns->add_option("--from", patterns_from, "electric geodesic start");
    cmd_patterns->add_option("--to", patterns_to, "electric geodesic end");

    // project
    auto* cmd_project = app.add_subcommand("project", "nearest-point projection onto a subset");
    std::string project_file, project_subset, project_vertex;
    cmd_project->add_option("file", project_file)->required();
    cmd_project->add_option("--subset", project_subset)->required();
    cmd_project->add_option("--vertex", project_vertex)->required();

    // cobounded
    auto* cmd_cobounded = app.add_subcommand("cobounded", "separation and mutual coboundedness");
    std::string cobounded_file;
    cmd_cobounded->add_option("file", cobounded_file)->required();

    // tos
    auto* cmd_tos = app.add_subcommand("tos", "tree-of-spaces operations");
    std::string tos_action, tos_file;
    cmd_tos->add_option("action", tos_action, "validate | assemble | conelocus")->required();
    cmd_tos->add_option("file", tos_file)->required();

    // flare
    auto* cmd_flare = app.add_subcommand("flare", "sample hallways and report flare");
    std::string flare_file;
    int flare_m = 1, flare_count = 32;
    Dist flare_rho = 12;
    bool flare_cone_bounded = false;
    cmd_flare->add_option("file", flare_file)->required();
    cmd_flare->add_option("--m", flare_m)->capture_default_str();
    cmd_flare->add_option("--rho", flare_rho)->capture_default_str();
    cmd_flare->add_option("--count", flare_count)->capture_default_str();
    cmd_flare->add_flag("--cone-bounded", flare_cone_bounded);

    // stretch
    auto* cmd_stretch = app.add_subcommand("stretch", "pseudo-Anosov stretch numerics");
    std::string stretch_matrix = "2,1,1,1", stretch_segments;
    int stretch_n = 1;
    double stretch_k = 2.0;
    cmd_stretch->add_option("--matrix", stretch_matrix, "a,b,c,d")->capture_default_str();
    cmd_stretch->add_option("--n", stretch_n)->capture_default_str();
    cmd_stretch->add_option("--k", stretch_k)->capture_default_str();
    cmd_stretch->add_option("--segments", stretch_segments, "file of 's <lam_us> <lam_uu>' lines");

    // verify-combination
    auto* cmd_comb = app.add_subcommand("verify-combination", "combination pipeline: hypotheses and conclusion, measured");
    std::string comb_file;
    Dist comb_rho = 12;
    int comb_count = 48, comb_max_m = 8;
    cmd_comb->add_option("file", comb_file, "tree-of-spaces file")->required();
    cmd_comb->add_option("--rho", comb_rho)->capture_default_str();
    cmd_comb->add_option("--count", comb_count)->capture_default_str();
    cmd_comb->add_option("--max-m", comb_max_m)->capture_default_str();

    // verify-converse
    auto* cmd_conv = app.add_subcommand("verify-converse", "converse pipeline: witness paths against bounded penetration");
    int conv_n = 40, conv_d0 = 4;
    cmd_conv->add_option("N", conv_n)->required();
    cmd_conv->add_option("D0", conv_d0)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad usage
    }

    try {
        std::ostringstream report;

        if (cmd_gen->parsed()) {
            auto instance = gen::generate(gen_name, gen_params);
            std::string text = instance.graph ? format_graph_text(instance.graph->graph,
                                                                  instance.graph->family)
                                              : format_tos_text(*instance.tos);
            write_output(output, text);
            return 0;
        }

        if (cmd_delta->parsed()) {
            const std::string text = read_file(delta_file);
            auto parsed = parse_graph_text(text);
            emit_meta(report, seed, text);
            std::optional<SampledMode> mode;
            if (delta_samples > 0) mode = SampledMode{delta_samples, seed};
            DeltaReport d = delta_slim_mode ? delta_slim(parsed.graph, mode, cap)
                                            : delta_four_point(parsed.graph, mode, cap, jobs);
            std::string witness;
            for (VertexId v : d.witness)
                if (v >= 0) witness += (witness.empty() ? "" : ",") + parsed.graph.name(v);
            report << "delta_qu=" << d.delta_qu << " method=" << d.method
                   << " witness=" << (witness.empty() ? "-" : witness) << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_electrify->parsed()) {
            const std::string text = read_file(electrify_file);
            auto parsed = parse_graph_text(text);
            ConedSpace cs = cone_off(parsed.graph, parsed.family);
            SubsetFamily family_on_coned = parsed.family.renamed(parsed.graph, cs.graph());
            write_output(output, format_graph_text(cs.graph(), family_on_coned));
            return 0;
        }

        if (cmd_patterns->parsed()) {
            const std::string text = read_file(patterns_file);
            auto parsed = parse_graph_text(text);
            ConedSpace cs = cone_off(parsed.graph, parsed.family);
            std::vector<VertexId> path;
            if (!patterns_path.empty()) {
                path = parse_path(cs.graph(), patterns_path);
            } else if (!patterns_from.empty() && !patterns_to.empty()) {
                path = electric_geodesic(cs, parsed.graph.index(patterns_from),
                                         parsed.graph.index(patterns_to));
            } else {
                fail("ParseError", "patterns needs --path or --from/--to");
            }
            auto pattern = penetration_pattern(cs, path, eps);
            emit_meta(report, seed, text);
            std::set<std::string> seen;
            for (const auto& v : pattern.visits) {
                const bool backtrack = !seen.insert(v.subset).second;
                report << "visit " << v.subset << " "
                       << (v.entry >= 0 ? cs.graph().name(v.entry) : "-") << " "
                       << (v.exit >= 0 ? cs.graph().name(v.exit) : "-") << " "
                       << (backtrack ? 1 : 0) << "\n";
            }
            report << "visits=" << pattern.visits.size()
                   << " backtracking=" << pattern.violations.size() << " eps=" << eps << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_project->parsed()) {
            const std::string text = read_file(project_file);
            auto parsed = parse_graph_text(text);
            const auto& member = parsed.family.member(project_subset);
            auto image = project(parsed.graph, member.vertices, parsed.graph.index(project_vertex));
            emit_meta(report, seed, text);
            report << "projection=";
            for (size_t i = 0; i < image.size(); ++i)
                report << (i ? "," : "") << parsed.graph.name(image[i]);
            report << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_cobounded->parsed()) {
            const std::string text = read_file(cobounded_file);
            auto parsed = parse_graph_text(text);
            emit_meta(report, seed, text);
            report << separation_and_coboundedness(parsed.graph, parsed.family).str() << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_tos->parsed()) {
            const std::string text = read_file(tos_file);
            TreeOfSpaces tos = parse_tos_text(text);
            emit_meta(report, seed, text);
            if (tos_action == "validate") {
                auto val = validate(tos);
                report << "type_preserving=" << (val.strictly_type_preserving() ? 1 : 0)
                       << " max_distortion=" << val.max_distortion.str()
                       << " max_coned_distortion=" << val.max_coned_distortion.str()
                       << " per_space_delta_qu=" << val.max_coned_delta << "\n";
                for (const auto& tv : val.type_violations)
                    report << "violation edge=" << tv.edge << " side=" << tv.side
                           << " subset=" << tv.vertex_subset << "\n";
            } else if (tos_action == "assemble") {
                Assembly assembly = assemble_coned(tos);
                SubsetFamily family = assembly.coned.family().renamed(assembly.total,
                                                                      assembly.coned.graph());
                write_output(output, format_graph_text(assembly.coned.graph(), family));
                return 0;
            } else if (tos_action == "conelocus") {
                Assembly assembly = assemble_coned(tos);
                auto locus = cone_locus(tos, assembly);
                report << "components=" << locus.components.size()
                       << " forest=" << (locus.is_forest ? 1 : 0)
                       << " embeds=" << (locus.embeds_in_tree ? 1 : 0) << "\n";
                for (size_t i = 0; i < locus.components.size(); ++i) {
                    report << "component id=" << i
                           << " cones=" << locus.components[i].cone_points.size()
                           << " tree_vertices=" << locus.components[i].tree_image.size() << "\n";
                }
            } else {
                fail("ParseError", "unknown tos action '" + tos_action + "'");
            }
            write_output(output, report.str());
            return 0;
        }

        if (cmd_flare->parsed()) {
            const std::string text = read_file(flare_file);
            TreeOfSpaces tos = parse_tos_text(text);
            Assembly assembly = assemble_coned(tos);
            HallwayParams hp;
            hp.m = flare_m;
            hp.rho = flare_rho;
            hp.count = flare_count;
            hp.seed = seed;
            hp.cone_bounded_only = flare_cone_bounded;
            auto samples = sample_hallways(tos, assembly, hp);
            emit_meta(report, seed, text);
            auto fr = flare_report(samples, hp.m, hp.rho, hp.seed);
            for (const auto& h : fr.hallways)
                report << "lambda=" << h.lambda.str() << " girth=" << h.girth
                       << " thin=" << h.rho_hat << " cb=" << (h.cone_bounded ? 1 : 0) << "\n";
            report << "m=" << fr.m << " rho=" << fr.rho << " sample=" << fr.hallways.size()
                   << " flare=" << (fr.flare_verdict ? 1 : 0)
                   << " girth_threshold=" << (fr.girth_threshold_finite
                                                  ? std::to_string(fr.girth_threshold)
                                                  : std::string("inf"))
                   << " strict=" << (fr.strict_verdict ? 1 : 0)
                   << " lambda_min_cb=" << fr.lambda_min_cone_bounded.str() << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_stretch->parsed()) {
            LinearPA pa(parse_matrix(stretch_matrix));
            std::vector<FlatSegment> segments{{1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {0.3, 0.7}};
            std::string input = stretch_matrix;
            if (!stretch_segments.empty()) {
                segments.clear();
                input = read_file(stretch_segments);
                std::istringstream in(input);
                std::string tag;
                double a, b;
                while (in >> tag >> a >> b)
                    if (tag == "s") segments.push_back(FlatSegment{a, b});
            }
            emit_meta(report, seed, input);
            auto verdict = check_stretch(pa, stretch_n, stretch_k, segments);
            report << "mu=" << pa.stretch_factor() << " n=" << stretch_n << " k=" << stretch_k
                   << " all_pass=" << (verdict.all ? 1 : 0) << " minimal_n=" << verdict.minimal_n
                   << "\n";
            for (size_t i = 0; i < segments.size(); ++i)
                report << "segment lam_us=" << segments[i].lam_us
                       << " lam_uu=" << segments[i].lam_uu
                       << " pass=" << (verdict.per_segment[i] ? 1 : 0) << "\n";
            write_output(output, report.str());
            return 0;
        }

        if (cmd_comb->parsed()) {
            const std::string text = read_file(comb_file);
            TreeOfSpaces tos = parse_tos_text(text);
            CombinationOptions opt;
            opt.eps = eps;
            opt.exhaustive_cap = cap;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.rho = comb_rho;
            opt.hallway_count = comb_count;
            opt.max_m = comb_max_m;
            emit_meta(report, seed, text);
            auto verdict = verify_combination(tos, opt);
            for (const auto& line : verdict.lines) report << line << "\n";
            write_output(output, report.str());
            return verdict.pass ? 0 : 1;
        }

        if (cmd_conv->parsed()) {
            ConverseOptions opt;
            opt.eps = eps;
            opt.seed = seed;
            emit_meta(report, seed, std::to_string(conv_n) + "," + std::to_string(conv_d0));
            auto verdict = verify_converse(conv_n, conv_d0, opt);
            for (const auto& line : verdict.lines) report << line << "\n";
            write_output(output, report.str());
            return verdict.pass ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
