#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conetree/flare.hpp"
#include "conetree/generators.hpp"
#include "conetree/pipelines.hpp"
#include "conetree/pseudo_anosov.hpp"
#include "conetree/quasiconvex.hpp"

namespace py = pybind11;
using namespace conetree;

namespace {

std::vector<std::string> path_names(const MetricGraph& g, const std::vector<VertexId>& path) {
    std::vector<std::string> out;
    for (VertexId v : path) out.push_back(g.name(v));
    return out;
}

std::vector<VertexId> names_to_ids(const MetricGraph& g, const std::vector<std::string>& names) {
    std::vector<VertexId> out;
    for (const auto& n : names) out.push_back(g.index(n));
    return out;
}

} // namespace

PYBIND11_MODULE(_conetree, m) {
    m.doc() = "coarse-geometry workbench: electric spaces, trees of spaces, flare conditions";

    py::register_exception<Error>(m, "ConetreeError");

    py::class_<MetricGraph>(m, "MetricGraph")
        .def_static("from_edges",
                    [](const std::vector<std::tuple<std::string, std::string, Weight>>& edges) {
                        std::vector<EdgeSpec> list;
                        for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
                        return MetricGraph::from_edge_list(list);
                    },
                    py::arg("edges"), "Build from (u, v, weight-in-half-units) triples.")
        .def_static("from_text", [](const std::string& text) { return parse_graph_text(text).graph; })
        .def_property_readonly("vertex_count", &MetricGraph::vertex_count)
        .def_property_readonly("edge_count", &MetricGraph::edge_count)
        .def("vertices", &MetricGraph::names)
        .def("distance",
             [](const MetricGraph& g, const std::string& u, const std::string& v) {
                 return g.distance(g.index(u), g.index(v));
             })
        .def("geodesic",
             [](const MetricGraph& g, const std::string& u, const std::string& v) {
                 return path_names(g, g.geodesic(g.index(u), g.index(v)));
             })
        .def("neighborhood",
             [](const MetricGraph& g, const std::vector<std::string>& seeds, Dist r) {
                 auto ids = names_to_ids(g, seeds);
                 return path_names(g, g.neighborhood(ids, r));
             })
        .def("diameter", &MetricGraph::diameter)
        .def("__repr__", [](const MetricGraph& g) {
            return "<MetricGraph n=" + std::to_string(g.vertex_count()) + " e=" +
                   std::to_string(g.edge_count()) + ">";
        });

    py::class_<DeltaReport>(m, "DeltaReport")
        .def_readonly("delta_qu", &DeltaReport::delta_qu)
        .def_readonly("method", &DeltaReport::method)
        .def("__repr__", [](const DeltaReport& r) { return "<" + r.str() + ">"; });

    m.def("delta_four_point",
          [](const MetricGraph& g, std::optional<std::pair<std::uint64_t, std::uint64_t>> sampled,
             int cap, int jobs) {
              std::optional<SampledMode> mode;
              if (sampled) mode = SampledMode{sampled->first, sampled->second};
              return delta_four_point(g, mode, cap, jobs);
          },
          py::arg("graph"), py::arg("sampled") = std::nullopt, py::arg("cap") = 150,
          py::arg("jobs") = 1);
    m.def("delta_slim", [](const MetricGraph& g, int cap) { return delta_slim(g, std::nullopt, cap); },
          py::arg("graph"), py::arg("cap") = 150);
    m.def("gromov_product_qu", [](const MetricGraph& g, const std::string& x, const std::string& y,
                                  const std::string& w) {
        return gromov_product_qu(g, g.index(x), g.index(y), g.index(w));
    });
    m.def("quasigeodesic_constant",
          [](const MetricGraph& g, const std::vector<std::string>& path) {
              return quasigeodesic_constant(g, names_to_ids(g, path)).value();
          });

    py::class_<ConedSpace>(m, "ConedSpace")
        .def_property_readonly("graph", &ConedSpace::graph)
        .def_property_readonly("base", &ConedSpace::base)
        .def_property_readonly("empty_family", &ConedSpace::empty_family_flag)
        .def("electric_geodesic", [](const ConedSpace& cs, const std::string& u,
                                     const std::string& v) {
            return path_names(cs.graph(),
                              electric_geodesic(cs, cs.base().index(u), cs.base().index(v)));
        });

    m.def("cone_off",
          [](const MetricGraph& g, const std::map<std::string, std::vector<std::string>>& subsets) {
              SubsetFamily fam;
              for (const auto& [name, verts] : subsets) {
                  SubsetFamily::Member member{name, names_to_ids(g, verts)};
                  std::sort(member.vertices.begin(), member.vertices.end());
                  fam.members.push_back(std::move(member));
              }
              std::sort(fam.members.begin(), fam.members.end(),
                        [](const auto& a, const auto& b) { return a.name < b.name; });
              return cone_off(g, fam);
          },
          py::arg("graph"), py::arg("subsets"));

    m.def("project",
          [](const MetricGraph& g, const std::vector<std::string>& target, const std::string& x) {
              auto ids = names_to_ids(g, target);
              std::sort(ids.begin(), ids.end());
              return path_names(g, project(g, ids, g.index(x)));
          },
          py::arg("graph"), py::arg("target"), py::arg("vertex"));
    m.def("quasiconvexity_constant",
          [](const MetricGraph& g, const std::vector<std::string>& subset, bool all_geodesics) {
              auto ids = names_to_ids(g, subset);
              std::sort(ids.begin(), ids.end());
              return quasiconvexity_constant(g, ids, all_geodesics);
          },
          py::arg("graph"), py::arg("subset"), py::arg("all_geodesics") = false);
    m.def("separation_and_coboundedness",
          [](const MetricGraph& g, const std::map<std::string, std::vector<std::string>>& subsets) {
              SubsetFamily fam;
              for (const auto& [name, verts] : subsets) {
                  SubsetFamily::Member member{name, names_to_ids(g, verts)};
                  std::sort(member.vertices.begin(), member.vertices.end());
                  fam.members.push_back(std::move(member));
              }
              auto r = separation_and_coboundedness(g, fam);
              py::dict out;
              out["separation"] = r.separation;
              out["cobounded_diameter"] = r.cobounded_diameter;
              out["pair"] = r.worst_pair;
              out["defined"] = r.coboundedness_defined;
              return out;
          },
          py::arg("graph"), py::arg("subsets"));

    m.def("generate", [](const std::string& name, const std::vector<long>& params) {
        auto inst = gen::generate(name, params);
        if (inst.graph) return py::cast(inst.graph->graph);
        return py::cast(format_tos_text(*inst.tos));
    });
    m.def("generate_text", [](const std::string& name, const std::vector<long>& params) {
        auto inst = gen::generate(name, params);
        if (inst.graph) return format_graph_text(inst.graph->graph, inst.graph->family);
        return format_tos_text(*inst.tos);
    });

    py::class_<LinearPA>(m, "LinearPA")
        .def(py::init([](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
            return LinearPA({a, b, c, d});
        }))
        .def_property_readonly("stretch_factor", &LinearPA::stretch_factor)
        .def_property_readonly("trace", &LinearPA::trace);

    m.def("check_stretch",
          [](const LinearPA& pa, int n, double k,
             const std::vector<std::pair<double, double>>& segments) {
              std::vector<FlatSegment> segs;
              for (const auto& [us, uu] : segments) segs.push_back({us, uu});
              auto v = check_stretch(pa, n, k, segs);
              return py::make_tuple(v.all, v.minimal_n, v.per_segment);
          });
    m.def("three_of_four", [](const LinearPA& phi, const LinearPA& psi, int n, double k,
                              const std::vector<std::array<double, 2>>& segments) {
        auto r = three_of_four(phi, psi, n, k, segments);
        return py::make_tuple(r.all_pass_three, r.minimal_n, r.passes_per_segment);
    });

    m.def("verify_converse", [](int n, int d0) {
        auto v = verify_converse(n, d0, {});
        py::dict out;
        out["k1"] = v.k1.value();
        out["k2"] = v.k2.value();
        out["discrepancy_hu"] = v.discrepancy;
        out["pass"] = v.pass;
        return out;
    });
    m.def("verify_combination_text", [](const std::string& tos_text, Dist rho, std::uint64_t seed) {
        auto tos = parse_tos_text(tos_text);
        CombinationOptions opt;
        opt.rho = rho;
        opt.seed = seed;
        auto v = verify_combination(tos, opt);
        py::dict out;
        out["pass"] = v.pass;
        out["type_preserving"] = v.type_preserving;
        out["strict_flare"] = v.strict_flare;
        out["strict_m"] = v.strict_m;
        out["xhat_delta_qu"] = v.xhat_delta;
        out["lines"] = v.lines;
        return out;
    }, py::arg("tos_text"), py::arg("rho") = 14, py::arg("seed") = 1);

    m.attr("__version__") = "0.1.0";
}
