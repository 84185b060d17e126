// python bindings for the main operations: graph core, validators,
// constructions, exact searches, packing, splitting experiments and the
// linking pipeline

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "looseham/certificate.hpp"
#include "looseham/constructions.hpp"
#include "looseham/errors.hpp"
#include "looseham/hg_format.hpp"
#include "looseham/linking.hpp"
#include "looseham/packing.hpp"
#include "looseham/search.hpp"
#include "looseham/splitting.hpp"

namespace py = pybind11;
using namespace looseham;

namespace {

std::string report_summary(const ValidationReport& r) { return r.summary(); }

py::dict search_result_to_dict(SearchStatus status, std::uint64_t nodes) {
    py::dict d;
    d["status"] = std::string(to_string(status));
    d["nodes"] = nodes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_looseham, m) {
    m.doc() = "loose Hamilton cycle toolkit for k-uniform hypergraphs";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<ParseError>(m, "FormatError", PyExc_ValueError);

    py::class_<KGraph>(m, "KGraph")
        .def(py::init<int, int, std::vector<Edge>>(), py::arg("n"), py::arg("k"), py::arg("edges"))
        .def_static("complete", &KGraph::complete, py::arg("n"), py::arg("k"))
        .def_static("complete_kpartite", &KGraph::complete_kpartite, py::arg("classes"))
        .def_property_readonly("n", &KGraph::vertex_count)
        .def_property_readonly("k", &KGraph::uniformity)
        .def_property_readonly("edges", [](const KGraph& g) { return g.edges(); })
        .def("contains", &KGraph::contains, py::arg("edge"))
        .def("neighbourhood", &KGraph::neighbourhood, py::arg("tuple"))
        .def("codegree", &KGraph::codegree, py::arg("tuple"))
        .def("vertex_degree", &KGraph::vertex_degree, py::arg("v"))
        .def("min_codegree", &KGraph::min_codegree)
        .def("codegree_histogram",
             [](const KGraph& g) {
                 py::dict d;
                 for (const auto& [deg, count] : g.codegree_histogram()) d[py::int_(deg)] = count;
                 return d;
             })
        .def("components", &KGraph::components)
        .def("restrict",
             [](const KGraph& g, const std::vector<Vertex>& keep) {
                 auto [sub, mapping] = g.restrict(keep);
                 return py::make_tuple(sub, mapping.to_sub, mapping.to_host);
             },
             py::arg("keep"))
        .def("__len__", &KGraph::edge_count)
        .def("__repr__", [](const KGraph& g) {
            std::ostringstream out;
            out << "KGraph(n=" << g.vertex_count() << ", k=" << g.uniformity() << ", edges="
                << g.edge_count() << ")";
            return out.str();
        });

    m.def("parse_hypergraph", [](const std::string& text) {
        std::istringstream in(text);
        return read_hypergraph(in);
    });
    m.def("hypergraph_text", &to_text);
    m.def("read_hypergraph_file", &read_hypergraph_file);
    m.def("write_hypergraph_file", &write_hypergraph_file);

    py::class_<Walk>(m, "Walk")
        .def_readonly("edge_indices", &Walk::edge_indices)
        .def_readonly("vertices", &Walk::vertices)
        .def("__len__", &Walk::length);
    m.def("find_walk", &find_walk, py::arg("graph"), py::arg("from_vertex"), py::arg("to_vertex"));

    py::class_<LoosePath>(m, "LoosePath")
        .def(py::init([](std::vector<Vertex> order, std::vector<Edge> edges) {
                 return LoosePath{std::move(order), std::move(edges)};
             }),
             py::arg("order"), py::arg("edges"))
        .def_readonly("order", &LoosePath::order)
        .def_readonly("edges", &LoosePath::edges);
    py::class_<LooseCycle>(m, "LooseCycle")
        .def_readonly("order", &LooseCycle::order)
        .def_readonly("cover", &LooseCycle::cover)
        .def_readonly("exceptional_pair", &LooseCycle::exceptional_pair);
    py::class_<GenericCycle>(m, "GenericCycle")
        .def(py::init([](std::vector<Vertex> order, std::vector<Edge> cover) {
                 return GenericCycle{std::move(order), std::move(cover)};
             }),
             py::arg("order"), py::arg("cover"))
        .def_readonly("order", &GenericCycle::order)
        .def_readonly("cover", &GenericCycle::cover);

    m.def("validate_loose_path", [](const KGraph& g, const LoosePath& p) {
        auto r = validate_loose_path(g, p);
        return py::make_tuple(r.ok(), report_summary(r));
    });
    m.def("validate_exceptional_path", [](const KGraph& g, const LoosePath& p) {
        auto r = validate_exceptional_path(g, p);
        return py::make_tuple(r.ok(), report_summary(r));
    });
    m.def("validate_loose_cycle", [](const KGraph& g, const LooseCycle& c, bool hamilton) {
        auto r = validate_loose_cycle(g, c, hamilton);
        return py::make_tuple(r.ok(), report_summary(r));
    }, py::arg("graph"), py::arg("cycle"), py::arg("hamilton") = true);
    m.def("validate_generic_cycle", [](const KGraph& g, const GenericCycle& c, bool hamilton) {
        auto r = validate_generic_cycle(g, c, hamilton);
        return py::make_tuple(r.ok(), report_summary(r));
    }, py::arg("graph"), py::arg("cycle"), py::arg("hamilton") = true);
    m.def("extremities", [](const LoosePath& p) {
        Extremities e = extremities(p);
        return py::make_tuple(e.initial, e.final_set, e.links);
    });

    m.def("certificate_json", [](const LooseCycle& c) { return to_json(make_certificate(c)).dump(2); });
    m.def("check_certificate_json", [](const KGraph& g, const std::string& text, bool hamilton) {
        Certificate cert = certificate_from_json(nlohmann::json::parse(text));
        auto r = check_certificate(g, cert, hamilton);
        return py::make_tuple(r.ok(), report_summary(r));
    }, py::arg("graph"), py::arg("json_text"), py::arg("hamilton") = true);

    // constructions
    m.def("build_string", &build_string, py::arg("length"), py::arg("counts"), py::arg("s"), py::arg("t"));
    m.def("build_loose_path_complete",
          [](const std::vector<std::vector<Vertex>>& classes, const std::vector<int>& counts, int s, int t) {
              return build_loose_path_complete(PartitionedVertexSet{classes}, counts, s, t);
          },
          py::arg("classes"), py::arg("counts"), py::arg("s"), py::arg("t"));
    m.def("extremal_construction", [](int n, int k) {
        ExtremalGraph ex = extremal_construction(n, k);
        return py::make_tuple(ex.graph, ex.small_side, ex.large_side);
    }, py::arg("n"), py::arg("k"));
    m.def("build_ak", [](int k) {
        Gadget g = build_ak(k);
        return py::make_tuple(g.graph, g.parts);
    }, py::arg("k"));

    // exact searches
    py::class_<SearchBudget>(m, "SearchBudget")
        .def(py::init<>())
        .def_readwrite("max_nodes", &SearchBudget::max_nodes)
        .def_readwrite("deterministic", &SearchBudget::deterministic);
    m.def("find_loose_hamilton", [](const KGraph& g, const SearchBudget& budget) {
        auto r = find_loose_hamilton(g, budget);
        py::dict d = search_result_to_dict(r.status, r.nodes);
        if (r.found()) d["cycle"] = *r.value;
        return d;
    }, py::arg("graph"), py::arg("budget") = SearchBudget{});
    m.def("find_generic_hamilton", [](const KGraph& g, const SearchBudget& budget) {
        auto r = find_generic_hamilton(g, budget);
        py::dict d = search_result_to_dict(r.status, r.nodes);
        if (r.found()) d["cycle"] = *r.value;
        return d;
    }, py::arg("graph"), py::arg("budget") = SearchBudget{});
    m.def("count_loose_hamilton", [](const KGraph& g, const SearchBudget& budget) {
        auto r = count_loose_hamilton(g, budget);
        py::dict d = search_result_to_dict(r.status, r.nodes);
        if (r.status == SearchStatus::found) d["count"] = *r.value;
        return d;
    }, py::arg("graph"), py::arg("budget") = SearchBudget{});
    py::class_<ConnectSpec>(m, "ConnectSpec")
        .def(py::init<>())
        .def_readwrite("cluster_of", &ConnectSpec::cluster_of)
        .def_readwrite("residues", &ConnectSpec::residues)
        .def_readwrite("forbidden", &ConnectSpec::forbidden)
        .def_readwrite("start_cluster", &ConnectSpec::start_cluster)
        .def_readwrite("end_cluster", &ConnectSpec::end_cluster)
        .def_readwrite("max_vertices", &ConnectSpec::max_vertices)
        .def_readwrite("endpoint_min_degree", &ConnectSpec::endpoint_min_degree);
    m.def("find_loose_path_constrained", [](const KGraph& g, const ConnectSpec& spec, const SearchBudget& budget) {
        auto r = find_loose_path_constrained(g, spec, budget);
        py::dict d = search_result_to_dict(r.status, r.nodes);
        if (r.found()) d["path"] = *r.value;
        return d;
    }, py::arg("graph"), py::arg("spec"), py::arg("budget") = SearchBudget{});

    // packing
    py::class_<GadgetCopy>(m, "GadgetCopy").def_readonly("parts", &GadgetCopy::parts);
    py::class_<Packing>(m, "Packing")
        .def_readonly("copies", &Packing::copies)
        .def("covered", &Packing::covered)
        .def("__len__", &Packing::size);
    m.def("greedy_pack", &greedy_pack, py::arg("graph"));
    m.def("augment", [](const KGraph& g, const Packing& p) -> py::object {
        auto grown = augment(g, p);
        if (!grown) return py::none();
        return py::cast(*grown);
    }, py::arg("graph"), py::arg("packing"));
    m.def("connected_filter", &connected_filter, py::arg("graph"), py::arg("packing"));
    m.def("validate_packing", [](const KGraph& g, const Packing& p) {
        auto r = validate_packing(g, p);
        return py::make_tuple(r.ok(), report_summary(r));
    });

    // splitting experiments
    m.def("azuma_bound", [](double t, const std::vector<double>& c) { return azuma_bound(t, c); },
          py::arg("t"), py::arg("increments"));
    m.def("kpartite_density", &kpartite_density, py::arg("graph"), py::arg("classes"));
    py::enum_<SplitVariant>(m, "SplitVariant")
        .value("exact_size", SplitVariant::exact_size)
        .value("independent_inclusion", SplitVariant::independent_inclusion);
    py::class_<SplitConfig>(m, "SplitConfig")
        .def(py::init<>())
        .def_readwrite("classes", &SplitConfig::classes)
        .def_readwrite("targets", &SplitConfig::targets)
        .def_readwrite("trials", &SplitConfig::trials)
        .def_readwrite("seed", &SplitConfig::seed)
        .def_readwrite("variant", &SplitConfig::variant);
    py::class_<SplitReport>(m, "SplitReport")
        .def_readonly("trials", &SplitReport::trials)
        .def_readonly("failures", &SplitReport::failures)
        .def_readonly("failure_rate", &SplitReport::failure_rate)
        .def_readonly("threshold", &SplitReport::threshold)
        .def_readonly("host_density", &SplitReport::host_density)
        .def_readonly("min_density", &SplitReport::min_density)
        .def_readonly("max_density", &SplitReport::max_density)
        .def_readonly("mean_density", &SplitReport::mean_density)
        .def_readonly("size_deviation_flagged", &SplitReport::size_deviation_flagged);
    m.def("run_split_experiment", &run_split_experiment, py::arg("host"), py::arg("config"),
          py::arg("threshold"));
    m.def("random_kpartite", [](const std::vector<int>& sizes, double density, std::uint64_t seed) {
        std::vector<std::vector<Vertex>> classes;
        KGraph host = random_kpartite(sizes, density, seed, &classes);
        return py::make_tuple(host, classes);
    }, py::arg("class_sizes"), py::arg("density"), py::arg("seed"));

    // linking pipeline
    py::class_<ClusterGroup>(m, "ClusterGroup")
        .def(py::init([](std::vector<int> sizes, std::vector<int> clusters) {
                 return ClusterGroup{std::move(sizes), std::move(clusters)};
             }),
             py::arg("class_sizes"), py::arg("clusters"))
        .def_readwrite("class_sizes", &ClusterGroup::class_sizes)
        .def_readwrite("clusters", &ClusterGroup::clusters);
    py::class_<ClusterSystem>(m, "ClusterSystem")
        .def(py::init([](int k, int clusters, std::vector<ClusterGroup> groups, std::vector<Edge> reduced) {
                 return ClusterSystem{k, clusters, std::move(groups), std::move(reduced)};
             }),
             py::arg("k"), py::arg("cluster_count"), py::arg("groups"), py::arg("reduced_edges"))
        .def_readwrite("k", &ClusterSystem::k)
        .def_readwrite("cluster_count", &ClusterSystem::cluster_count)
        .def_readwrite("groups", &ClusterSystem::groups)
        .def_readwrite("reduced_edges", &ClusterSystem::reduced_edges);
    py::class_<SupplementaryEdge>(m, "SupplementaryEdge")
        .def_readonly("members", &SupplementaryEdge::members)
        .def_readonly("witness", &SupplementaryEdge::witness);
    py::class_<SupplementaryGraph>(m, "SupplementaryGraph")
        .def_readonly("group_count", &SupplementaryGraph::group_count)
        .def_readonly("edges", &SupplementaryGraph::edges);
    m.def("build_supplementary", &build_supplementary, py::arg("system"));
    m.def("check_connected", &check_connected, py::arg("supplementary"));
    m.def("cover_walk", &cover_walk, py::arg("supplementary"), py::arg("from_group"), py::arg("to_group"));
    py::class_<LinkPlan::Step>(m, "LinkPlanStep")
        .def_readonly("supplementary_edge", &LinkPlan::Step::supplementary_edge)
        .def_readonly("residues", &LinkPlan::Step::residues)
        .def_readonly("consumed", &LinkPlan::Step::consumed);
    py::class_<LinkPlan>(m, "LinkPlan")
        .def_readonly("k", &LinkPlan::k)
        .def_readonly("walk", &LinkPlan::walk)
        .def_readonly("visit_counts", &LinkPlan::visit_counts)
        .def_readonly("steps", &LinkPlan::steps)
        .def_readonly("initial_sizes", &LinkPlan::initial_sizes)
        .def_readonly("final_sizes", &LinkPlan::final_sizes)
        .def_readonly("after_prepath_sizes", &LinkPlan::after_prepath_sizes)
        .def_readonly("final_congruence_ok", &LinkPlan::final_congruence_ok)
        .def_readonly("leftover_congruence_ok", &LinkPlan::leftover_congruence_ok);
    m.def("plan_congruences", &plan_congruences, py::arg("system"), py::arg("supplementary"),
          py::arg("walk"), py::arg("initial_excess"));
    py::class_<SyntheticInstance>(m, "SyntheticInstance")
        .def_readonly("host", &SyntheticInstance::host)
        .def_readonly("system", &SyntheticInstance::system)
        .def_readonly("group_of", &SyntheticInstance::group_of)
        .def_readonly("class_of", &SyntheticInstance::class_of)
        .def_readonly("stray", &SyntheticInstance::stray);
    m.def("make_synthetic", &make_synthetic, py::arg("k"), py::arg("groups"), py::arg("n"),
          py::arg("density"), py::arg("seed"));
    m.def("assemble_pipeline", [](const SyntheticInstance& instance) {
        PipelineResult r = assemble_pipeline(instance);
        py::dict d;
        d["ok"] = r.ok();
        if (r.ok()) d["cycle"] = *r.cycle;
        else {
            d["stage"] = r.failed_stage;
            d["detail"] = r.detail;
        }
        return d;
    }, py::arg("instance"));
}
