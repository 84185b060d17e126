// looseham: generators, validators, exact searches, packing, linking plans
// and splitting experiments for loose Hamilton cycles in k-uniform
// hypergraphs.
//
// Exit codes: 0 success/found, 1 negative result, 2 budget exhausted,
// 3 usage error, 4 I/O or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "looseham/certificate.hpp"
#include "looseham/constructions.hpp"
#include "looseham/errors.hpp"
#include "looseham/hg_format.hpp"
#include "looseham/linking.hpp"
#include "looseham/packing.hpp"
#include "looseham/rng.hpp"
#include "looseham/search.hpp"
#include "looseham/splitting.hpp"

using nlohmann::json;
using namespace looseham;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 3;
constexpr int kExitIo = 4;

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open " + out_path + " for writing");
    out << payload.dump(2) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> result;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        result.push_back(std::stoi(item));
    }
    return result;
}

json histogram_json(const std::map<int, std::uint64_t>& hist) {
    json j = json::object();
    for (const auto& [deg, count] : hist) j[std::to_string(deg)] = count;
    return j;
}

ClusterSystem cluster_system_from_json(const json& j) {
    ClusterSystem cs;
    cs.k = j.at("k").get<int>();
    int max_cluster = -1;
    for (const json& g : j.at("groups")) {
        ClusterGroup group;
        group.class_sizes = g.at("classes").get<std::vector<int>>();
        group.clusters = g.at("clusters").get<std::vector<int>>();
        for (int c : group.clusters) max_cluster = std::max(max_cluster, c);
        cs.groups.push_back(std::move(group));
    }
    for (const json& e : j.at("reduced_edges")) {
        Edge edge = e.get<Edge>();
        for (int c : edge) max_cluster = std::max(max_cluster, c);
        cs.reduced_edges.push_back(std::move(edge));
    }
    cs.cluster_count = j.contains("clusters") ? j.at("clusters").get<int>() : max_cluster + 1;
    return cs;
}

json plan_to_json(const LinkPlan& plan, const SupplementaryGraph& sg) {
    json j;
    j["k"] = plan.k;
    j["walk"] = {{"vertices", plan.walk.vertices}, {"edges", plan.walk.edge_indices}};
    j["visit_counts"] = plan.visit_counts;
    json steps = json::array();
    for (const auto& step : plan.steps) {
        json s;
        s["edge"] = sg.edges[static_cast<std::size_t>(step.supplementary_edge)].members;
        s["witness"] = sg.edges[static_cast<std::size_t>(step.supplementary_edge)].witness;
        json residues = json::object(), consumed = json::object();
        for (const auto& [i, t] : step.residues) residues[std::to_string(i)] = t;
        for (const auto& [i, c] : step.consumed) consumed[std::to_string(i)] = c;
        s["residues"] = residues;
        s["consumed"] = consumed;
        steps.push_back(std::move(s));
    }
    j["steps"] = steps;
    j["initial_sizes"] = plan.initial_sizes;
    j["final_sizes"] = plan.final_sizes;
    j["leftover_sizes"] = plan.after_prepath_sizes;
    j["certified"] = {{"final_congruence", plan.final_congruence_ok},
                      {"leftover_congruence", plan.leftover_congruence_ok}};
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"loose Hamilton cycle toolkit for k-uniform hypergraphs"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "emit a hypergraph in text format");
    std::string gen_kind, gen_out, gen_labels, gen_sizes;
    int gen_k = 3, gen_n = 9;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 1;
    generate->add_option("kind", gen_kind, "extremal|complete|complete-partite|ak|random")->required();
    generate->add_option("--k", gen_k, "uniformity");
    generate->add_option("--n", gen_n, "vertex count");
    generate->add_option("--sizes", gen_sizes, "comma separated class sizes (complete-partite)");
    generate->add_option("--density", gen_density, "edge probability (random)");
    generate->add_option("--seed", gen_seed, "seed (random)");
    generate->add_option("-o,--out", gen_out, "output file (default stdout)");
    generate->add_option("--labels", gen_labels, "side-car JSON with part labels");

    // degrees
    auto* degrees = app.add_subcommand("degrees", "minimum codegree and histogram");
    std::string deg_graph, deg_out;
    degrees->add_option("--graph", deg_graph, "hypergraph file")->required();
    degrees->add_option("-o,--out", deg_out, "output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "validate a certificate against a graph");
    std::string chk_graph, chk_cert;
    bool chk_no_hamilton = false;
    check->add_option("--graph", chk_graph, "hypergraph file")->required();
    check->add_option("--cert", chk_cert, "certificate JSON file")->required();
    check->add_flag("--no-hamilton", chk_no_hamilton, "skip the spanning requirement for cycles");

    // find
    auto* find = app.add_subcommand("find", "exact searches");
    std::string find_what, find_graph, find_spec, find_out;
    std::uint64_t find_budget = 0, find_seed = 0;
    find->add_option("--what", find_what, "loose-hamilton|generic-hamilton|loose-path")->required();
    find->add_option("--graph", find_graph, "hypergraph file")->required();
    find->add_option("--spec", find_spec, "ConnectSpec JSON (loose-path)");
    find->add_option("--budget-nodes", find_budget, "node budget (0 = unlimited)");
    find->add_option("--seed", find_seed, "seed, echoed in output (searches are deterministic)");
    find->add_option("-o,--out", find_out, "output file (default stdout)");

    // count
    auto* count = app.add_subcommand("count", "exact loose Hamilton cycle count");
    std::string count_graph, count_out;
    std::uint64_t count_budget = 0;
    count->add_option("--graph", count_graph, "hypergraph file")->required();
    count->add_option("--budget-nodes", count_budget, "node budget (0 = unlimited)");
    count->add_option("-o,--out", count_out, "output file (default stdout)");

    // pack
    auto* pack = app.add_subcommand("pack", "greedy gadget packing");
    std::string pack_graph, pack_out;
    int pack_augment = 0;
    bool pack_connected = false;
    pack->add_option("--graph", pack_graph, "hypergraph file")->required();
    pack->add_option("--augment-rounds", pack_augment, "augmentation attempts after greedy");
    pack->add_flag("--connected", pack_connected, "keep only the largest-component copies");
    pack->add_option("-o,--out", pack_out, "output file (default stdout)");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "congruence plan for a cluster system");
    std::string plan_system, plan_out;
    int plan_from = 0, plan_to = 0;
    plan_cmd->add_option("--system", plan_system, "ClusterSystem JSON file")->required();
    plan_cmd->add_option("--from", plan_from, "walk start group");
    plan_cmd->add_option("--to", plan_to, "walk end group");
    plan_cmd->add_option("-o,--out", plan_out, "output file (default stdout)");

    // assemble
    auto* assemble = app.add_subcommand("assemble", "end-to-end demo on a synthetic instance");
    int asm_k = 3, asm_groups = 2, asm_n = 30;
    double asm_density = 1.0;
    std::uint64_t asm_seed = 1;
    std::string asm_out, asm_graph_out;
    assemble->add_option("--k", asm_k, "uniformity");
    assemble->add_option("--groups", asm_groups, "number of cluster groups");
    assemble->add_option("--n", asm_n, "host vertex count");
    assemble->add_option("--density", asm_density, "host density (1.0 = complete)");
    assemble->add_option("--seed", asm_seed, "instance seed");
    assemble->add_option("-o,--out", asm_out, "certificate output (default stdout)");
    assemble->add_option("--graph-out", asm_graph_out, "write the host graph here");

    // split-experiment
    auto* split = app.add_subcommand("split-experiment", "random splitting concentration runs");
    int sp_trials = 100;
    std::uint64_t sp_seed = 1;
    std::string sp_variant = "exact", sp_sizes = "150,150,150", sp_targets, sp_out;
    double sp_density = 0.2, sp_threshold = -1.0;
    split->add_option("--trials", sp_trials, "number of trials");
    split->add_option("--seed", sp_seed, "master seed");
    split->add_option("--variant", sp_variant, "exact|independent");
    split->add_option("--sizes", sp_sizes, "class sizes, comma separated");
    split->add_option("--targets", sp_targets, "subset sizes t_i (default: half of each class)");
    split->add_option("--density", sp_density, "host density");
    split->add_option("--threshold", sp_threshold, "failure threshold (default density/2)");
    split->add_option("-o,--out", sp_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            json config{{"kind", gen_kind}};
            json labels;
            std::string text;
            if (gen_kind == "extremal") {
                ExtremalGraph ex = extremal_construction(gen_n, gen_k);
                text = to_text(ex.graph);
                config["k"] = gen_k;
                config["n"] = gen_n;
                labels = {{"V1", ex.small_side}, {"V2", ex.large_side}};
            } else if (gen_kind == "complete") {
                text = to_text(KGraph::complete(gen_n, gen_k));
                config["k"] = gen_k;
                config["n"] = gen_n;
            } else if (gen_kind == "complete-partite") {
                std::vector<int> sizes = parse_int_list(gen_sizes);
                if (sizes.empty()) throw InvalidInput("--sizes required for complete-partite");
                std::vector<std::vector<Vertex>> classes;
                int next = 0;
                for (int s : sizes) {
                    std::vector<Vertex> cls;
                    for (int i = 0; i < s; ++i) cls.push_back(next++);
                    classes.push_back(std::move(cls));
                }
                text = to_text(KGraph::complete_kpartite(classes));
                config["sizes"] = sizes;
                json parts = json::object();
                for (std::size_t i = 0; i < classes.size(); ++i)
                    parts["V" + std::to_string(i + 1)] = classes[i];
                labels = parts;
            } else if (gen_kind == "ak") {
                Gadget gadget = build_ak(gen_k);
                text = to_text(gadget.graph);
                config["k"] = gen_k;
                json parts = json::object();
                for (std::size_t i = 0; i < gadget.parts.size(); ++i)
                    parts["U" + std::to_string(i)] = gadget.parts[i];
                labels = parts;
            } else if (gen_kind == "random") {
                SplitMix64 rng(derive_seed(gen_seed, 0xed9e5));
                std::vector<Edge> edges;
                if (gen_n >= gen_k) {
                    Edge cur(static_cast<std::size_t>(gen_k));
                    for (int i = 0; i < gen_k; ++i) cur[static_cast<std::size_t>(i)] = i;
                    while (true) {
                        if (rng.unit() < gen_density) edges.push_back(cur);
                        int i = gen_k - 1;
                        while (i >= 0 && cur[static_cast<std::size_t>(i)] == gen_n - gen_k + i) --i;
                        if (i < 0) break;
                        ++cur[static_cast<std::size_t>(i)];
                        for (int j = i + 1; j < gen_k; ++j)
                            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
                    }
                }
                text = to_text(KGraph::unchecked(gen_n, gen_k, std::move(edges)));
                config["k"] = gen_k;
                config["n"] = gen_n;
                config["density"] = gen_density;
                config["seed"] = gen_seed;
            } else {
                throw InvalidInput("unknown generate kind '" + gen_kind + "'");
            }
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out);
                if (!out) throw ParseError("cannot open " + gen_out + " for writing");
                out << text;
            }
            if (!gen_labels.empty() && !labels.is_null()) emit(labels, gen_labels);
            std::cerr << json{{"config", config}}.dump() << "\n";
            return kExitFound;
        }

        if (degrees->parsed()) {
            KGraph g = read_hypergraph_file(deg_graph);
            json j;
            j["config"] = {{"graph", deg_graph}};
            j["n"] = g.vertex_count();
            j["k"] = g.uniformity();
            j["edges"] = g.edge_count();
            j["min_codegree"] = g.min_codegree();
            j["histogram"] = histogram_json(g.codegree_histogram());
            emit(j, deg_out);
            return kExitFound;
        }

        if (check->parsed()) {
            KGraph g = read_hypergraph_file(chk_graph);
            Certificate cert = certificate_from_json(load_json(chk_cert));
            ValidationReport report = check_certificate(g, cert, !chk_no_hamilton);
            json j;
            j["config"] = {{"graph", chk_graph}, {"cert", chk_cert}, {"hamilton", !chk_no_hamilton}};
            j["valid"] = report.ok();
            if (!report.ok()) {
                json violations = json::array();
                for (const auto& v : report.violations)
                    violations.push_back({{"kind", to_string(v.kind)},
                                          {"index_a", v.index_a},
                                          {"index_b", v.index_b},
                                          {"detail", v.detail}});
                j["violations"] = violations;
            }
            std::cout << j.dump(2) << "\n";
            return report.ok() ? kExitFound : kExitNegative;
        }

        if (find->parsed()) {
            KGraph g = read_hypergraph_file(find_graph);
            SearchBudget budget;
            if (find_budget > 0) budget.max_nodes = find_budget;
            json config{{"what", find_what},
                        {"graph", find_graph},
                        {"seed", find_seed},
                        {"budget_nodes", find_budget}};
            SearchStatus status;
            json payload;
            if (find_what == "loose-hamilton") {
                auto r = find_loose_hamilton(g, budget);
                status = r.status;
                if (r.found()) payload = to_json(make_certificate(*r.value));
                config["nodes"] = r.nodes;
            } else if (find_what == "generic-hamilton") {
                auto r = find_generic_hamilton(g, budget);
                status = r.status;
                if (r.found()) payload = to_json(make_certificate(*r.value));
                config["nodes"] = r.nodes;
            } else if (find_what == "loose-path") {
                if (find_spec.empty()) throw InvalidInput("--spec required for loose-path");
                json sj = load_json(find_spec);
                ConnectSpec spec;
                spec.cluster_of = sj.at("class_map").get<std::vector<int>>();
                for (auto& [key, value] : sj.at("residues").items())
                    spec.residues[std::stoi(key)] = value.get<int>();
                if (sj.contains("forbidden")) spec.forbidden = sj.at("forbidden").get<std::vector<Vertex>>();
                spec.start_cluster = sj.at("start_cluster").get<int>();
                spec.end_cluster = sj.at("end_cluster").get<int>();
                if (sj.contains("max_vertices")) spec.max_vertices = sj.at("max_vertices").get<int>();
                if (sj.contains("endpoint_min_degree"))
                    for (auto& [key, value] : sj.at("endpoint_min_degree").items())
                        spec.endpoint_min_degree[std::stoi(key)] = value.get<double>();
                auto r = find_loose_path_constrained(g, spec, budget);
                status = r.status;
                if (r.found()) payload = to_json(make_certificate(*r.value));
                config["nodes"] = r.nodes;
            } else {
                throw InvalidInput("unknown --what '" + find_what + "'");
            }
            if (status == SearchStatus::found) {
                payload["config"] = config;
                emit(payload, find_out);
                return kExitFound;
            }
            emit(json{{"result", to_string(status)}, {"config", config}}, find_out);
            return status == SearchStatus::none ? kExitNegative : kExitBudget;
        }

        if (count->parsed()) {
            KGraph g = read_hypergraph_file(count_graph);
            SearchBudget budget;
            if (count_budget > 0) budget.max_nodes = count_budget;
            auto r = count_loose_hamilton(g, budget);
            json j;
            j["config"] = {{"graph", count_graph}, {"budget_nodes", count_budget}, {"nodes", r.nodes}};
            if (r.status == SearchStatus::budget_exhausted) {
                j["result"] = "budget_exhausted";
                emit(j, count_out);
                return kExitBudget;
            }
            j["result"] = "found";
            j["count"] = *r.value;
            emit(j, count_out);
            return kExitFound;
        }

        if (pack->parsed()) {
            KGraph g = read_hypergraph_file(pack_graph);
            Packing packing = greedy_pack(g);
            int improvements = 0;
            for (int round = 0; round < pack_augment; ++round) {
                auto grown = augment(g, packing);
                if (!grown) break;
                packing = std::move(*grown);
                ++improvements;
            }
            if (pack_connected) packing = connected_filter(g, packing);
            json copies = json::array();
            for (const GadgetCopy& copy : packing.copies) {
                json parts = json::object();
                for (std::size_t i = 0; i < copy.parts.size(); ++i)
                    parts["U" + std::to_string(i)] = copy.parts[i];
                copies.push_back({{"parts", parts}});
            }
            std::vector<Vertex> covered = packing.covered();
            std::vector<Vertex> uncovered;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (!std::binary_search(covered.begin(), covered.end(), v)) uncovered.push_back(v);
            json j;
            j["config"] = {{"graph", pack_graph},
                           {"augment_rounds", pack_augment},
                           {"connected", pack_connected},
                           {"improvements", improvements}};
            j["copies"] = copies;
            j["uncovered"] = uncovered;
            emit(j, pack_out);
            return kExitFound;
        }

        if (plan_cmd->parsed()) {
            ClusterSystem cs = cluster_system_from_json(load_json(plan_system));
            SupplementaryGraph sg = build_supplementary(cs);
            json j;
            j["config"] = {{"system", plan_system}, {"from", plan_from}, {"to", plan_to}};
            json sup = json::array();
            for (const auto& e : sg.edges) sup.push_back({{"members", e.members}, {"witness", e.witness}});
            j["supplementary"] = sup;
            j["connected"] = check_connected(sg);
            if (!j["connected"].get<bool>()) {
                emit(j, plan_out);
                return kExitNegative;
            }
            Walk walk = cover_walk(sg, plan_from, plan_to);
            long long total = 0;
            for (int i = 0; i < cs.group_count(); ++i) total += cs.group_size(i);
            const int mod = cs.k - 1;
            try {
                LinkPlan plan = plan_congruences(cs, sg, walk, static_cast<int>(((total % mod) + mod) % mod));
                j["plan"] = plan_to_json(plan, sg);
            } catch (const InvalidInput& e) {
                j["result"] = "infeasible";
                j["detail"] = e.what();
                emit(j, plan_out);
                return kExitNegative;
            }
            emit(j, plan_out);
            return kExitFound;
        }

        if (assemble->parsed()) {
            SyntheticInstance inst = make_synthetic(asm_k, asm_groups, asm_n, asm_density, asm_seed);
            if (!asm_graph_out.empty()) write_hypergraph_file(asm_graph_out, inst.host);
            PipelineResult r = assemble_pipeline(inst);
            json config{{"k", asm_k},
                        {"groups", asm_groups},
                        {"n", asm_n},
                        {"density", asm_density},
                        {"seed", asm_seed}};
            if (!r.ok()) {
                emit(json{{"result", "failure"},
                          {"stage", r.failed_stage},
                          {"detail", r.detail},
                          {"config", config}},
                     asm_out);
                return kExitNegative;
            }
            json payload = to_json(make_certificate(*r.cycle));
            payload["config"] = config;
            emit(payload, asm_out);
            return kExitFound;
        }

        if (split->parsed()) {
            std::vector<int> sizes = parse_int_list(sp_sizes);
            SplitConfig cfg;
            cfg.trials = sp_trials;
            cfg.seed = sp_seed;
            if (sp_variant == "exact") cfg.variant = SplitVariant::exact_size;
            else if (sp_variant == "independent") cfg.variant = SplitVariant::independent_inclusion;
            else throw InvalidInput("unknown --variant '" + sp_variant + "'");
            KGraph host = random_kpartite(sizes, sp_density, sp_seed, &cfg.classes);
            if (sp_targets.empty()) {
                for (int s : sizes) cfg.targets.push_back(s / 2);
            } else {
                cfg.targets = parse_int_list(sp_targets);
            }
            double threshold = sp_threshold;
            if (threshold < 0) threshold = kpartite_density(host, cfg.classes) / 2.0;
            SplitReport report = run_split_experiment(host, cfg, threshold);
            json j;
            j["config"] = {{"trials", sp_trials}, {"seed", sp_seed},     {"variant", sp_variant},
                           {"sizes", sizes},      {"targets", cfg.targets}, {"density", sp_density},
                           {"threshold", threshold}};
            j["host_density"] = report.host_density;
            j["failures"] = report.failures;
            j["failure_rate"] = report.failure_rate;
            j["min_density"] = report.min_density;
            j["max_density"] = report.max_density;
            j["mean_density"] = report.mean_density;
            j["size_deviation_flagged"] = report.size_deviation_flagged;
            emit(j, sp_out);
            return kExitFound;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
