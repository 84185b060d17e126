#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>

#include "looseham/cycles.hpp"
#include "looseham/kgraph.hpp"

namespace looseham {

struct SearchBudget {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    std::optional<std::chrono::milliseconds> time_limit;
    // searches here are sequential and expand branches in ascending order, so
    // results are reproducible; the flag is part of the contract
    bool deterministic = true;
};

enum class SearchStatus { found, none, budget_exhausted };

const char* to_string(SearchStatus s);

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<T> value;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::found; }
    bool exact_none() const { return status == SearchStatus::none; }
};

/// Exact loose-Hamiltonicity decider. "none" means the full search space was
/// exhausted. Oracles support n up to 256 vertices; they are meant for desk
/// scale instances far below that.
SearchResult<LooseCycle> find_loose_hamilton(const KGraph& g, const SearchBudget& budget = {});

/// Exact count of loose Hamilton cycles, as distinct covering edge sets
/// (rotations/reflections of the vertex order collapse).
SearchResult<std::uint64_t> count_loose_hamilton(const KGraph& g, const SearchBudget& budget = {});

/// Exact generic-Hamiltonicity decider: enumerates cyclic orderings with
/// order[0] = 0 and order[1] < order[n-1], and per ordering checks that every
/// consecutive pair lies under some k-window of the ordering that is an edge.
/// The reported cover is the set of all such windows.
SearchResult<GenericCycle> find_generic_hamilton(const KGraph& g, const SearchBudget& budget = {});

/// Constraints for the cluster-connecting loose path search.
struct ConnectSpec {
    std::vector<int> cluster_of;   // per vertex; -1 = unusable
    std::map<int, int> residues;   // cluster -> |V(L) + cluster| mod (k-1)
    std::vector<Vertex> forbidden;
    int start_cluster = -1;
    int end_cluster = -1;
    int max_vertices = 0;          // 0 = default 4k^3
    // endpoint degree thresholds; default per cluster is |H_c| / (2 |X_c|)
    // with H_c the sub-k-graph induced on the cluster's usable vertices
    std::map<int, double> endpoint_min_degree;
};

/// Searches designated-endpoint loose paths: initial vertex in start_cluster,
/// final vertex in end_cluster, both meeting their cluster's degree
/// threshold; per-cluster vertex counts match `residues` mod (k-1); at most
/// max_vertices vertices; no forbidden vertices. "none" is exact within the
/// vertex bound.
SearchResult<LoosePath> find_loose_path_constrained(const KGraph& g, const ConnectSpec& spec,
                                                    const SearchBudget& budget = {});

}  // namespace looseham
