#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "looseham/cycles.hpp"
#include "looseham/kgraph.hpp"

namespace looseham {

/// Abstract cluster bookkeeping: t' groups, each holding k classes hosted in
/// clusters of a reduced k-graph R on [m].
struct ClusterGroup {
    std::vector<int> class_sizes;  // |X^i_1| .. |X^i_k|
    std::vector<int> clusters;     // hosting cluster of each class, ids in [0, m)
};

struct ClusterSystem {
    int k = 0;
    int cluster_count = 0;  // m
    std::vector<ClusterGroup> groups;
    std::vector<Edge> reduced_edges;  // edges of R on [0, m)

    int group_count() const { return static_cast<int>(groups.size()); }
    long long group_size(int i) const;
};

/// Edge of the supplementary hypergraph: a set of >= 2 groups together with
/// the reduced-graph edge witnessing it.
struct SupplementaryEdge {
    std::vector<int> members;  // group ids, sorted
    std::vector<int> witness;  // reduced edge, lexicographically smallest
};

struct SupplementaryGraph {
    int group_count = 0;
    std::vector<SupplementaryEdge> edges;

    std::vector<std::vector<int>> member_lists() const;
};

SupplementaryGraph build_supplementary(const ClusterSystem& cs);
bool verify_witness(const ClusterSystem& cs, const SupplementaryEdge& e);
bool check_connected(const SupplementaryGraph& sg);

/// Walk from `from` to `to` in which every group appears as a waypoint;
/// length at most (t')^2. For a single group returns the empty-walk
/// convention (no edges, one waypoint). Throws InvalidInput when disconnected.
Walk cover_walk(const SupplementaryGraph& sg, int from, int to);

/// Congruence plan along a cover walk, all residues mod (k-1).
struct LinkPlan {
    int k = 0;
    Walk walk;
    std::vector<int> visit_counts;  // d_i = times group i is a waypoint
    struct Step {
        int supplementary_edge = -1;
        std::map<int, int> residues;  // group -> required |V(L_j) + X^i| mod (k-1)
        std::map<int, int> consumed;  // minimal representatives assumed by the plan
    };
    std::vector<Step> steps;
    std::vector<long long> initial_sizes;       // |X^i(0)|
    std::vector<long long> final_sizes;         // |X^i(l)| under minimal consumption
    std::vector<long long> after_prepath_sizes; // |Y^i| = |X^i(l)| - 2(k-2) d_i
    bool final_congruence_ok = false;           // |X^i(l)| = -d_i  (mod k-1)
    bool leftover_congruence_ok = false;        // |Y^i|   =  d_i  (mod k-1)
};

/// Requires initial_excess = -1 mod (k-1) and consistent with the group
/// sizes; the walk must visit every group.
LinkPlan plan_congruences(const ClusterSystem& cs, const SupplementaryGraph& sg, const Walk& walk,
                          int initial_excess);

/// Optional first two edges of the exceptional path: {x0} + A and B + {x1}
/// with |A| = |B| = k-1 and the overlap fixing the host's mod (k-1) residue.
struct AbSpec {
    std::vector<Vertex> a_set;
    std::vector<Vertex> b_set;
};

struct AbsorbOutcome {
    std::optional<LoosePath> path;  // relaxed first junction when AbSpec used
    int chunks_absorbed = 0;
    int chunks_total = 0;
    std::string detail;  // set when stuck

    bool ok() const { return path.has_value(); }
};

/// Greedy absorption of `stray` (chunked into (k-2)-sets) into a path whose
/// links come from `pool`. With `ab` present the path starts with the two
/// overlapping edges prescribed for hosts whose order is not 0 mod (k-1).
AbsorbOutcome absorb_exceptional(const KGraph& g, const std::vector<Vertex>& stray,
                                 const std::vector<Vertex>& pool, const std::optional<AbSpec>& ab);

struct PrepathExtension {
    Prepath prepath;
    std::vector<Vertex> possible_initial;  // x with {x, initial} + i_set an edge
    std::vector<Vertex> possible_final;
};

/// Chooses i_set/f_set (k-2 vertices from the end pools) maximizing the
/// possible initial/final vertex sets; ties broken lexicographically.
/// Throws InvalidInput when a pool is too small; returns nullopt when no
/// choice admits any possible endpoint.
std::optional<PrepathExtension> extend_to_prepath(const KGraph& g, const LoosePath& p,
                                                  const std::vector<Vertex>& initial_pool,
                                                  const std::vector<Vertex>& final_pool);

/// Synthetic instance: a dense host whose vertices are assigned to group
/// classes (or left stray for the exceptional path), plus the matching
/// cluster system with a chain-shaped reduced graph.
struct SyntheticInstance {
    KGraph host;
    ClusterSystem system;
    std::vector<int> group_of;  // per vertex, -1 = stray
    std::vector<int> class_of;  // per vertex, -1 = stray
    std::vector<Vertex> stray;
};

SyntheticInstance make_synthetic(int k, int groups, int n, double density, std::uint64_t seed);

struct PipelineResult {
    std::optional<LooseCycle> cycle;
    std::string failed_stage;  // empty on success
    std::string detail;
    LinkPlan plan;

    bool ok() const { return cycle.has_value(); }
};

/// End-to-end skeleton: exceptional path, prepaths, cover walk, connecting
/// paths with planned residues, per-group splitting of the leftovers, final
/// concatenation. Deterministic for a fixed instance.
PipelineResult assemble_pipeline(const SyntheticInstance& instance);

}  // namespace looseham
