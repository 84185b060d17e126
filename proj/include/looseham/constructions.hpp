#pragma once

#include <vector>

#include "looseham/cycles.hpp"
#include "looseham/kgraph.hpp"

namespace looseham {

/// Characters are 0-based indices in [0, k). Requires 0 <= counts[i] < len/2,
/// sum(counts) == len, and s, t in [0, k). The result has no two equal
/// adjacent characters, does not start with s nor end with t, and uses
/// character i exactly counts[i] times. Deterministic.
std::vector<int> build_string(int len, const std::vector<int>& counts, int s, int t);

struct PartitionedVertexSet {
    std::vector<std::vector<Vertex>> classes;  // disjoint vertex id sets
};

/// Loose path in the complete k-partite k-graph on `classes` using exactly
/// use_counts[i] vertices of class i, starting in class s and ending in class
/// t. With n := (sum(use_counts) - 1) / (k - 1) requires n integral,
/// n/2 + 1 <= use_counts[i] <= n, and use_counts[i] <= |classes[i]|.
/// Vertices are consumed in ascending id order per class.
LoosePath build_loose_path_complete(const PartitionedVertexSet& classes,
                                    const std::vector<int>& use_counts, int s, int t);

/// returns the class index of each vertex used by build_loose_path_complete
std::vector<int> class_of_map(const PartitionedVertexSet& classes, int n_total);

struct ExtremalGraph {
    KGraph graph;
    std::vector<Vertex> small_side;  // V_1 = {0, ..., ceil(n/(2k-2)) - 2}
    std::vector<Vertex> large_side;
};

/// k-graph on n vertices whose edges are exactly the k-sets meeting V_1,
/// |V_1| = ceil(n/(2k-2)) - 1. Its minimum codegree equals |V_1| and it has
/// no Hamilton cycle of any kind. Requires n >= 2k-1, k >= 3.
ExtremalGraph extremal_construction(int n, int k);

struct Gadget {
    KGraph graph;
    std::vector<std::vector<Vertex>> parts;  // parts[0..2k-3], each of size k-1
};

/// The packing gadget: 2k-2 parts of size k-1; edges are part_i + {x} for
/// i >= 1 and x in part_0. 2(k-1)^2 vertices, (2k-3)(k-1) edges.
Gadget build_ak(int k);

}  // namespace looseham
