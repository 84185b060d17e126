#pragma once

#include <optional>
#include <span>
#include <vector>

#include "looseham/constructions.hpp"
#include "looseham/cycles.hpp"
#include "looseham/kgraph.hpp"

namespace looseham {

/// One embedded gadget copy: images of the parts U_0..U_{2k-3}, each sorted.
struct GadgetCopy {
    std::vector<std::vector<Vertex>> parts;
};

struct Packing {
    int k = 0;
    std::vector<GadgetCopy> copies;

    std::vector<Vertex> covered() const;
    std::size_t size() const { return copies.size(); }
};

/// pairwise disjoint images whose gadget edges all lie in the host
ValidationReport validate_packing(const KGraph& g, const Packing& p);

/// Lexicographically smallest embedding of the gadget into the allowed
/// vertices, or nullopt. The non-hub parts are kept in ascending order, which
/// quotients their interchangeability.
std::optional<GadgetCopy> embed_gadget(const KGraph& g, std::span<const Vertex> allowed);

/// Repeatedly embeds gadget copies into the uncovered vertices until none
/// fits. The result is greedily maximal by construction.
Packing greedy_pack(const KGraph& g);

struct AugmentBudget {
    int max_disjoint_sets = 5000;  // size cap for the uncovered (k-1)-set family
};

/// One augmentation step: either a free gadget copy among the uncovered
/// vertices, or the exchange that trades k-1 packed copies for k new ones
/// built from uncovered (k-1)-sets sharing common k-set targets in the
/// traded copies. Returns nullopt when neither pattern is found within the
/// budget; the copy count never decreases.
std::optional<Packing> augment(const KGraph& g, const Packing& p, const AugmentBudget& budget = {});

/// Keeps the copies lying in the largest component of the sub-k-graph induced
/// on the covered vertices (ties: component with the smallest vertex id).
Packing connected_filter(const KGraph& g, const Packing& p);

}  // namespace looseham
