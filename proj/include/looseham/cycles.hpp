#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "looseham/kgraph.hpp"

namespace looseham {

enum class ViolationKind {
    structure,         // malformed container (sizes, duplicates, range)
    missing_edge,      // cover/path edge absent from the host graph
    non_window_edge,   // edge is not k consecutive vertices of the order
    uncovered_pair,    // consecutive vertex pair not inside any cover edge
    overlap,           // adjacent edges intersect in the wrong number of vertices
    residue,           // vertex count violates the mod (k-1) constraint
    exceptional_pairs, // wrong number of high-overlap junctions
    not_hamilton,      // order does not cover every host vertex exactly once
    missing_gluing_edge
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int index_a = -1;
    int index_b = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Loose path: order of distinct vertices; edges[j] spans k consecutive
/// positions, consecutive edges share exactly one vertex. The relaxed variant
/// (used by the exceptional path) lets the first two edges share up to k-1.
struct LoosePath {
    std::vector<Vertex> order;
    std::vector<Edge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    Vertex initial_vertex() const { return order.front(); }
    Vertex final_vertex() const { return order.back(); }
};

struct GenericCycle {
    std::vector<Vertex> order;  // cyclic
    std::vector<Edge> cover;
};

struct LooseCycle {
    std::vector<Vertex> order;
    std::vector<Edge> cover;
    // indices into cover of the one junction allowed to overlap in >1 vertex
    std::optional<std::pair<int, int>> exceptional_pair;
};

struct TightCycle {
    std::vector<Vertex> order;
};

/// Prepath: a path plus two (k-2)-sets; one more vertex on each end restores
/// a path via the edges {x, initial} + i_set and {final, y} + f_set.
struct Prepath {
    LoosePath core;
    std::vector<Vertex> i_set;
    std::vector<Vertex> f_set;
};

ValidationReport validate_generic_cycle(const KGraph& g, const GenericCycle& c, bool hamilton);
ValidationReport validate_loose_cycle(const KGraph& g, const LooseCycle& c, bool hamilton);
ValidationReport validate_loose_path(const KGraph& g, const LoosePath& p);
// first junction may overlap in 1..k-1 vertices
ValidationReport validate_exceptional_path(const KGraph& g, const LoosePath& p);
ValidationReport validate_tight_cycle(const KGraph& g, const TightCycle& c, bool hamilton);

/// detected high-overlap junction of a structurally sound loose cycle
std::optional<std::pair<int, int>> find_exceptional_junction(const LooseCycle& c);

struct Extremities {
    std::vector<Vertex> initial;
    std::vector<Vertex> final_set;
    std::vector<Vertex> links;
};
Extremities extremities(const LoosePath& p);

/// Concatenates prepaths[0], paths[0], prepaths[1], paths[1], ... cyclically.
/// Junction after prepaths[j]: f_set + {final of core j, initial of paths[j]};
/// junction after paths[j]: i_set of prepaths[j+1] + {final of paths[j],
/// initial of core j+1}. All gluing edges must be host edges.
struct ConcatResult {
    std::optional<LooseCycle> cycle;
    ValidationReport report;
    bool ok() const { return cycle.has_value(); }
};
ConcatResult concatenate(const std::vector<Prepath>& prepaths, const std::vector<LoosePath>& paths,
                         const KGraph& g);

}  // namespace looseham
