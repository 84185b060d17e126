#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace looseham {

using Vertex = int;
// An edge is a strictly ascending list of k distinct vertex ids.
using Edge = std::vector<Vertex>;

std::uint64_t binomial(int n, int r);

/// Walk in a hypergraph: edges e_1..e_l and waypoints x_0..x_l with
/// consecutive waypoints distinct, x_{i-1}, x_i both in e_i.
struct Walk {
    std::vector<int> edge_indices;
    std::vector<Vertex> vertices;

    int length() const { return static_cast<int>(edge_indices.size()); }
};

// Components / walks over an arbitrary (not necessarily uniform) edge list on
// vertex set [0, n). Shared by KGraph and the supplementary hypergraph.
std::vector<std::vector<Vertex>> hyper_components(int n, std::span<const std::vector<Vertex>> edges);
std::optional<Walk> hyper_walk(int n, std::span<const std::vector<Vertex>> edges, Vertex from, Vertex to);
bool walk_is_valid(std::span<const std::vector<Vertex>> edges, const Walk& w);

/// Immutable k-uniform hypergraph on vertices 0..n-1.
/// Edges are kept sorted lexicographically; all queries are const and safe to
/// run concurrently. The codegree index is built on first use under a
/// std::once_flag.
class KGraph;

/// restrict() result: the sub-graph plus both relabeling directions
struct Restriction {
    std::vector<int> to_sub;      // host id -> sub id, -1 when outside
    std::vector<Vertex> to_host;  // sub id -> host id
};

class KGraph {
public:
    KGraph(int n, int k, std::vector<Edge> edges);
    ~KGraph();
    KGraph(const KGraph& other);
    KGraph& operator=(const KGraph& other);
    KGraph(KGraph&&) noexcept;
    KGraph& operator=(KGraph&&) noexcept;

    static KGraph complete(int n, int k);
    static KGraph complete_kpartite(const std::vector<std::vector<Vertex>>& classes);
    // trusted constructor for generators: edges must already be valid, sorted
    // ascending internally, duplicate-free (order of the list itself is arbitrary)
    static KGraph unchecked(int n, int k, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int uniformity() const { return k_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool contains(const Edge& sorted_edge) const;
    int edge_index(const Edge& sorted_edge) const;  // -1 if absent
    const std::vector<int>& incident_edges(Vertex v) const;

    /// N(T) for a (k-1)-set T: all x with T + {x} an edge.
    std::vector<Vertex> neighbourhood(const std::vector<Vertex>& t) const;
    int codegree(const std::vector<Vertex>& t) const;
    /// number of edges containing v
    int vertex_degree(Vertex v) const { return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size()); }

    int min_codegree() const;
    /// degree value -> number of (k-1)-sets attaining it; counts sum to C(n, k-1)
    std::map<int, std::uint64_t> codegree_histogram() const;

    /// restriction to `keep`, relabeled 0..|keep|-1; mapping in the second part
    std::pair<KGraph, Restriction> restrict(const std::vector<Vertex>& keep) const;

    std::vector<std::vector<Vertex>> components() const;

private:
    KGraph() = default;

    void build_incidence();
    struct DegreeCache;
    DegreeCache& degree_cache() const;

    int n_ = 0;
    int k_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incidence_;  // vertex -> indices into edges_
    // lazy per-(k-1)-set degree index, built once under the cache's flag
    mutable std::unique_ptr<DegreeCache> cache_;
};

/// shortest walk between two distinct vertices, or nullopt if separated
std::optional<Walk> find_walk(const KGraph& g, Vertex from, Vertex to);

}  // namespace looseham
