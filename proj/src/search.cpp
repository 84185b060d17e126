#include "looseham/search.hpp"

#include <algorithm>
#include <bitset>
#include <set>

#include "looseham/errors.hpp"

namespace looseham {

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        case SearchStatus::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

namespace {

constexpr int kMaxOracleVertices = 256;
using VertexSet = std::bitset<kMaxOracleVertices>;

struct BudgetClock {
    const SearchBudget& budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit BudgetClock(const SearchBudget& b) : budget(b) {}

    // returns false once the budget is gone
    bool tick() {
        if (exhausted) return false;
        if (++nodes > budget.max_nodes) {
            exhausted = true;
            return false;
        }
        if (budget.time_limit && (nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() - start > *budget.time_limit) {
            exhausted = true;
            return false;
        }
        return true;
    }
};

std::vector<VertexSet> edge_masks(const KGraph& g) {
    std::vector<VertexSet> masks(g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        for (Vertex v : g.edges()[i]) masks[i].set(static_cast<std::size_t>(v));
    return masks;
}

// Loose Hamilton search over edge chains E_1..E_e: consecutive edges share
// exactly one (link) vertex; the wrap-around junction E_e -> E_1 shares the
// fixed set O of o vertices inside E_1; everything else is fresh.
struct LooseHamSearch {
    const KGraph& g;
    BudgetClock clock;
    int n, k, e_count, overlap;
    std::vector<VertexSet> masks;

    std::vector<int> chain;        // edge indices E_1..E_i
    std::vector<Vertex> links;     // forward link after E_1..E_{i-1}
    std::vector<Vertex> close_set; // O, sorted, subset of E_1
    VertexSet used;

    // when counting, every completed chain lands here as a sorted id set
    std::set<std::vector<int>>* census = nullptr;
    std::optional<LooseCycle> result;

    LooseHamSearch(const KGraph& graph, const SearchBudget& budget)
        : g(graph), clock(budget), n(graph.vertex_count()), k(graph.uniformity()) {
        e_count = (n + k - 2) / (k - 1);
        overlap = e_count * (k - 1) + 1 - n;
        masks = edge_masks(graph);
    }

    LooseCycle reconstruct() const {
        LooseCycle cycle;
        cycle.order.reserve(static_cast<std::size_t>(n));
        auto push_sorted_except = [&](const Edge& edge, const std::vector<Vertex>& skip) {
            for (Vertex v : edge)
                if (std::find(skip.begin(), skip.end(), v) == skip.end()) cycle.order.push_back(v);
        };
        // order: [O][E_1 interior][v_1][E_2 interior][v_2]...[E_e interior]
        cycle.order.insert(cycle.order.end(), close_set.begin(), close_set.end());
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const Edge& edge = g.edges()[static_cast<std::size_t>(chain[i])];
            std::vector<Vertex> skip = close_set;
            if (i > 0) {
                skip = {links[i - 1]};
                if (i + 1 == chain.size()) skip.insert(skip.end(), close_set.begin(), close_set.end());
            }
            if (i + 1 < chain.size()) skip.push_back(links[i]);
            push_sorted_except(edge, skip);
            if (i + 1 < chain.size()) cycle.order.push_back(links[i]);
        }
        for (int idx : chain) cycle.cover.push_back(g.edges()[static_cast<std::size_t>(idx)]);
        if (overlap >= 2) cycle.exceptional_pair = {e_count - 1, 0};
        return cycle;
    }

    void record() {
        if (census) {
            std::vector<int> key = chain;
            std::sort(key.begin(), key.end());
            census->insert(std::move(key));
        } else {
            result = reconstruct();
        }
    }

    bool done() const { return result.has_value() || clock.exhausted; }

    // depth = number of chosen edges; v = current forward link
    void extend(Vertex v) {
        if (done()) return;
        const int depth = static_cast<int>(chain.size());
        if (depth == e_count - 1) {
            if (!clock.tick()) return;
            Edge final_edge;
            final_edge.reserve(static_cast<std::size_t>(k));
            final_edge.push_back(v);
            final_edge.insert(final_edge.end(), close_set.begin(), close_set.end());
            for (int x = 0; x < n; ++x)
                if (!used.test(static_cast<std::size_t>(x))) final_edge.push_back(x);
            if (static_cast<int>(final_edge.size()) != k) return;
            std::sort(final_edge.begin(), final_edge.end());
            int idx = g.edge_index(final_edge);
            if (idx < 0) return;
            if (std::find(chain.begin(), chain.end(), idx) != chain.end()) return;
            chain.push_back(idx);
            record();
            chain.pop_back();
            return;
        }
        for (int idx : g.incident_edges(v)) {
            if (done()) return;
            if (!clock.tick()) return;
            const VertexSet& mask = masks[static_cast<std::size_t>(idx)];
            if ((mask & used).count() != 1) continue;
            const Edge& edge = g.edges()[static_cast<std::size_t>(idx)];
            const VertexSet fresh = mask & ~used;
            chain.push_back(idx);
            used |= fresh;
            for (Vertex next : edge) {
                if (next == v) continue;
                links.push_back(next);
                extend(next);
                links.pop_back();
                if (done()) break;
            }
            used ^= fresh;
            chain.pop_back();
        }
    }

    void run() {
        if (n == k) {  // degenerate: the unique Hamilton cycle is the full edge
            Edge full(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) full[static_cast<std::size_t>(i)] = i;
            if (g.contains(full)) {
                chain = {g.edge_index(full)};
                if (census) {
                    census->insert(chain);
                } else {
                    LooseCycle cycle;
                    cycle.order = full;
                    cycle.cover = {full};
                    result = cycle;
                }
            }
            return;
        }
        // roots: E_1 with its closing overlap set O and forward link v_1.
        // For overlap 1 any rotation works, so E_1 may be pinned to vertex 0;
        // for a true exceptional junction the rotation is fixed by it instead.
        if (overlap == 1) {
            for (int idx : g.incident_edges(0)) {
                const Edge& edge = g.edges()[static_cast<std::size_t>(idx)];
                for (Vertex w : edge) {
                    for (Vertex v1 : edge) {
                        if (v1 == w) continue;
                        root(idx, {w}, v1);
                        if (done()) return;
                    }
                }
            }
        } else {
            std::vector<int> pick(static_cast<std::size_t>(overlap));
            for (std::size_t idx = 0; idx < g.edge_count(); ++idx) {
                const Edge& edge = g.edges()[idx];
                // all o-subsets of E_1 as the closing overlap
                for (int i = 0; i < overlap; ++i) pick[static_cast<std::size_t>(i)] = i;
                while (true) {
                    std::vector<Vertex> close;
                    for (int p : pick) close.push_back(edge[static_cast<std::size_t>(p)]);
                    for (Vertex v1 : edge) {
                        if (std::find(close.begin(), close.end(), v1) != close.end()) continue;
                        root(static_cast<int>(idx), close, v1);
                        if (done()) return;
                    }
                    int i = overlap - 1;
                    while (i >= 0 && pick[static_cast<std::size_t>(i)] == k - overlap + i) --i;
                    if (i < 0) break;
                    ++pick[static_cast<std::size_t>(i)];
                    for (int j = i + 1; j < overlap; ++j)
                        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
                }
            }
        }
    }

    void root(int idx, std::vector<Vertex> close, Vertex v1) {
        if (!clock.tick()) return;
        chain.assign(1, idx);
        links.assign(1, v1);
        close_set = std::move(close);
        used = masks[static_cast<std::size_t>(idx)];
        extend(v1);
        chain.clear();
        links.clear();
    }
};

}  // namespace

SearchResult<LooseCycle> find_loose_hamilton(const KGraph& g, const SearchBudget& budget) {
    if (g.vertex_count() < g.uniformity()) throw InvalidInput("need n >= k");
    if (g.vertex_count() > kMaxOracleVertices) throw InvalidInput("oracle supports at most 256 vertices");
    LooseHamSearch search(g, budget);
    search.run();
    SearchResult<LooseCycle> result;
    result.nodes = search.clock.nodes;
    if (search.result) {
        result.status = SearchStatus::found;
        result.value = std::move(search.result);
    } else {
        result.status = search.clock.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    return result;
}

SearchResult<std::uint64_t> count_loose_hamilton(const KGraph& g, const SearchBudget& budget) {
    if (g.vertex_count() < g.uniformity()) throw InvalidInput("need n >= k");
    if (g.vertex_count() > kMaxOracleVertices) throw InvalidInput("oracle supports at most 256 vertices");
    LooseHamSearch search(g, budget);
    std::set<std::vector<int>> census;
    search.census = &census;
    search.run();
    SearchResult<std::uint64_t> result;
    result.nodes = search.clock.nodes;
    if (search.clock.exhausted) {
        result.status = SearchStatus::budget_exhausted;
    } else {
        result.status = SearchStatus::found;
        result.value = static_cast<std::uint64_t>(census.size());
    }
    return result;
}

SearchResult<GenericCycle> find_generic_hamilton(const KGraph& g, const SearchBudget& budget) {
    const int n = g.vertex_count();
    const int k = g.uniformity();
    if (n < k) throw InvalidInput("need n >= k");
    if (n > kMaxOracleVertices) throw InvalidInput("oracle supports at most 256 vertices");
    BudgetClock clock(budget);
    SearchResult<GenericCycle> result;

    std::vector<Vertex> order(static_cast<std::size_t>(n));
    order[0] = 0;
    std::vector<Vertex> tail(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) tail[static_cast<std::size_t>(i - 1)] = i;

    Edge window(static_cast<std::size_t>(k));
    std::vector<bool> covered(static_cast<std::size_t>(n));
    do {
        if (n > 2 && tail.front() > tail.back()) continue;  // quotient reflections
        if (!clock.tick()) break;
        std::copy(tail.begin(), tail.end(), order.begin() + 1);
        std::fill(covered.begin(), covered.end(), false);
        std::set<Edge> cover;
        for (int s = 0; s < n; ++s) {
            for (int off = 0; off < k; ++off)
                window[static_cast<std::size_t>(off)] = order[static_cast<std::size_t>((s + off) % n)];
            std::sort(window.begin(), window.end());
            if (n == k) window.erase(std::unique(window.begin(), window.end()), window.end());
            if (!g.contains(window)) continue;
            cover.insert(window);
            const int arcs = (n == k) ? n : k - 1;
            for (int off = 0; off < arcs; ++off) covered[static_cast<std::size_t>((s + off) % n)] = true;
            if (n == k) break;
        }
        if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
            GenericCycle cycle;
            cycle.order = order;
            cycle.cover.assign(cover.begin(), cover.end());
            result.status = SearchStatus::found;
            result.value = std::move(cycle);
            result.nodes = clock.nodes;
            return result;
        }
    } while (std::next_permutation(tail.begin(), tail.end()));

    result.nodes = clock.nodes;
    result.status = clock.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    return result;
}

namespace {

struct PathSearch {
    const KGraph& g;
    const ConnectSpec& spec;
    BudgetClock clock;
    int n, k, max_vertices;
    std::vector<VertexSet> masks;
    std::vector<bool> usable;
    std::vector<int> cluster;              // dense per-vertex cluster, -1 unusable
    std::map<int, int> residue_of;         // cluster -> target
    std::vector<Vertex> eligible_start, eligible_end;

    VertexSet used;
    std::vector<Vertex> order;
    std::vector<int> chain;
    std::map<int, int> counts;
    std::optional<LoosePath> result;

    PathSearch(const KGraph& graph, const ConnectSpec& s, const SearchBudget& budget)
        : g(graph), spec(s), clock(budget), n(graph.vertex_count()), k(graph.uniformity()) {
        max_vertices = spec.max_vertices > 0 ? spec.max_vertices : 4 * k * k * k;
        masks = edge_masks(graph);
        if (static_cast<int>(spec.cluster_of.size()) != n)
            throw InvalidInput("cluster_of must assign every vertex");
        usable.assign(static_cast<std::size_t>(n), false);
        cluster = spec.cluster_of;
        for (int v = 0; v < n; ++v) usable[static_cast<std::size_t>(v)] = cluster[static_cast<std::size_t>(v)] >= 0;
        for (Vertex z : spec.forbidden) {
            if (z < 0 || z >= n) throw InvalidInput("forbidden vertex out of range");
            usable[static_cast<std::size_t>(z)] = false;
        }
        int residue_sum = 0;
        for (const auto& [c, t] : spec.residues) {
            if (t < 0 || t >= k - 1) throw InvalidInput("residue target outside [0, k-1)");
            residue_sum += t;
        }
        for (int v = 0; v < n; ++v)
            if (cluster[static_cast<std::size_t>(v)] >= 0 && !spec.residues.count(cluster[static_cast<std::size_t>(v)]))
                throw InvalidInput("vertex cluster lacks a residue target");
        if (residue_sum % (k - 1) != 1 % (k - 1))
            throw InvalidInput("residue targets must sum to 1 mod (k-1)");
        if (spec.start_cluster == spec.end_cluster)
            throw InvalidInput("start and end clusters must differ");
        if (!spec.residues.count(spec.start_cluster) || !spec.residues.count(spec.end_cluster))
            throw InvalidInput("start/end clusters must carry residue targets");
        residue_of = spec.residues;
        eligible_start = eligible_endpoints(spec.start_cluster);
        eligible_end = eligible_endpoints(spec.end_cluster);
    }

    // vertices of the cluster meeting the endpoint degree threshold, which
    // defaults to |H_c| / (2 |X_c|) over the cluster's usable vertices
    std::vector<Vertex> eligible_endpoints(int c) const {
        std::vector<Vertex> members;
        for (int v = 0; v < n; ++v)
            if (usable[static_cast<std::size_t>(v)] && cluster[static_cast<std::size_t>(v)] == c)
                members.push_back(v);
        std::vector<int> degree(members.size(), 0);
        std::size_t inside_edges = 0;
        std::vector<int> member_index(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < members.size(); ++i)
            member_index[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
        for (const Edge& e : g.edges()) {
            bool inside = true;
            for (Vertex v : e)
                if (member_index[static_cast<std::size_t>(v)] < 0) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            ++inside_edges;
            for (Vertex v : e) ++degree[static_cast<std::size_t>(member_index[static_cast<std::size_t>(v)])];
        }
        double threshold;
        auto it = spec.endpoint_min_degree.find(c);
        if (it != spec.endpoint_min_degree.end())
            threshold = it->second;
        else
            threshold = members.empty() ? 0.0
                                        : static_cast<double>(inside_edges) / (2.0 * static_cast<double>(members.size()));
        std::vector<Vertex> eligible;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (static_cast<double>(degree[i]) >= threshold) eligible.push_back(members[i]);
        return eligible;
    }

    bool edge_usable(const Edge& e) const {
        for (Vertex v : e)
            if (!usable[static_cast<std::size_t>(v)]) return false;
        return true;
    }

    bool residues_met() const {
        for (const auto& [c, t] : residue_of) {
            auto it = counts.find(c);
            int have = it == counts.end() ? 0 : it->second;
            if (have % (k - 1) != t) return false;
        }
        return true;
    }

    int deficit_total() const {
        int total = 0;
        for (const auto& [c, t] : residue_of) {
            auto it = counts.find(c);
            int have = it == counts.end() ? 0 : it->second;
            total += ((t - have) % (k - 1) + (k - 1)) % (k - 1);
        }
        return total;
    }

    void bump(const Edge& e, Vertex except, int delta) {
        for (Vertex v : e) {
            if (v == except) continue;
            counts[cluster[static_cast<std::size_t>(v)]] += delta;
        }
    }

    // try to end the path at the current last edge, re-laying its interior so
    // a chosen eligible final vertex sits at the very end
    void try_close(Vertex link_into_last) {
        if (!residues_met()) return;
        const Edge& last = g.edges()[static_cast<std::size_t>(chain.back())];
        for (Vertex f : last) {
            if (f == link_into_last) continue;
            if (cluster[static_cast<std::size_t>(f)] != spec.end_cluster) continue;
            if (!std::binary_search(eligible_end.begin(), eligible_end.end(), f)) continue;
            if (chain.size() == 1 && f == order.front()) continue;
            LoosePath path;
            path.order = order;
            for (Vertex v : last)
                if (v != link_into_last && v != f) path.order.push_back(v);
            path.order.push_back(f);
            for (int idx : chain) path.edges.push_back(g.edges()[static_cast<std::size_t>(idx)]);
            result = std::move(path);
            return;
        }
    }

    bool done() const { return result.has_value() || clock.exhausted; }

    // order currently holds everything up to and including the link into the
    // last chain edge; interior of the last edge is laid out on close/extend
    void grow(Vertex link) {
        if (done()) return;
        try_close(link == -1 ? order.front() : link);
        if (done()) return;
        const Edge& last = g.edges()[static_cast<std::size_t>(chain.back())];
        int vertices_now = static_cast<int>(order.size()) + k - 1;
        if (vertices_now + (k - 1) > max_vertices) return;
        if (vertices_now + deficit_total() > max_vertices) return;
        Vertex prev_link = link == -1 ? order.front() : link;
        for (Vertex next_link : last) {
            if (next_link == prev_link) continue;
            if (done()) break;
            // lay out the last edge's interior with next_link at its end
            std::size_t order_mark = order.size();
            for (Vertex v : last)
                if (v != prev_link && v != next_link) order.push_back(v);
            order.push_back(next_link);
            for (int idx : g.incident_edges(next_link)) {
                if (done()) break;
                if (!clock.tick()) break;
                const VertexSet& mask = masks[static_cast<std::size_t>(idx)];
                if ((mask & used).count() != 1) continue;
                const Edge& edge = g.edges()[static_cast<std::size_t>(idx)];
                if (!edge_usable(edge)) continue;
                const VertexSet fresh = mask & ~used;
                chain.push_back(idx);
                used |= fresh;
                bump(edge, next_link, +1);
                grow(next_link);
                bump(edge, next_link, -1);
                used ^= fresh;
                chain.pop_back();
            }
            order.resize(order_mark);
        }
    }

    void run() {
        for (Vertex u : eligible_start) {
            if (done()) return;
            for (int idx : g.incident_edges(u)) {
                if (done()) return;
                if (!clock.tick()) return;
                const Edge& edge = g.edges()[static_cast<std::size_t>(idx)];
                if (!edge_usable(edge)) continue;
                chain.assign(1, idx);
                used = masks[static_cast<std::size_t>(idx)];
                counts.clear();
                bump(edge, -1, +1);
                order.assign(1, u);
                grow(-1);
                chain.clear();
            }
        }
    }
};

}  // namespace

SearchResult<LoosePath> find_loose_path_constrained(const KGraph& g, const ConnectSpec& spec,
                                                    const SearchBudget& budget) {
    if (g.vertex_count() > kMaxOracleVertices) throw InvalidInput("oracle supports at most 256 vertices");
    const int k = g.uniformity();
    const int cap = spec.max_vertices > 0 ? spec.max_vertices : 4 * k * k * k;
    // iterative deepening on the vertex count: dense instances yield short
    // paths immediately, and the final full-cap round keeps "none" exact
    SearchResult<LoosePath> result;
    for (int limit = k; limit <= cap; limit += k - 1) {
        ConnectSpec round = spec;
        round.max_vertices = limit;
        SearchBudget remaining = budget;
        if (budget.max_nodes != std::numeric_limits<std::uint64_t>::max()) {
            if (result.nodes >= budget.max_nodes) {
                result.status = SearchStatus::budget_exhausted;
                return result;
            }
            remaining.max_nodes = budget.max_nodes - result.nodes;
        }
        PathSearch search(g, round, remaining);
        search.run();
        result.nodes += search.clock.nodes;
        if (search.result) {
            result.status = SearchStatus::found;
            result.value = std::move(search.result);
            return result;
        }
        if (search.clock.exhausted) {
            result.status = SearchStatus::budget_exhausted;
            return result;
        }
    }
    result.status = SearchStatus::none;
    return result;
}

}  // namespace looseham
