#include "looseham/kgraph.hpp"

#include <algorithm>
#include <mutex>
#include <queue>

#include "looseham/errors.hpp"

namespace looseham {

struct KGraph::DegreeCache {
    std::once_flag once;
    std::map<std::vector<Vertex>, int> index;  // (k-1)-set -> degree
};

KGraph::~KGraph() = default;
KGraph::KGraph(KGraph&&) noexcept = default;
KGraph& KGraph::operator=(KGraph&&) noexcept = default;

KGraph::KGraph(const KGraph& other)
    : n_(other.n_), k_(other.k_), edges_(other.edges_), incidence_(other.incidence_),
      cache_(std::make_unique<DegreeCache>()) {}

KGraph& KGraph::operator=(const KGraph& other) {
    if (this != &other) {
        n_ = other.n_;
        k_ = other.k_;
        edges_ = other.edges_;
        incidence_ = other.incidence_;
        cache_ = std::make_unique<DegreeCache>();
    }
    return *this;
}

KGraph::DegreeCache& KGraph::degree_cache() const {
    std::call_once(cache_->once, [this] {
        for (const Edge& e : edges_) {
            std::vector<Vertex> key;
            key.reserve(static_cast<std::size_t>(k_ - 1));
            for (int skip = 0; skip < k_; ++skip) {
                key.clear();
                for (int i = 0; i < k_; ++i)
                    if (i != skip) key.push_back(e[static_cast<std::size_t>(i)]);
                ++cache_->index[key];
            }
        }
    });
    return *cache_;
}

std::uint64_t binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t result = 1;
    for (int i = 1; i <= r; ++i) {
        result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

KGraph::KGraph(int n, int k, std::vector<Edge> edges) {
    if (n < 0) throw InvalidInput("vertex count must be non-negative");
    if (k < 2) throw InvalidInput("uniformity k must be at least 2");
    if (!edges.empty() && k > n) throw InvalidInput("k exceeds vertex count but edges are present");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != k) throw InvalidInput("edge size differs from k");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw InvalidInput("edge vertex out of range");
            if (i > 0 && e[i] == e[i - 1]) throw InvalidInput("edge has repeated vertex");
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw InvalidInput("duplicate edge");
    n_ = n;
    k_ = k;
    edges_ = std::move(edges);
    build_incidence();
}

KGraph KGraph::unchecked(int n, int k, std::vector<Edge> edges) {
    KGraph g;
    g.n_ = n;
    g.k_ = k;
    std::sort(edges.begin(), edges.end());
    g.edges_ = std::move(edges);
    g.build_incidence();
    return g;
}

KGraph KGraph::complete(int n, int k) {
    if (k < 2) throw InvalidInput("uniformity k must be at least 2");
    std::vector<Edge> edges;
    if (n >= k) {
        Edge cur(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
        while (true) {
            edges.push_back(cur);
            int i = k - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    int n_eff = std::max(n, 0);
    return unchecked(n_eff, k, std::move(edges));
}

KGraph KGraph::complete_kpartite(const std::vector<std::vector<Vertex>>& classes) {
    const int k = static_cast<int>(classes.size());
    if (k < 2) throw InvalidInput("need at least two classes");
    int n = 0;
    for (const auto& c : classes)
        for (Vertex v : c) n = std::max(n, v + 1);
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < k; ++i) {
        for (Vertex v : classes[static_cast<std::size_t>(i)]) {
            if (v < 0) throw InvalidInput("negative vertex id");
            if (owner[static_cast<std::size_t>(v)] != -1) throw InvalidInput("classes overlap");
            owner[static_cast<std::size_t>(v)] = i;
        }
    }
    std::vector<Edge> edges;
    Edge cur;
    auto rec = [&](auto&& self, int cls) -> void {
        if (cls == k) {
            Edge e = cur;
            std::sort(e.begin(), e.end());
            edges.push_back(std::move(e));
            return;
        }
        for (Vertex v : classes[static_cast<std::size_t>(cls)]) {
            cur.push_back(v);
            self(self, cls + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return unchecked(n, k, std::move(edges));
}

void KGraph::build_incidence() {
    incidence_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t idx = 0; idx < edges_.size(); ++idx)
        for (Vertex v : edges_[idx]) incidence_[static_cast<std::size_t>(v)].push_back(static_cast<int>(idx));
    cache_ = std::make_unique<DegreeCache>();  // filled on first degree query
}

bool KGraph::contains(const Edge& sorted_edge) const {
    return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

int KGraph::edge_index(const Edge& sorted_edge) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), sorted_edge);
    if (it == edges_.end() || *it != sorted_edge) return -1;
    return static_cast<int>(it - edges_.begin());
}

const std::vector<int>& KGraph::incident_edges(Vertex v) const {
    if (v < 0 || v >= n_) throw InvalidInput("unknown vertex " + std::to_string(v));
    return incidence_[static_cast<std::size_t>(v)];
}

std::vector<Vertex> KGraph::neighbourhood(const std::vector<Vertex>& t) const {
    if (static_cast<int>(t.size()) != k_ - 1)
        throw InvalidInput("neighbourhood takes a set of exactly k-1 vertices");
    std::vector<Vertex> sorted_t = t;
    std::sort(sorted_t.begin(), sorted_t.end());
    for (std::size_t i = 0; i < sorted_t.size(); ++i) {
        if (sorted_t[i] < 0 || sorted_t[i] >= n_)
            throw InvalidInput("unknown vertex " + std::to_string(sorted_t[i]));
        if (i > 0 && sorted_t[i] == sorted_t[i - 1]) throw InvalidInput("repeated vertex in set");
    }
    std::vector<Vertex> result;
    if (sorted_t.empty()) return result;
    for (int idx : incidence_[static_cast<std::size_t>(sorted_t[0])]) {
        const Edge& e = edges_[static_cast<std::size_t>(idx)];
        if (!std::includes(e.begin(), e.end(), sorted_t.begin(), sorted_t.end())) continue;
        for (Vertex v : e) {
            if (!std::binary_search(sorted_t.begin(), sorted_t.end(), v)) {
                result.push_back(v);
                break;
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

int KGraph::codegree(const std::vector<Vertex>& t) const {
    return static_cast<int>(neighbourhood(t).size());
}

int KGraph::min_codegree() const {
    if (n_ < k_ - 1) throw InvalidInput("min_codegree needs n >= k-1");
    const auto& index = degree_cache().index;
    if (index.size() < binomial(n_, k_ - 1)) return 0;
    int best = -1;
    for (const auto& [key, deg] : index)
        if (best < 0 || deg < best) best = deg;
    return best < 0 ? 0 : best;
}

std::map<int, std::uint64_t> KGraph::codegree_histogram() const {
    if (n_ < k_ - 1) throw InvalidInput("codegree_histogram needs n >= k-1");
    const auto& index = degree_cache().index;
    std::map<int, std::uint64_t> hist;
    for (const auto& [key, deg] : index) ++hist[deg];
    std::uint64_t zeros = binomial(n_, k_ - 1) - index.size();
    if (zeros > 0) hist[0] += zeros;
    return hist;
}

std::pair<KGraph, Restriction> KGraph::restrict(const std::vector<Vertex>& keep) const {
    std::vector<int> to_sub(static_cast<std::size_t>(n_), -1);
    std::vector<Vertex> to_host = keep;
    std::sort(to_host.begin(), to_host.end());
    to_host.erase(std::unique(to_host.begin(), to_host.end()), to_host.end());
    for (std::size_t i = 0; i < to_host.size(); ++i) {
        Vertex v = to_host[i];
        if (v < 0 || v >= n_) throw InvalidInput("unknown vertex " + std::to_string(v));
        to_sub[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<Edge> sub_edges;
    for (const Edge& e : edges_) {
        Edge mapped;
        mapped.reserve(e.size());
        for (Vertex v : e) {
            int m = to_sub[static_cast<std::size_t>(v)];
            if (m < 0) break;
            mapped.push_back(m);
        }
        if (mapped.size() == e.size()) sub_edges.push_back(std::move(mapped));
    }
    KGraph sub = unchecked(static_cast<int>(to_host.size()), k_, std::move(sub_edges));
    return {std::move(sub), Restriction{std::move(to_sub), std::move(to_host)}};
}

std::vector<std::vector<Vertex>> KGraph::components() const {
    return hyper_components(n_, std::span<const std::vector<Vertex>>(edges_));
}

std::vector<std::vector<Vertex>> hyper_components(int n, std::span<const std::vector<Vertex>> edges) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& e : edges)
        for (std::size_t i = 1; i < e.size(); ++i) {
            int a = find(e[0]), b = find(e[i]);
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    std::map<int, std::vector<Vertex>> classes;
    for (int v = 0; v < n; ++v) classes[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> result;
    result.reserve(classes.size());
    for (auto& [root, members] : classes) result.push_back(std::move(members));
    return result;
}

std::optional<Walk> hyper_walk(int n, std::span<const std::vector<Vertex>> edges, Vertex from, Vertex to) {
    if (from < 0 || from >= n || to < 0 || to >= n) throw InvalidInput("unknown vertex");
    if (from == to) throw InvalidInput("walk endpoints must differ");
    std::vector<std::vector<int>> incidence(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < edges.size(); ++idx)
        for (Vertex v : edges[idx]) incidence[static_cast<std::size_t>(v)].push_back(static_cast<int>(idx));

    // BFS over vertices; one step = one edge shared by the two waypoints
    std::vector<int> prev_vertex(static_cast<std::size_t>(n), -1);
    std::vector<int> prev_edge(static_cast<std::size_t>(n), -1);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<Vertex> queue;
    seen[static_cast<std::size_t>(from)] = true;
    queue.push(from);
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop();
        if (u == to) break;
        for (int idx : incidence[static_cast<std::size_t>(u)]) {
            for (Vertex v : edges[static_cast<std::size_t>(idx)]) {
                if (v == u || seen[static_cast<std::size_t>(v)]) continue;
                seen[static_cast<std::size_t>(v)] = true;
                prev_vertex[static_cast<std::size_t>(v)] = u;
                prev_edge[static_cast<std::size_t>(v)] = idx;
                queue.push(v);
            }
        }
    }
    if (!seen[static_cast<std::size_t>(to)]) return std::nullopt;
    Walk w;
    Vertex cur = to;
    while (cur != from) {
        w.vertices.push_back(cur);
        w.edge_indices.push_back(prev_edge[static_cast<std::size_t>(cur)]);
        cur = prev_vertex[static_cast<std::size_t>(cur)];
    }
    w.vertices.push_back(from);
    std::reverse(w.vertices.begin(), w.vertices.end());
    std::reverse(w.edge_indices.begin(), w.edge_indices.end());
    return w;
}

bool walk_is_valid(std::span<const std::vector<Vertex>> edges, const Walk& w) {
    const std::size_t l = w.edge_indices.size();
    if (l < 1) return false;
    if (w.vertices.size() != l + 1) return false;
    auto in_edge = [&](Vertex v, int idx) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= edges.size()) return false;
        const auto& e = edges[static_cast<std::size_t>(idx)];
        return std::find(e.begin(), e.end(), v) != e.end();
    };
    for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i)
        if (w.vertices[i] == w.vertices[i + 1]) return false;
    if (!in_edge(w.vertices.front(), w.edge_indices.front())) return false;
    if (!in_edge(w.vertices.back(), w.edge_indices.back())) return false;
    for (std::size_t i = 1; i < l; ++i)
        if (!in_edge(w.vertices[i], w.edge_indices[i - 1]) || !in_edge(w.vertices[i], w.edge_indices[i]))
            return false;
    return true;
}

std::optional<Walk> find_walk(const KGraph& g, Vertex from, Vertex to) {
    return hyper_walk(g.vertex_count(), std::span<const std::vector<Vertex>>(g.edges()), from, to);
}

}  // namespace looseham
