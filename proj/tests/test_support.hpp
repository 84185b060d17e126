#pragma once

// Shared helpers for the test suites: seeded random instances and naive
// reference oracles kept independent of the library's search internals.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "looseham/kgraph.hpp"
#include "looseham/rng.hpp"

namespace testsupport {

using looseham::Edge;
using looseham::KGraph;
using looseham::Vertex;

inline std::vector<Edge> all_ksets(int n, int k) {
    std::vector<Edge> result;
    if (n < k) return result;
    Edge cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        result.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return result;
}

inline KGraph random_graph(int n, int k, int edges, std::uint64_t seed) {
    std::vector<Edge> pool = all_ksets(n, k);
    looseham::SplitMix64 rng(seed);
    rng.shuffle(pool);
    if (edges > static_cast<int>(pool.size())) edges = static_cast<int>(pool.size());
    pool.resize(static_cast<std::size_t>(edges));
    return KGraph::unchecked(n, k, std::move(pool));
}

// Naive loose-Hamiltonicity reference: enumerate every cyclic ordering
// (vertex 0 pinned to position 0) together with every tiling offset and
// every position of the high-overlap junction, and record which covering
// edge sets are fully present. Deliberately ordering-first, unlike the
// library's edge-chain search.
inline std::set<std::vector<Edge>> naive_loose_hamilton_sets(const KGraph& g, bool stop_at_first = false) {
    std::set<std::vector<Edge>> found;
    const int n = g.vertex_count();
    const int k = g.uniformity();
    if (n < k) return found;
    if (n == k) {
        Edge full(static_cast<std::size_t>(k));
        std::iota(full.begin(), full.end(), 0);
        if (g.contains(full)) found.insert({full});
        return found;
    }
    const int e_count = (n + k - 2) / (k - 1);
    const int overlap = e_count * (k - 1) + 1 - n;
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    order[0] = 0;
    std::vector<Vertex> tail(static_cast<std::size_t>(n - 1));
    std::iota(tail.begin(), tail.end(), 1);
    do {
        std::copy(tail.begin(), tail.end(), order.begin() + 1);
        for (int offset = 0; offset < n; ++offset) {
            for (int junction = 0; junction < (overlap >= 2 ? e_count : 1); ++junction) {
                std::vector<Edge> cover;
                bool all_present = true;
                int start = offset;
                for (int j = 0; j < e_count && all_present; ++j) {
                    Edge window;
                    for (int off = 0; off < k; ++off)
                        window.push_back(order[static_cast<std::size_t>((start + off) % n)]);
                    std::sort(window.begin(), window.end());
                    if (!g.contains(window)) all_present = false;
                    cover.push_back(std::move(window));
                    start += (j == junction && overlap >= 2) ? k - overlap : k - 1;
                }
                if (!all_present) continue;
                std::sort(cover.begin(), cover.end());
                if (std::adjacent_find(cover.begin(), cover.end()) != cover.end()) continue;
                found.insert(std::move(cover));
                if (stop_at_first) return found;
            }
        }
    } while (std::next_permutation(tail.begin(), tail.end()));
    return found;
}

inline bool naive_has_loose_hamilton(const KGraph& g) {
    return !naive_loose_hamilton_sets(g, true).empty();
}

}  // namespace testsupport
