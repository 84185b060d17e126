#include "looseham/packing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "looseham/errors.hpp"

namespace looseham {

std::vector<Vertex> Packing::covered() const {
    std::vector<Vertex> result;
    for (const GadgetCopy& copy : copies)
        for (const auto& part : copy.parts) result.insert(result.end(), part.begin(), part.end());
    std::sort(result.begin(), result.end());
    return result;
}

ValidationReport validate_packing(const KGraph& g, const Packing& p) {
    ValidationReport report;
    const int k = g.uniformity();
    if (p.k != 0 && p.k != k)
        report.violations.push_back({ViolationKind::structure, -1, -1, "packing uniformity differs from host"});
    std::set<Vertex> seen;
    for (std::size_t c = 0; c < p.copies.size(); ++c) {
        const GadgetCopy& copy = p.copies[c];
        if (static_cast<int>(copy.parts.size()) != 2 * k - 2) {
            report.violations.push_back({ViolationKind::structure, static_cast<int>(c), -1,
                                         "copy needs 2k-2 parts"});
            continue;
        }
        bool shape_ok = true;
        for (const auto& part : copy.parts) {
            if (static_cast<int>(part.size()) != k - 1) {
                report.violations.push_back({ViolationKind::structure, static_cast<int>(c), -1,
                                             "part size must be k-1"});
                shape_ok = false;
                break;
            }
            for (Vertex v : part) {
                if (v < 0 || v >= g.vertex_count()) {
                    report.violations.push_back({ViolationKind::structure, static_cast<int>(c), v,
                                                 "vertex outside host"});
                    shape_ok = false;
                } else if (!seen.insert(v).second) {
                    report.violations.push_back({ViolationKind::structure, static_cast<int>(c), v,
                                                 "copies share vertex " + std::to_string(v)});
                    shape_ok = false;
                }
            }
        }
        if (!shape_ok) continue;
        for (std::size_t i = 1; i < copy.parts.size(); ++i)
            for (Vertex x : copy.parts[0]) {
                Edge e = copy.parts[i];
                e.push_back(x);
                std::sort(e.begin(), e.end());
                if (!g.contains(e))
                    report.violations.push_back({ViolationKind::missing_edge, static_cast<int>(c),
                                                 static_cast<int>(i), "gadget edge missing in host"});
            }
    }
    return report;
}

namespace {

// ascending (k-1)-subsets of pool; returns false when exhausted
bool next_subset(std::vector<int>& idx, int pool_size) {
    const int r = static_cast<int>(idx.size());
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == pool_size - r + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

std::optional<GadgetCopy> embed_gadget(const KGraph& g, std::span<const Vertex> allowed) {
    const int k = g.uniformity();
    if (k < 3) return std::nullopt;
    const int hub_size = k - 1;
    const int satellites = 2 * k - 3;
    std::vector<Vertex> pool(allowed.begin(), allowed.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const int pool_size = static_cast<int>(pool.size());
    if (pool_size < 2 * (k - 1) * (k - 1)) return std::nullopt;

    std::vector<bool> in_pool(static_cast<std::size_t>(g.vertex_count()), false);
    for (Vertex v : pool) in_pool[static_cast<std::size_t>(v)] = true;

    std::vector<int> hub_idx(static_cast<std::size_t>(hub_size));
    for (int i = 0; i < hub_size; ++i) hub_idx[static_cast<std::size_t>(i)] = i;
    do {
        std::vector<Vertex> hub;
        for (int i : hub_idx) hub.push_back(pool[static_cast<std::size_t>(i)]);
        // satellite candidates: (k-1)-sets S in the pool with S + {x} an edge
        // for every hub vertex x
        std::vector<std::vector<Vertex>> candidates;
        std::vector<int> sat_idx(static_cast<std::size_t>(hub_size));
        for (int i = 0; i < hub_size; ++i) sat_idx[static_cast<std::size_t>(i)] = i;
        bool more = true;
        while (more) {
            std::vector<Vertex> sat;
            bool overlaps_hub = false;
            for (int i : sat_idx) {
                Vertex v = pool[static_cast<std::size_t>(i)];
                if (std::binary_search(hub.begin(), hub.end(), v)) {
                    overlaps_hub = true;
                    break;
                }
                sat.push_back(v);
            }
            if (!overlaps_hub) {
                bool all_edges = true;
                for (Vertex x : hub) {
                    Edge e = sat;
                    e.push_back(x);
                    std::sort(e.begin(), e.end());
                    if (!g.contains(e)) {
                        all_edges = false;
                        break;
                    }
                }
                if (all_edges) candidates.push_back(sat);
            }
            more = next_subset(sat_idx, pool_size);
        }
        if (static_cast<int>(candidates.size()) >= satellites) {
            // pick `satellites` pairwise disjoint candidates, first fit with backtracking
            std::vector<int> chosen;
            std::set<Vertex> used;
            auto rec = [&](auto&& self, std::size_t from) -> bool {
                if (static_cast<int>(chosen.size()) == satellites) return true;
                for (std::size_t c = from; c < candidates.size(); ++c) {
                    bool clash = false;
                    for (Vertex v : candidates[c])
                        if (used.count(v)) {
                            clash = true;
                            break;
                        }
                    if (clash) continue;
                    chosen.push_back(static_cast<int>(c));
                    for (Vertex v : candidates[c]) used.insert(v);
                    if (self(self, c + 1)) return true;
                    for (Vertex v : candidates[c]) used.erase(v);
                    chosen.pop_back();
                }
                return false;
            };
            if (rec(rec, 0)) {
                GadgetCopy copy;
                copy.parts.push_back(hub);
                for (int c : chosen) copy.parts.push_back(candidates[static_cast<std::size_t>(c)]);
                return copy;
            }
        }
    } while (next_subset(hub_idx, pool_size));
    return std::nullopt;
}

Packing greedy_pack(const KGraph& g) {
    Packing packing;
    packing.k = g.uniformity();
    std::vector<bool> taken(static_cast<std::size_t>(g.vertex_count()), false);
    while (true) {
        std::vector<Vertex> residual;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!taken[static_cast<std::size_t>(v)]) residual.push_back(v);
        auto copy = embed_gadget(g, residual);
        if (!copy) break;
        for (const auto& part : copy->parts)
            for (Vertex v : part) taken[static_cast<std::size_t>(v)] = true;
        packing.copies.push_back(std::move(*copy));
    }
    return packing;
}

std::optional<Packing> augment(const KGraph& g, const Packing& p, const AugmentBudget& budget) {
    ValidationReport valid = validate_packing(g, p);
    if (!valid.ok()) throw InvalidInput("invalid packing: " + valid.summary());
    const int k = g.uniformity();

    std::vector<bool> taken(static_cast<std::size_t>(g.vertex_count()), false);
    for (Vertex v : p.covered()) taken[static_cast<std::size_t>(v)] = true;
    std::vector<Vertex> uncovered;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!taken[static_cast<std::size_t>(v)]) uncovered.push_back(v);

    // a free copy in the residual counts as an augmentation
    if (auto free_copy = embed_gadget(g, uncovered)) {
        Packing grown = p;
        grown.k = k;
        grown.copies.push_back(std::move(*free_copy));
        return grown;
    }

    const int t = static_cast<int>(p.copies.size());
    if (t < k - 1 || static_cast<int>(uncovered.size()) < (k - 1) * k * (2 * k - 3)) return std::nullopt;

    // copy vertex sets for neighbourhood intersections
    std::vector<std::vector<Vertex>> copy_vertices(static_cast<std::size_t>(t));
    for (int q = 0; q < t; ++q) {
        for (const auto& part : p.copies[static_cast<std::size_t>(q)].parts)
            copy_vertices[static_cast<std::size_t>(q)].insert(copy_vertices[static_cast<std::size_t>(q)].end(),
                                                              part.begin(), part.end());
        std::sort(copy_vertices[static_cast<std::size_t>(q)].begin(), copy_vertices[static_cast<std::size_t>(q)].end());
    }

    // greedy family of pairwise disjoint (k-1)-sets in the uncovered vertices
    std::vector<std::vector<Vertex>> family;
    {
        std::vector<bool> used_x(static_cast<std::size_t>(g.vertex_count()), false);
        std::vector<int> idx(static_cast<std::size_t>(k - 1));
        for (int i = 0; i < k - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
        const int m = static_cast<int>(uncovered.size());
        if (m >= k - 1) {
            bool more = true;
            while (more && static_cast<int>(family.size()) < budget.max_disjoint_sets) {
                std::vector<Vertex> s;
                bool clash = false;
                for (int i : idx) {
                    Vertex v = uncovered[static_cast<std::size_t>(i)];
                    if (used_x[static_cast<std::size_t>(v)]) {
                        clash = true;
                        break;
                    }
                    s.push_back(v);
                }
                if (!clash) {
                    for (Vertex v : s) used_x[static_cast<std::size_t>(v)] = true;
                    family.push_back(std::move(s));
                }
                more = next_subset(idx, m);
            }
        }
    }

    // group the family by (Q, shared k-set targets per traded copy)
    const int needed = k * (2 * k - 3);
    std::map<std::vector<int>, std::vector<int>> pattern;  // key -> family indices
    for (std::size_t r = 0; r < family.size(); ++r) {
        std::vector<Vertex> nbhd = g.neighbourhood(family[r]);
        std::vector<int> hit_copies;
        std::vector<std::vector<Vertex>> hit_targets;
        for (int q = 0; q < t; ++q) {
            std::vector<Vertex> inter;
            std::set_intersection(nbhd.begin(), nbhd.end(), copy_vertices[static_cast<std::size_t>(q)].begin(),
                                  copy_vertices[static_cast<std::size_t>(q)].end(), std::back_inserter(inter));
            if (static_cast<int>(inter.size()) >= k) {
                hit_copies.push_back(q);
                inter.resize(static_cast<std::size_t>(k));  // lexicographically smallest k-set
                hit_targets.push_back(std::move(inter));
            }
        }
        if (static_cast<int>(hit_copies.size()) < k - 1) continue;
        std::vector<int> pick_idx(static_cast<std::size_t>(k - 1));
        for (int i = 0; i < k - 1; ++i) pick_idx[static_cast<std::size_t>(i)] = i;
        bool more = true;
        while (more) {
            std::vector<int> key;
            for (int i : pick_idx) key.push_back(hit_copies[static_cast<std::size_t>(i)]);
            for (int i : pick_idx) {
                key.push_back(-1);
                for (Vertex v : hit_targets[static_cast<std::size_t>(i)]) key.push_back(v);
            }
            std::vector<int>& members = pattern[key];
            members.push_back(static_cast<int>(r));
            if (static_cast<int>(members.size()) == needed) {
                // exchange: drop the k-1 traded copies, add k rebuilt ones
                std::vector<int> traded(key.begin(), key.begin() + (k - 1));
                std::vector<std::vector<Vertex>> targets;
                for (int i = 0; i < k - 1; ++i) {
                    std::size_t base = static_cast<std::size_t>(k - 1 + i * (k + 1) + 1);
                    targets.emplace_back(key.begin() + static_cast<std::ptrdiff_t>(base),
                                         key.begin() + static_cast<std::ptrdiff_t>(base + static_cast<std::size_t>(k)));
                }
                Packing grown;
                grown.k = k;
                for (int q = 0; q < t; ++q)
                    if (std::find(traded.begin(), traded.end(), q) == traded.end())
                        grown.copies.push_back(p.copies[static_cast<std::size_t>(q)]);
                for (int i = 0; i < k; ++i) {
                    GadgetCopy fresh;
                    std::vector<Vertex> hub;
                    for (const auto& target : targets) hub.push_back(target[static_cast<std::size_t>(i)]);
                    std::sort(hub.begin(), hub.end());
                    fresh.parts.push_back(std::move(hub));
                    for (int s = 0; s < 2 * k - 3; ++s)
                        fresh.parts.push_back(family[static_cast<std::size_t>(members[static_cast<std::size_t>(i * (2 * k - 3) + s)])]);
                    grown.copies.push_back(std::move(fresh));
                }
                ValidationReport check = validate_packing(g, grown);
                if (check.ok()) return grown;
                members.pop_back();  // pattern unusable with this representative; keep scanning
            }
            more = next_subset(pick_idx, static_cast<int>(hit_copies.size()));
        }
    }
    return std::nullopt;
}

Packing connected_filter(const KGraph& g, const Packing& p) {
    Packing kept;
    kept.k = p.k == 0 ? g.uniformity() : p.k;
    if (p.copies.empty()) return kept;
    std::vector<Vertex> covered = p.covered();
    auto [sub, mapping] = g.restrict(covered);
    auto classes = sub.components();
    // largest class, ties by smallest contained host id (classes are produced
    // in ascending order of their minimum, so the first maximum wins)
    std::size_t best = 0;
    for (std::size_t i = 1; i < classes.size(); ++i)
        if (classes[i].size() > classes[best].size()) best = i;
    std::vector<bool> in_best(static_cast<std::size_t>(g.vertex_count()), false);
    for (Vertex sub_v : classes[best])
        in_best[static_cast<std::size_t>(mapping.to_host[static_cast<std::size_t>(sub_v)])] = true;
    for (const GadgetCopy& copy : p.copies) {
        bool inside = true;
        for (const auto& part : copy.parts)
            for (Vertex v : part)
                if (!in_best[static_cast<std::size_t>(v)]) inside = false;
        if (inside) kept.copies.push_back(copy);
    }
    return kept;
}

}  // namespace looseham
