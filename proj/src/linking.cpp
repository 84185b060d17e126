#include "looseham/linking.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "looseham/constructions.hpp"
#include "looseham/errors.hpp"
#include "looseham/rng.hpp"
#include "looseham/search.hpp"

namespace looseham {

long long ClusterSystem::group_size(int i) const {
    long long total = 0;
    for (int s : groups[static_cast<std::size_t>(i)].class_sizes) total += s;
    return total;
}

std::vector<std::vector<int>> SupplementaryGraph::member_lists() const {
    std::vector<std::vector<int>> lists;
    lists.reserve(edges.size());
    for (const SupplementaryEdge& e : edges) lists.push_back(e.members);
    return lists;
}

namespace {

void validate_cluster_system(const ClusterSystem& cs) {
    if (cs.k < 2) throw InvalidInput("cluster system needs k >= 2");
    if (cs.groups.empty()) throw InvalidInput("cluster system needs at least one group");
    for (const ClusterGroup& g : cs.groups) {
        if (static_cast<int>(g.class_sizes.size()) != cs.k || static_cast<int>(g.clusters.size()) != cs.k)
            throw InvalidInput("each group needs k class sizes and k hosting clusters");
        for (int s : g.class_sizes)
            if (s < 1) throw InvalidInput("class sizes must be positive");
        for (int c : g.clusters)
            if (c < 0 || c >= cs.cluster_count) throw InvalidInput("hosting cluster out of range");
    }
    for (const Edge& e : cs.reduced_edges) {
        if (static_cast<int>(e.size()) != cs.k) throw InvalidInput("reduced edge size differs from k");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= cs.cluster_count) throw InvalidInput("reduced edge cluster out of range");
            if (i > 0 && e[i] <= e[i - 1]) throw InvalidInput("reduced edge not strictly ascending");
        }
    }
}

// groups owning a class hosted in each cluster
std::vector<std::vector<int>> groups_by_cluster(const ClusterSystem& cs) {
    std::vector<std::vector<int>> hosts(static_cast<std::size_t>(cs.cluster_count));
    for (int i = 0; i < cs.group_count(); ++i)
        for (int c : cs.groups[static_cast<std::size_t>(i)].clusters) {
            auto& list = hosts[static_cast<std::size_t>(c)];
            if (std::find(list.begin(), list.end(), i) == list.end()) list.push_back(i);
        }
    for (auto& list : hosts) std::sort(list.begin(), list.end());
    return hosts;
}

}  // namespace

SupplementaryGraph build_supplementary(const ClusterSystem& cs) {
    validate_cluster_system(cs);
    auto hosts = groups_by_cluster(cs);
    std::map<std::vector<int>, std::vector<int>> found;  // members -> lex-smallest witness
    for (const Edge& witness : cs.reduced_edges) {
        bool realizable = true;
        for (int c : witness)
            if (hosts[static_cast<std::size_t>(c)].empty()) {
                realizable = false;
                break;
            }
        if (!realizable) continue;
        std::vector<int> assignment(witness.size(), 0);
        while (true) {
            std::set<int> members;
            for (std::size_t j = 0; j < witness.size(); ++j)
                members.insert(hosts[static_cast<std::size_t>(witness[j])][static_cast<std::size_t>(assignment[j])]);
            if (members.size() >= 2) {
                std::vector<int> key(members.begin(), members.end());
                auto it = found.find(key);
                if (it == found.end() || witness < it->second) found[key] = witness;
            }
            // next assignment in the product
            std::size_t pos = 0;
            while (pos < witness.size()) {
                if (++assignment[pos] < static_cast<int>(hosts[static_cast<std::size_t>(witness[pos])].size())) break;
                assignment[pos] = 0;
                ++pos;
            }
            if (pos == witness.size()) break;
        }
    }
    SupplementaryGraph sg;
    sg.group_count = cs.group_count();
    for (auto& [members, witness] : found) sg.edges.push_back({members, witness});
    return sg;
}

bool verify_witness(const ClusterSystem& cs, const SupplementaryEdge& e) {
    if (std::find(cs.reduced_edges.begin(), cs.reduced_edges.end(), e.witness) == cs.reduced_edges.end())
        return false;
    auto hosts = groups_by_cluster(cs);
    // need an assignment cluster -> member group realizing exactly e.members
    std::vector<std::vector<int>> options;
    for (int c : e.witness) {
        std::vector<int> local;
        for (int i : hosts[static_cast<std::size_t>(c)])
            if (std::binary_search(e.members.begin(), e.members.end(), i)) local.push_back(i);
        if (local.empty()) return false;
        options.push_back(std::move(local));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
        std::set<int> chosen;
        for (std::size_t j = 0; j < options.size(); ++j) chosen.insert(options[j][pick[j]]);
        if (static_cast<int>(chosen.size()) == static_cast<int>(e.members.size())) return true;
        std::size_t pos = 0;
        while (pos < options.size()) {
            if (++pick[pos] < options[pos].size()) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == options.size()) return false;
    }
}

bool check_connected(const SupplementaryGraph& sg) {
    auto lists = sg.member_lists();
    return hyper_components(sg.group_count, std::span<const std::vector<int>>(lists)).size() <= 1;
}

Walk cover_walk(const SupplementaryGraph& sg, int from, int to) {
    const int t = sg.group_count;
    if (from < 0 || from >= t || to < 0 || to >= t) throw InvalidInput("walk endpoint out of range");
    if (t == 1) return Walk{{}, {from}};  // empty-walk convention for a single group
    if (!check_connected(sg)) throw InvalidInput("supplementary graph is not connected");

    // adjacency via shared supplementary edges
    std::vector<std::vector<std::pair<int, int>>> adjacent(static_cast<std::size_t>(t));  // (peer, edge)
    for (std::size_t idx = 0; idx < sg.edges.size(); ++idx)
        for (int u : sg.edges[idx].members)
            for (int v : sg.edges[idx].members) {
                if (u == v) continue;
                adjacent[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(idx));
            }
    for (auto& list : adjacent) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    // BFS tree rooted at `from`
    std::vector<int> parent(static_cast<std::size_t>(t), -1);
    std::vector<int> parent_edge(static_cast<std::size_t>(t), -1);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(t));
    std::vector<bool> seen(static_cast<std::size_t>(t), false);
    std::queue<int> queue;
    seen[static_cast<std::size_t>(from)] = true;
    queue.push(from);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (auto [v, idx] : adjacent[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = true;
            parent[static_cast<std::size_t>(v)] = u;
            parent_edge[static_cast<std::size_t>(v)] = idx;
            children[static_cast<std::size_t>(u)].push_back(v);
            queue.push(v);
        }
    }

    // depth-first tour from `from`; branches towards `to` are explored last
    // and not walked back, so the tour ends at `to` after visiting every
    // group. Length 2(t-1) - depth(to) <= t^2.
    std::vector<bool> on_spine(static_cast<std::size_t>(t), false);
    for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)])
        on_spine[static_cast<std::size_t>(v)] = true;
    Walk walk;
    walk.vertices.push_back(from);
    auto tour = [&](auto&& self, int u) -> void {
        std::vector<int> kids = children[static_cast<std::size_t>(u)];
        std::stable_partition(kids.begin(), kids.end(),
                              [&](int c) { return !on_spine[static_cast<std::size_t>(c)]; });
        for (int c : kids) {
            walk.edge_indices.push_back(parent_edge[static_cast<std::size_t>(c)]);
            walk.vertices.push_back(c);
            self(self, c);
            if (!on_spine[static_cast<std::size_t>(c)]) {
                walk.edge_indices.push_back(parent_edge[static_cast<std::size_t>(c)]);
                walk.vertices.push_back(u);
            }
        }
    };
    tour(tour, from);
    return walk;
}

LinkPlan plan_congruences(const ClusterSystem& cs, const SupplementaryGraph& sg, const Walk& walk,
                          int initial_excess) {
    validate_cluster_system(cs);
    const int k = cs.k;
    const int mod = k - 1;
    const int t = cs.group_count();
    auto norm = [mod](long long x) { return static_cast<int>(((x % mod) + mod) % mod); };

    if (norm(initial_excess) != norm(-1))
        throw InvalidInput("initial excess must be -1 mod (k-1)");
    long long total = 0;
    for (int i = 0; i < t; ++i) total += cs.group_size(i);
    if (norm(total) != norm(initial_excess))
        throw InvalidInput("group sizes disagree with the stated initial excess");

    if (!walk.edge_indices.empty()) {
        auto lists = sg.member_lists();
        if (!walk_is_valid(std::span<const std::vector<int>>(lists), walk))
            throw InvalidInput("walk is not valid in the supplementary graph");
    } else if (walk.vertices.size() != 1) {
        throw InvalidInput("empty walk must carry exactly one waypoint");
    }

    LinkPlan plan;
    plan.k = k;
    plan.walk = walk;
    plan.visit_counts.assign(static_cast<std::size_t>(t), 0);
    for (int r : walk.vertices) {
        if (r < 0 || r >= t) throw InvalidInput("walk waypoint out of range");
        ++plan.visit_counts[static_cast<std::size_t>(r)];
    }
    for (int i = 0; i < t; ++i)
        if (plan.visit_counts[static_cast<std::size_t>(i)] == 0)
            throw InvalidInput("walk must visit every group");

    std::vector<long long> size(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) size[static_cast<std::size_t>(i)] = cs.group_size(i);
    plan.initial_sizes = size;

    for (std::size_t j = 0; j < walk.edge_indices.size(); ++j) {
        const SupplementaryEdge& edge = sg.edges[static_cast<std::size_t>(walk.edge_indices[j])];
        const int arrive = walk.vertices[j + 1];
        LinkPlan::Step step;
        step.supplementary_edge = walk.edge_indices[j];
        int other_sum = 0;
        for (int i : edge.members) {
            if (i == arrive) continue;
            int target = norm(size[static_cast<std::size_t>(i)] + plan.visit_counts[static_cast<std::size_t>(i)]);
            step.residues[i] = target;
            other_sum += target;
        }
        step.residues[arrive] = norm(1 - other_sum);
        for (const auto& [i, target] : step.residues) {
            step.consumed[i] = target;
            size[static_cast<std::size_t>(i)] -= target;
            if (size[static_cast<std::size_t>(i)] < 0)
                throw InvalidInput("group " + std::to_string(i) + " too small for the planned consumption");
        }
        plan.steps.push_back(std::move(step));
    }

    plan.final_sizes = size;
    plan.final_congruence_ok = true;
    plan.leftover_congruence_ok = true;
    for (int i = 0; i < t; ++i) {
        const int d = plan.visit_counts[static_cast<std::size_t>(i)];
        long long leftover = size[static_cast<std::size_t>(i)] - 2LL * (k - 2) * d;
        plan.after_prepath_sizes.push_back(leftover);
        if (norm(size[static_cast<std::size_t>(i)]) != norm(-d)) plan.final_congruence_ok = false;
        if (norm(leftover) != norm(d)) plan.leftover_congruence_ok = false;
    }
    return plan;
}

AbsorbOutcome absorb_exceptional(const KGraph& g, const std::vector<Vertex>& stray,
                                 const std::vector<Vertex>& pool, const std::optional<AbSpec>& ab) {
    const int k = g.uniformity();
    if (k < 3) throw InvalidInput("absorption needs k >= 3");
    AbsorbOutcome outcome;
    if (static_cast<int>(stray.size()) % (k - 2) != 0)
        throw InvalidInput("stray vertex count must be 0 mod (k-2)");
    std::set<Vertex> pool_set(pool.begin(), pool.end());
    for (Vertex v : stray)
        if (pool_set.count(v)) throw InvalidInput("stray vertices must not appear in the pool");

    std::vector<Vertex> chunks = stray;
    std::sort(chunks.begin(), chunks.end());
    outcome.chunks_total = static_cast<int>(chunks.size()) / (k - 2);

    LoosePath path;
    std::set<Vertex> used;
    Vertex prev_link = -1;

    if (ab) {
        std::vector<Vertex> a = ab->a_set, b = ab->b_set;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (static_cast<int>(a.size()) != k - 1 || static_cast<int>(b.size()) != k - 1)
            throw InvalidInput("A and B must have k-1 vertices");
        std::vector<Vertex> overlap, a_only, b_only;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(overlap));
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(a_only));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(b_only));
        const int o = static_cast<int>(overlap.size());
        if (o < 1 || o > k - 1) throw InvalidInput("A and B must overlap in 1..k-1 vertices");
        const int want = ((1 - g.vertex_count()) % (k - 1) + (k - 1)) % (k - 1);
        if (o % (k - 1) != want) throw InvalidInput("A/B overlap must be 1-n mod (k-1)");
        for (Vertex v : a)
            if (!pool_set.count(v)) throw InvalidInput("A must be drawn from the pool");
        for (Vertex v : b)
            if (!pool_set.count(v)) throw InvalidInput("B must be drawn from the pool");
        for (Vertex v : a) used.insert(v);
        for (Vertex v : b) used.insert(v);

        Vertex x0 = -1, x1 = -1;
        for (Vertex v : pool) {
            if (used.count(v)) continue;
            Edge e = a;
            e.push_back(v);
            std::sort(e.begin(), e.end());
            if (g.contains(e)) {
                x0 = v;
                break;
            }
        }
        if (x0 >= 0) used.insert(x0);
        for (Vertex v : pool) {
            if (used.count(v) || v == x0) continue;
            Edge e = b;
            e.push_back(v);
            std::sort(e.begin(), e.end());
            if (g.contains(e)) {
                x1 = v;
                break;
            }
        }
        if (x0 < 0 || x1 < 0) {
            outcome.detail = "no pool vertex completes the first edge pair";
            return outcome;
        }
        used.insert(x1);
        path.order.push_back(x0);
        path.order.insert(path.order.end(), a_only.begin(), a_only.end());
        path.order.insert(path.order.end(), overlap.begin(), overlap.end());
        path.order.insert(path.order.end(), b_only.begin(), b_only.end());
        path.order.push_back(x1);
        Edge first = a;
        first.push_back(x0);
        std::sort(first.begin(), first.end());
        Edge second = b;
        second.push_back(x1);
        std::sort(second.begin(), second.end());
        path.edges.push_back(std::move(first));
        path.edges.push_back(std::move(second));
        prev_link = x1;
    }

    for (int c = 0; c < outcome.chunks_total; ++c) {
        std::vector<Vertex> chunk(chunks.begin() + static_cast<std::ptrdiff_t>(c) * (k - 2),
                                  chunks.begin() + static_cast<std::ptrdiff_t>(c + 1) * (k - 2));
        if (prev_link < 0) {
            // no leading edge pair: pick the chain's first two links greedily
            bool placed = false;
            for (Vertex x1 : pool) {
                if (used.count(x1)) continue;
                for (Vertex x2 : pool) {
                    if (x2 == x1 || used.count(x2)) continue;
                    Edge e = chunk;
                    e.push_back(x1);
                    e.push_back(x2);
                    std::sort(e.begin(), e.end());
                    if (!g.contains(e)) continue;
                    used.insert(x1);
                    used.insert(x2);
                    path.order.push_back(x1);
                    path.order.insert(path.order.end(), chunk.begin(), chunk.end());
                    path.order.push_back(x2);
                    path.edges.push_back(std::move(e));
                    prev_link = x2;
                    placed = true;
                    break;
                }
                if (placed) break;
            }
            if (!placed) {
                outcome.chunks_absorbed = c;
                outcome.detail = "no pool pair absorbs the first chunk";
                return outcome;
            }
        } else {
            Vertex next = -1;
            for (Vertex v : pool) {
                if (used.count(v)) continue;
                Edge e = chunk;
                e.push_back(prev_link);
                e.push_back(v);
                std::sort(e.begin(), e.end());
                if (g.contains(e)) {
                    next = v;
                    break;
                }
            }
            if (next < 0) {
                outcome.chunks_absorbed = c;
                outcome.detail = "pool exhausted while absorbing chunk " + std::to_string(c);
                return outcome;
            }
            used.insert(next);
            Edge e = chunk;
            e.push_back(prev_link);
            e.push_back(next);
            std::sort(e.begin(), e.end());
            path.order.insert(path.order.end(), chunk.begin(), chunk.end());
            path.order.push_back(next);
            path.edges.push_back(std::move(e));
            prev_link = next;
        }
        outcome.chunks_absorbed = c + 1;
    }

    if (ab) {
        // the choice of |A + B| pins the leftover residue at -1 mod (k-1)
        const int mod = k - 1;
        const int leftover = ((g.vertex_count() - static_cast<int>(path.order.size())) % mod + mod) % mod;
        if (leftover != mod - 1) throw InvalidInput("leftover residue disagrees with the A/B overlap");
    }
    outcome.path = std::move(path);
    return outcome;
}

std::optional<PrepathExtension> extend_to_prepath(const KGraph& g, const LoosePath& p,
                                                  const std::vector<Vertex>& initial_pool,
                                                  const std::vector<Vertex>& final_pool) {
    const int k = g.uniformity();
    if (k < 3) throw InvalidInput("prepaths need k >= 3");
    if (p.order.empty()) throw InvalidInput("cannot extend an empty path");
    std::set<Vertex> on_path(p.order.begin(), p.order.end());

    auto best_side = [&](const std::vector<Vertex>& pool_in, Vertex anchor,
                         const std::set<Vertex>& blocked)
        -> std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> {
        std::vector<Vertex> pool;
        for (Vertex v : pool_in)
            if (!on_path.count(v) && !blocked.count(v)) pool.push_back(v);
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        const int m = static_cast<int>(pool.size());
        if (m < k - 1) return std::nullopt;  // k-2 side vertices plus one endpoint
        std::vector<int> idx(static_cast<std::size_t>(k - 2));
        for (int i = 0; i < k - 2; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> best;
        while (true) {
            std::vector<Vertex> side;
            for (int i : idx) side.push_back(pool[static_cast<std::size_t>(i)]);
            std::vector<Vertex> extenders;
            for (Vertex x : pool) {
                if (std::binary_search(side.begin(), side.end(), x)) continue;
                Edge e = side;
                e.push_back(anchor);
                e.push_back(x);
                std::sort(e.begin(), e.end());
                if (g.contains(e)) extenders.push_back(x);
            }
            if (!extenders.empty() && (!best || extenders.size() > best->second.size()))
                best = {side, extenders};
            // advance the (k-2)-subset
            int i = k - 3;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - (k - 2) + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k - 2; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        return best;
    };

    auto initial_side = best_side(initial_pool, p.order.front(), {});
    if (!initial_side) return std::nullopt;
    std::set<Vertex> blocked(initial_side->first.begin(), initial_side->first.end());
    auto final_side = best_side(final_pool, p.order.back(), blocked);
    if (!final_side) return std::nullopt;

    PrepathExtension ext;
    ext.prepath = Prepath{p, initial_side->first, final_side->first};
    ext.possible_initial = initial_side->second;
    ext.possible_final = final_side->second;
    // a reserved side vertex cannot double as the other side's endpoint
    auto scrub = [](std::vector<Vertex>& xs, const std::vector<Vertex>& reserved) {
        xs.erase(std::remove_if(xs.begin(), xs.end(),
                                [&](Vertex v) {
                                    return std::find(reserved.begin(), reserved.end(), v) != reserved.end();
                                }),
                 xs.end());
    };
    scrub(ext.possible_initial, ext.prepath.f_set);
    scrub(ext.possible_final, ext.prepath.i_set);
    if (ext.possible_initial.empty() || ext.possible_final.empty()) return std::nullopt;
    return ext;
}

SyntheticInstance make_synthetic(int k, int groups, int n, double density, std::uint64_t seed) {
    if (k < 3) throw InvalidInput("synthetic instances need k >= 3");
    if (groups < 1) throw InvalidInput("need at least one group");
    if (binomial(n, k) > 20'000'000ULL) throw InvalidInput("instance too large for a dense host");
    const int slots = groups * k;
    int stray = n % slots;
    stray += ((k - 2) - stray % (k - 2)) % (k - 2);  // whole (k-2)-chunks only
    if (n - stray < slots * 3) throw InvalidInput("host too small for the requested groups");

    SplitMix64 rng(derive_seed(seed, 0x5eed));
    std::vector<Vertex> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);

    SyntheticInstance inst{
        density >= 1.0 ? KGraph::complete(n, k) : KGraph(n, k, {}),
        {}, {}, {}, {}};
    if (density < 1.0) {
        // seeded random host at the requested density
        std::vector<Edge> edges;
        Edge cur(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (rng.unit() < density) edges.push_back(cur);
            int i = k - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
        inst.host = KGraph::unchecked(n, k, std::move(edges));
    }

    inst.group_of.assign(static_cast<std::size_t>(n), -1);
    inst.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < stray; ++s) inst.stray.push_back(ids[static_cast<std::size_t>(s)]);
    std::sort(inst.stray.begin(), inst.stray.end());

    inst.system.k = k;
    inst.system.cluster_count = k + (groups - 1) * (k - 1);
    inst.system.groups.resize(static_cast<std::size_t>(groups));
    for (int i = 0; i < groups; ++i) {
        auto& group = inst.system.groups[static_cast<std::size_t>(i)];
        group.class_sizes.assign(static_cast<std::size_t>(k), 0);
        for (int c = 0; c < k; ++c) group.clusters.push_back(i * (k - 1) + c);
    }
    for (int i = 0; i < groups; ++i) {
        Edge reduced;
        for (int c = 0; c < k; ++c) reduced.push_back(i * (k - 1) + c);
        inst.system.reduced_edges.push_back(std::move(reduced));
    }
    // deal the remaining ids round-robin over (group, class) slots
    int slot = 0;
    for (int pos = stray; pos < n; ++pos) {
        const int group = slot % groups;
        const int cls = slot / groups % k;
        Vertex v = ids[static_cast<std::size_t>(pos)];
        inst.group_of[static_cast<std::size_t>(v)] = group;
        inst.class_of[static_cast<std::size_t>(v)] = cls;
        ++inst.system.groups[static_cast<std::size_t>(group)].class_sizes[static_cast<std::size_t>(cls)];
        slot = (slot + 1) % slots;
    }
    return inst;
}

namespace {

// round-robin interleaving across class lists, for draws that should consume
// classes evenly
std::vector<Vertex> interleave(const std::vector<std::vector<Vertex>>& lists) {
    std::vector<Vertex> result;
    std::size_t longest = 0;
    for (const auto& l : lists) longest = std::max(longest, l.size());
    for (std::size_t round = 0; round < longest; ++round)
        for (const auto& l : lists)
            if (round < l.size()) result.push_back(l[round]);
    return result;
}

}  // namespace

PipelineResult assemble_pipeline(const SyntheticInstance& instance) {
    PipelineResult result;
    const KGraph& host = instance.host;
    const int k = host.uniformity();
    const int mod = k - 1;
    const int t = instance.system.group_count();
    auto fail = [&](const std::string& stage, const std::string& detail) -> PipelineResult& {
        result.failed_stage = stage;
        result.detail = detail;
        return result;
    };
    auto norm = [mod](long long x) { return static_cast<int>(((x % mod) + mod) % mod); };

    // per-group, per-class available vertices (ascending)
    std::vector<std::vector<std::vector<Vertex>>> avail(static_cast<std::size_t>(t),
                                                        std::vector<std::vector<Vertex>>(static_cast<std::size_t>(k)));
    for (int v = 0; v < host.vertex_count(); ++v) {
        int g = instance.group_of[static_cast<std::size_t>(v)];
        if (g < 0) continue;
        avail[static_cast<std::size_t>(g)][static_cast<std::size_t>(instance.class_of[static_cast<std::size_t>(v)])]
            .push_back(v);
    }
    std::vector<bool> reserved(static_cast<std::size_t>(host.vertex_count()), false);
    auto remove_from_avail = [&](const std::vector<Vertex>& vs) {
        std::set<Vertex> drop(vs.begin(), vs.end());
        for (auto& group : avail)
            for (auto& cls : group)
                cls.erase(std::remove_if(cls.begin(), cls.end(),
                                         [&](Vertex v) { return drop.count(v) > 0; }),
                          cls.end());
    };

    // stage 1: exceptional path over the stray vertices
    int overlap = norm(1 - host.vertex_count());
    if (overlap == 0) overlap = mod;
    std::vector<Vertex> pool;
    {
        // class-major interleave alternates groups, spreading the draws and
        // keeping the exceptional path's endpoints in different groups
        std::vector<std::vector<Vertex>> all_classes;
        for (int c = 0; c < k; ++c)
            for (const auto& group : avail) all_classes.push_back(group[static_cast<std::size_t>(c)]);
        pool = interleave(all_classes);
    }
    if (static_cast<int>(pool.size()) < 2 * (k - 1)) return fail("exceptional_path", "pool too small");
    AbSpec ab;
    ab.a_set.assign(pool.begin(), pool.begin() + (k - 1));
    ab.b_set.assign(pool.begin() + (k - 1 - overlap), pool.begin() + (2 * (k - 1) - overlap));
    AbsorbOutcome absorbed = absorb_exceptional(host, instance.stray, pool, ab);
    if (!absorbed.ok()) return fail("exceptional_path", absorbed.detail);
    LoosePath exceptional = *absorbed.path;
    // when both ends landed in one group, one more edge moves the final
    // vertex elsewhere and keeps the cover walk short
    if (t >= 2 &&
        instance.group_of[static_cast<std::size_t>(exceptional.order.front())] ==
            instance.group_of[static_cast<std::size_t>(exceptional.order.back())]) {
        const int end_group = instance.group_of[static_cast<std::size_t>(exceptional.order.back())];
        std::set<Vertex> used(exceptional.order.begin(), exceptional.order.end());
        std::vector<Vertex> open;
        for (Vertex v : pool)
            if (!used.count(v)) open.push_back(v);
        bool extended = false;
        for (Vertex final_v : open) {
            if (instance.group_of[static_cast<std::size_t>(final_v)] == end_group) continue;
            // first fitting (k-2)-set of interior vertices, in pool order
            std::vector<int> pick(static_cast<std::size_t>(k - 2));
            for (int i = 0; i < k - 2; ++i) pick[static_cast<std::size_t>(i)] = i;
            const int m = static_cast<int>(open.size());
            bool more = m >= k - 2;
            while (more && !extended) {
                std::vector<Vertex> interior;
                for (int i : pick) {
                    Vertex u = open[static_cast<std::size_t>(i)];
                    if (u == final_v) break;
                    interior.push_back(u);
                }
                if (static_cast<int>(interior.size()) == k - 2) {
                    Edge extra = interior;
                    extra.push_back(exceptional.order.back());
                    extra.push_back(final_v);
                    std::sort(extra.begin(), extra.end());
                    if (host.contains(extra)) {
                        exceptional.order.insert(exceptional.order.end(), interior.begin(), interior.end());
                        exceptional.order.push_back(final_v);
                        exceptional.edges.push_back(std::move(extra));
                        extended = true;
                    }
                }
                int i = k - 3;
                while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - (k - 2) + i) --i;
                if (i < 0) break;
                ++pick[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k - 2; ++j)
                    pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
            }
            if (extended) break;
        }
        // an unextended path still works, just with a longer cover walk
    }
    {
        ValidationReport check = validate_exceptional_path(host, exceptional);
        if (!check.ok()) return fail("exceptional_path", check.summary());
    }
    remove_from_avail(exceptional.order);

    // stage 2: sizes and congruence plan
    ClusterSystem current = instance.system;
    long long remaining_total = 0;
    for (int i = 0; i < t; ++i)
        for (int c = 0; c < k; ++c) {
            current.groups[static_cast<std::size_t>(i)].class_sizes[static_cast<std::size_t>(c)] =
                static_cast<int>(avail[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].size());
            remaining_total += static_cast<long long>(avail[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].size());
        }
    if (norm(remaining_total) != norm(-1)) return fail("congruence", "leftover total not -1 mod (k-1)");

    SupplementaryGraph sg = build_supplementary(current);
    if (!check_connected(sg)) return fail("supplementary_connectivity", "supplementary graph disconnected");

    const int group_a = instance.group_of[static_cast<std::size_t>(exceptional.order.front())];
    const int group_b = instance.group_of[static_cast<std::size_t>(exceptional.order.back())];
    if (group_a < 0 || group_b < 0) return fail("prepath_exceptional", "exceptional endpoints must lie in groups");
    Walk walk = cover_walk(sg, group_b, group_a);
    LinkPlan plan;
    try {
        plan = plan_congruences(current, sg, walk, norm(remaining_total));
    } catch (const InvalidInput& e) {
        return fail("congruence", e.what());
    }
    result.plan = plan;
    if (!plan.final_congruence_ok || !plan.leftover_congruence_ok)
        return fail("congruence", "plan certification failed");

    // stage 3: prepaths: first the exceptional path, then one per walk edge
    const std::size_t segments = walk.edge_indices.size() + 1;
    std::vector<Prepath> prepaths;
    std::vector<std::vector<Vertex>> poss_initial(segments), poss_final(segments);
    auto group_pool = [&](int g) {
        std::vector<std::vector<Vertex>> open(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c)
            for (Vertex v : avail[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)])
                if (!reserved[static_cast<std::size_t>(v)]) open[static_cast<std::size_t>(c)].push_back(v);
        return interleave(open);
    };
    auto reserve = [&](const std::vector<Vertex>& vs) {
        for (Vertex v : vs) reserved[static_cast<std::size_t>(v)] = true;
    };
    {
        auto ext = extend_to_prepath(host, exceptional, group_pool(group_a), group_pool(group_b));
        if (!ext) return fail("prepath_exceptional", "no extension for the exceptional path");
        prepaths.push_back(ext->prepath);
        poss_initial[0] = ext->possible_initial;
        poss_final[0] = ext->possible_final;
        reserve(ext->prepath.i_set);
        reserve(ext->prepath.f_set);
    }

    // stage 4: connecting paths along the walk
    for (std::size_t j = 0; j < walk.edge_indices.size(); ++j) {
        const SupplementaryEdge& edge = sg.edges[static_cast<std::size_t>(walk.edge_indices[j])];
        const int depart = walk.vertices[j];
        const int arrive = walk.vertices[j + 1];
        ConnectSpec spec;
        spec.cluster_of.assign(static_cast<std::size_t>(host.vertex_count()), -1);
        for (int g : edge.members)
            for (const auto& cls : avail[static_cast<std::size_t>(g)])
                for (Vertex v : cls)
                    if (!reserved[static_cast<std::size_t>(v)]) spec.cluster_of[static_cast<std::size_t>(v)] = g;
        spec.residues = plan.steps[j].residues;
        spec.start_cluster = depart;
        spec.end_cluster = arrive;
        SearchResult<LoosePath> found = find_loose_path_constrained(host, spec);
        if (!found.found())
            return fail("connecting_path", "step " + std::to_string(j) + ": " + to_string(found.status));
        LoosePath link_path = *found.value;
        remove_from_avail(link_path.order);
        auto ext = extend_to_prepath(host, link_path, group_pool(depart), group_pool(arrive));
        if (!ext) return fail("prepath", "no extension for connecting path " + std::to_string(j));
        prepaths.push_back(ext->prepath);
        poss_initial[j + 1] = ext->possible_initial;
        poss_final[j + 1] = ext->possible_final;
        reserve(ext->prepath.i_set);
        reserve(ext->prepath.f_set);
    }

    // stage 5: split each group's leftovers into its quota of paths
    // slot s (1-based) joins prepath s-1's final side to prepath (s mod
    // segments)'s initial side and lives in group walk.vertices[s-1]
    std::vector<LoosePath> connectors(segments);
    std::vector<std::vector<int>> slots_of_group(static_cast<std::size_t>(t));
    for (std::size_t s = 1; s <= segments; ++s)
        slots_of_group[static_cast<std::size_t>(walk.vertices[s - 1])].push_back(static_cast<int>(s));

    for (int g = 0; g < t; ++g) {
        auto& slots = slots_of_group[static_cast<std::size_t>(g)];
        auto& classes = avail[static_cast<std::size_t>(g)];
        auto usable = [&](const std::vector<Vertex>& candidates) {
            std::vector<Vertex> ok;
            for (Vertex v : candidates) {
                if (reserved[static_cast<std::size_t>(v)]) continue;
                for (const auto& cls : classes)
                    if (std::binary_search(cls.begin(), cls.end(), v)) {
                        ok.push_back(v);
                        break;
                    }
            }
            std::sort(ok.begin(), ok.end());
            return ok;
        };
        auto class_index_of = [&](Vertex v) {
            for (int c = 0; c < k; ++c)
                if (std::binary_search(classes[static_cast<std::size_t>(c)].begin(),
                                       classes[static_cast<std::size_t>(c)].end(), v))
                    return c;
            return -1;
        };
        for (std::size_t si = 0; si < slots.size(); ++si) {
            const int s = slots[si];
            const std::size_t from_pre = static_cast<std::size_t>(s - 1);
            const std::size_t to_pre = static_cast<std::size_t>(s) % segments;
            std::vector<Vertex> starts = usable(poss_final[from_pre]);
            std::vector<Vertex> ends = usable(poss_initial[to_pre]);
            if (starts.empty()) return fail("group_split", "slot " + std::to_string(s) + ": start pool exhausted");
            Vertex x = starts.front();
            ends.erase(std::remove(ends.begin(), ends.end(), x), ends.end());
            if (ends.empty()) return fail("group_split", "slot " + std::to_string(s) + ": end pool exhausted");
            Vertex y = ends.front();

            const bool spanning = (si + 1 == slots.size());
            LoosePath piece;
            if (!spanning) {
                // two-edge path: x, k-2 interior, link, k-2 interior, y drawn
                // from the largest classes to keep them balanced
                std::set<Vertex> taken{x, y};
                std::vector<Vertex> extra;
                for (int need = 0; need < 2 * k - 3; ++need) {
                    int best_class = -1;
                    std::size_t best_left = 0;
                    for (int c = 0; c < k; ++c) {
                        std::size_t left = 0;
                        for (Vertex v : classes[static_cast<std::size_t>(c)])
                            if (!reserved[static_cast<std::size_t>(v)] && !taken.count(v)) ++left;
                        if (left > best_left) {
                            best_left = left;
                            best_class = c;
                        }
                    }
                    if (best_class < 0) return fail("group_split", "slot " + std::to_string(s) + ": group exhausted");
                    for (Vertex v : classes[static_cast<std::size_t>(best_class)])
                        if (!reserved[static_cast<std::size_t>(v)] && !taken.count(v)) {
                            extra.push_back(v);
                            taken.insert(v);
                            break;
                        }
                }
                piece.order.push_back(x);
                for (int i = 0; i < k - 2; ++i) piece.order.push_back(extra[static_cast<std::size_t>(i + 1)]);
                piece.order.push_back(extra[0]);  // link
                for (int i = 0; i < k - 2; ++i) piece.order.push_back(extra[static_cast<std::size_t>(k - 1 + i)]);
                piece.order.push_back(y);
                for (int e = 0; e < 2; ++e) {
                    Edge window(piece.order.begin() + e * (k - 1), piece.order.begin() + e * (k - 1) + k);
                    std::sort(window.begin(), window.end());
                    if (!host.contains(window))
                        return fail("group_split", "slot " + std::to_string(s) + ": host lacks a split edge");
                    piece.edges.push_back(std::move(window));
                }
            } else {
                // spanning path over everything left in the group
                PartitionedVertexSet parts;
                std::vector<int> counts;
                std::vector<Vertex> remainder;
                for (int c = 0; c < k; ++c) {
                    std::vector<Vertex> left;
                    for (Vertex v : classes[static_cast<std::size_t>(c)])
                        if (!reserved[static_cast<std::size_t>(v)]) left.push_back(v);
                    counts.push_back(static_cast<int>(left.size()));
                    remainder.insert(remainder.end(), left.begin(), left.end());
                    parts.classes.push_back(std::move(left));
                }
                const int s_class = class_index_of(x);
                const int t_class = class_index_of(y);
                if (s_class < 0 || t_class < 0)
                    return fail("group_split", "slot " + std::to_string(s) + ": endpoint left the group");
                bool built = false;
                try {
                    piece = build_loose_path_complete(parts, counts, s_class, t_class);
                    built = true;
                } catch (const InvalidInput&) {
                    // class profile misses the complete-partite bounds at this
                    // scale; fall back to a direct layout checked on the host
                }
                if (built) {
                    // rotate the chosen endpoints into place; in-class swaps
                    // keep every edge transversal
                    auto swap_into = [&](Vertex wanted, std::size_t position) {
                        if (piece.order[position] == wanted) return;
                        auto it = std::find(piece.order.begin(), piece.order.end(), wanted);
                        std::iter_swap(it, piece.order.begin() + static_cast<std::ptrdiff_t>(position));
                    };
                    swap_into(x, 0);
                    swap_into(y, piece.order.size() - 1);
                } else {
                    if (static_cast<int>(remainder.size()) < k ||
                        (static_cast<int>(remainder.size()) - 1) % (k - 1) != 0)
                        return fail("group_split",
                                    "slot " + std::to_string(s) + ": leftover count unusable (" +
                                        std::to_string(remainder.size()) + " left in group " +
                                        std::to_string(g) + ")");
                    piece = LoosePath{};
                    piece.order.push_back(x);
                    std::sort(remainder.begin(), remainder.end());
                    for (Vertex v : remainder)
                        if (v != x && v != y) piece.order.push_back(v);
                    piece.order.push_back(y);
                }
                piece.edges.clear();
                const int edge_total = (static_cast<int>(piece.order.size()) - 1) / (k - 1);
                for (int e = 0; e < edge_total; ++e) {
                    Edge window(piece.order.begin() + e * (k - 1), piece.order.begin() + e * (k - 1) + k);
                    std::sort(window.begin(), window.end());
                    if (!host.contains(window))
                        return fail("group_split", "slot " + std::to_string(s) + ": host lacks a spanning edge");
                    piece.edges.push_back(std::move(window));
                }
            }
            {
                ValidationReport check = validate_loose_path(host, piece);
                if (!check.ok()) return fail("group_split", "slot " + std::to_string(s) + ": " + check.summary());
            }
            remove_from_avail(piece.order);
            connectors[static_cast<std::size_t>(s % segments)] = piece;
        }
    }
    for (int g = 0; g < t; ++g)
        for (const auto& cls : avail[static_cast<std::size_t>(g)])
            for (Vertex v : cls)
                if (!reserved[static_cast<std::size_t>(v)])
                    return fail("group_split", "vertex " + std::to_string(v) + " left unused");

    // stage 6: close the cycle. concatenate expects prepath j followed by
    // connector j; connector j here is the slot landing on prepath (j+1)
    std::vector<LoosePath> ordered;
    for (std::size_t j = 0; j < segments; ++j) ordered.push_back(connectors[(j + 1) % segments]);
    ConcatResult closed = concatenate(prepaths, ordered, host);
    if (!closed.ok()) return fail("concatenate", closed.report.summary());
    ValidationReport final_check = validate_loose_cycle(host, *closed.cycle, true);
    if (!final_check.ok()) return fail("final_validation", final_check.summary());
    result.cycle = std::move(closed.cycle);
    return result;
}

}  // namespace looseham
