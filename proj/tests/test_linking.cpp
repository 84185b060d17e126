#include <doctest.h>

#include "looseham/errors.hpp"
#include "looseham/linking.hpp"
#include "test_support.hpp"

using namespace looseham;

namespace {

// chain-shaped system: group i hosts classes in clusters i(k-1)..i(k-1)+k-1,
// consecutive groups share a cluster; one reduced edge per group
ClusterSystem chain_system(int k, int groups, int class_size) {
    ClusterSystem cs;
    cs.k = k;
    cs.cluster_count = k + (groups - 1) * (k - 1);
    for (int i = 0; i < groups; ++i) {
        ClusterGroup g;
        for (int c = 0; c < k; ++c) {
            g.class_sizes.push_back(class_size);
            g.clusters.push_back(i * (k - 1) + c);
        }
        cs.groups.push_back(std::move(g));
    }
    for (int i = 0; i < groups; ++i) {
        Edge e;
        for (int c = 0; c < k; ++c) e.push_back(i * (k - 1) + c);
        cs.reduced_edges.push_back(std::move(e));
    }
    return cs;
}

// random system over a pool of clusters; regenerated until the supplementary
// graph comes out connected
ClusterSystem random_connected_system(int k, int groups, SplitMix64& rng) {
    while (true) {
        ClusterSystem cs;
        cs.k = k;
        cs.cluster_count = groups * k - (groups - 1);  // enough room with sharing
        for (int i = 0; i < groups; ++i) {
            ClusterGroup g;
            std::vector<int> clusters;
            while (static_cast<int>(clusters.size()) < k) {
                int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(cs.cluster_count)));
                if (std::find(clusters.begin(), clusters.end(), c) == clusters.end()) clusters.push_back(c);
            }
            for (int c = 0; c < k; ++c) {
                g.class_sizes.push_back(4 * k + static_cast<int>(rng.below(10)));
                g.clusters.push_back(clusters[static_cast<std::size_t>(c)]);
            }
            cs.groups.push_back(std::move(g));
        }
        for (int i = 0; i < groups; ++i) {
            Edge e = cs.groups[static_cast<std::size_t>(i)].clusters;
            std::sort(e.begin(), e.end());
            cs.reduced_edges.push_back(std::move(e));
        }
        std::sort(cs.reduced_edges.begin(), cs.reduced_edges.end());
        cs.reduced_edges.erase(std::unique(cs.reduced_edges.begin(), cs.reduced_edges.end()),
                               cs.reduced_edges.end());
        SupplementaryGraph sg = build_supplementary(cs);
        if (check_connected(sg)) return cs;
    }
}

}  // namespace

TEST_SUITE_BEGIN("linking");

TEST_CASE("supplementary graph construction") {
    // a single group has no edges of size two or more
    CHECK(build_supplementary(chain_system(3, 1, 5)).edges.empty());

    // two chained groups share one cluster: a single {0,1} edge appears
    SupplementaryGraph sg = build_supplementary(chain_system(3, 2, 5));
    REQUIRE(sg.edges.size() == 1);
    CHECK(sg.edges[0].members == std::vector<int>{0, 1});
    CHECK(verify_witness(chain_system(3, 2, 5), sg.edges[0]));

    // groups on disjoint clusters never meet
    ClusterSystem apart;
    apart.k = 3;
    apart.cluster_count = 6;
    apart.groups.push_back({{5, 5, 5}, {0, 1, 2}});
    apart.groups.push_back({{5, 5, 5}, {3, 4, 5}});
    apart.reduced_edges = {{0, 1, 2}, {3, 4, 5}};
    SupplementaryGraph none = build_supplementary(apart);
    CHECK(none.edges.empty());
    CHECK_FALSE(check_connected(none));

    // every produced witness re-verifies
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        ClusterSystem cs = random_connected_system(3 + trial % 3, 2 + trial % 3, rng);
        for (const SupplementaryEdge& e : build_supplementary(cs).edges) CHECK(verify_witness(cs, e));
    }
}

TEST_CASE("connectivity check") {
    CHECK(check_connected(build_supplementary(chain_system(3, 1, 5))));  // one group
    CHECK(check_connected(build_supplementary(chain_system(3, 4, 5))));
    SupplementaryGraph lone;
    lone.group_count = 3;
    CHECK_FALSE(check_connected(lone));
    lone.edges.push_back({{0, 1, 2}, {0, 1, 2}});
    CHECK(check_connected(lone));
}

TEST_CASE("cover walk visits everything within the square bound") {
    // star-shaped supplementary graph: center 0, leaves 1..5
    SupplementaryGraph star;
    star.group_count = 6;
    for (int leaf = 1; leaf < 6; ++leaf) star.edges.push_back({{0, leaf}, {0, leaf}});
    Walk walk = cover_walk(star, 1, 2);
    CHECK(walk.vertices.front() == 1);
    CHECK(walk.vertices.back() == 2);
    std::set<int> visited(walk.vertices.begin(), walk.vertices.end());
    CHECK(visited.size() == 6);
    CHECK(walk.length() <= 36);
    CHECK(walk.length() <= 2 * 5);  // tree tour bound

    // exhaustive over random connected systems
    SplitMix64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int groups = 2 + trial % 5;
        ClusterSystem cs = random_connected_system(3, groups, rng);
        SupplementaryGraph sg = build_supplementary(cs);
        auto lists = sg.member_lists();
        for (int from = 0; from < groups; ++from)
            for (int to = 0; to < groups; ++to) {
                Walk walk2 = cover_walk(sg, from, to);
                CHECK(walk2.vertices.front() == from);
                CHECK(walk2.vertices.back() == to);
                CHECK(walk2.length() <= groups * groups);
                std::set<int> seen(walk2.vertices.begin(), walk2.vertices.end());
                CHECK(static_cast<int>(seen.size()) == groups);
                CHECK(walk_is_valid(std::span<const std::vector<int>>(lists), walk2));
            }
    }

    // degenerate single group: empty-walk convention
    Walk lone = cover_walk(build_supplementary(chain_system(3, 1, 5)), 0, 0);
    CHECK(lone.length() == 0);
    CHECK(lone.vertices == std::vector<int>{0});

    CHECK_THROWS_AS(cover_walk(SupplementaryGraph{2, {}}, 0, 1), InvalidInput);
}

TEST_CASE("congruence plan certification") {
    ClusterSystem cs = chain_system(3, 2, 5);  // total 30 = 0 mod 2: needs a fix
    // drop one vertex so the total is -1 mod (k-1)
    cs.groups[0].class_sizes[0] = 4;
    SupplementaryGraph sg = build_supplementary(cs);
    Walk walk = cover_walk(sg, 0, 1);
    LinkPlan plan = plan_congruences(cs, sg, walk, 1);
    CHECK(plan.final_congruence_ok);
    CHECK(plan.leftover_congruence_ok);
    for (int i = 0; i < 2; ++i) {
        const int d = plan.visit_counts[static_cast<std::size_t>(i)];
        CHECK(((plan.final_sizes[static_cast<std::size_t>(i)] + d) % 2 + 2) % 2 == 0);
        CHECK(((plan.after_prepath_sizes[static_cast<std::size_t>(i)] - d) % 2 + 2) % 2 == 0);
    }

    // wrong initial excess rejected
    CHECK_THROWS_AS(plan_congruences(cs, sg, walk, 0), InvalidInput);
}

TEST_CASE("congruence plans hold under independent recomputation") {
    SplitMix64 rng(314159);
    int done = 0;
    while (done < 1000) {
        const int k = 3 + static_cast<int>(rng.below(3));  // 3, 4, 5
        const int mod = k - 1;
        const int groups = 1 + static_cast<int>(rng.below(4));
        ClusterSystem cs = random_connected_system(k, groups, rng);
        // force the total to -1 mod (k-1)
        long long total = 0;
        for (int i = 0; i < groups; ++i) total += cs.group_size(i);
        int adjust = static_cast<int>((((-1 - total) % mod) + mod) % mod);
        cs.groups[0].class_sizes[0] += adjust;
        total += adjust;
        SupplementaryGraph sg = build_supplementary(cs);
        const int from = static_cast<int>(rng.below(static_cast<std::uint64_t>(groups)));
        const int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(groups)));
        Walk walk = cover_walk(sg, from, to);
        LinkPlan plan = plan_congruences(cs, sg, walk, static_cast<int>(((total % mod) + mod) % mod));

        // recompute everything from raw sizes and walk counts
        std::vector<long long> size(static_cast<std::size_t>(groups));
        for (int i = 0; i < groups; ++i) size[static_cast<std::size_t>(i)] = cs.group_size(i);
        std::vector<int> visits(static_cast<std::size_t>(groups), 0);
        for (int r : walk.vertices) ++visits[static_cast<std::size_t>(r)];
        for (const auto& step : plan.steps) {
            long long step_total = 0;
            for (const auto& [i, t] : step.residues) step_total += t;
            CHECK(((step_total % mod) + mod) % mod == 1 % mod);
            for (const auto& [i, c] : step.consumed) size[static_cast<std::size_t>(i)] -= c;
        }
        for (int i = 0; i < groups; ++i) {
            const int d = visits[static_cast<std::size_t>(i)];
            CHECK(size[static_cast<std::size_t>(i)] == plan.final_sizes[static_cast<std::size_t>(i)]);
            CHECK((((size[static_cast<std::size_t>(i)] + d) % mod) + mod) % mod == 0);
            long long leftover = size[static_cast<std::size_t>(i)] - 2LL * (k - 2) * d;
            CHECK((((leftover - d) % mod) + mod) % mod == 0);
            // leftover splits into d paths, each 1 mod (k-1) vertices
            CHECK((((leftover - d * 1) % mod) + mod) % mod == 0);
        }
        ++done;
    }
}

TEST_CASE("exceptional path absorption") {
    KGraph complete = KGraph::complete(20, 3);
    std::vector<Vertex> pool;
    for (int v = 4; v < 20; ++v) pool.push_back(v);

    // no strays, no leading pair: the empty convention
    AbsorbOutcome empty = absorb_exceptional(complete, {}, pool, std::nullopt);
    REQUIRE(empty.ok());
    CHECK(empty.path->order.empty());

    // four strays in a complete host: four absorption edges
    AbsorbOutcome chain = absorb_exceptional(complete, {0, 1, 2, 3}, pool, std::nullopt);
    REQUIRE(chain.ok());
    CHECK(chain.path->edges.size() == 4);
    CHECK(validate_loose_path(complete, *chain.path).ok());
    for (Vertex v : {0, 1, 2, 3}) {
        bool present = std::find(chain.path->order.begin(), chain.path->order.end(), v) !=
                       chain.path->order.end();
        CHECK(present);
    }

    // leading pair for a host whose order is not 0 mod (k-1): n = 20, so
    // |A + B| = 1 - 20 = 1 mod 2
    AbSpec ab{{4, 5}, {5, 6}};
    AbsorbOutcome led = absorb_exceptional(complete, {0, 1}, pool, ab);
    REQUIRE(led.ok());
    CHECK(led.path->edges.size() == 4);
    CHECK(validate_exceptional_path(complete, *led.path).ok());
    CHECK((20 - static_cast<int>(led.path->order.size())) % 2 == 1);  // -1 mod 2

    // wrong overlap rejected
    AbSpec wrong{{4, 5}, {4, 5}};
    CHECK_THROWS_AS(absorb_exceptional(complete, {}, pool, wrong), InvalidInput);

    // pool exhaustion: progress is reported
    std::vector<Vertex> tiny_pool{4, 5};
    AbsorbOutcome stuck = absorb_exceptional(complete, {0, 1, 2, 3}, tiny_pool, std::nullopt);
    CHECK_FALSE(stuck.ok());
    CHECK(stuck.chunks_absorbed < stuck.chunks_total);
    CHECK_FALSE(stuck.detail.empty());
}

TEST_CASE("prepath extension") {
    KGraph complete = KGraph::complete(12, 3);
    LoosePath core;
    core.order = {0, 1, 2};
    core.edges = {{0, 1, 2}};
    std::vector<Vertex> pool_i{3, 4, 5, 6}, pool_f{7, 8, 9, 10};
    auto ext = extend_to_prepath(complete, core, pool_i, pool_f);
    REQUIRE(ext.has_value());
    CHECK(ext->prepath.i_set.size() == 1);
    CHECK(ext->prepath.f_set.size() == 1);
    // in a complete host every non-chosen pool vertex extends
    CHECK(ext->possible_initial.size() == 3);
    CHECK(ext->possible_final.size() == 3);

    // empty pools: no extension
    CHECK_FALSE(extend_to_prepath(complete, core, {}, pool_f).has_value());

    // a host where only one i-set choice works
    std::vector<Edge> edges = {{0, 1, 2}, {3, 0, 5}, {2, 7, 8}};
    for (auto& e : edges) std::sort(e.begin(), e.end());
    KGraph sparse(9, 3, edges);
    auto picky = extend_to_prepath(sparse, core, {3, 4, 5, 6}, {7, 8});
    REQUIRE(picky.has_value());
    CHECK(picky->prepath.i_set == std::vector<Vertex>{3});
    CHECK(picky->possible_initial == std::vector<Vertex>{5});
    CHECK(picky->prepath.f_set == std::vector<Vertex>{7});
    CHECK(picky->possible_final == std::vector<Vertex>{8});
}

TEST_CASE("pipeline end to end on complete hosts") {
    SyntheticInstance inst = make_synthetic(3, 2, 30, 1.0, 1);
    PipelineResult result = assemble_pipeline(inst);
    REQUIRE_MESSAGE(result.ok(), result.failed_stage, ": ", result.detail);
    CHECK(validate_loose_cycle(inst.host, *result.cycle, true).ok());
    CHECK(result.cycle->order.size() == 30);

    // determinism: identical instance gives an identical certificate
    SyntheticInstance again = make_synthetic(3, 2, 30, 1.0, 1);
    PipelineResult rerun = assemble_pipeline(again);
    REQUIRE(rerun.ok());
    CHECK(rerun.cycle->order == result.cycle->order);
    CHECK(rerun.cycle->cover == result.cycle->cover);

    // a three-group host exercises the two-edge split paths
    SyntheticInstance wide = make_synthetic(3, 3, 66, 1.0, 3);
    PipelineResult wide_result = assemble_pipeline(wide);
    REQUIRE_MESSAGE(wide_result.ok(), wide_result.failed_stage, ": ", wide_result.detail);
    CHECK(validate_loose_cycle(wide.host, *wide_result.cycle, true).ok());

    // k = 4 with an odd leftover pattern
    SyntheticInstance quad = make_synthetic(4, 2, 60, 1.0, 1);
    PipelineResult quad_result = assemble_pipeline(quad);
    REQUIRE_MESSAGE(quad_result.ok(), quad_result.failed_stage, ": ", quad_result.detail);
    CHECK(validate_loose_cycle(quad.host, *quad_result.cycle, true).ok());
}

TEST_CASE("pipeline reports the failing stage on hostile hosts") {
    // a sparse host starves one of the stages; which one depends on the seed
    SyntheticInstance sparse = make_synthetic(3, 2, 30, 0.05, 5);
    PipelineResult result = assemble_pipeline(sparse);
    CHECK_FALSE(result.ok());
    CHECK_FALSE(result.failed_stage.empty());
}

TEST_SUITE_END();
