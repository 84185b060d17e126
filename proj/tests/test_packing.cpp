#include <doctest.h>

#include "looseham/errors.hpp"
#include "looseham/packing.hpp"
#include "test_support.hpp"

using namespace looseham;

namespace {

// plant the augmentation exchange pattern for k = 3: a packing whose copies
// can be traded against nine disjoint uncovered pairs sharing fixed 3-set
// targets inside two packed copies
struct PlantedInstance {
    KGraph graph;
    Packing packing;
};

PlantedInstance plant_exchange() {
    // two gadget copies on 0..15, 18 pool vertices 16..33 forming 9 pairs
    const int n = 34;
    std::vector<Edge> edges;
    Packing packing;
    packing.k = 3;
    auto add_copy = [&](int base) {
        GadgetCopy copy;
        for (int part = 0; part < 4; ++part)
            copy.parts.push_back({base + 2 * part, base + 2 * part + 1});
        for (int part = 1; part < 4; ++part)
            for (Vertex x : copy.parts[0]) {
                Edge e = copy.parts[static_cast<std::size_t>(part)];
                e.push_back(x);
                std::sort(e.begin(), e.end());
                edges.push_back(e);
            }
        packing.copies.push_back(copy);
    };
    add_copy(0);
    add_copy(8);
    // shared targets: the lexicographically first 3 vertices of each copy
    const std::vector<Vertex> target_a{0, 1, 2};
    const std::vector<Vertex> target_b{8, 9, 10};
    for (int pair = 0; pair < 9; ++pair) {
        Vertex u = 16 + 2 * pair, v = 17 + 2 * pair;
        for (Vertex t : target_a) {
            Edge e{u, v, t};
            std::sort(e.begin(), e.end());
            edges.push_back(e);
        }
        for (Vertex t : target_b) {
            Edge e{u, v, t};
            std::sort(e.begin(), e.end());
            edges.push_back(e);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {KGraph(n, 3, edges), packing};
}

}  // namespace

TEST_SUITE_BEGIN("packing");

TEST_CASE("greedy packs complete hosts perfectly") {
    for (int n : {8, 16, 24}) {
        KGraph g = KGraph::complete(n, 3);
        Packing p = greedy_pack(g);
        CHECK(validate_packing(g, p).ok());
        CHECK(static_cast<int>(p.size()) == n / 8);
        CHECK(static_cast<int>(p.covered().size()) == n);
    }
}

TEST_CASE("greedy edge cases") {
    CHECK(greedy_pack(KGraph(10, 3, {})).size() == 0);

    Gadget a3 = build_ak(3);
    Packing self = greedy_pack(a3.graph);
    CHECK(self.size() == 1);
    CHECK(validate_packing(a3.graph, self).ok());
    CHECK(static_cast<int>(self.covered().size()) == a3.graph.vertex_count());

    // greedy maximality: nothing embeds in the residual
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        KGraph g = testsupport::random_graph(14, 3, 120, 222 + seed);
        Packing p = greedy_pack(g);
        CHECK(validate_packing(g, p).ok());
        std::vector<Vertex> covered = p.covered();
        std::vector<Vertex> residual;
        for (int v = 0; v < 14; ++v)
            if (!std::binary_search(covered.begin(), covered.end(), v)) residual.push_back(v);
        CHECK_FALSE(embed_gadget(g, residual).has_value());
    }
}

TEST_CASE("augment finds a free copy when one exists") {
    KGraph g = KGraph::complete(16, 3);
    Packing empty;
    empty.k = 3;
    auto grown = augment(g, empty);
    REQUIRE(grown.has_value());
    CHECK(grown->size() == 1);
    CHECK(validate_packing(g, *grown).ok());
}

TEST_CASE("augment reports no improvement on a perfect packing") {
    KGraph g = KGraph::complete(16, 3);
    Packing perfect = greedy_pack(g);
    REQUIRE(perfect.covered().size() == 16);
    CHECK_FALSE(augment(g, perfect).has_value());
}

TEST_CASE("augment rejects invalid packings") {
    KGraph g = KGraph::complete(16, 3);
    Packing broken;
    broken.k = 3;
    broken.copies.push_back(GadgetCopy{{{0, 1}, {2, 3}, {4, 5}, {6, 6}}});
    CHECK_THROWS_AS(augment(g, broken), InvalidInput);
}

TEST_CASE("augment finds the planted exchange") {
    PlantedInstance inst = plant_exchange();
    REQUIRE(validate_packing(inst.graph, inst.packing).ok());
    // no free copy hides in the uncovered vertices: pool pairs span no gadget
    std::vector<Vertex> uncovered;
    for (int v = 16; v < 34; ++v) uncovered.push_back(v);
    REQUIRE_FALSE(embed_gadget(inst.graph, uncovered).has_value());

    auto grown = augment(inst.graph, inst.packing);
    REQUIRE(grown.has_value());
    CHECK(grown->size() == inst.packing.size() + 1);
    CHECK(validate_packing(inst.graph, *grown).ok());
}

TEST_CASE("iterating augment reaches a fixpoint within the copy bound") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        KGraph g = testsupport::random_graph(16, 3, 300, 777 + seed);
        Packing p = greedy_pack(g);
        int rounds = 0;
        while (auto grown = augment(g, p)) {
            p = std::move(*grown);
            ++rounds;
            REQUIRE(rounds <= 16 / 8 + 1);
        }
        CHECK(validate_packing(g, p).ok());
    }
}

TEST_CASE("augment never shrinks over random attempts") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 12 + static_cast<int>(rng.below(6));
        int m = 40 + static_cast<int>(rng.below(160));
        KGraph g = testsupport::random_graph(n, 3, m, 333 + static_cast<std::uint64_t>(trial));
        Packing p = greedy_pack(g);
        auto grown = augment(g, p);
        if (grown) {
            CHECK(grown->size() >= p.size() + 1);
            CHECK(validate_packing(g, *grown).ok());
        }
    }
}

TEST_CASE("connected filter") {
    // two far-apart copies: only the smallest-id component survives a tie
    std::vector<Edge> edges;
    Packing two;
    two.k = 3;
    for (int base : {0, 8}) {
        GadgetCopy copy;
        for (int part = 0; part < 4; ++part)
            copy.parts.push_back({base + 2 * part, base + 2 * part + 1});
        for (int part = 1; part < 4; ++part)
            for (Vertex x : copy.parts[0]) {
                Edge e = copy.parts[static_cast<std::size_t>(part)];
                e.push_back(x);
                std::sort(e.begin(), e.end());
                edges.push_back(e);
            }
        two.copies.push_back(copy);
    }
    KGraph split(16, 3, edges);
    Packing kept = connected_filter(split, two);
    REQUIRE(kept.size() == 1);
    CHECK(kept.copies[0].parts[0][0] == 0);

    // a both-components edge makes everything one class: both survive
    edges.push_back({1, 7, 9});
    KGraph joined(16, 3, edges);
    CHECK(connected_filter(joined, two).size() == 2);

    // complete host: packing unchanged
    KGraph complete = KGraph::complete(16, 3);
    Packing p = greedy_pack(complete);
    CHECK(connected_filter(complete, p).size() == p.size());

    // filter output always induces one component
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        KGraph g = testsupport::random_graph(17, 3, 90, 444 + seed);
        Packing packed = greedy_pack(g);
        Packing filtered = connected_filter(g, packed);
        if (filtered.size() > 0) {
            auto [sub, mapping] = g.restrict(filtered.covered());
            CHECK(sub.components().size() == 1);
        }
    }
}

TEST_SUITE_END();
