#include <doctest.h>

#include <sstream>

#include "looseham/constructions.hpp"
#include "looseham/errors.hpp"
#include "looseham/hg_format.hpp"
#include "looseham/kgraph.hpp"
#include "test_support.hpp"

using namespace looseham;

TEST_SUITE_BEGIN("kgraph");

TEST_CASE("neighbourhood on complete, extremal and edgeless graphs") {
    KGraph complete = KGraph::complete(5, 3);
    CHECK(complete.neighbourhood({0, 1}) == std::vector<Vertex>{2, 3, 4});

    ExtremalGraph ex = extremal_construction(9, 3);
    // pairs inside the big side see exactly the small side
    CHECK(ex.graph.neighbourhood({2, 3}) == ex.small_side);
    CHECK(ex.small_side == std::vector<Vertex>{0, 1});

    KGraph edgeless(4, 3, {});
    CHECK(edgeless.neighbourhood({1, 2}).empty());

    CHECK_THROWS_AS(complete.neighbourhood({0}), InvalidInput);
    CHECK_THROWS_AS(complete.neighbourhood({0, 9}), InvalidInput);
    CHECK_THROWS_AS(complete.neighbourhood({1, 1}), InvalidInput);
}

TEST_CASE("min codegree closed forms") {
    CHECK(KGraph::complete(6, 3).min_codegree() == 4);  // n - k + 1
    CHECK(extremal_construction(9, 3).graph.min_codegree() == 2);
    CHECK(extremal_construction(12, 4).graph.min_codegree() == 1);
    CHECK(KGraph(5, 3, {}).min_codegree() == 0);
    // exactly one (k-1)-set: its degree is the edge count, zero here
    CHECK(KGraph(2, 3, {}).min_codegree() == 0);
}

TEST_CASE("vertex degree counts incident edges") {
    KGraph complete = KGraph::complete(5, 3);
    for (int v = 0; v < 5; ++v) CHECK(complete.vertex_degree(v) == 6);  // C(4, 2)
    KGraph g(5, 3, {{0, 1, 2}, {0, 3, 4}});
    CHECK(g.vertex_degree(0) == 2);
    CHECK(g.vertex_degree(1) == 1);
}

TEST_CASE("codegree histogram counts") {
    KGraph edgeless(4, 3, {});
    auto hist = edgeless.codegree_histogram();
    CHECK(hist == std::map<int, std::uint64_t>{{0, 6}});

    KGraph one_edge(3, 3, {{0, 1, 2}});
    CHECK(one_edge.codegree_histogram() == std::map<int, std::uint64_t>{{1, 3}});

    // exhaustive recount: each pair of the extremal graph scanned directly
    ExtremalGraph ex = extremal_construction(9, 3);
    std::map<int, std::uint64_t> direct;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) {
            int degree = 0;
            for (const Edge& e : ex.graph.edges()) {
                bool has_a = std::find(e.begin(), e.end(), a) != e.end();
                bool has_b = std::find(e.begin(), e.end(), b) != e.end();
                if (has_a && has_b) ++degree;
            }
            ++direct[degree];
        }
    CHECK(ex.graph.codegree_histogram() == direct);
    CHECK(direct.begin()->first == 2);
}

TEST_CASE("histogram sums to C(n, k-1) and min matches its smallest key") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        KGraph g = testsupport::random_graph(8, 3, static_cast<int>(seed * 3 % 30), 100 + seed);
        auto hist = g.codegree_histogram();
        std::uint64_t total = 0;
        for (const auto& [deg, cnt] : hist) total += cnt;
        CHECK(total == binomial(8, 2));
        CHECK(g.min_codegree() == hist.begin()->first);
    }
}

TEST_CASE("neighbourhood is disjoint from its set and bounded") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        KGraph g = testsupport::random_graph(7, 3, 12, 500 + seed);
        for (int a = 0; a < 7; ++a)
            for (int b = a + 1; b < 7; ++b) {
                auto nb = g.neighbourhood({a, b});
                CHECK(static_cast<int>(nb.size()) <= 7 - 3 + 1);
                for (Vertex x : nb) {
                    CHECK(x != a);
                    CHECK(x != b);
                }
            }
    }
}

TEST_CASE("restrict relabels and keeps inside edges") {
    KGraph complete = KGraph::complete(5, 3);
    auto [full, full_map] = complete.restrict({0, 1, 2, 3, 4});
    CHECK(full.edge_count() == complete.edge_count());
    for (int v = 0; v < 5; ++v) CHECK(full_map.to_sub[static_cast<std::size_t>(v)] == v);

    auto [tri, tri_map] = complete.restrict({1, 3, 4});
    CHECK(tri.vertex_count() == 3);
    CHECK(tri.edge_count() == 1);
    CHECK(tri.edges().front() == Edge{0, 1, 2});

    ExtremalGraph ex = extremal_construction(9, 3);
    auto [big_side, bm] = ex.graph.restrict(ex.large_side);
    CHECK(big_side.edge_count() == 0);

    CHECK_THROWS_AS(complete.restrict({0, 7}), InvalidInput);
}

TEST_CASE("restrict round-trips the inside edge set") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        KGraph g = testsupport::random_graph(8, 3, 20, 900 + seed);
        std::vector<Vertex> keep{0, 2, 3, 5, 6, 7};
        auto [sub, mapping] = g.restrict(keep);
        std::set<Edge> re_embedded;
        for (Edge e : sub.edges()) {
            for (Vertex& v : e) v = mapping.to_host[static_cast<std::size_t>(v)];
            std::sort(e.begin(), e.end());
            re_embedded.insert(e);
        }
        std::set<Edge> direct;
        for (const Edge& e : g.edges()) {
            bool inside = std::all_of(e.begin(), e.end(), [&](Vertex v) {
                return std::find(keep.begin(), keep.end(), v) != keep.end();
            });
            if (inside) direct.insert(e);
        }
        CHECK(re_embedded == direct);
    }
}

TEST_CASE("components") {
    KGraph edgeless(5, 3, {});
    CHECK(edgeless.components().size() == 5);

    KGraph two(6, 3, {{0, 1, 2}, {2, 3, 4}});
    auto classes = two.components();
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<Vertex>{0, 1, 2, 3, 4});
    CHECK(classes[1] == std::vector<Vertex>{5});

    CHECK(extremal_construction(9, 3).graph.components().size() == 1);

    // every edge stays inside one class
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        KGraph g = testsupport::random_graph(9, 3, 6, 40 + seed);
        auto parts = g.components();
        std::vector<int> owner(9, -1);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (Vertex v : parts[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        for (const Edge& e : g.edges())
            for (Vertex v : e) CHECK(owner[static_cast<std::size_t>(v)] == owner[static_cast<std::size_t>(e[0])]);
    }
}

TEST_CASE("find_walk examples and contract") {
    KGraph g(6, 3, {{0, 1, 2}, {2, 3, 4}});
    auto walk = find_walk(g, 0, 4);
    REQUIRE(walk.has_value());
    CHECK(walk->length() == 2);
    CHECK(walk->vertices.front() == 0);
    CHECK(walk->vertices.back() == 4);
    CHECK(walk_is_valid(std::span<const std::vector<Vertex>>(g.edges()), *walk));

    CHECK_FALSE(find_walk(g, 0, 5).has_value());
    CHECK(find_walk(KGraph::complete(6, 3), 1, 5)->length() == 1);
    CHECK_THROWS_AS(find_walk(g, 2, 2), InvalidInput);
}

TEST_CASE("walks succeed exactly within components and are short") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        KGraph g = testsupport::random_graph(8, 3, 5, 700 + seed);
        auto parts = g.components();
        std::vector<int> owner(8, -1);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (Vertex v : parts[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        for (int x = 0; x < 8; ++x)
            for (int y = x + 1; y < 8; ++y) {
                auto walk = find_walk(g, x, y);
                CHECK(walk.has_value() == (owner[static_cast<std::size_t>(x)] == owner[static_cast<std::size_t>(y)]));
                if (walk) {
                    CHECK(walk->length() <= 8);
                    CHECK(walk_is_valid(std::span<const std::vector<Vertex>>(g.edges()), *walk));
                }
            }
    }
}

TEST_CASE("text format round trip and parse errors") {
    ExtremalGraph ex = extremal_construction(9, 3);
    std::string text = to_text(ex.graph);
    std::istringstream in(text);
    KGraph parsed = read_hypergraph(in);
    CHECK(to_text(parsed) == text);
    CHECK(parsed.edge_count() == ex.graph.edge_count());

    auto expect_parse_error = [](const std::string& body) {
        std::istringstream bad(body);
        CHECK_THROWS_AS(read_hypergraph(bad), ParseError);
    };
    expect_parse_error("");                           // no header
    expect_parse_error("5 3\n0 1\n");                 // wrong arity
    expect_parse_error("5 3\n0 1 2\n0 1 2\n");        // duplicate edge
    expect_parse_error("5 3\n2 1 0\n");               // not ascending
    expect_parse_error("5 3\n0 1 9\n");               // out of range
    expect_parse_error("5 3\n0 1 x\n");               // junk token

    std::istringstream commented("# heading\n4 3\n# note\n0 1 3\n");
    CHECK(read_hypergraph(commented).edge_count() == 1);
}

TEST_SUITE_END();
