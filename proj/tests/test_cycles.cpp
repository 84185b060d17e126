#include <doctest.h>

#include <nlohmann/json.hpp>

#include "looseham/certificate.hpp"
#include "looseham/constructions.hpp"
#include "looseham/cycles.hpp"
#include "looseham/errors.hpp"
#include "test_support.hpp"

using namespace looseham;

namespace {

// greedy circular window cover: all windows of the ordering present in g
GenericCycle windows_cycle(const KGraph& g, std::vector<Vertex> order) {
    GenericCycle c;
    c.order = std::move(order);
    const int n = static_cast<int>(c.order.size());
    const int k = g.uniformity();
    std::set<Edge> cover;
    for (int s = 0; s < n; ++s) {
        Edge w;
        for (int off = 0; off < k; ++off) w.push_back(c.order[static_cast<std::size_t>((s + off) % n)]);
        std::sort(w.begin(), w.end());
        if (g.contains(w)) cover.insert(w);
    }
    c.cover.assign(cover.begin(), cover.end());
    return c;
}

// strided loose path over consecutive ids, for fixtures
LoosePath strided_path(const std::vector<Vertex>& order, int k) {
    LoosePath p;
    p.order = order;
    for (std::size_t s = 0; s + k <= order.size(); s += static_cast<std::size_t>(k - 1)) {
        Edge e(order.begin() + static_cast<std::ptrdiff_t>(s), order.begin() + static_cast<std::ptrdiff_t>(s) + k);
        std::sort(e.begin(), e.end());
        p.edges.push_back(std::move(e));
    }
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("cycles");

TEST_CASE("generic cycle validation") {
    KGraph complete = KGraph::complete(6, 3);
    GenericCycle good = windows_cycle(complete, {0, 1, 2, 3, 4, 5});
    CHECK(validate_generic_cycle(complete, good, true).ok());

    // non-window cover edge
    GenericCycle bad = good;
    bad.cover.push_back({0, 2, 4});
    auto report = validate_generic_cycle(complete, bad, true);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().kind == ViolationKind::non_window_edge);

    // extremal graphs never admit a full cover for any ordering
    ExtremalGraph ex = extremal_construction(9, 3);
    std::vector<Vertex> order{0, 1, 2, 3, 4, 5, 6, 7, 8};
    bool some_ordering_ok = false;
    for (int rot = 0; rot < 9; ++rot) {
        std::rotate(order.begin(), order.begin() + 1, order.end());
        GenericCycle c = windows_cycle(ex.graph, order);
        if (!c.cover.empty() && validate_generic_cycle(ex.graph, c, true).ok()) some_ordering_ok = true;
    }
    CHECK_FALSE(some_ordering_ok);

    // a missing cover edge is reported as uncovered pairs
    GenericCycle sparse = good;
    sparse.cover.resize(2);
    auto gaps = validate_generic_cycle(complete, sparse, true);
    REQUIRE_FALSE(gaps.ok());
    CHECK(gaps.violations.front().kind == ViolationKind::uncovered_pair);
}

TEST_CASE("tight cycles pass generic validation with all windows as cover") {
    // planted tight Hamilton cycle on 7 vertices
    std::vector<Edge> edges;
    for (int s = 0; s < 7; ++s) {
        Edge e{s, (s + 1) % 7, (s + 2) % 7};
        std::sort(e.begin(), e.end());
        edges.push_back(e);
    }
    KGraph g(7, 3, edges);
    TightCycle tight{{0, 1, 2, 3, 4, 5, 6}};
    CHECK(validate_tight_cycle(g, tight, true).ok());
    GenericCycle as_generic = windows_cycle(g, tight.order);
    CHECK(as_generic.cover.size() == 7);
    CHECK(validate_generic_cycle(g, as_generic, true).ok());
}

TEST_CASE("loose path validation") {
    KGraph complete = KGraph::complete(9, 3);
    CHECK(validate_loose_path(complete, strided_path({0, 1, 2}, 3)).ok());

    // overlap two on a strict loose path
    LoosePath overlap2;
    overlap2.order = {0, 1, 2, 3};
    overlap2.edges = {{0, 1, 2}, {1, 2, 3}};
    auto report = validate_loose_path(complete, overlap2);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().kind == ViolationKind::overlap);
    // the same shape is fine for the exceptional path
    CHECK(validate_exceptional_path(complete, overlap2).ok());

    // missing edge
    KGraph sparse(5, 3, {{0, 1, 2}});
    LoosePath missing = strided_path({0, 1, 2, 3, 4}, 3);
    auto rep2 = validate_loose_path(sparse, missing);
    REQUIRE_FALSE(rep2.ok());
    CHECK(rep2.violations.front().kind == ViolationKind::missing_edge);

    // residue violation: a 4-vertex "path" cannot tile with k windows
    LoosePath shifted;
    shifted.order = {0, 1, 2, 3};
    shifted.edges = {{0, 1, 2}};
    CHECK_FALSE(validate_loose_path(complete, shifted).ok());
}

TEST_CASE("loose cycle validation and the exceptional pair rule") {
    KGraph complete8 = KGraph::complete(8, 3);
    LooseCycle even;
    even.order = {0, 1, 2, 3, 4, 5, 6, 7};
    even.cover = {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {0, 6, 7}};
    CHECK(validate_loose_cycle(complete8, even, true).ok());

    KGraph complete9 = KGraph::complete(9, 3);
    LooseCycle odd;
    odd.order = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    odd.cover = {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {0, 1, 8}};  // last overlaps {8} and {0,1}
    CHECK(validate_loose_cycle(complete9, odd, true).ok());
    CHECK(odd.cover.size() == 5);
    auto junction = find_exceptional_junction(odd);
    REQUIRE(junction.has_value());
    CHECK(junction->first == 4);
    CHECK(junction->second == 0);

    // the stated pair must match the detected one
    odd.exceptional_pair = {{4, 0}};
    CHECK(validate_loose_cycle(complete9, odd, true).ok());
    odd.exceptional_pair = {{1, 2}};
    CHECK_FALSE(validate_loose_cycle(complete9, odd, true).ok());
    odd.exceptional_pair.reset();

    // an even-order loose cycle must not carry a high-overlap junction
    LooseCycle two_pairs;
    two_pairs.order = {0, 1, 2, 3, 4, 5, 6, 7};
    two_pairs.cover = {{0, 1, 2}, {1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {0, 6, 7}};
    auto rep = validate_loose_cycle(complete8, two_pairs, true);
    REQUIRE_FALSE(rep.ok());
    bool flagged = false;
    for (const auto& v : rep.violations)
        if (v.kind == ViolationKind::exceptional_pairs) flagged = true;
    CHECK(flagged);

    // nine vertices with all-overlap-one covers cannot exist: 2 never divides 9
    LooseCycle none_needed = odd;
    none_needed.cover = {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}};
    CHECK_FALSE(validate_loose_cycle(complete9, none_needed, true).ok());
}

TEST_CASE("vertex count arithmetic of accepted loose structures") {
    // every accepted loose path: |order| = edges (k-1) + 1
    KGraph complete = KGraph::complete(13, 3);
    for (int edges = 1; edges <= 6; ++edges) {
        std::vector<Vertex> order(static_cast<std::size_t>(edges * 2 + 1));
        std::iota(order.begin(), order.end(), 0);
        LoosePath p = strided_path(order, 3);
        REQUIRE(validate_loose_path(complete, p).ok());
        CHECK(static_cast<int>(p.order.size()) == p.edge_count() * 2 + 1);
        CHECK(static_cast<int>(p.order.size()) % 2 == 1);
    }
}

TEST_CASE("extremities") {
    LoosePath two = strided_path({0, 1, 2, 3, 4}, 3);
    Extremities ext = extremities(two);
    CHECK(ext.initial == std::vector<Vertex>{0, 1});
    CHECK(ext.final_set == std::vector<Vertex>{3, 4});
    CHECK(ext.links == std::vector<Vertex>{2});

    LoosePath single = strided_path({3, 5, 9}, 3);
    Extremities se = extremities(single);
    CHECK(se.initial == std::vector<Vertex>{3, 5, 9});
    CHECK(se.final_set == se.initial);
    CHECK(se.links.empty());

    for (int edges = 2; edges <= 7; ++edges) {
        std::vector<Vertex> order(static_cast<std::size_t>(edges * 2 + 1));
        std::iota(order.begin(), order.end(), 10);
        Extremities e = extremities(strided_path(order, 3));
        CHECK(static_cast<int>(e.links.size()) == edges - 1);
        CHECK(e.initial.size() == 2);
        CHECK(e.final_set.size() == 2);
    }
}

TEST_CASE("concatenate closes a single prepath against a complete host") {
    KGraph complete = KGraph::complete(11, 3);
    Prepath pre{strided_path({0, 1, 2, 3, 4}, 3), {5}, {6}};
    LoosePath mid = strided_path({7, 8, 9}, 3);
    ConcatResult result = concatenate({pre}, {mid}, complete);
    REQUIRE(result.ok());
    CHECK(validate_loose_cycle(complete, *result.cycle, false).ok());
    // gluing edges {6,4,7} and {5,9,0} are part of the cover
    CHECK(result.cycle->cover.size() == pre.core.edges.size() + mid.edges.size() + 2);
    CHECK(result.cycle->order.size() == 10);

    // missing gluing edge reported with its junction
    std::vector<Edge> edges = complete.edges();
    Edge glue{4, 6, 7};
    edges.erase(std::remove(edges.begin(), edges.end(), glue), edges.end());
    KGraph torn(11, 3, edges);
    ConcatResult broken = concatenate({pre}, {mid}, torn);
    REQUIRE_FALSE(broken.ok());
    CHECK(broken.report.violations.front().kind == ViolationKind::missing_gluing_edge);

    // shared vertices rejected
    Prepath clash{strided_path({0, 1, 2}, 3), {3}, {7}};
    ConcatResult overlap = concatenate({clash}, {mid}, complete);
    CHECK_FALSE(overlap.ok());
}

TEST_CASE("certificate json round trip and check") {
    KGraph complete9 = KGraph::complete(9, 3);
    LooseCycle odd;
    odd.order = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    odd.cover = {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {0, 1, 8}};
    odd.exceptional_pair = find_exceptional_junction(odd);
    Certificate cert = make_certificate(odd);
    nlohmann::json j = to_json(cert);
    CHECK(j.at("kind") == "loose_cycle");
    Certificate back = certificate_from_json(j);
    CHECK(back.order == cert.order);
    CHECK(back.edges == cert.edges);
    CHECK(back.exceptional_pair == cert.exceptional_pair);
    CHECK(check_certificate(complete9, back, true).ok());

    // mutated witness fails
    back.order[0] = 1;
    CHECK_FALSE(check_certificate(complete9, back, true).ok());

    Certificate path_cert = make_certificate(strided_path({0, 1, 2, 3, 4}, 3));
    CHECK(check_certificate(complete9, path_cert, false).ok());

    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"kind", "nope"}}), ParseError);
}

TEST_SUITE_END();
