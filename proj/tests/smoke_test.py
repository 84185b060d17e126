#!/usr/bin/env python3
"""Smoke tests for the python module: a quick pass over every exposed area."""

import math
import sys

try:
    import looseham as lh
except ImportError:
    import _looseham as lh  # build-tree layout


def check(cond, label):
    if not cond:
        print(f"smoke FAIL: {label}")
        sys.exit(1)
    print(f"smoke ok: {label}")


def main():
    # graph core
    g = lh.KGraph.complete(6, 3)
    check(g.n == 6 and g.k == 3 and len(g) == 20, "complete graph shape")
    check(g.min_codegree() == 4, "complete codegree")
    check(g.neighbourhood([0, 1]) == [2, 3, 4, 5], "neighbourhood")

    text = lh.hypergraph_text(g)
    check(lh.hypergraph_text(lh.parse_hypergraph(text)) == text, "text round trip")

    ex_graph, small, large = lh.extremal_construction(9, 3)
    check(small == [0, 1], "extremal small side")
    check(ex_graph.min_codegree() == 2, "extremal codegree")
    hist = ex_graph.codegree_histogram()
    check(hist == {2: 21, 7: 15}, "extremal histogram")
    none = lh.find_generic_hamilton(ex_graph)
    check(none["status"] == "none", "extremal has no generic hamilton cycle")

    # exact search + validator round trip
    c8 = lh.KGraph.complete(8, 3)
    found = lh.find_loose_hamilton(c8)
    check(found["status"] == "found", "loose hamilton found")
    ok, summary = lh.validate_loose_cycle(c8, found["cycle"], True)
    check(ok, f"cycle validates ({summary})")
    counted = lh.count_loose_hamilton(c8)
    check(counted["count"] == 5040, "loose hamilton census pin")

    cert = lh.certificate_json(found["cycle"])
    ok, _ = lh.check_certificate_json(c8, cert, True)
    check(ok, "certificate json re-check")

    # constructions
    s = lh.build_string(3, [1, 1, 1], 0, 0)
    check(s == [1, 0, 2], "string builder trace")
    path = lh.build_loose_path_complete([[0, 1, 2], [3, 4, 5], [6, 7, 8]], [3, 3, 3], 0, 1)
    host = lh.KGraph.complete_kpartite([[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    ok, _ = lh.validate_loose_path(host, path)
    check(ok and len(path.order) == 9, "complete-partite loose path")
    ak_graph, parts = lh.build_ak(3)
    check(ak_graph.n == 8 and len(ak_graph) == 6 and len(parts) == 4, "gadget shape")

    # packing
    c16 = lh.KGraph.complete(16, 3)
    packing = lh.greedy_pack(c16)
    check(len(packing) == 2 and len(packing.covered()) == 16, "perfect packing")
    check(lh.augment(c16, packing) is None, "no augmentation of a perfect packing")

    # splitting
    check(abs(lh.azuma_bound(4.0, [1.0] * 8) - 2 * math.exp(-1)) < 1e-12, "azuma bound")
    split_host, classes = lh.random_kpartite([12, 12, 12], 0.5, 7)
    cfg = lh.SplitConfig()
    cfg.classes = classes
    cfg.targets = [6, 6, 6]
    cfg.trials = 50
    cfg.seed = 11
    cfg.variant = lh.SplitVariant.exact_size
    report = lh.run_split_experiment(split_host, cfg, lh.kpartite_density(split_host, classes) / 2)
    check(report.failures == 0, "split concentration")

    # constrained search
    spec = lh.ConnectSpec()
    spec.cluster_of = [0, 0, 0, 0, 1, 1, 1, 1, 1]
    spec.residues = {0: 1, 1: 0}
    spec.start_cluster = 0
    spec.end_cluster = 1
    c9 = lh.KGraph.complete(9, 3)
    connecting = lh.find_loose_path_constrained(c9, spec)
    check(connecting["status"] == "found", "constrained path found")
    ok, _ = lh.validate_loose_path(c9, connecting["path"])
    check(ok, "constrained path validates")

    # linking pipeline
    instance = lh.make_synthetic(3, 2, 30, 1.0, 1)
    result = lh.assemble_pipeline(instance)
    check(result["ok"], f"pipeline ({result.get('stage', '')}: {result.get('detail', '')})")
    ok, summary = lh.validate_loose_cycle(instance.host, result["cycle"], True)
    check(ok, f"pipeline certificate validates ({summary})")

    # congruence plan
    groups = [lh.ClusterGroup([5, 5, 4], [0, 1, 2]), lh.ClusterGroup([5, 5, 5], [2, 3, 4])]
    system = lh.ClusterSystem(3, 5, groups, [[0, 1, 2], [2, 3, 4]])
    sg = lh.build_supplementary(system)
    check(lh.check_connected(sg), "supplementary connected")
    walk = lh.cover_walk(sg, 0, 1)
    plan = lh.plan_congruences(system, sg, walk, 1)
    check(plan.final_congruence_ok and plan.leftover_congruence_ok, "plan certification")

    print("smoke: all checks passed")


if __name__ == "__main__":
    main()
