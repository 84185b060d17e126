#include "looseham/cycles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace looseham {

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::structure: return "structure";
        case ViolationKind::missing_edge: return "missing_edge";
        case ViolationKind::non_window_edge: return "non_window_edge";
        case ViolationKind::uncovered_pair: return "uncovered_pair";
        case ViolationKind::overlap: return "overlap";
        case ViolationKind::residue: return "residue";
        case ViolationKind::exceptional_pairs: return "exceptional_pairs";
        case ViolationKind::not_hamilton: return "not_hamilton";
        case ViolationKind::missing_gluing_edge: return "missing_gluing_edge";
    }
    return "?";
}

std::string ValidationReport::summary() const {
    if (violations.empty()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) out << "; ";
        const Violation& v = violations[i];
        out << to_string(v.kind);
        if (v.index_a >= 0) out << "[" << v.index_a;
        if (v.index_b >= 0) out << "," << v.index_b;
        if (v.index_a >= 0) out << "]";
        if (!v.detail.empty()) out << " " << v.detail;
    }
    return out.str();
}

namespace {

// order checks shared by all validators: distinct ids within [0, n)
bool check_order(const std::vector<Vertex>& order, int n, ValidationReport& report) {
    if (order.empty()) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "empty order"});
        return false;
    }
    std::vector<Vertex> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "repeated vertex in order"});
        return false;
    }
    if (sorted.front() < 0 || sorted.back() >= n) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "vertex outside host graph"});
        return false;
    }
    return true;
}

void check_hamilton(const std::vector<Vertex>& order, int n, ValidationReport& report) {
    if (static_cast<int>(order.size()) != n)
        report.violations.push_back({ViolationKind::not_hamilton, -1, -1,
                                     "order has " + std::to_string(order.size()) + " of " + std::to_string(n) + " vertices"});
}

// window start of `edge` in the cyclic order; -1 when not a window.
// For |order| == k the whole circle matches and start 0 is reported.
int cyclic_window_start(const Edge& edge, const std::vector<int>& pos, int len, int k) {
    if (static_cast<int>(edge.size()) != k) return -1;
    std::vector<int> ps;
    ps.reserve(edge.size());
    for (Vertex v : edge) {
        int p = pos[static_cast<std::size_t>(v)];
        if (p < 0) return -1;
        ps.push_back(p);
    }
    if (len == k) return 0;
    std::sort(ps.begin(), ps.end());
    for (int cand = 0; cand < k; ++cand) {
        int start = ps[static_cast<std::size_t>(cand)];
        bool match = true;
        for (int off = 0; off < k && match; ++off)
            match = std::binary_search(ps.begin(), ps.end(), (start + off) % len);
        if (match) return start;
    }
    return -1;
}

struct CycleShape {
    bool sound = false;
    // cover indices sorted by window start, with their starts
    std::vector<std::pair<int, int>> start_and_index;
    // junction j sits between start_and_index[j] and [j+1 mod e]; overlap in vertices
    std::vector<int> junction_overlap;
};

// common work of generic/loose cycle validation: window structure + coverage
CycleShape analyze_cycle(const KGraph& g, const std::vector<Vertex>& order,
                         const std::vector<Edge>& cover, ValidationReport& report) {
    CycleShape shape;
    const int k = g.uniformity();
    const int len = static_cast<int>(order.size());
    if (!check_order(order, g.vertex_count(), report)) return shape;
    if (len < k) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "order shorter than k"});
        return shape;
    }
    if (cover.empty()) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "empty cover"});
        return shape;
    }
    {
        auto sorted = cover;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            report.violations.push_back({ViolationKind::structure, -1, -1, "duplicate cover edge"});
            return shape;
        }
    }
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int i = 0; i < len; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    std::vector<bool> covered(static_cast<std::size_t>(len), false);
    bool windows_ok = true;
    for (std::size_t idx = 0; idx < cover.size(); ++idx) {
        Edge e = cover[idx];
        std::sort(e.begin(), e.end());
        if (!g.contains(e)) {
            report.violations.push_back({ViolationKind::missing_edge, static_cast<int>(idx), -1,
                                         "cover edge not in graph"});
            windows_ok = false;
            continue;
        }
        int start = cyclic_window_start(e, pos, len, k);
        if (start < 0) {
            report.violations.push_back({ViolationKind::non_window_edge, static_cast<int>(idx), -1,
                                         "edge is not k consecutive vertices"});
            windows_ok = false;
            continue;
        }
        shape.start_and_index.emplace_back(start, static_cast<int>(idx));
        int arcs = (len == k) ? len : k - 1;
        for (int off = 0; off < arcs; ++off) covered[static_cast<std::size_t>((start + off) % len)] = true;
    }
    for (int i = 0; i < len; ++i) {
        if (!covered[static_cast<std::size_t>(i)])
            report.violations.push_back({ViolationKind::uncovered_pair, i, (i + 1) % len,
                                         "pair (" + std::to_string(order[static_cast<std::size_t>(i)]) + "," +
                                             std::to_string(order[static_cast<std::size_t>((i + 1) % len)]) + ") uncovered"});
    }
    if (!windows_ok || !report.ok()) return shape;

    std::sort(shape.start_and_index.begin(), shape.start_and_index.end());
    const int e_count = static_cast<int>(shape.start_and_index.size());
    if (e_count >= 2) {
        for (int j = 0; j < e_count; ++j) {
            int s_cur = shape.start_and_index[static_cast<std::size_t>(j)].first;
            int s_next = shape.start_and_index[static_cast<std::size_t>((j + 1) % e_count)].first;
            int diff = ((s_next - s_cur) % len + len) % len;
            shape.junction_overlap.push_back(k - diff);
        }
    }
    shape.sound = true;
    return shape;
}

}  // namespace

ValidationReport validate_generic_cycle(const KGraph& g, const GenericCycle& c, bool hamilton) {
    ValidationReport report;
    analyze_cycle(g, c.order, c.cover, report);
    if (hamilton && report.ok()) check_hamilton(c.order, g.vertex_count(), report);
    return report;
}

ValidationReport validate_loose_cycle(const KGraph& g, const LooseCycle& c, bool hamilton) {
    ValidationReport report;
    CycleShape shape = analyze_cycle(g, c.order, c.cover, report);
    if (!shape.sound) return report;
    const int k = g.uniformity();
    const int len = static_cast<int>(c.order.size());
    const int e_count = static_cast<int>(shape.start_and_index.size());

    std::optional<std::pair<int, int>> detected;
    if (e_count >= 2) {
        int exceptional = 0;
        for (int j = 0; j < e_count; ++j) {
            int overlap = shape.junction_overlap[static_cast<std::size_t>(j)];
            if (overlap == 1) continue;
            if (overlap < 1 || overlap > k - 1) {
                report.violations.push_back({ViolationKind::overlap,
                                             shape.start_and_index[static_cast<std::size_t>(j)].second,
                                             shape.start_and_index[static_cast<std::size_t>((j + 1) % e_count)].second,
                                             "junction overlap " + std::to_string(overlap)});
                continue;
            }
            ++exceptional;
            detected = {shape.start_and_index[static_cast<std::size_t>(j)].second,
                        shape.start_and_index[static_cast<std::size_t>((j + 1) % e_count)].second};
        }
        const bool needs_exception = (len % (k - 1)) != 0;
        if (exceptional > 1)
            report.violations.push_back({ViolationKind::exceptional_pairs, exceptional, -1,
                                         "more than one high-overlap junction"});
        else if (needs_exception && exceptional == 0)
            report.violations.push_back({ViolationKind::exceptional_pairs, 0, -1,
                                         "order size forces one high-overlap junction"});
        else if (!needs_exception && exceptional == 1)
            report.violations.push_back({ViolationKind::exceptional_pairs, 1, -1,
                                         "unexpected high-overlap junction"});
    }
    if (c.exceptional_pair && report.ok()) {
        auto claimed = *c.exceptional_pair;
        if (claimed.first > claimed.second) std::swap(claimed.first, claimed.second);
        auto want = detected;
        if (want && want->first > want->second) std::swap(want->first, want->second);
        if (!want || claimed != *want)
            report.violations.push_back({ViolationKind::exceptional_pairs, claimed.first, claimed.second,
                                         "claimed exceptional pair does not match structure"});
    }
    if (hamilton && report.ok()) check_hamilton(c.order, g.vertex_count(), report);
    return report;
}

std::optional<std::pair<int, int>> find_exceptional_junction(const LooseCycle& c) {
    if (c.cover.size() < 2 || c.order.empty()) return std::nullopt;
    const int len = static_cast<int>(c.order.size());
    int max_v = 0;
    for (Vertex v : c.order) max_v = std::max(max_v, v);
    std::vector<int> pos(static_cast<std::size_t>(max_v + 1), -1);
    for (int i = 0; i < len; ++i) pos[static_cast<std::size_t>(c.order[static_cast<std::size_t>(i)])] = i;
    const int k = static_cast<int>(c.cover.front().size());
    std::vector<std::pair<int, int>> starts;
    for (std::size_t idx = 0; idx < c.cover.size(); ++idx) {
        Edge e = c.cover[idx];
        std::sort(e.begin(), e.end());
        int s = cyclic_window_start(e, pos, len, k);
        if (s < 0) return std::nullopt;
        starts.emplace_back(s, static_cast<int>(idx));
    }
    std::sort(starts.begin(), starts.end());
    const int e_count = static_cast<int>(starts.size());
    for (int j = 0; j < e_count; ++j) {
        int diff = ((starts[static_cast<std::size_t>((j + 1) % e_count)].first -
                     starts[static_cast<std::size_t>(j)].first) % len + len) % len;
        if (k - diff >= 2)
            return std::make_pair(starts[static_cast<std::size_t>(j)].second,
                                  starts[static_cast<std::size_t>((j + 1) % e_count)].second);
    }
    return std::nullopt;
}

ValidationReport validate_tight_cycle(const KGraph& g, const TightCycle& c, bool hamilton) {
    ValidationReport report;
    const int k = g.uniformity();
    if (!check_order(c.order, g.vertex_count(), report)) return report;
    const int len = static_cast<int>(c.order.size());
    if (len < k) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "order shorter than k"});
        return report;
    }
    for (int s = 0; s < len; ++s) {
        Edge window;
        window.reserve(static_cast<std::size_t>(k));
        for (int off = 0; off < k; ++off)
            window.push_back(c.order[static_cast<std::size_t>((s + off) % len)]);
        std::sort(window.begin(), window.end());
        window.erase(std::unique(window.begin(), window.end()), window.end());
        if (static_cast<int>(window.size()) != k) continue;  // full wrap when len == k
        if (!g.contains(window))
            report.violations.push_back({ViolationKind::missing_edge, s, -1, "window not in graph"});
    }
    if (hamilton && report.ok()) check_hamilton(c.order, g.vertex_count(), report);
    return report;
}

namespace {

struct PathShape {
    bool sound = false;
    std::vector<int> starts;  // window start of edges[j], ascending
};

PathShape analyze_path(const KGraph& g, const LoosePath& p, bool relax_first, ValidationReport& report) {
    PathShape shape;
    const int k = g.uniformity();
    if (!check_order(p.order, g.vertex_count(), report)) return shape;
    const int len = static_cast<int>(p.order.size());
    if (p.edges.empty()) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "path without edges"});
        return shape;
    }
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int i = 0; i < len; ++i) pos[static_cast<std::size_t>(p.order[static_cast<std::size_t>(i)])] = i;

    // each edge must be a linear window; collect starts
    std::vector<int> starts;
    for (std::size_t idx = 0; idx < p.edges.size(); ++idx) {
        Edge e = p.edges[idx];
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != k) {
            report.violations.push_back({ViolationKind::structure, static_cast<int>(idx), -1, "edge size differs from k"});
            return shape;
        }
        if (!g.contains(e))
            report.violations.push_back({ViolationKind::missing_edge, static_cast<int>(idx), -1, "path edge not in graph"});
        std::vector<int> ps;
        for (Vertex v : e) {
            int q = pos[static_cast<std::size_t>(v)];
            if (q < 0) {
                report.violations.push_back({ViolationKind::non_window_edge, static_cast<int>(idx), -1,
                                             "edge vertex not on the path"});
                return shape;
            }
            ps.push_back(q);
        }
        std::sort(ps.begin(), ps.end());
        for (int i = 1; i < k; ++i)
            if (ps[static_cast<std::size_t>(i)] != ps[static_cast<std::size_t>(i - 1)] + 1) {
                report.violations.push_back({ViolationKind::non_window_edge, static_cast<int>(idx), -1,
                                             "edge is not k consecutive vertices"});
                return shape;
            }
        starts.push_back(ps[0]);
    }
    if (!std::is_sorted(starts.begin(), starts.end()) ||
        std::adjacent_find(starts.begin(), starts.end()) != starts.end()) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "edges out of order along the path"});
        return shape;
    }
    if (starts.front() != 0 || starts.back() + k != len) {
        report.violations.push_back({ViolationKind::structure, -1, -1, "edges do not span the whole order"});
        return shape;
    }
    for (std::size_t j = 0; j + 1 < starts.size(); ++j) {
        int overlap = starts[j] + k - starts[j + 1];
        bool allowed = (overlap == 1) || (relax_first && j == 0 && overlap >= 1 && overlap <= k - 1);
        if (!allowed) {
            report.violations.push_back({ViolationKind::overlap, static_cast<int>(j), static_cast<int>(j + 1),
                                         "consecutive edges overlap in " + std::to_string(overlap)});
        }
    }
    if (!relax_first && (len - 1) % (k - 1) != 0)
        report.violations.push_back({ViolationKind::residue, len, -1,
                                     "vertex count not 1 mod (k-1)"});
    shape.starts = std::move(starts);
    shape.sound = report.ok();
    return shape;
}

}  // namespace

ValidationReport validate_loose_path(const KGraph& g, const LoosePath& p) {
    ValidationReport report;
    analyze_path(g, p, false, report);
    return report;
}

ValidationReport validate_exceptional_path(const KGraph& g, const LoosePath& p) {
    ValidationReport report;
    analyze_path(g, p, true, report);
    return report;
}

Extremities extremities(const LoosePath& p) {
    Extremities result;
    if (p.edges.empty()) return result;
    Edge first = p.edges.front();
    std::sort(first.begin(), first.end());
    if (p.edges.size() == 1) {
        result.initial = first;
        result.final_set = first;
        return result;
    }
    Edge second = p.edges[1];
    std::sort(second.begin(), second.end());
    std::set_difference(first.begin(), first.end(), second.begin(), second.end(),
                        std::back_inserter(result.initial));
    Edge last = p.edges.back();
    Edge penultimate = p.edges[p.edges.size() - 2];
    std::sort(last.begin(), last.end());
    std::sort(penultimate.begin(), penultimate.end());
    std::set_difference(last.begin(), last.end(), penultimate.begin(), penultimate.end(),
                        std::back_inserter(result.final_set));
    std::map<Vertex, int> count;
    for (const Edge& e : p.edges)
        for (Vertex v : e) ++count[v];
    for (const auto& [v, c] : count)
        if (c >= 2) result.links.push_back(v);
    return result;
}

ConcatResult concatenate(const std::vector<Prepath>& prepaths, const std::vector<LoosePath>& paths,
                         const KGraph& g) {
    ConcatResult result;
    ValidationReport& report = result.report;
    const int k = g.uniformity();
    const std::size_t m = prepaths.size();
    if (m == 0 || paths.size() != m) {
        report.violations.push_back({ViolationKind::structure, -1, -1,
                                     "need equally many prepaths and connecting paths"});
        return result;
    }
    for (std::size_t j = 0; j < m; ++j) {
        ValidationReport core = validate_exceptional_path(g, prepaths[j].core);
        if (!core.ok()) {
            report.violations.push_back({ViolationKind::structure, static_cast<int>(j), -1,
                                         "prepath core invalid: " + core.summary()});
            return result;
        }
        if (static_cast<int>(prepaths[j].i_set.size()) != k - 2 ||
            static_cast<int>(prepaths[j].f_set.size()) != k - 2) {
            report.violations.push_back({ViolationKind::structure, static_cast<int>(j), -1,
                                         "prepath side sets must have k-2 vertices"});
            return result;
        }
        ValidationReport between = validate_loose_path(g, paths[j]);
        if (!between.ok()) {
            report.violations.push_back({ViolationKind::structure, static_cast<int>(j), -1,
                                         "connecting path invalid: " + between.summary()});
            return result;
        }
    }
    // global vertex-disjointness
    {
        std::set<Vertex> seen;
        auto add_all = [&](const std::vector<Vertex>& vs) {
            for (Vertex v : vs)
                if (!seen.insert(v).second)
                    report.violations.push_back({ViolationKind::structure, v, -1,
                                                 "vertex " + std::to_string(v) + " appears in two parts"});
        };
        for (std::size_t j = 0; j < m; ++j) {
            add_all(prepaths[j].core.order);
            add_all(prepaths[j].i_set);
            add_all(prepaths[j].f_set);
            add_all(paths[j].order);
        }
        if (!report.ok()) return result;
    }

    LooseCycle cycle;
    auto append = [&](const std::vector<Vertex>& vs) {
        cycle.order.insert(cycle.order.end(), vs.begin(), vs.end());
    };
    auto sorted_copy = [](std::vector<Vertex> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    for (std::size_t j = 0; j < m; ++j) {
        const Prepath& pre = prepaths[j];
        const LoosePath& mid = paths[j];
        const Prepath& next = prepaths[(j + 1) % m];
        append(pre.core.order);
        for (const Edge& e : pre.core.edges) cycle.cover.push_back(sorted_copy(e));
        // f-junction: f_set + {final of core, initial of mid}
        Edge glue_f = pre.f_set;
        glue_f.push_back(pre.core.final_vertex());
        glue_f.push_back(mid.initial_vertex());
        std::sort(glue_f.begin(), glue_f.end());
        if (!g.contains(glue_f)) {
            report.violations.push_back({ViolationKind::missing_gluing_edge, static_cast<int>(j), 0,
                                         "f-side gluing edge missing at junction " + std::to_string(j)});
            return result;
        }
        append(pre.f_set);
        cycle.cover.push_back(glue_f);
        append(mid.order);
        for (const Edge& e : mid.edges) cycle.cover.push_back(sorted_copy(e));
        // i-junction into the next prepath
        Edge glue_i = next.i_set;
        glue_i.push_back(mid.final_vertex());
        glue_i.push_back(next.core.initial_vertex());
        std::sort(glue_i.begin(), glue_i.end());
        if (!g.contains(glue_i)) {
            report.violations.push_back({ViolationKind::missing_gluing_edge, static_cast<int>(j), 1,
                                         "i-side gluing edge missing at junction " + std::to_string(j)});
            return result;
        }
        append(next.i_set);
        cycle.cover.push_back(glue_i);
    }
    cycle.exceptional_pair = find_exceptional_junction(cycle);
    ValidationReport check = validate_loose_cycle(g, cycle, false);
    if (!check.ok()) {
        report = std::move(check);
        return result;
    }
    result.cycle = std::move(cycle);
    return result;
}

}  // namespace looseham
