#include "looseham/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "looseham/errors.hpp"
#include "looseham/rng.hpp"

namespace looseham {

double azuma_bound(double t, std::span<const double> increments) {
    if (increments.empty()) throw InvalidInput("need at least one increment bound");
    if (t < 0) throw InvalidInput("deviation t must be non-negative");
    double sum_sq = 0.0;
    for (double c : increments) {
        if (c < 0) throw InvalidInput("increment bounds must be non-negative");
        sum_sq += c * c;
    }
    if (t == 0.0) return 2.0;
    if (sum_sq == 0.0) throw InvalidInput("all increments zero with t > 0");
    return 2.0 * std::exp(-(t * t) / (2.0 * sum_sq));
}

double kpartite_density(const KGraph& g, const std::vector<std::vector<Vertex>>& classes) {
    const int k = g.uniformity();
    if (static_cast<int>(classes.size()) != k) throw InvalidInput("need one class per edge slot");
    std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
    double cells = 1.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (Vertex v : classes[i]) {
            if (v < 0 || v >= g.vertex_count()) throw InvalidInput("class vertex out of range");
            if (owner[static_cast<std::size_t>(v)] != -1) throw InvalidInput("classes overlap");
            owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
        cells *= static_cast<double>(classes[i].size());
    }
    for (const Edge& e : g.edges()) {
        std::vector<bool> hit(classes.size(), false);
        for (Vertex v : e) {
            int c = owner[static_cast<std::size_t>(v)];
            if (c < 0 || hit[static_cast<std::size_t>(c)])
                throw InvalidInput("edge is not transversal to the classes");
            hit[static_cast<std::size_t>(c)] = true;
        }
    }
    if (cells == 0.0) return 0.0;
    return static_cast<double>(g.edge_count()) / cells;
}

SplitReport run_split_experiment(const KGraph& host, const SplitConfig& cfg, double threshold) {
    const std::size_t k = cfg.classes.size();
    if (cfg.targets.size() != k) throw InvalidInput("one target per class required");
    if (cfg.trials < 1) throw InvalidInput("need at least one trial");
    for (std::size_t i = 0; i < k; ++i) {
        if (cfg.targets[i] < 0 || cfg.targets[i] > static_cast<int>(cfg.classes[i].size()))
            throw InvalidInput("target outside class size");
        if (cfg.classes[i].empty()) throw InvalidInput("empty class");
    }

    SplitReport report;
    report.trials = cfg.trials;
    report.threshold = threshold;
    report.host_density = kpartite_density(host, cfg.classes);

    // flat edge array: the per-trial membership loop dominates the runtime
    const int n = host.vertex_count();
    const int uniformity = host.uniformity();
    std::vector<Vertex> flat;
    flat.reserve(host.edge_count() * static_cast<std::size_t>(uniformity));
    for (const Edge& e : host.edges()) flat.insert(flat.end(), e.begin(), e.end());

    std::vector<std::uint8_t> in_w(static_cast<std::size_t>(n), 0);
    std::vector<double> class_size_sums(k, 0.0);
    double sum = 0.0;
    report.min_density = std::numeric_limits<double>::infinity();
    report.max_density = -std::numeric_limits<double>::infinity();

    for (int trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
        std::fill(in_w.begin(), in_w.end(), 0);
        double cells = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t picked = 0;
            if (cfg.variant == SplitVariant::exact_size) {
                std::vector<Vertex> pool = cfg.classes[i];
                for (int j = 0; j < cfg.targets[i]; ++j) {
                    std::size_t pos = static_cast<std::size_t>(j) +
                                      static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(j)));
                    std::swap(pool[static_cast<std::size_t>(j)], pool[pos]);
                    in_w[static_cast<std::size_t>(pool[static_cast<std::size_t>(j)])] = 1;
                }
                picked = static_cast<std::size_t>(cfg.targets[i]);
            } else {
                const double rate = static_cast<double>(cfg.targets[i]) / static_cast<double>(cfg.classes[i].size());
                for (Vertex v : cfg.classes[i])
                    if (rng.unit() < rate) {
                        in_w[static_cast<std::size_t>(v)] = 1;
                        ++picked;
                    }
            }
            class_size_sums[i] += static_cast<double>(picked);
            cells *= static_cast<double>(picked);
        }
        std::size_t inside = 0;
        const Vertex* cursor = flat.data();
        const Vertex* end = cursor + flat.size();
        for (; cursor != end; cursor += uniformity) {
            std::uint8_t all = 1;
            for (int j = 0; j < uniformity; ++j) all &= in_w[static_cast<std::size_t>(cursor[j])];
            inside += all;
        }
        const double density = cells == 0.0 ? 0.0 : static_cast<double>(inside) / cells;
        sum += density;
        report.min_density = std::min(report.min_density, density);
        report.max_density = std::max(report.max_density, density);
        if (density <= threshold) ++report.failures;
    }
    report.mean_density = sum / static_cast<double>(cfg.trials);
    report.failure_rate = static_cast<double>(report.failures) / static_cast<double>(cfg.trials);

    if (cfg.variant == SplitVariant::independent_inclusion) {
        for (std::size_t i = 0; i < k; ++i) {
            const double size = static_cast<double>(cfg.classes[i].size());
            const double rate = static_cast<double>(cfg.targets[i]) / size;
            const double mean = class_size_sums[i] / static_cast<double>(cfg.trials);
            const double sigma = std::sqrt(size * rate * (1.0 - rate) / static_cast<double>(cfg.trials));
            if (sigma > 0 && std::abs(mean - static_cast<double>(cfg.targets[i])) > 3.0 * sigma)
                report.size_deviation_flagged = true;
        }
    }
    return report;
}

KGraph random_kpartite(const std::vector<int>& class_sizes, double density, std::uint64_t seed,
                       std::vector<std::vector<Vertex>>* classes_out) {
    const int k = static_cast<int>(class_sizes.size());
    if (k < 2) throw InvalidInput("need at least two classes");
    std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(k));
    int n = 0;
    for (int i = 0; i < k; ++i) {
        if (class_sizes[static_cast<std::size_t>(i)] < 1) throw InvalidInput("class sizes must be positive");
        for (int j = 0; j < class_sizes[static_cast<std::size_t>(i)]; ++j)
            classes[static_cast<std::size_t>(i)].push_back(n++);
    }
    SplitMix64 rng(derive_seed(seed, 0xc1a55e5));
    std::vector<Edge> edges;
    Edge cur(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int cls) -> void {
        if (cls == k) {
            if (rng.unit() < density) edges.push_back(cur);
            return;
        }
        for (Vertex v : classes[static_cast<std::size_t>(cls)]) {
            cur[static_cast<std::size_t>(cls)] = v;
            self(self, cls + 1);
        }
    };
    rec(rec, 0);
    if (classes_out) *classes_out = classes;
    return KGraph::unchecked(n, k, std::move(edges));
}

}  // namespace looseham
