#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "looseham/kgraph.hpp"

namespace looseham {

/// Azuma tail bound 2 exp(-t^2 / (2 sum c_i^2)) for a martingale with
/// increments bounded by c_i. Equals 2 at t = 0 and decreases in t.
double azuma_bound(double t, std::span<const double> increments);

/// |edges| / prod |X_i| for a k-partite host; every edge must be transversal.
double kpartite_density(const KGraph& g, const std::vector<std::vector<Vertex>>& classes);

enum class SplitVariant { exact_size, independent_inclusion };

struct SplitConfig {
    std::vector<std::vector<Vertex>> classes;
    std::vector<int> targets;  // t_i, one per class
    int trials = 1;
    std::uint64_t seed = 0;
    SplitVariant variant = SplitVariant::exact_size;
};

struct SplitReport {
    int trials = 0;
    int failures = 0;          // trials with restricted density <= threshold
    double failure_rate = 0.0;
    double threshold = 0.0;
    double host_density = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    double mean_density = 0.0;
    // independent-inclusion only: some class mean |W_i| drifted beyond three
    // standard deviations of its target (reported, not an error)
    bool size_deviation_flagged = false;
};

/// Monte Carlo check of density concentration under random class splitting.
/// Per trial the W_i are sampled (exact size t_i, or inclusion with rate
/// t_i/|X_i|) and the density of the restriction is compared against the
/// threshold. Reproducible: per-trial seeds derive from (seed, trial).
SplitReport run_split_experiment(const KGraph& host, const SplitConfig& cfg, double threshold);

/// seeded k-partite host with the given class sizes and edge density
KGraph random_kpartite(const std::vector<int>& class_sizes, double density, std::uint64_t seed,
                       std::vector<std::vector<Vertex>>* classes_out = nullptr);

}  // namespace looseham
