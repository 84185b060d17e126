#include "looseham/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "looseham/errors.hpp"

namespace looseham {

std::vector<int> build_string(int len, const std::vector<int>& counts, int s, int t) {
    const int k = static_cast<int>(counts.size());
    if (k < 1) throw InvalidInput("empty alphabet");
    if (s < 0 || s >= k || t < 0 || t >= k) throw InvalidInput("s, t must index the alphabet");
    long long total = 0;
    for (int c : counts) {
        if (c < 0) throw InvalidInput("negative character count");
        if (2 * c >= len) throw InvalidInput("character count must be below len/2");
        total += c;
    }
    if (total != len) throw InvalidInput("character counts must sum to len");

    // fill odd 1-based positions first, then even ones
    std::vector<int> fill_order;
    fill_order.reserve(static_cast<std::size_t>(len));
    for (int p = 0; p < len; p += 2) fill_order.push_back(p);
    for (int p = 1; p < len; p += 2) fill_order.push_back(p);

    // block insertion order; see the character block argument for conditions
    // (1) and (2): t-block first / s-block last when s != t, s-block shifted
    // away from both ends otherwise
    std::vector<int> block_order;
    block_order.reserve(static_cast<std::size_t>(k));
    if (s != t) {
        block_order.push_back(t);
        for (int i = 0; i < k; ++i)
            if (i != s && i != t) block_order.push_back(i);
        block_order.push_back(s);
    } else if (len % 2 == 1) {
        for (int i = 0; i < k; ++i)
            if (i != s) block_order.push_back(i);
        block_order.push_back(s);
    } else {
        int first = -1;
        for (int i = 0; i < k; ++i)
            if (i != s && counts[static_cast<std::size_t>(i)] > 0) {
                first = i;
                break;
            }
        if (first < 0) throw InvalidInput("no usable first block");  // unreachable given the count bounds
        block_order.push_back(first);
        block_order.push_back(s);
        for (int i = 0; i < k; ++i)
            if (i != s && i != first) block_order.push_back(i);
    }

    std::vector<int> result(static_cast<std::size_t>(len), -1);
    std::size_t cursor = 0;
    for (int ch : block_order)
        for (int copy = 0; copy < counts[static_cast<std::size_t>(ch)]; ++copy)
            result[static_cast<std::size_t>(fill_order[cursor++])] = ch;
    return result;
}

std::vector<int> class_of_map(const PartitionedVertexSet& classes, int n_total) {
    std::vector<int> owner(static_cast<std::size_t>(n_total), -1);
    for (std::size_t i = 0; i < classes.classes.size(); ++i)
        for (Vertex v : classes.classes[i]) {
            if (v < 0 || v >= n_total) throw InvalidInput("class vertex out of range");
            if (owner[static_cast<std::size_t>(v)] != -1) throw InvalidInput("classes overlap");
            owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    return owner;
}

LoosePath build_loose_path_complete(const PartitionedVertexSet& classes,
                                    const std::vector<int>& use_counts, int s, int t) {
    const int k = static_cast<int>(classes.classes.size());
    if (k < 2) throw InvalidInput("need at least two classes");
    if (static_cast<int>(use_counts.size()) != k) throw InvalidInput("one use count per class required");
    if (s < 0 || s >= k || t < 0 || t >= k) throw InvalidInput("s, t must index the classes");
    long long total = 0;
    for (int i = 0; i < k; ++i) {
        int b = use_counts[static_cast<std::size_t>(i)];
        if (b < 0 || b > static_cast<int>(classes.classes[static_cast<std::size_t>(i)].size()))
            throw InvalidInput("use count outside class size");
        total += b;
    }
    if ((total - 1) % (k - 1) != 0) throw InvalidInput("vertex total must be 1 mod (k-1)");
    const long long n = (total - 1) / (k - 1);  // number of edges
    for (int i = 0; i < k; ++i) {
        int b = use_counts[static_cast<std::size_t>(i)];
        if (2 * b < n + 2 || b > n)
            throw InvalidInput("class " + std::to_string(i) + " use count outside [n/2+1, n]");
    }

    std::vector<int> link_classes(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        link_classes[static_cast<std::size_t>(i)] = static_cast<int>(n) - use_counts[static_cast<std::size_t>(i)];
    std::vector<int> chain = build_string(static_cast<int>(n) - 1, link_classes, s, t);

    // class of every path position: endpoints s / t, link positions from the
    // string, the rest filled per edge with the classes not yet present
    const int length = static_cast<int>(n) * (k - 1) + 1;
    std::vector<int> cls(static_cast<std::size_t>(length), -1);
    cls[0] = s;
    cls[static_cast<std::size_t>(length - 1)] = t;
    for (int j = 1; j < n; ++j)
        cls[static_cast<std::size_t>(j * (k - 1))] = chain[static_cast<std::size_t>(j - 1)];
    for (int j = 0; j < n; ++j) {
        const int left = j * (k - 1);
        const int right = left + k - 1;
        std::vector<bool> present(static_cast<std::size_t>(k), false);
        present[static_cast<std::size_t>(cls[static_cast<std::size_t>(left)])] = true;
        present[static_cast<std::size_t>(cls[static_cast<std::size_t>(right)])] = true;
        int next_class = 0;
        for (int p = left + 1; p < right; ++p) {
            while (present[static_cast<std::size_t>(next_class)]) ++next_class;
            cls[static_cast<std::size_t>(p)] = next_class;
            present[static_cast<std::size_t>(next_class)] = true;
        }
    }

    std::vector<std::vector<Vertex>> pools = classes.classes;
    for (auto& pool : pools) std::sort(pool.begin(), pool.end());
    std::vector<std::size_t> cursor(static_cast<std::size_t>(k), 0);
    LoosePath path;
    path.order.reserve(static_cast<std::size_t>(length));
    for (int p = 0; p < length; ++p) {
        int c = cls[static_cast<std::size_t>(p)];
        path.order.push_back(pools[static_cast<std::size_t>(c)][cursor[static_cast<std::size_t>(c)]++]);
    }
    for (int j = 0; j < n; ++j) {
        Edge e(path.order.begin() + j * (k - 1), path.order.begin() + j * (k - 1) + k);
        std::sort(e.begin(), e.end());
        path.edges.push_back(std::move(e));
    }
    return path;
}

ExtremalGraph extremal_construction(int n, int k) {
    if (k < 3) throw InvalidInput("extremal construction needs k >= 3");
    if (n < 2 * k - 1) throw InvalidInput("extremal construction needs n >= 2k-1");
    const int small = (n + 2 * k - 3) / (2 * k - 2) - 1;  // ceil(n/(2k-2)) - 1
    std::vector<Edge> edges;
    Edge cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (cur[0] < small) edges.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    ExtremalGraph result{KGraph::unchecked(n, k, std::move(edges)), {}, {}};
    for (int v = 0; v < small; ++v) result.small_side.push_back(v);
    for (int v = small; v < n; ++v) result.large_side.push_back(v);
    return result;
}

Gadget build_ak(int k) {
    if (k < 3) throw InvalidInput("gadget needs k >= 3");
    const int part_size = k - 1;
    const int part_count = 2 * k - 2;  // parts 0 .. 2k-3
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(part_count));
    for (int i = 0; i < part_count; ++i)
        for (int j = 0; j < part_size; ++j)
            parts[static_cast<std::size_t>(i)].push_back(i * part_size + j);
    std::vector<Edge> edges;
    for (int i = 1; i < part_count; ++i)
        for (Vertex x : parts[0]) {
            Edge e = parts[static_cast<std::size_t>(i)];
            e.push_back(x);
            std::sort(e.begin(), e.end());
            edges.push_back(std::move(e));
        }
    return Gadget{KGraph::unchecked(part_count * part_size, k, std::move(edges)), std::move(parts)};
}

}  // namespace looseham
