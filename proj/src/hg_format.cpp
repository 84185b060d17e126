#include "looseham/hg_format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "looseham/errors.hpp"

namespace looseham {

KGraph read_hypergraph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1, k = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n >> k)) throw ParseError("expected header 'n k'", line_no);
            std::string extra;
            if (fields >> extra) throw ParseError("trailing tokens after header", line_no);
            if (n < 0 || k < 2) throw ParseError("invalid header values", line_no);
            continue;
        }
        Edge e;
        int v;
        while (fields >> v) e.push_back(v);
        if (!fields.eof()) throw ParseError("non-integer token in edge line", line_no);
        if (static_cast<int>(e.size()) != k)
            throw ParseError("edge line has " + std::to_string(e.size()) + " ids, expected " + std::to_string(k), line_no);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw ParseError("vertex id out of range", line_no);
            if (i > 0 && e[i] <= e[i - 1]) throw ParseError("vertex ids not strictly ascending", line_no);
        }
        edges.push_back(std::move(e));
    }
    if (n < 0) throw ParseError("missing header line");
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("duplicate edge line");
    return KGraph::unchecked(n, k, std::move(edges));
}

KGraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const KGraph& g) {
    out << g.vertex_count() << ' ' << g.uniformity() << '\n';
    for (const Edge& e : g.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
}

void write_hypergraph_file(const std::string& path, const KGraph& g) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_hypergraph(out, g);
}

std::string to_text(const KGraph& g) {
    std::ostringstream out;
    write_hypergraph(out, g);
    return out.str();
}

}  // namespace looseham
