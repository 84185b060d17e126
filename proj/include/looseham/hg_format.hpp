#pragma once

#include <iosfwd>
#include <string>

#include "looseham/kgraph.hpp"

namespace looseham {

// Text format: first non-comment line "n k", then one edge per line as k
// strictly ascending vertex ids. Lines starting with '#' are ignored.
// Duplicate edge lines are a parse error.
KGraph read_hypergraph(std::istream& in);
KGraph read_hypergraph_file(const std::string& path);

// Canonical emission: edges sorted lexicographically, single spaces, trailing
// newline. parse(emit(g)) == g and emit(parse(text)) is byte-stable.
void write_hypergraph(std::ostream& out, const KGraph& g);
void write_hypergraph_file(const std::string& path, const KGraph& g);
std::string to_text(const KGraph& g);

}  // namespace looseham
