#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "looseham/cycles.hpp"

namespace looseham {

/// Serializable witness. JSON schema:
/// {"kind": "loose_path"|"loose_cycle"|"generic_cycle"|"tight_cycle",
///  "order": [ids], "edges": [[ids]...], "exceptional_pair": null|[i, j]}
struct Certificate {
    enum class Kind { loose_path, loose_cycle, generic_cycle, tight_cycle };
    Kind kind = Kind::loose_cycle;
    std::vector<Vertex> order;
    std::vector<Edge> edges;
    std::optional<std::pair<int, int>> exceptional_pair;
};

const char* to_string(Certificate::Kind kind);

Certificate make_certificate(const LoosePath& p);
Certificate make_certificate(const LooseCycle& c);
Certificate make_certificate(const GenericCycle& c);
Certificate make_certificate(const TightCycle& c, const KGraph& g);

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

/// Re-checks the witness against a host graph. For cycle kinds, `hamilton`
/// additionally requires the order to cover every vertex of g.
ValidationReport check_certificate(const KGraph& g, const Certificate& cert, bool hamilton);

}  // namespace looseham
