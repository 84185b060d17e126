#include "looseham/certificate.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "looseham/errors.hpp"

namespace looseham {

using nlohmann::json;

const char* to_string(Certificate::Kind kind) {
    switch (kind) {
        case Certificate::Kind::loose_path: return "loose_path";
        case Certificate::Kind::loose_cycle: return "loose_cycle";
        case Certificate::Kind::generic_cycle: return "generic_cycle";
        case Certificate::Kind::tight_cycle: return "tight_cycle";
    }
    return "?";
}

Certificate make_certificate(const LoosePath& p) {
    return {Certificate::Kind::loose_path, p.order, p.edges, std::nullopt};
}

Certificate make_certificate(const LooseCycle& c) {
    return {Certificate::Kind::loose_cycle, c.order, c.cover, c.exceptional_pair};
}

Certificate make_certificate(const GenericCycle& c) {
    return {Certificate::Kind::generic_cycle, c.order, c.cover, std::nullopt};
}

Certificate make_certificate(const TightCycle& c, const KGraph& g) {
    Certificate cert;
    cert.kind = Certificate::Kind::tight_cycle;
    cert.order = c.order;
    const int k = g.uniformity();
    const int len = static_cast<int>(c.order.size());
    for (int s = 0; s < len; ++s) {
        Edge window;
        for (int off = 0; off < k; ++off)
            window.push_back(c.order[static_cast<std::size_t>((s + off) % len)]);
        std::sort(window.begin(), window.end());
        cert.edges.push_back(std::move(window));
        if (len == k) break;
    }
    std::sort(cert.edges.begin(), cert.edges.end());
    cert.edges.erase(std::unique(cert.edges.begin(), cert.edges.end()), cert.edges.end());
    return cert;
}

json to_json(const Certificate& cert) {
    json j;
    j["kind"] = to_string(cert.kind);
    j["order"] = cert.order;
    j["edges"] = cert.edges;
    if (cert.exceptional_pair)
        j["exceptional_pair"] = {cert.exceptional_pair->first, cert.exceptional_pair->second};
    else
        j["exceptional_pair"] = nullptr;
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    if (!j.is_object() || !j.contains("kind") || !j.contains("order") || !j.contains("edges"))
        throw ParseError("certificate needs kind, order and edges");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "loose_path") cert.kind = Certificate::Kind::loose_path;
    else if (kind == "loose_cycle") cert.kind = Certificate::Kind::loose_cycle;
    else if (kind == "generic_cycle") cert.kind = Certificate::Kind::generic_cycle;
    else if (kind == "tight_cycle") cert.kind = Certificate::Kind::tight_cycle;
    else throw ParseError("unknown certificate kind '" + kind + "'");
    cert.order = j.at("order").get<std::vector<Vertex>>();
    cert.edges = j.at("edges").get<std::vector<Edge>>();
    if (j.contains("exceptional_pair") && !j.at("exceptional_pair").is_null()) {
        auto pair = j.at("exceptional_pair").get<std::vector<int>>();
        if (pair.size() != 2) throw ParseError("exceptional_pair needs two edge indices");
        cert.exceptional_pair = {pair[0], pair[1]};
    }
    return cert;
}

ValidationReport check_certificate(const KGraph& g, const Certificate& cert, bool hamilton) {
    switch (cert.kind) {
        case Certificate::Kind::loose_path:
            return validate_loose_path(g, LoosePath{cert.order, cert.edges});
        case Certificate::Kind::loose_cycle:
            return validate_loose_cycle(g, LooseCycle{cert.order, cert.edges, cert.exceptional_pair}, hamilton);
        case Certificate::Kind::generic_cycle:
            return validate_generic_cycle(g, GenericCycle{cert.order, cert.edges}, hamilton);
        case Certificate::Kind::tight_cycle: {
            ValidationReport report = validate_tight_cycle(g, TightCycle{cert.order}, hamilton);
            if (!report.ok()) return report;
            // stored edges must be exactly the windows of the order
            Certificate expect = make_certificate(TightCycle{cert.order}, g);
            auto got = cert.edges;
            for (auto& e : got) std::sort(e.begin(), e.end());
            std::sort(got.begin(), got.end());
            if (got != expect.edges)
                report.violations.push_back({ViolationKind::structure, -1, -1,
                                             "tight cycle edges differ from the window set"});
            return report;
        }
    }
    ValidationReport report;
    report.violations.push_back({ViolationKind::structure, -1, -1, "unknown certificate kind"});
    return report;
}

}  // namespace looseham
