#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ghznet/topology.hpp"

namespace ghznet {

enum class TopologyFormat { json, edge_list_csv };

namespace detail {

inline NetworkTopology load_topology_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw TopologyError(std::string("topology JSON parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw TopologyError("topology JSON must be an object with 'nodes' and 'edges'");
    std::string name = doc.value("name", std::string("unnamed"));
    std::vector<TopologyNode> nodes;
    for (const auto& jn : doc.at("nodes")) {
        if (!jn.contains("id") || !jn.at("id").is_string())
            throw TopologyError("node record missing string 'id': " + jn.dump());
        TopologyNode n;
        n.id = jn.at("id").get<std::string>();
        if (jn.contains("x")) n.x = jn.at("x").get<double>();
        if (jn.contains("y")) n.y = jn.at("y").get<double>();
        nodes.push_back(std::move(n));
    }
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (const auto& je : doc.at("edges")) {
        if (!je.contains("u") || !je.contains("v") || !je.contains("length_km"))
            throw TopologyError("edge record needs 'u', 'v', 'length_km': " + je.dump());
        edges.emplace_back(je.at("u").get<std::string>(), je.at("v").get<std::string>(),
                           je.at("length_km").get<double>());
    }
    return NetworkTopology(std::move(name), std::move(nodes), std::move(edges));
}

// Header `u,v,length_km`, one edge per line. Nodes are implied by the edges,
// in first-appearance order.
inline NetworkTopology load_topology_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw TopologyError("empty edge-list CSV");
    auto strip = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
        std::size_t b = s.find_first_not_of(' ');
        return b == std::string::npos ? std::string() : s.substr(b);
    };
    if (strip(line) != "u,v,length_km")
        throw TopologyError("edge-list CSV must start with header 'u,v,length_km', got '" +
                            strip(line) + "'");
    std::vector<TopologyNode> nodes;
    std::set<std::string> seen;
    std::vector<std::tuple<std::string, std::string, double>> edges;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string u, v, len_str;
        if (!std::getline(ss, u, ',') || !std::getline(ss, v, ',') || !std::getline(ss, len_str))
            throw TopologyError("CSV line " + std::to_string(lineno) + " malformed: '" + line + "'");
        u = strip(u);
        v = strip(v);
        double len = 0.0;
        try {
            len = std::stod(len_str);
        } catch (const std::exception&) {
            throw TopologyError("CSV line " + std::to_string(lineno) + " has bad length '" +
                                len_str + "'");
        }
        for (const auto& id : {u, v}) {
            if (seen.insert(id).second) nodes.push_back(TopologyNode{id, {}, {}});
        }
        edges.emplace_back(u, v, len);
    }
    return NetworkTopology(name, std::move(nodes), std::move(edges));
}

} // namespace detail

inline NetworkTopology load_topology(std::istream& in, TopologyFormat format,
                                     const std::string& name_hint = "unnamed") {
    switch (format) {
    case TopologyFormat::json:
        return detail::load_topology_json(in);
    case TopologyFormat::edge_list_csv:
        return detail::load_topology_csv(in, name_hint);
    }
    throw TopologyError("unknown topology format");
}

inline nlohmann::json topology_to_json(const NetworkTopology& topo) {
    nlohmann::json doc;
    doc["name"] = topo.name();
    doc["nodes"] = nlohmann::json::array();
    for (const auto& n : topo.nodes()) {
        nlohmann::json jn{{"id", n.id}};
        if (n.x) jn["x"] = *n.x;
        if (n.y) jn["y"] = *n.y;
        doc["nodes"].push_back(std::move(jn));
    }
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : topo.edges()) {
        doc["edges"].push_back({{"u", topo.node(e.a).id},
                                {"v", topo.node(e.b).id},
                                {"length_km", e.length_km}});
    }
    return doc;
}

} // namespace ghznet
