#pragma once

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ghznet/common.hpp"
#include "ghznet/version.hpp"

namespace ghznet {

// Echo of everything that went into a run: resolved flags, input digests,
// artifact version and a timestamp. Every output directory gets exactly one.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> flags;   // resolved values, stringified
    std::map<std::string, std::string> inputs;  // path -> content digest
    std::string version = kVersion;
    std::string timestamp;
};

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf.str())));
    return hex;
}

// UTC ISO-8601. Honors SOURCE_DATE_EPOCH (reproducible-builds convention) so
// re-runs can be made byte-identical.
inline std::string manifest_timestamp() {
    std::time_t now;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json flags = nlohmann::json::object();
    for (const auto& [k, v] : m.flags) flags[k] = v;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : m.inputs) inputs[k] = v;
    return nlohmann::json{{"command", m.command},
                          {"flags", flags},
                          {"inputs", inputs},
                          {"version", m.version},
                          {"timestamp", m.timestamp}};
}

} // namespace ghznet
