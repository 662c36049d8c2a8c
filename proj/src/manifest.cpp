// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/manifest.hpp"

#include <istream>

#include "scip/error.hpp"

namespace scip {

std::string to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["config"] = m.config;
    nlohmann::ordered_json in = nlohmann::ordered_json::object(), out = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.inputs) in[k] = v;
    for (const auto& [k, v] : m.outputs) out[k] = v;
    j["inputs"] = in;
    j["outputs"] = out;
    j["args"] = m.args;
    return j.dump(2) + "\n";
}

RunManifest parse_manifest(std::istream& in) {
    try {
        const auto j = nlohmann::ordered_json::parse(in);
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.config = j.at("config");
        for (const auto& [k, v] : j.at("inputs").items()) m.inputs.emplace_back(k, v.get<std::string>());
        for (const auto& [k, v] : j.at("outputs").items()) m.outputs.emplace_back(k, v.get<std::string>());
        m.args = j.at("args").get<std::vector<std::string>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("malformed manifest: ") + e.what());
    }
}

std::string manifest_path_for(std::string_view output_path) {
    return std::string(output_path) + ".manifest.json";
}

}  // namespace scip
