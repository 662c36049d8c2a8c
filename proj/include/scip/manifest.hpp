// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace scip {

inline constexpr std::string_view kToolName = "scip";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Record of one CLI run. `args` is the fully resolved argument list (every
/// default spelled out), so `scip <args...>` replays the run. Execution
/// settings that cannot change outputs (thread count) are not recorded, which
/// keeps manifests byte-identical across them.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::uint64_t seed = 0;
    std::vector<std::string> args;
};

std::string to_json(const RunManifest& manifest);
RunManifest parse_manifest(std::istream& in);

/// `<output>.manifest.json`
std::string manifest_path_for(std::string_view output_path);

}  // namespace scip
