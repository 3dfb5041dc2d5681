#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace amo {

/// Reproducibility sidecar written next to every emitted dataset.  The
/// dataset itself is bit-reproducible for deterministic commands; the
/// manifest records how it was produced.
struct RunManifest {
    std::string command_line;
    std::uint64_t seed = 0;
    nlohmann::json tolerances = nlohmann::json::object();
    std::string version;
    double wall_time_s = 0.0;
    nlohmann::json checks = nlohmann::json::object();

    nlohmann::json to_json() const;
};

/// Writes `<dataset_path>.manifest.json`; for stdout datasets ("-") the
/// manifest goes to stderr.
void write_manifest(const RunManifest& m, const std::string& dataset_path);

}  // namespace amo
