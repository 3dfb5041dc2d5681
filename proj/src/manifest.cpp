#include "amo/manifest.hpp"

#include <fstream>
#include <iostream>

#include "amo/version.hpp"

namespace amo {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command_line"] = command_line;
    j["seed"] = seed;
    j["tolerances"] = tolerances;
    j["version"] = version.empty() ? kVersion : version;
    j["wall_time_s"] = wall_time_s;
    j["checks"] = checks;
    return j;
}

void write_manifest(const RunManifest& m, const std::string& dataset_path) {
    if (dataset_path == "-") {
        std::cerr << m.to_json().dump(2) << "\n";
        return;
    }
    std::ofstream out(dataset_path + ".manifest.json");
    out << m.to_json().dump(2) << "\n";
}

}  // namespace amo
