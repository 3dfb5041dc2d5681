// Acceptance suite: runs every verification criterion at its published size
// and tolerance, prints one pass/fail line per criterion, and checks the
// stability of the report schema against the golden key list.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "amo/verify.hpp"

namespace {

void collect_paths(const nlohmann::json& j, const std::string& prefix,
                   std::set<std::string>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
            // details payloads vary per criterion by design
            if (it.key() == "details") {
                out.insert(path);
                continue;
            }
            out.insert(path);
            collect_paths(it.value(), path, out);
        }
    } else if (j.is_array() && !j.empty()) {
        collect_paths(j.front(), prefix + "[]", out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    amo::VerifyOptions opt;
    opt.profile = "full";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--profile" && i + 1 < argc) opt.profile = argv[++i];
        if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    }

    amo::VerifyReport rep = amo::verify_all(opt);
    for (const auto& c : rep.criteria) {
        std::printf("[%2d] %-4s %-34s (%s, %.2f s)\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.category.c_str(), c.seconds);
        if (!c.pass) std::printf("      details: %s\n", c.details.dump().c_str());
    }
    std::printf("ACCEPTANCE %s: %zu criteria, %d hard failure(s), %d statistical miss(es), %.1f s total\n",
                rep.pass ? "PASS" : "FAIL", rep.criteria.size(), rep.hard_failures,
                rep.statistical_misses, rep.total_seconds);

    // schema stability against the golden key list
    bool schema_ok = true;
    std::set<std::string> paths;
    collect_paths(rep.to_json(), "", paths);
    std::string golden_path = std::string(AMO_SOURCE_DIR) + "/tests/data/verify_schema.golden";
    std::ifstream golden(golden_path);
    if (!golden) {
        std::printf("SCHEMA    FAIL: cannot open %s\n", golden_path.c_str());
        schema_ok = false;
    } else {
        std::set<std::string> expect;
        std::string line;
        while (std::getline(golden, line))
            if (!line.empty()) expect.insert(line);
        if (paths != expect) {
            schema_ok = false;
            std::printf("SCHEMA    FAIL: key paths diverge from the golden file\n");
            for (const auto& p : paths)
                if (!expect.count(p)) std::printf("  unexpected: %s\n", p.c_str());
            for (const auto& p : expect)
                if (!paths.count(p)) std::printf("  missing:    %s\n", p.c_str());
        } else {
            std::printf("SCHEMA    PASS: report key paths match the golden file\n");
        }
    }

    return (rep.pass && schema_ok) ? 0 : 1;
}
