#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "amo/lyapunov.hpp"

namespace amo {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string category;  // "hard" | "statistical"
    bool pass = false;
    double seconds = 0.0;
    nlohmann::json details = nlohmann::json::object();
};

struct VerifyOptions {
    std::string profile = "quick";  // "quick" | "full"
    std::uint64_t seed = 42;
    Exec exec = Exec::parallel;
    std::string mutate;  // "" or "tmpolyrel-sign" (testing aid)
};

struct VerifyReport {
    std::string profile;
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    int hard_failures = 0;
    int statistical_misses = 0;
    bool pass = false;
    double total_seconds = 0.0;

    nlohmann::json to_json() const;
};

/// Runs the whole verification battery.  The full profile runs every check
/// at its published size and tolerance; quick shrinks the expensive sweeps
/// to fit interactive use while keeping every tolerance pinned.
VerifyReport verify_all(const VerifyOptions& opt);

// Individual checks, exposed for unit tests and the mutation harness.
CriterionResult check_herman_bound(const VerifyOptions& opt);
CriterionResult check_lyapunov_identity(const VerifyOptions& opt);
CriterionResult check_gap_count(const VerifyOptions& opt);
CriterionResult check_gap_geometry(const VerifyOptions& opt);
CriterionResult check_spectral_continuity(const VerifyOptions& opt);
CriterionResult check_duality_scaling(const VerifyOptions& opt);
CriterionResult check_localization_decay(const VerifyOptions& opt);
CriterionResult check_gordon_inequality(const VerifyOptions& opt);
CriterionResult check_determinant_green_identities(const VerifyOptions& opt);
CriterionResult check_duality_pipeline(const VerifyOptions& opt);
CriterionResult check_butterfly(const VerifyOptions& opt);
CriterionResult check_periodic_oracle(const VerifyOptions& opt);

}  // namespace amo
