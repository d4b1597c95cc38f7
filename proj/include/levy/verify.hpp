#pragma once

#include "levy/grid.hpp"
#include "levy/measures.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levy {

struct VerifyOptions {
    double tol_scale = 1.0;        // every tolerance is multiplied by this
    std::uint64_t seed = 20240611;  // Monte Carlo and corpus seed
    int grid_n = 1024;              // measure suite grid (capped at 512 per axis in d = 2)
    double grid_L = 64.0;
};

struct CheckResult {
    std::string id;     // "1".."14" for the acceptance criteria, "m.<name>" for measure checks
    std::string title;
    double score = 0.0;  // worst error/tolerance over the parts of the check; pass needs score ≤ 1
    bool pass = false;
    double seconds = 0.0;
    std::string detail;  // raw numbers behind the score
    std::string timing;  // wall-clock limits, if the check has any (not written to CSV)
};

constexpr int kAcceptanceCount = 14;

/// Runs one acceptance criterion (1-based). Errors inside a check are reported as a failure.
CheckResult run_criterion(int id, const VerifyOptions& opt);

std::vector<CheckResult> run_acceptance(const VerifyOptions& opt, const std::vector<int>& ids = {});

/// Checks on a user-supplied measure: normalization, indices, symbol sign,
/// density admissibility, scaling identity and the semigroup property.
std::vector<CheckResult> run_measure_suite(const MeasureSpec& spec, const VerifyOptions& opt);

/// id,title,score,pass,detail; timings are left out so reruns are byte-identical
std::string results_csv(const std::vector<CheckResult>& results);

}  // namespace levy
