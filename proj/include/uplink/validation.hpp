#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "uplink/execution.hpp"

namespace uplink::validation {

inline constexpr int kCriterionCount = 12;

/// Quick mode divides Monte Carlo trial and pair counts by this factor and
/// widens Monte Carlo tolerances by kQuickToleranceFactor. Analytic checks
/// keep their tolerances.
inline constexpr std::size_t kQuickTrialDivisor = 10;
inline constexpr double kQuickToleranceFactor = 1.5;

struct SuiteOptions {
    bool quick = false;
    /// Trial counts from the acceptance table (2e5 per Monte Carlo curve).
    /// Without it the TruePpp curves run 5e4 (alpha = 4) and 1e4
    /// (alpha = 3.25) trials, which keeps a single-core run under ten minutes.
    bool full = false;
    std::uint64_t seed = 42;
    Execution execution = Execution::Parallel;
    std::set<int> only;  // empty: all criteria
};

struct CheckResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs one acceptance criterion (1..12). Numerical failures inside a check
/// are reported as a failed result, never thrown.
CheckResult run_criterion(int id, const SuiteOptions& options);

std::vector<CheckResult> run_suite(const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result = {});

/// "[PASS]  3 title: detail". Timing is left out so reports are reproducible.
std::string format_result(const CheckResult& result);

}  // namespace uplink::validation
