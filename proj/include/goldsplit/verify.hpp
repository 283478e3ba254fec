#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace goldsplit {

struct CheckResult {
  std::string id;  // "1" .. "11"
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

enum class Suite { prox, linops, stepsize, convergence, rates, experiments, determinism, all };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

CheckResult check_prox_oracles();        // 1
CheckResult check_operators();           // 2
CheckResult check_pgrpda_stepsize();     // 3
CheckResult check_aegrpda_stepsize();    // 4
CheckResult check_global_convergence();  // 5
CheckResult check_ergodic_rate();        // 6
CheckResult check_linear_rate();         // 7
CheckResult check_extended_region();     // 8
CheckResult check_conventions();         // 9
CheckResult check_experiments();         // 10
CheckResult check_determinism();         // 11

/// Runs the checks of a suite in criterion order. `on_result` is called as
/// each check finishes.
std::vector<CheckResult> run_suite(Suite suite, const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS [3] title: detail (1.2 s)"
std::string format_result(const CheckResult& result);

// Pinned values shared by the battery and the tests.
inline constexpr double kProxOracleTol = 1e-6;
inline constexpr double kMoreauTol = 1e-12;
inline constexpr double kAdjointTol = 1e-10;
inline constexpr double kOperatorNormRelTol = 1e-4;
inline constexpr double kStepsizeTol = 1e-12;
inline constexpr double kConvergenceGapTol = 1e-6;
inline constexpr double kGoldenResidualTol = 1e-6;
inline constexpr double kErgodicSlopeMax = -0.9;
inline constexpr double kLinearFitMinR2 = 0.9;
// Calibrated against an exact c/n series under the same burn-in rule, whose
// log-linear fit reaches R^2 ~ 0.93 on any window length.
inline constexpr double kLinearFitCalibratedR2 = 0.99;
inline constexpr double kExtendedGapTol = 1e-5;
inline constexpr double kLassoGapTol = 1e-4;
inline constexpr double kPsnrGainDb = 5.0;
inline constexpr double kGraphnetRelErr = 0.3;

}  // namespace goldsplit
