#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rsj/weighting.hpp"

namespace rsj {

/// The closed-form weights under test. Verification compares these against the
/// generic log-odds weight and the estimators; swapping one out is how the
/// harness itself is mutation-tested.
struct ClosedForms {
    std::function<double(const TermStats&, const EstimatorParams&)> ch = weight_ch;
    std::function<double(const TermStats&, const EstimatorParams&)> rw = weight_rw;
    std::function<double(const TermStats&, double, LogBase)> lift = weight_lift;
    std::function<double(const TermStats&, const LiftFunction&, LogBase)> lift_fn = weight_lift_fn;
};

/// Reference closed forms with one formula deliberately broken:
/// "lift-log-ratio" (log(L/n) for the lift weight), "ch-flip" (negated CH
/// weight), "rw-drop-pi" (RW weight without pi'). Throws InvalidParameter for
/// other names.
[[nodiscard]] ClosedForms mutated_closed_forms(std::string_view mutation);

struct VerifyGrid {
    /// Sign, monotonicity and bound checks run over every N in 2..max_exhaustive_n.
    std::uint64_t max_exhaustive_n = 200;
    /// Random (N, n, pi, L) tuples added to the closed-form identity checks.
    std::size_t random_tuples = 1000;
    std::uint64_t max_random_n = 1'000'000;
    /// Random corpora for the retrieval oracle check.
    std::size_t random_corpora = 100;
    std::uint64_t seed = 918273;
    double tolerance = 1e-12;
};

struct CheckResult {
    std::string name;
    std::string grid;
    bool passed = true;
    double worst_deviation = 0.0;
    std::size_t cases = 0;
    std::size_t failures = 0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] double worst_deviation() const noexcept;
};

/// Names of the weighting properties, in report order. The retrieval oracle
/// check follows them.
[[nodiscard]] const std::vector<std::string>& weighting_check_names();
inline constexpr std::string_view kRetrievalOracleCheck = "retrieval oracle equivalence";

/// Runs every check (in parallel) and returns them in a fixed order.
/// Failures are reported, never thrown.
[[nodiscard]] VerificationReport verify(const VerifyGrid& grid = {}, const ClosedForms& forms = {});

/// One line per check followed by `VERIFY <pass|fail> <num_checks> <worst_dev>`.
void write_report(const VerificationReport& report, std::ostream& out);

}  // namespace rsj
