#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rsj/weighting.hpp"

namespace rsj {

/// Constant pi in relevant documents, q = n/N.
struct CroftHarper {
    EstimatorParams params;
};

/// Hyperbolic p rising from pi, q = n/N.
struct RobertsonWalker {
    EstimatorParams params;
};

/// p = (n+L)/(N+L) with the constant L from params, q = n/N.
struct Lift {
    EstimatorParams params;
};

/// Lift whose L depends on the term's document frequency.
struct LiftFn {
    LiftFunction fn;
    EstimatorParams params;
};

/// Lift with L = N, i.e. log(1 + N/n).
struct UsualIdf {
    EstimatorParams params;
};

using WeightingScheme = std::variant<CroftHarper, RobertsonWalker, Lift, LiftFn, UsualIdf>;

[[nodiscard]] WeightingScheme default_scheme();

[[nodiscard]] const EstimatorParams& scheme_params(const WeightingScheme& scheme) noexcept;

/// Closed-form weight of one term. Throws DegenerateDocFreq where the scheme diverges.
[[nodiscard]] double scheme_weight(const WeightingScheme& scheme, const TermStats& stats);

/// Estimated probability that the term occurs in a relevant document.
[[nodiscard]] Probability scheme_estimate(const WeightingScheme& scheme, const TermStats& stats);

/// Canonical short name, e.g. "ch(pi=0.5)", "lift(L=100)", "liftfn(prop,c=1)", "usualidf".
[[nodiscard]] std::string scheme_label(const WeightingScheme& scheme);

/// Parses a descriptor such as "lift:L=100", "ch:pi=0.5", "liftfn:power,c=1,beta=0.5"
/// or "usualidf". Throws SchemeParseError naming the offending token.
[[nodiscard]] WeightingScheme parse_scheme(std::string_view spec, LogBase base = LogBase::natural);

/// Accepts "e", "2" and "10". Throws SchemeParseError otherwise.
[[nodiscard]] LogBase parse_log_base(std::string_view text);

}  // namespace rsj
