#pragma once

#include <cstdint>

#include "rsj/error.hpp"

/// Binary-independence term weighting.
///
/// A term's weight is the log-odds ratio log[p(1-q) / (q(1-p))] where p is the
/// probability that the term occurs in a relevant document and q that it occurs
/// in a non-relevant one. Without relevance information both are estimated from
/// document frequency alone; the estimators and their closed-form weights live
/// here.
namespace rsj {

enum class LogBase { natural, two, ten };

/// Converts a natural logarithm into the requested base.
[[nodiscard]] double rebase_log(double natural_log, LogBase base) noexcept;

/// Document frequency of one term together with the corpus size.
class TermStats {
  public:
    /// Throws InvalidParameter unless 0 <= df <= corpus_size and corpus_size >= 1.
    TermStats(std::uint64_t df, std::uint64_t corpus_size);

    [[nodiscard]] std::uint64_t df() const noexcept { return m_df; }
    [[nodiscard]] std::uint64_t corpus_size() const noexcept { return m_corpus_size; }

    friend bool operator==(const TermStats&, const TermStats&) = default;

  private:
    std::uint64_t m_df;
    std::uint64_t m_corpus_size;
};

/// A probability held as the pair (mass, rest) with p = mass / (mass + rest).
///
/// Estimators know both p and 1-p as exact ratios of counts; keeping the two
/// numerators separate lets the log-odds be evaluated without cancellation when
/// p is close to q or close to 1.
class Probability {
  public:
    /// Throws InvalidParameter outside [0,1].
    explicit Probability(double value);

    /// Throws InvalidParameter unless mass >= 0, rest >= 0 and mass + rest > 0.
    static Probability from_odds(double mass, double rest);

    [[nodiscard]] double value() const noexcept { return m_value; }
    [[nodiscard]] double complement() const noexcept { return m_rest / (m_mass + m_rest); }
    [[nodiscard]] double mass() const noexcept { return m_mass; }
    [[nodiscard]] double rest() const noexcept { return m_rest; }

    /// Copy with value() clamped to [lo, hi]; the odds are left alone.
    [[nodiscard]] Probability clamped(double lo, double hi) const noexcept;

  private:
    Probability(double value, double mass, double rest) noexcept
        : m_value(value), m_mass(mass), m_rest(rest)
    {}

    double m_value;
    double m_mass;
    double m_rest;
};

/// The constant pi shared by the Croft-Harper and Robertson-Walker estimators,
/// the lift constant L, and the logarithm base used by every weight.
class EstimatorParams {
  public:
    /// Throws InvalidParameter unless 0 < pi < 1 and lift > 0.
    explicit EstimatorParams(double pi = 0.5, double lift = 1.0, LogBase log_base = LogBase::natural);

    [[nodiscard]] double pi() const noexcept { return m_pi; }
    [[nodiscard]] double lift() const noexcept { return m_lift; }
    [[nodiscard]] LogBase log_base() const noexcept { return m_log_base; }

    friend bool operator==(const EstimatorParams&, const EstimatorParams&) = default;

  private:
    double m_pi;
    double m_lift;
    LogBase m_log_base;
};

/// A lift that varies with document frequency.
class LiftFunction {
  public:
    enum class Kind {
        constant,       // L(n) = L
        proportional,   // L(n) = c * n
        power,          // L(n) = c * n^beta
        scaled_corpus,  // L(n) = alpha * N
    };

    static LiftFunction constant(double lift);
    static LiftFunction proportional(double c);
    static LiftFunction power(double c, double beta);
    static LiftFunction scaled_corpus(double alpha);

    [[nodiscard]] Kind kind() const noexcept { return m_kind; }
    /// L for constant, c for proportional/power, alpha for scaled_corpus.
    [[nodiscard]] double scale() const noexcept { return m_scale; }
    /// beta for power; unused otherwise.
    [[nodiscard]] double exponent() const noexcept { return m_exponent; }

    [[nodiscard]] double operator()(const TermStats& stats) const noexcept;

    friend bool operator==(const LiftFunction&, const LiftFunction&) = default;

  private:
    LiftFunction(Kind kind, double scale, double exponent) noexcept
        : m_kind(kind), m_scale(scale), m_exponent(exponent)
    {}

    Kind m_kind;
    double m_scale;
    double m_exponent;
};

/// log[p(1-q) / (q(1-p))]. Throws DegenerateProbability if p or q is 0 or 1.
[[nodiscard]] double rsj_weight(const Probability& p, const Probability& q, LogBase base = LogBase::natural);

/// log(pi / (1 - pi)).
[[nodiscard]] double pi_prime(const EstimatorParams& params);

// Estimators.

/// q = n/N: almost every document is non-relevant.
[[nodiscard]] Probability estimate_q_ch1(const TermStats& stats);
/// p = pi for every term.
[[nodiscard]] Probability estimate_p_ch2(const EstimatorParams& params);
/// p = pi / (pi + (1-pi)(N-n)/N), rising hyperbolically from pi at n=0 to 1 at n=N.
[[nodiscard]] Probability estimate_p_rw(const TermStats& stats, const EstimatorParams& params);
/// p = (n+L)/(N+L). Throws NonpositiveLift unless lift > 0.
[[nodiscard]] Probability estimate_p_lift(const TermStats& stats, double lift);

// Closed-form weights.

/// pi' + log((N-n)/n). Throws DegenerateDocFreq at n = 0 and n = N.
[[nodiscard]] double weight_ch(const TermStats& stats, const EstimatorParams& params);
/// pi' + log(N/n). Throws DegenerateDocFreq at n = 0.
[[nodiscard]] double weight_rw(const TermStats& stats, const EstimatorParams& params);
/// log(1 + L/n). Throws DegenerateDocFreq at n = 0, NonpositiveLift unless lift > 0.
[[nodiscard]] double weight_lift(const TermStats& stats, double lift, LogBase base = LogBase::natural);
/// log(1 + L(n)/n).
[[nodiscard]] double weight_lift_fn(const TermStats& stats, const LiftFunction& fn,
                                    LogBase base = LogBase::natural);

}  // namespace rsj
