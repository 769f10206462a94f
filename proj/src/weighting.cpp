#include "rsj/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rsj {

namespace {

/// a*b - c*d with a couple of ulps of error even under cancellation.
double difference_of_products(double a, double b, double c, double d) noexcept
{
    const double cd = c * d;
    const double err = std::fma(-c, d, cd);
    const double diff = std::fma(a, b, -cd);
    return diff + err;
}

/// ln(num/den) given diff = num - den computed without cancellation.
double log_ratio(double num, double den, double diff) noexcept
{
    const double ratio = num / den;
    if (ratio >= 0.5 && ratio <= 2.0) {
        return std::log1p(diff / den);
    }
    return std::log(ratio);
}

double natural_pi_prime(double pi) noexcept
{
    const double rest = 1.0 - pi;
    return log_ratio(pi, rest, pi - rest);
}

void require_matched(const TermStats& stats)
{
    if (stats.df() == 0) {
        throw DegenerateDocFreq(stats.df(), stats.corpus_size());
    }
}

void require_positive_lift(double lift)
{
    if (!(lift > 0.0) || !std::isfinite(lift)) {
        throw NonpositiveLift("lift must be a positive finite number, got " + std::to_string(lift));
    }
}

}  // namespace

double rebase_log(double natural_log, LogBase base) noexcept
{
    switch (base) {
    case LogBase::two:
        return natural_log / std::numbers::ln2;
    case LogBase::ten:
        return natural_log / std::numbers::ln10;
    case LogBase::natural:
        break;
    }
    return natural_log;
}

TermStats::TermStats(std::uint64_t df, std::uint64_t corpus_size) : m_df(df), m_corpus_size(corpus_size)
{
    if (corpus_size == 0) {
        throw InvalidParameter("corpus size must be at least 1");
    }
    if (df > corpus_size) {
        throw InvalidParameter("document frequency " + std::to_string(df) + " exceeds corpus size "
                               + std::to_string(corpus_size));
    }
}

Probability::Probability(double value) : m_value(value), m_mass(value), m_rest(1.0 - value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidParameter("probability outside [0,1]: " + std::to_string(value));
    }
}

Probability Probability::from_odds(double mass, double rest)
{
    if (!(mass >= 0.0 && rest >= 0.0 && mass + rest > 0.0) || !std::isfinite(mass + rest)) {
        throw InvalidParameter("probability odds must be nonnegative with a positive finite total");
    }
    return Probability(mass / (mass + rest), mass, rest);
}

Probability Probability::clamped(double lo, double hi) const noexcept
{
    return Probability(std::clamp(m_value, lo, hi), m_mass, m_rest);
}

EstimatorParams::EstimatorParams(double pi, double lift, LogBase log_base)
    : m_pi(pi), m_lift(lift), m_log_base(log_base)
{
    if (!(pi > 0.0 && pi < 1.0)) {
        throw InvalidParameter("pi must lie strictly between 0 and 1, got " + std::to_string(pi));
    }
    if (!(lift > 0.0) || !std::isfinite(lift)) {
        throw InvalidParameter("lift must be a positive finite number, got " + std::to_string(lift));
    }
}

LiftFunction LiftFunction::constant(double lift)
{
    require_positive_lift(lift);
    return {Kind::constant, lift, 0.0};
}

LiftFunction LiftFunction::proportional(double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw InvalidParameter("proportional lift needs c > 0");
    }
    return {Kind::proportional, c, 0.0};
}

LiftFunction LiftFunction::power(double c, double beta)
{
    if (!(c > 0.0) || !std::isfinite(c) || !(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidParameter("power lift needs c > 0 and beta > 0");
    }
    return {Kind::power, c, beta};
}

LiftFunction LiftFunction::scaled_corpus(double alpha)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidParameter("scaled-corpus lift needs alpha > 0");
    }
    return {Kind::scaled_corpus, alpha, 0.0};
}

double LiftFunction::operator()(const TermStats& stats) const noexcept
{
    const auto n = static_cast<double>(stats.df());
    switch (m_kind) {
    case Kind::constant:
        return m_scale;
    case Kind::proportional:
        return m_scale * n;
    case Kind::power:
        return m_scale * std::pow(n, m_exponent);
    case Kind::scaled_corpus:
        return m_scale * static_cast<double>(stats.corpus_size());
    }
    return m_scale;
}

double rsj_weight(const Probability& p, const Probability& q, LogBase base)
{
    if (!(p.mass() > 0.0 && p.rest() > 0.0 && q.mass() > 0.0 && q.rest() > 0.0)) {
        throw DegenerateProbability("log-odds weight needs 0 < p < 1 and 0 < q < 1 (p="
                                    + std::to_string(p.value()) + ", q=" + std::to_string(q.value())
                                    + ")");
    }
    // p(1-q) / (q(1-p)) with the normalizers of p and q cancelled out.
    const double num = p.mass() * q.rest();
    const double den = q.mass() * p.rest();
    const double diff = difference_of_products(p.mass(), q.rest(), q.mass(), p.rest());
    return rebase_log(log_ratio(num, den, diff), base);
}

double pi_prime(const EstimatorParams& params)
{
    return rebase_log(natural_pi_prime(params.pi()), params.log_base());
}

Probability estimate_q_ch1(const TermStats& stats)
{
    const auto n = static_cast<double>(stats.df());
    const auto total = static_cast<double>(stats.corpus_size());
    return Probability::from_odds(n, total - n);
}

Probability estimate_p_ch2(const EstimatorParams& params)
{
    return Probability(params.pi());
}

Probability estimate_p_rw(const TermStats& stats, const EstimatorParams& params)
{
    const double pi = params.pi();
    const auto n = static_cast<double>(stats.df());
    const auto total = static_cast<double>(stats.corpus_size());
    // Multiplying numerator and denominator by N keeps both odds exact products.
    return Probability::from_odds(pi * total, (1.0 - pi) * (total - n)).clamped(pi, 1.0);
}

Probability estimate_p_lift(const TermStats& stats, double lift)
{
    require_positive_lift(lift);
    const auto n = static_cast<double>(stats.df());
    const auto total = static_cast<double>(stats.corpus_size());
    return Probability::from_odds(n + lift, total - n);
}

double weight_ch(const TermStats& stats, const EstimatorParams& params)
{
    if (stats.df() == 0 || stats.df() == stats.corpus_size()) {
        throw DegenerateDocFreq(stats.df(), stats.corpus_size());
    }
    const auto n = static_cast<double>(stats.df());
    const auto total = static_cast<double>(stats.corpus_size());
    const double idf = log_ratio(total - n, n, total - 2.0 * n);
    return rebase_log(natural_pi_prime(params.pi()) + idf, params.log_base());
}

double weight_rw(const TermStats& stats, const EstimatorParams& params)
{
    require_matched(stats);
    const auto n = static_cast<double>(stats.df());
    const auto total = static_cast<double>(stats.corpus_size());
    const double idf = log_ratio(total, n, total - n);
    return rebase_log(natural_pi_prime(params.pi()) + idf, params.log_base());
}

double weight_lift(const TermStats& stats, double lift, LogBase base)
{
    require_matched(stats);
    require_positive_lift(lift);
    return rebase_log(std::log1p(lift / static_cast<double>(stats.df())), base);
}

double weight_lift_fn(const TermStats& stats, const LiftFunction& fn, LogBase base)
{
    require_matched(stats);
    const double lift = fn(stats);
    if (!(lift > 0.0) || !std::isfinite(lift)) {
        throw NonpositiveLift("lift function evaluated to " + std::to_string(lift) + " at df="
                              + std::to_string(stats.df()));
    }
    return rebase_log(std::log1p(lift / static_cast<double>(stats.df())), base);
}

}  // namespace rsj
