#include "rsj/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "rsj/retrieval.hpp"

namespace rsj {

namespace {

constexpr std::array kPis = {0.3, 0.5, 0.7};
constexpr std::array kPositivePis = {0.5, 0.6, 0.75};
constexpr std::array kLiftScales = {0.5, 1.0, 2.0, 10.0};

std::string number(double v)
{
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 6);
    return {buf.data(), end};
}

/// The lift constants exercised for a corpus of size N: 1, N/2, N, 2N.
std::array<double, 4> lift_values(std::uint64_t corpus_size)
{
    const auto n = static_cast<double>(corpus_size);
    return {1.0, n / 2.0, n, 2.0 * n};
}

class Tally {
  public:
    Tally(std::string name, std::string grid)
    {
        m_result.name = std::move(name);
        m_result.grid = std::move(grid);
    }

    void pass(double deviation = 0.0) { record(true, deviation); }
    void fail(double deviation) { record(false, deviation); }

    /// Deviation check against the tolerance.
    void within(double deviation, double tolerance) { record(deviation <= tolerance, deviation); }

    template <class F>
    void guarded(F&& body)
    {
        try {
            body();
        } catch (const std::exception&) {
            fail(std::numeric_limits<double>::infinity());
        }
    }

    CheckResult finish() && { return std::move(m_result); }

  private:
    void record(bool ok, double deviation)
    {
        ++m_result.cases;
        if (!ok || std::isnan(deviation)) {
            ++m_result.failures;
            m_result.passed = false;
        }
        if (std::isnan(deviation)) {
            deviation = std::numeric_limits<double>::infinity();
        }
        m_result.worst_deviation = std::max(m_result.worst_deviation, deviation);
    }

    CheckResult m_result;
};

/// |a - b| relative to `scale`, absolute when the scale is zero.
double deviation(double a, double b, double scale)
{
    if (a == b) {
        return 0.0;
    }
    const double diff = std::abs(a - b);
    return scale > 0.0 ? diff / scale : diff;
}

struct PiCase {
    std::uint64_t corpus_size;
    std::uint64_t df;
    double pi;
};

struct LiftCase {
    std::uint64_t corpus_size;
    std::uint64_t df;
    double lift;
};

/// Random (N, n) with 1 <= n <= N-1. A third of the draws land within a few
/// documents of n = N or n = N/2, where the log-odds cancel.
std::pair<std::uint64_t, std::uint64_t> random_stats(std::mt19937_64& rng, std::uint64_t max_n)
{
    auto total = std::uniform_int_distribution<std::uint64_t>(2, std::max<std::uint64_t>(2, max_n))(rng);
    auto offset = std::uniform_int_distribution<std::uint64_t>(0, 8)(rng);
    std::uint64_t n = 0;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0:
        n = total - 1 - std::min(offset, total - 2);
        break;
    case 1:
        n = std::clamp<std::uint64_t>(total / 2 + offset - 4, 1, total - 1);
        break;
    default:
        n = std::uniform_int_distribution<std::uint64_t>(1, total - 1)(rng);
    }
    return {total, n};
}

/// Exhaustive small grid with 1 <= n <= N-1, then the random large tuples.
template <class F>
void for_each_pi_case(const VerifyGrid& grid, F&& fn)
{
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n < total; ++n) {
            for (double pi : kPis) {
                fn(PiCase{total, n, pi});
            }
        }
    }
    std::mt19937_64 rng(grid.seed);
    for (std::size_t i = 0; i < grid.random_tuples; ++i) {
        auto [total, n] = random_stats(rng, grid.max_random_n);
        double pi = kPis[std::uniform_int_distribution<std::size_t>(0, kPis.size() - 1)(rng)];
        fn(PiCase{total, n, pi});
    }
}

template <class F>
void for_each_lift_case(const VerifyGrid& grid, F&& fn)
{
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n < total; ++n) {
            for (double lift : lift_values(total)) {
                fn(LiftCase{total, n, lift});
            }
        }
    }
    std::mt19937_64 rng(grid.seed + 1);
    for (std::size_t i = 0; i < grid.random_tuples; ++i) {
        auto [total, n] = random_stats(rng, grid.max_random_n);
        auto lifts = lift_values(total);
        double lift = lifts[std::uniform_int_distribution<std::size_t>(0, lifts.size() - 1)(rng)];
        fn(LiftCase{total, n, lift});
    }
}

std::string identity_grid(const VerifyGrid& grid, const char* params)
{
    return "N=2.." + std::to_string(grid.max_exhaustive_n) + " exhaustive + " + std::to_string(grid.random_tuples)
           + " random N<=" + std::to_string(grid.max_random_n) + ", 1<=n<=N-1, " + params;
}

std::string exhaustive_grid(const VerifyGrid& grid, const char* params)
{
    return "N=2.." + std::to_string(grid.max_exhaustive_n) + ", " + params;
}

CheckResult check_identity_ch(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("closed-form identity (CH)", identity_grid(grid, "pi in {0.3,0.5,0.7}"));
    for_each_pi_case(grid, [&](const PiCase& c) {
        tally.guarded([&] {
            TermStats stats(c.df, c.corpus_size);
            EstimatorParams params(c.pi);
            const double closed = forms.ch(stats, params);
            const double direct = rsj_weight(estimate_p_ch2(params), estimate_q_ch1(stats));
            const auto n = static_cast<double>(c.df);
            const auto total = static_cast<double>(c.corpus_size);
            const double scale = std::abs(pi_prime(params)) + std::abs(std::log((total - n) / n));
            tally.within(deviation(closed, direct, scale), grid.tolerance);
        });
    });
    return std::move(tally).finish();
}

CheckResult check_identity_rw(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("closed-form identity (RW)", identity_grid(grid, "pi in {0.3,0.5,0.7}"));
    for_each_pi_case(grid, [&](const PiCase& c) {
        tally.guarded([&] {
            TermStats stats(c.df, c.corpus_size);
            EstimatorParams params(c.pi);
            const double closed = forms.rw(stats, params);
            const double direct = rsj_weight(estimate_p_rw(stats, params), estimate_q_ch1(stats));
            const double scale = std::abs(pi_prime(params))
                                 + std::abs(std::log(static_cast<double>(c.corpus_size) / static_cast<double>(c.df)));
            tally.within(deviation(closed, direct, scale), grid.tolerance);
        });
    });
    return std::move(tally).finish();
}

CheckResult check_identity_lift(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("closed-form identity (lift)", identity_grid(grid, "L in {1,N/2,N,2N}"));
    for_each_lift_case(grid, [&](const LiftCase& c) {
        tally.guarded([&] {
            TermStats stats(c.df, c.corpus_size);
            const double closed = forms.lift(stats, c.lift, LogBase::natural);
            const double direct = rsj_weight(estimate_p_lift(stats, c.lift), estimate_q_ch1(stats));
            tally.within(deviation(closed, direct, std::abs(direct)), grid.tolerance);
        });
    });
    return std::move(tally).finish();
}

CheckResult check_ch_anomaly(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("CH anomaly", exhaustive_grid(grid, "1<=n<=N-1, pi=0.5: weight<0 iff n>N/2"));
    const EstimatorParams params(0.5);
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n < total; ++n) {
            tally.guarded([&] {
                const double w = forms.ch(TermStats(n, total), params);
                const bool negative = w < 0.0;
                const bool above_half = 2 * n > total;
                if (negative == above_half) {
                    tally.pass();
                } else {
                    tally.fail(std::abs(w));
                }
            });
        }
    }
    return std::move(tally).finish();
}

CheckResult check_rw_positivity(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("RW positivity", exhaustive_grid(grid, "1<=n<=N, pi in {0.5,0.6,0.75}: weight>=0"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n <= total; ++n) {
            for (double pi : kPositivePis) {
                tally.guarded([&] {
                    const double w = forms.rw(TermStats(n, total), EstimatorParams(pi));
                    if (w >= 0.0) {
                        tally.pass();
                    } else {
                        tally.fail(-w);
                    }
                });
            }
        }
    }
    return std::move(tally).finish();
}

CheckResult check_lift_positivity(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("lift positivity", exhaustive_grid(grid, "1<=n<=N, L in {1,N/2,N,2N}: weight>0"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n <= total; ++n) {
            for (double lift : lift_values(total)) {
                tally.guarded([&] {
                    const double w = forms.lift(TermStats(n, total), lift, LogBase::natural);
                    if (w > 0.0) {
                        tally.pass();
                    } else {
                        tally.fail(std::abs(w));
                    }
                });
            }
        }
    }
    return std::move(tally).finish();
}

CheckResult check_lift_dominance(const VerifyGrid& grid, const ClosedForms&)
{
    Tally tally("lift dominance", exhaustive_grid(grid, "0<=n<=N, L in {1,N/2,N,2N}: p>=n/N, equality iff n=N"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 0; n <= total; ++n) {
            for (double lift : lift_values(total)) {
                tally.guarded([&] {
                    const double p = estimate_p_lift(TermStats(n, total), lift).value();
                    const double q = static_cast<double>(n) / static_cast<double>(total);
                    const bool ok = p >= q && ((p == q) == (n == total));
                    if (ok) {
                        tally.pass();
                    } else {
                        tally.fail(std::abs(p - q));
                    }
                });
            }
        }
    }
    return std::move(tally).finish();
}

CheckResult check_monotonicity(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("monotonicity",
                exhaustive_grid(grid, "p_rw, p_lift strictly increasing on 0..N; lift weight strictly decreasing on 1..N"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (double pi : kPis) {
            tally.guarded([&] {
                EstimatorParams params(pi);
                double prev = estimate_p_rw(TermStats(0, total), params).value();
                for (std::uint64_t n = 1; n <= total; ++n) {
                    const double p = estimate_p_rw(TermStats(n, total), params).value();
                    p > prev ? tally.pass() : tally.fail(prev - p);
                    prev = p;
                }
            });
        }
        for (double lift : lift_values(total)) {
            tally.guarded([&] {
                double prev = estimate_p_lift(TermStats(0, total), lift).value();
                for (std::uint64_t n = 1; n <= total; ++n) {
                    const double p = estimate_p_lift(TermStats(n, total), lift).value();
                    p > prev ? tally.pass() : tally.fail(prev - p);
                    prev = p;
                }
            });
            tally.guarded([&] {
                double prev = forms.lift(TermStats(1, total), lift, LogBase::natural);
                for (std::uint64_t n = 2; n <= total; ++n) {
                    const double w = forms.lift(TermStats(n, total), lift, LogBase::natural);
                    w < prev ? tally.pass() : tally.fail(w - prev);
                    prev = w;
                }
            });
        }
    }
    return std::move(tally).finish();
}

CheckResult check_bounds(const VerifyGrid& grid, const ClosedForms&)
{
    Tally tally("bounds", exhaustive_grid(grid, "0<=n<=N: p_rw in [pi,1], p_lift in [L/(N+L),1]"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 0; n <= total; ++n) {
            TermStats stats(n, total);
            for (double pi : kPis) {
                tally.guarded([&] {
                    const double p = estimate_p_rw(stats, EstimatorParams(pi)).value();
                    (p >= pi && p <= 1.0) ? tally.pass() : tally.fail(std::max(pi - p, p - 1.0));
                });
            }
            for (double lift : lift_values(total)) {
                tally.guarded([&] {
                    const double p = estimate_p_lift(stats, lift).value();
                    const double lo = lift / (static_cast<double>(total) + lift);
                    (p >= lo && p <= 1.0) ? tally.pass() : tally.fail(std::max(lo - p, p - 1.0));
                });
            }
        }
    }
    return std::move(tally).finish();
}

CheckResult check_usual_idf(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("usual-IDF correspondence", exhaustive_grid(grid, "1<=n<=N: lift weight at L=N == log(1+N/n) bitwise"));
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        const auto big_n = static_cast<double>(total);
        for (std::uint64_t n = 1; n <= total; ++n) {
            tally.guarded([&] {
                const double w = forms.lift(TermStats(n, total), big_n, LogBase::natural);
                const double idf = std::log1p(big_n / static_cast<double>(n));
                w == idf ? tally.pass() : tally.fail(std::abs(w - idf));
            });
        }
    }
    return std::move(tally).finish();
}

CheckResult check_constant_lift_fn(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("constant-weight lift function",
                exhaustive_grid(grid, "1<=n<=N, L(n)=c*n, c in {0.5,1,2,10}: weight == log(1+c)"));
    for (double c : kLiftScales) {
        const auto fn = LiftFunction::proportional(c);
        const double expected = std::log1p(c);
        for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
            for (std::uint64_t n = 1; n <= total; ++n) {
                tally.guarded([&] {
                    const double w = forms.lift_fn(TermStats(n, total), fn, LogBase::natural);
                    tally.within(deviation(w, expected, expected), grid.tolerance);
                });
            }
        }
    }
    return std::move(tally).finish();
}

CheckResult check_log_base(const VerifyGrid& grid, const ClosedForms& forms)
{
    Tally tally("log-base coherence", exhaustive_grid(grid, "CH, RW, lift in bases 2 and 10 vs base e rescaled"));
    constexpr std::array<std::pair<LogBase, double>, 2> kBases = {
        std::pair{LogBase::two, 0.69314718055994530942},
        std::pair{LogBase::ten, 2.30258509299404568402},
    };
    auto compare = [&](double rebased, double natural, double ln_base) {
        const double expected = natural / ln_base;
        tally.within(deviation(rebased, expected, std::max(std::abs(rebased), std::abs(expected))), grid.tolerance);
    };
    for (std::uint64_t total = 2; total <= grid.max_exhaustive_n; ++total) {
        for (std::uint64_t n = 1; n < total; ++n) {
            TermStats stats(n, total);
            for (auto [base, ln_base] : kBases) {
                tally.guarded([&] {
                    for (double pi : kPis) {
                        compare(forms.ch(stats, EstimatorParams(pi, 1.0, base)), forms.ch(stats, EstimatorParams(pi)),
                                ln_base);
                        compare(forms.rw(stats, EstimatorParams(pi, 1.0, base)), forms.rw(stats, EstimatorParams(pi)),
                                ln_base);
                    }
                    const double lift = static_cast<double>(total);
                    compare(forms.lift(stats, lift, base), forms.lift(stats, lift, LogBase::natural), ln_base);
                });
            }
        }
    }
    return std::move(tally).finish();
}

// Retrieval oracle: rank() against scoring every document and fully sorting.

std::vector<WeightingScheme> scheme_menu()
{
    return {
        CroftHarper{EstimatorParams(0.5)},
        CroftHarper{EstimatorParams(0.3)},
        RobertsonWalker{EstimatorParams(0.5)},
        RobertsonWalker{EstimatorParams(0.7)},
        Lift{EstimatorParams(0.5, 1.0)},
        Lift{EstimatorParams(0.5, 10.0)},
        LiftFn{LiftFunction::constant(5.0), EstimatorParams()},
        LiftFn{LiftFunction::proportional(1.0), EstimatorParams()},
        LiftFn{LiftFunction::power(1.0, 0.5), EstimatorParams()},
        LiftFn{LiftFunction::scaled_corpus(0.5), EstimatorParams()},
        UsualIdf{EstimatorParams()},
        UsualIdf{EstimatorParams(0.5, 1.0, LogBase::two)},
    };
}

std::string random_text(std::mt19937_64& rng, std::size_t vocab, std::size_t max_len)
{
    std::string text;
    auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
    for (std::size_t i = 0; i < len; ++i) {
        if (i > 0) {
            text += ' ';
        }
        text += 't' + std::to_string(pick(rng));
    }
    return text;
}

/// The run-file rendering of a ranked list, or the failing term on degeneracy.
template <class F>
std::string render(F&& produce)
{
    try {
        RankedList list = produce();
        std::ostringstream out;
        write_run(std::span<const RankedList>(&list, 1), "oracle", out);
        return out.str();
    } catch (const DegenerateDocFreq& e) {
        return "degenerate:" + e.term();
    }
}

RankedList brute_force_rank(const InvertedIndex& index, const Query& query, const WeightingScheme& scheme,
                            std::size_t k)
{
    std::vector<RankedEntry> all;
    for (DocOrdinal d = 0; d < index.corpus_size(); ++d) {
        const double s = score_document(index, d, query, scheme);
        if (s > 0.0) {
            all.push_back({index.doc_id(d), s, 0});
        }
    }
    std::sort(all.begin(), all.end(), [](const RankedEntry& a, const RankedEntry& b) {
        return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    });
    if (all.size() > k) {
        all.resize(k);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i].rank = i + 1;
    }
    return {query.id, std::move(all)};
}

CheckResult check_retrieval_oracle(const VerifyGrid& grid)
{
    auto menu = scheme_menu();
    Tally tally(std::string(kRetrievalOracleCheck),
                std::to_string(grid.random_corpora) + " random corpora (<=50 docs, vocabulary <=20), "
                    + std::to_string(menu.size()) + " schemes");
    std::mt19937_64 rng(grid.seed + 2);
    for (std::size_t c = 0; c < grid.random_corpora; ++c) {
        tally.guarded([&] {
            const auto num_docs = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
            const auto vocab = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
            std::vector<Document> docs;
            for (std::size_t d = 0; d < num_docs; ++d) {
                // Ids deliberately do not follow ordinal order so the tie-break is exercised.
                docs.push_back({"d" + std::to_string((d * 7919) % 1000) + "_" + std::to_string(d),
                                random_text(rng, vocab, 8)});
            }
            auto index = InvertedIndex::build(docs);
            for (int q = 0; q < 3; ++q) {
                auto query = Query::parse("q" + std::to_string(q), random_text(rng, vocab + 2, 5));
                auto k = std::uniform_int_distribution<std::size_t>(1, num_docs + 2)(rng);
                for (const auto& scheme : menu) {
                    auto fast = render([&] { return rank(index, query, scheme, k); });
                    auto slow = render([&] { return brute_force_rank(index, query, scheme, k); });
                    fast == slow ? tally.pass() : tally.fail(1.0);
                }
            }
        });
    }
    return std::move(tally).finish();
}

}  // namespace

ClosedForms mutated_closed_forms(std::string_view mutation)
{
    ClosedForms forms;
    if (mutation == "lift-log-ratio") {
        forms.lift = [](const TermStats& stats, double lift, LogBase base) {
            static_cast<void>(weight_lift(stats, lift, base));  // same preconditions as the reference
            return rebase_log(std::log(lift / static_cast<double>(stats.df())), base);
        };
    } else if (mutation == "ch-flip") {
        forms.ch = [](const TermStats& stats, const EstimatorParams& params) { return -weight_ch(stats, params); };
    } else if (mutation == "rw-drop-pi") {
        forms.rw = [](const TermStats& stats, const EstimatorParams& params) {
            return weight_rw(stats, params) - pi_prime(params);
        };
    } else {
        throw InvalidParameter("unknown mutation '" + std::string(mutation) + "'");
    }
    return forms;
}

bool VerificationReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double VerificationReport::worst_deviation() const noexcept
{
    double worst = 0.0;
    for (const auto& c : checks) {
        worst = std::max(worst, c.worst_deviation);
    }
    return worst;
}

const std::vector<std::string>& weighting_check_names()
{
    static const std::vector<std::string> names = {
        "closed-form identity (CH)",
        "closed-form identity (RW)",
        "closed-form identity (lift)",
        "CH anomaly",
        "RW positivity",
        "lift positivity",
        "lift dominance",
        "monotonicity",
        "bounds",
        "usual-IDF correspondence",
        "constant-weight lift function",
        "log-base coherence",
    };
    return names;
}

VerificationReport verify(const VerifyGrid& grid, const ClosedForms& forms)
{
    using Check = CheckResult (*)(const VerifyGrid&, const ClosedForms&);
    constexpr std::array<Check, 12> weighting_checks = {
        check_identity_ch,   check_identity_rw, check_identity_lift, check_ch_anomaly,
        check_rw_positivity, check_lift_positivity, check_lift_dominance, check_monotonicity,
        check_bounds,        check_usual_idf,   check_constant_lift_fn, check_log_base,
    };

    std::vector<std::future<CheckResult>> pending;
    for (auto check : weighting_checks) {
        pending.push_back(std::async(std::launch::async, check, std::cref(grid), std::cref(forms)));
    }
    pending.push_back(std::async(std::launch::async, check_retrieval_oracle, std::cref(grid)));

    VerificationReport report;
    for (auto& f : pending) {
        report.checks.push_back(f.get());
    }
    return report;
}

void write_report(const VerificationReport& report, std::ostream& out)
{
    for (const auto& c : report.checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.cases << " cases, " << c.failures
            << " failures, worst deviation " << number(c.worst_deviation) << " (" << c.grid << ")\n";
    }
    out << "VERIFY " << (report.passed() ? "pass" : "fail") << ' ' << report.checks.size() << ' '
        << number(report.worst_deviation()) << '\n';
}

}  // namespace rsj
