#include <cmath>
#include <random>

#include "doctest.h"
#include "rsj/weighting.hpp"

using namespace rsj;

namespace {

/// Log-odds straight from the definition; used as the independent oracle.
double naive_log_odds(double p, double q)
{
    return std::log(p * (1.0 - q) / (q * (1.0 - p)));
}

}  // namespace

TEST_CASE("rsj_weight")
{
    CHECK(rsj_weight(Probability(0.5), Probability(0.5)) == 0.0);
    CHECK(rsj_weight(Probability(0.9), Probability(0.1)) == doctest::Approx(4.394449154672439).epsilon(1e-14));
    CHECK(rsj_weight(Probability(0.1), Probability(0.9)) == doctest::Approx(-4.394449154672439).epsilon(1e-14));

    SUBCASE("degenerate endpoints")
    {
        CHECK_THROWS_AS((void)rsj_weight(Probability(0.0), Probability(0.5)), DegenerateProbability);
        CHECK_THROWS_AS((void)rsj_weight(Probability(1.0), Probability(0.5)), DegenerateProbability);
        CHECK_THROWS_AS((void)rsj_weight(Probability(0.5), Probability(0.0)), DegenerateProbability);
        CHECK_THROWS_AS((void)rsj_weight(Probability(0.5), Probability(1.0)), DegenerateProbability);
    }

    SUBCASE("antisymmetric and agrees with the naive formula")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.01, 0.99);
        for (int i = 0; i < 1000; ++i) {
            double p = u(rng);
            double q = u(rng);
            double w = rsj_weight(Probability(p), Probability(q));
            CHECK(rsj_weight(Probability(q), Probability(p)) == doctest::Approx(-w).epsilon(1e-12));
            CHECK(w == doctest::Approx(naive_log_odds(p, q)).epsilon(1e-10));
        }
    }

    SUBCASE("base")
    {
        CHECK(rsj_weight(Probability(0.9), Probability(0.1), LogBase::two)
              == doctest::Approx(std::log2(81.0)).epsilon(1e-14));
        CHECK(rsj_weight(Probability(0.9), Probability(0.1), LogBase::ten)
              == doctest::Approx(std::log10(81.0)).epsilon(1e-14));
    }
}

TEST_CASE("validated value types")
{
    CHECK_THROWS_AS(TermStats(5, 4), InvalidParameter);
    CHECK_THROWS_AS(TermStats(0, 0), InvalidParameter);
    CHECK_NOTHROW(TermStats(0, 1));
    CHECK_NOTHROW(TermStats(4, 4));

    CHECK_THROWS_AS(Probability(-0.1), InvalidParameter);
    CHECK_THROWS_AS(Probability(1.5), InvalidParameter);
    CHECK_THROWS_AS(Probability(std::nan("")), InvalidParameter);
    CHECK_THROWS_AS(Probability::from_odds(0.0, 0.0), InvalidParameter);
    CHECK(Probability::from_odds(1.0, 3.0).value() == 0.25);
    CHECK(Probability::from_odds(1.0, 3.0).complement() == 0.75);

    CHECK_THROWS_AS(EstimatorParams(0.0), InvalidParameter);
    CHECK_THROWS_AS(EstimatorParams(1.0), InvalidParameter);
    CHECK_THROWS_AS(EstimatorParams(0.5, 0.0), InvalidParameter);
    CHECK_THROWS_AS(EstimatorParams(0.5, -2.0), InvalidParameter);

    CHECK_THROWS_AS(LiftFunction::constant(0.0), NonpositiveLift);
    CHECK_THROWS_AS(LiftFunction::proportional(-1.0), InvalidParameter);
    CHECK_THROWS_AS(LiftFunction::power(1.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(LiftFunction::scaled_corpus(0.0), InvalidParameter);
}

TEST_CASE("estimate_q_ch1")
{
    CHECK(estimate_q_ch1(TermStats(10, 100)).value() == 0.1);
    CHECK(estimate_q_ch1(TermStats(0, 100)).value() == 0.0);
    CHECK(estimate_q_ch1(TermStats(100, 100)).value() == 1.0);
}

TEST_CASE("estimate_p_ch2 ignores term statistics")
{
    CHECK(estimate_p_ch2(EstimatorParams(0.5)).value() == 0.5);
    CHECK(estimate_p_ch2(EstimatorParams(0.7)).value() == 0.7);
}

TEST_CASE("estimate_p_rw")
{
    EstimatorParams half(0.5);
    CHECK(estimate_p_rw(TermStats(0, 100), half).value() == 0.5);
    CHECK(estimate_p_rw(TermStats(100, 100), half).value() == 1.0);
    CHECK(estimate_p_rw(TermStats(100, 100), EstimatorParams(0.3)).value() == 1.0);
    CHECK(estimate_p_rw(TermStats(50, 100), half).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // Against the textbook form pi / (pi + (1-pi)(N-n)/N).
    for (double pi : {0.2, 0.5, 0.9}) {
        for (std::uint64_t n = 0; n <= 37; ++n) {
            double textbook = pi / (pi + (1.0 - pi) * (37.0 - n) / 37.0);
            CHECK(estimate_p_rw(TermStats(n, 37), EstimatorParams(pi)).value()
                  == doctest::Approx(textbook).epsilon(1e-15));
        }
    }
}

TEST_CASE("estimate_p_lift")
{
    CHECK(estimate_p_lift(TermStats(0, 100), 100.0).value() == 0.5);
    CHECK(estimate_p_lift(TermStats(100, 100), 100.0).value() == 1.0);
    CHECK(estimate_p_lift(TermStats(10, 100), 100.0).value() == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(estimate_p_lift(TermStats(10, 100), 100.0).value() > 0.1);
    CHECK_THROWS_AS((void)estimate_p_lift(TermStats(10, 100), 0.0), NonpositiveLift);
}

TEST_CASE("pi_prime")
{
    CHECK(pi_prime(EstimatorParams(0.5)) == 0.0);
    CHECK(pi_prime(EstimatorParams(0.75)) == doctest::Approx(1.0986122886681098).epsilon(1e-14));
    CHECK(pi_prime(EstimatorParams(0.25)) == doctest::Approx(-1.0986122886681098).epsilon(1e-14));
}

TEST_CASE("weight_ch")
{
    EstimatorParams half(0.5);
    CHECK(weight_ch(TermStats(50, 100), half) == 0.0);
    // Oracles evaluate the log-odds definition on the estimator values by hand.
    CHECK(weight_ch(TermStats(60, 100), half) == doctest::Approx(naive_log_odds(0.5, 0.6)).epsilon(1e-14));
    CHECK(weight_ch(TermStats(60, 100), half) == doctest::Approx(-0.4054651081081644).epsilon(1e-14));
    CHECK(weight_ch(TermStats(10, 100), half) == doctest::Approx(naive_log_odds(0.5, 0.1)).epsilon(1e-14));
    CHECK(weight_ch(TermStats(10, 100), half) == doctest::Approx(2.1972245773362196).epsilon(1e-14));

    CHECK_THROWS_AS((void)weight_ch(TermStats(0, 100), half), DegenerateDocFreq);
    CHECK_THROWS_AS((void)weight_ch(TermStats(100, 100), half), DegenerateDocFreq);
}

TEST_CASE("weight_rw")
{
    CHECK(weight_rw(TermStats(100, 100), EstimatorParams(0.5)) == 0.0);
    double p_rw = 0.5 / (0.5 + 0.5 * 0.9);
    CHECK(weight_rw(TermStats(10, 100), EstimatorParams(0.5))
          == doctest::Approx(naive_log_odds(p_rw, 0.1)).epsilon(1e-14));
    CHECK(weight_rw(TermStats(10, 100), EstimatorParams(0.5)) == doctest::Approx(2.302585092994046).epsilon(1e-14));
    CHECK(weight_rw(TermStats(10, 100), EstimatorParams(0.75)) == doctest::Approx(3.4011973816621555).epsilon(1e-14));
    CHECK(weight_rw(TermStats(100, 100), EstimatorParams(0.75)) == pi_prime(EstimatorParams(0.75)));
    CHECK_THROWS_AS((void)weight_rw(TermStats(0, 100), EstimatorParams(0.5)), DegenerateDocFreq);
}

TEST_CASE("weight_lift")
{
    CHECK(weight_lift(TermStats(10, 100), 100.0) == doctest::Approx(naive_log_odds(0.55, 0.1)).epsilon(1e-14));
    CHECK(weight_lift(TermStats(10, 100), 100.0) == doctest::Approx(2.3978952727983707).epsilon(1e-14));
    // The log-odds definition diverges at n = N (p = 1); the closed form stays finite.
    CHECK(weight_lift(TermStats(100, 100), 100.0) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    CHECK_THROWS_AS((void)rsj_weight(estimate_p_lift(TermStats(100, 100), 100.0), estimate_q_ch1(TermStats(100, 100))),
                    DegenerateProbability);

    for (std::uint64_t n = 1; n <= 100; ++n) {
        CHECK(weight_lift(TermStats(n, 100), 100.0) == std::log1p(100.0 / static_cast<double>(n)));
    }
    CHECK_THROWS_AS((void)weight_lift(TermStats(0, 100), 100.0), DegenerateDocFreq);
    CHECK_THROWS_AS((void)weight_lift(TermStats(3, 100), -1.0), NonpositiveLift);
}

TEST_CASE("weight_lift_fn")
{
    CHECK(weight_lift_fn(TermStats(10, 100), LiftFunction::constant(100.0)) == weight_lift(TermStats(10, 100), 100.0));
    for (std::uint64_t n = 1; n <= 100; ++n) {
        CHECK(weight_lift_fn(TermStats(n, 100), LiftFunction::proportional(1.0))
              == doctest::Approx(0.6931471805599453).epsilon(1e-14));
    }
    CHECK(weight_lift_fn(TermStats(4, 100), LiftFunction::power(1.0, 0.5))
          == doctest::Approx(0.4054651081081644).epsilon(1e-14));
    CHECK(weight_lift_fn(TermStats(4, 100), LiftFunction::scaled_corpus(1.0)) == weight_lift(TermStats(4, 100), 100.0));
    CHECK_THROWS_AS((void)weight_lift_fn(TermStats(0, 100), LiftFunction::constant(1.0)), DegenerateDocFreq);
}

TEST_CASE("closed forms match the log-odds definition at large N")
{
    // Near-cancelling regimes: L = 1 with n close to N, and pi = 0.5 with n close to N/2.
    const std::uint64_t big = 999'983;
    for (std::uint64_t n : {big / 2, big / 2 + 1, big - 1, big - 2, std::uint64_t{1}}) {
        TermStats stats(n, big);
        double lift_direct = rsj_weight(estimate_p_lift(stats, 1.0), estimate_q_ch1(stats));
        CHECK(weight_lift(stats, 1.0) == doctest::Approx(lift_direct).epsilon(1e-13));
        double ch_direct = rsj_weight(estimate_p_ch2(EstimatorParams(0.5)), estimate_q_ch1(stats));
        CHECK(weight_ch(stats, EstimatorParams(0.5)) == doctest::Approx(ch_direct).epsilon(1e-13));
        double rw_direct = rsj_weight(estimate_p_rw(stats, EstimatorParams(0.5)), estimate_q_ch1(stats));
        CHECK(weight_rw(stats, EstimatorParams(0.5)) == doctest::Approx(rw_direct).epsilon(1e-13));
    }
}

TEST_CASE("rebase_log")
{
    CHECK(rebase_log(1.0, LogBase::natural) == 1.0);
    CHECK(rebase_log(std::log(8.0), LogBase::two) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(rebase_log(std::log(1000.0), LogBase::ten) == doctest::Approx(3.0).epsilon(1e-15));
}
