#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/errors.hpp"
#include "paygmix/numerics.hpp"
#include "paygmix/rng.hpp"
#include "paygmix/strategy_compare.hpp"

using namespace paygmix;
using namespace paygmix::strategy;

namespace {

const FundParams kStd(0.04, 0.2);

// Expected labels keyed by "t,alpha", read from the strategy fixture.
std::map<std::string, std::string> fixture_labels() {
    std::ifstream in(std::string(PAYGMIX_FIXTURE_DIR) + "/table_09.csv");
    REQUIRE(in);
    std::map<std::string, std::string> labels;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string row, col, expected;
        std::getline(ss, row, ',');
        std::getline(ss, col, ',');
        std::getline(ss, expected, ',');
        labels[row + "," + col] = expected;
    }
    return labels;
}

} // namespace

TEST_CASE("labels") {
    CHECK(short_label(StrategyLabel::Payg) == "PAYG");
    CHECK(short_label(StrategyLabel::Continuous) == "C");
    CHECK(short_label(StrategyLabel::LumpSum) == "LS");
    CHECK(label_name(StrategyLabel::Continuous) == "CONTINUOUS");
    CHECK(label_name(StrategyLabel::LumpSum) == "LUMP_SUM");
}

TEST_CASE("ten-year losses") {
    const double growth = std::exp(0.06 * 10.0);
    CHECK(lump_sum_loss(10.0, 10.0, kStd) == doctest::Approx(10.0 - 10.0 * growth + 1.0).epsilon(1e-14));
    CHECK(lump_sum_loss(10.0, 10.0, kStd) == doctest::Approx(-7.221188).epsilon(1e-6 / 7.22));

    const auto s = continuous::optimal_barrier({0.5, 10.0, 10.0}, kStd);
    REQUIRE(s.feasible);
    CHECK(s.b_star == doctest::Approx(0.870769).epsilon(1e-6));
    CHECK(continuous_loss(10.0, s.b_star, 10.0, kStd) == doctest::Approx(-3.529102).epsilon(1e-6 / 3.53));
    CHECK(lambda_gap(10.0, s.b_star, 10.0, kStd) == doctest::Approx(3.692086).epsilon(1e-6 / 3.69));
    CHECK(lambda_gap(10.0, s.b_star, 10.0, kStd) ==
          doctest::Approx(continuous_loss(10.0, s.b_star, 10.0, kStd) - lump_sum_loss(10.0, 10.0, kStd)));
}

TEST_CASE("gap at t = 0") {
    CHECK(lambda_gap(0.0, 0.3, 5.0, kStd) == -2.0);
    CHECK(lambda_gap(0.0, 0.0, 5.0, kStd) == -2.0);
    CHECK(lambda_gap(0.0, -0.5, 2.0, kStd) == doctest::Approx(-1.0));
    CHECK(lambda_gap(0.0, -0.9, 10.0, kStd) == doctest::Approx(7.0));
    CHECK_THROWS_AS(lambda_gap(1.0, -1.0, 5.0, kStd), DomainError);
    CHECK_THROWS_AS(lump_sum_loss(1.0, 0.0, kStd), DomainError);
}

TEST_CASE("beta curve") {
    for (double alpha : {2.0, 5.0, 10.0}) {
        for (double t : {1.0, 4.0, 10.0}) {
            const auto beta = beta_curve(t, alpha, kStd);
            REQUIRE(beta.has_value());
            CHECK(std::fabs(lambda_gap(t, *beta, alpha, kStd)) < 1e-9);
            CHECK(lambda_gap(t, *beta - 0.01, alpha, kStd) > 0.0);
            CHECK(lambda_gap(t, *beta + 0.01, alpha, kStd) < 0.0);
        }
    }
    CHECK(*beta_curve(1.0, 10.0, kStd) < *beta_curve(10.0, 10.0, kStd));
    CHECK(*beta_curve(10.0, 10.0, kStd) == doctest::Approx(2.281427).epsilon(1e-6 / 2.28));
    // Retained value tends to 0 as b -> -1, so the gap there is e^{(mu+sigma^2/2)t} - 2 < 0.
    CHECK_FALSE(beta_curve(1.0, 1.0, kStd).has_value());
    CHECK_THROWS_AS(beta_curve(0.0, 10.0, kStd), DomainError);
}

TEST_CASE("recommendation") {
    const auto ls = recommend_strategy(4.0, 8.0, 0.5, kStd);
    CHECK(ls.label == StrategyLabel::LumpSum);
    CHECK(ls.lambda_gap > 0.0);
    CHECK(ls.feasible);

    const auto none = recommend_strategy(1.0, 1.0, 0.5, kStd);
    CHECK(none.label == StrategyLabel::Payg);
    CHECK_FALSE(none.feasible);
    CHECK(std::isnan(none.l_c));
    CHECK_FALSE(none.note.empty());

    const auto labels = fixture_labels();
    for (double t : {1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 20.0, 40.0}) {
        for (int a = 1; a <= 10; ++a) {
            const auto d = recommend_strategy(t, a, 0.5, kStd);
            const auto key = std::to_string(static_cast<int>(t)) + "," + std::to_string(a);
            CAPTURE(key);
            CHECK(short_label(d.label) == labels.at(key));
            if (d.label == StrategyLabel::Payg && d.feasible) {
                CHECK(std::min(d.l_d, d.l_c) >= 0.0);
            }
            if (d.label == StrategyLabel::LumpSum) {
                CHECK(d.l_d < d.l_c);
            }
            if (d.label == StrategyLabel::Continuous) {
                CHECK(d.l_c <= d.l_d);
                CHECK(d.l_c < 0.0);
            }
        }
    }
}

TEST_CASE("lump-sum default probability") {
    CHECK(lump_sum_default_prob(1.0, 3.0, kStd) == doctest::Approx(0.89).epsilon(0.005 / 0.89));
    CHECK(lump_sum_default_prob(1.0, 4.0, kStd) == doctest::Approx(0.82).epsilon(0.005 / 0.82));
    // alpha -> infinity leaves P[W_t < -mu t / sigma].
    CHECK(lump_sum_default_prob(1.0, 1e9, kStd) == doctest::Approx(numerics::std_normal_cdf(-0.2)).epsilon(1e-8));
    double prev = 1.0;
    for (int a = 1; a <= 10; ++a) {
        const double p = lump_sum_default_prob(10.0, a, kStd);
        CHECK(p < prev);
        prev = p;
    }
    CHECK_THROWS_AS(lump_sum_default_prob(0.0, 1.0, kStd), DomainError);

    RngStream rng(77, 0);
    const std::size_t n = 1000000;
    for (double t : {1.0, 10.0}) {
        for (double alpha : {2.0, 8.0}) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double fund = alpha * std::exp(0.04 * t + 0.2 * std::sqrt(t) * rng.standard_normal());
                hits += fund < 1.0 + alpha;
            }
            const double p = lump_sum_default_prob(t, alpha, kStd);
            const double se = std::sqrt(p * (1.0 - p) / n);
            CHECK(std::fabs(static_cast<double>(hits) / n - p) < 4.0 * se);
        }
    }
}
