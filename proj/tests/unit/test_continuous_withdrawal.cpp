#include <cmath>
#include <numbers>

#include "doctest.h"
#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/errors.hpp"

using namespace paygmix;
using namespace paygmix::continuous;

namespace {

const FundParams kStd(0.04, 0.2);

// Joint density of (X_t, M_t) for X_s = mu s + sigma W_s, on m >= max(0, x).
double joint_density(double m, double x, double t, const FundParams& f) {
    const double s2 = f.variance() * t;
    const double r = 2.0 * m - x;
    return 2.0 * r / (s2 * std::sqrt(2.0 * std::numbers::pi * s2)) *
           std::exp(-r * r / (2.0 * s2) + f.mu() * x / f.variance() - f.mu() * f.mu() * t / (2.0 * f.variance()));
}

// E[h(X_t, M_t)] by nested quadrature over the joint law.
template <typename H>
double joint_expectation(const FundParams& f, double t, H h, double kink = -1.0) {
    const double reach = std::fabs(f.mu()) * t + 14.0 * f.sigma() * std::sqrt(t);
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-11;
    spec.rel_tol = 1e-10;
    auto inner = [&](double m) {
        const double lo = std::min(2.0 * m - reach, m);
        return numerics::integrate([&](double x) { return h(x, m) * joint_density(m, x, t, f); }, lo, m, spec);
    };
    if (kink > 0.0 && kink < reach) {
        return numerics::integrate(inner, 0.0, kink, spec) + numerics::integrate(inner, kink, reach, spec);
    }
    return numerics::integrate(inner, 0.0, reach, spec);
}

double oracle_retained(double b, double t, int power = 1) {
    const double l = std::log1p(b);
    return joint_expectation(
        kStd, t, [&](double x, double m) { return std::exp(power * (x - std::max(0.0, m - l))); }, l);
}

double oracle_debt(double b, double t) {
    const double l = std::log1p(b);
    return (1.0 + b) * joint_expectation(kStd, t, [&](double, double m) { return std::max(0.0, m - l); }, l);
}

} // namespace

TEST_CASE("withdrawal outcome") {
    const auto below = withdrawal_outcome({0.05, 0.08, 1.0}, 0.1);
    CHECK(below.retained == doctest::Approx(std::exp(0.05)));
    CHECK(below.debt_account == 0.0);
    const double l = std::log1p(0.2);
    const auto edge = withdrawal_outcome({l, l, 1.0}, 0.2);
    CHECK(edge.retained == doctest::Approx(1.2));
    CHECK(std::fabs(edge.debt_account) < 1e-15);
    const auto hit = withdrawal_outcome({0.1, 0.3, 1.0}, 0.0);
    CHECK(hit.retained == doctest::Approx(std::exp(-0.2)));
    CHECK(hit.debt_account == doctest::Approx(0.3));
    CHECK_THROWS_AS(withdrawal_outcome({0.0, 0.0, 1.0}, -1.0), DomainError);
}

TEST_CASE("credibility probability") {
    CHECK(credibility_prob(kStd, 0.0, 3.0, 1.0) == doctest::Approx(0.13156264).epsilon(1e-6 / 0.13156264));
    CHECK(credibility_prob(kStd, -0.2, 5.0, 1.0) == doctest::Approx(0.91564864).epsilon(1e-6 / 0.91564864));
    CHECK(credibility_prob(kStd, 0.0, 3.0, 10.0) == doctest::Approx(0.7817909).epsilon(1e-6 / 0.7817909));
    const double pt = solve_p_tilde(kStd, 0.5, 1.0);
    double prev = 1.0;
    for (double b = std::exp(pt - 1.0) - 1.0; b < 1.0; b += 0.02) {
        const double p = credibility_prob(kStd, b, 10.0, 1.0);
        CHECK(p <= prev);
        prev = p;
    }
    CHECK_THROWS_AS(credibility_prob(kStd, -1.0, 3.0, 1.0), DomainError);
    CHECK_THROWS_AS(credibility_prob(kStd, 0.0, 0.0, 1.0), DomainError);
}

TEST_CASE("p tilde") {
    CHECK(solve_p_tilde(kStd, 0.7, 1.0) == doctest::Approx(0.093078333).epsilon(1e-7 / 0.093));
    CHECK(solve_p_tilde(kStd, 0.5, 1.0) == doctest::Approx(0.15750112).epsilon(1e-7 / 0.1575));
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
        for (double t : {1.0, 10.0}) {
            const double pt = solve_p_tilde(kStd, p, t);
            CHECK(pt >= 0.0);
            CHECK(running_max_tail_prob(pt, t, kStd.mu(), kStd) == doctest::Approx(p).epsilon(1e-8));
        }
    }
    CHECK(solve_p_tilde(kStd, 1.0 - 1e-9, 1.0) < 1e-6);
    CHECK_THROWS_AS(solve_p_tilde(kStd, 1.0, 1.0), DomainError);
}

TEST_CASE("optimal barrier") {
    const auto s = optimal_barrier({0.5, 10.0, 1.0}, kStd);
    CHECK(s.feasible);
    CHECK(s.b_star == doctest::Approx(0.06574).epsilon(5e-5 / 0.06574));
    CHECK(s.min_alpha == doctest::Approx(2.3221625).epsilon(1e-6 / 2.32));
    CHECK(credible_alpha(s.b_star, s.p_tilde) == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(credibility_prob(kStd, s.b_star, 10.0, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(s.b_star >= std::exp(s.p_tilde - 1.0) - 1.0);
    CHECK(s.b_star < std::exp(s.p_tilde) - 1.0);

    const auto s7 = optimal_barrier({0.7, 10.0, 1.0}, kStd);
    CHECK(s7.b_star == doctest::Approx(-0.00768).epsilon(5e-5 / 0.00768));
    CHECK(s7.min_alpha == doctest::Approx(2.4766867).epsilon(1e-6 / 2.47));
    CHECK(credibility_prob(kStd, s7.b_star, 10.0, 1.0) == doctest::Approx(0.7).epsilon(1e-6));

    const auto none = optimal_barrier({0.5, 2.0, 1.0}, kStd);
    CHECK_FALSE(none.feasible);
    CHECK(none.min_alpha > 2.0);

    CHECK_THROWS_AS(optimal_barrier({1.5, 10.0, 1.0}, kStd), DomainError);
    CHECK_THROWS_AS(optimal_barrier({0.5, -1.0, 1.0}, kStd), DomainError);
    CHECK_THROWS_AS(optimal_barrier({0.5, 10.0, 0.0}, kStd), DomainError);
}

TEST_CASE("credible alpha has its minimum at e^{p~-1} - 1") {
    const double pt = solve_p_tilde(kStd, 0.5, 1.0);
    const double b0 = std::exp(pt - 1.0) - 1.0;
    CHECK(std::fabs(credible_alpha(b0, pt) - std::exp(1.0 - pt)) <= 1e-8);
    for (double h : {1e-3, 1e-2, 0.1}) {
        CHECK(credible_alpha(b0 + h, pt) > credible_alpha(b0, pt));
        CHECK(credible_alpha(b0 - h, pt) > credible_alpha(b0, pt));
    }
    CHECK_THROWS_AS(credible_alpha(std::exp(pt + 1e-9) - 1.0, pt), DomainError);
}

TEST_CASE("expected retained and debt against the joint law") {
    for (double t : {1.0, 10.0}) {
        for (double b : {-0.5, -0.2, 0.0, 0.06574, 0.5}) {
            CHECK(expected_retained(b, kStd, t) == doctest::Approx(oracle_retained(b, t)).epsilon(1e-8));
            CHECK(expected_debt(b, kStd, t) == doctest::Approx(oracle_debt(b, t)).epsilon(1e-8));
        }
    }
    for (double b : {-0.3, 0.0, 0.2}) {
        CHECK(retained_second_moment(b, kStd, 1.0) == doctest::Approx(oracle_retained(b, 1.0, 2)).epsilon(1e-8));
    }
}

TEST_CASE("expected retained shape") {
    CHECK(expected_retained(1e6, kStd) == doctest::Approx(std::exp(0.06)).epsilon(1e-6));
    CHECK(expected_retained(0.5, kStd, 10.0) < std::exp(0.6));
    const double h = 1e-3;
    for (double b = -0.9; b <= 1.0; b += 0.05) {
        const double vm = expected_retained(b - h, kStd);
        const double v0 = expected_retained(b, kStd);
        const double vp = expected_retained(b + h, kStd);
        CHECK(vp > v0);
        CHECK(vp - 2.0 * v0 + vm < 1e-12);
    }
    CHECK_THROWS_AS(expected_retained(-1.0, kStd), DomainError);
}

TEST_CASE("expected debt") {
    CHECK(expected_debt(0.06574, kStd) == doctest::Approx(0.13150).epsilon(5e-6 / 0.1315));
    CHECK(240.0 * (1.0 - 10.0 * expected_debt(0.06574, kStd)) == doctest::Approx(-75.6).epsilon(0.05 / 75.6));
    CHECK(expected_debt(1e6, kStd) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    double prev = expected_debt(0.0, kStd);
    for (double b = 0.05; b <= 2.0; b += 0.05) {
        const double u = expected_debt(b, kStd);
        CHECK(u < prev);
        prev = u;
    }
    CHECK_THROWS_AS(expected_debt(-1.5, kStd), DomainError);
}

TEST_CASE("losses") {
    CHECK(normalized_loss(0.06574, 10.0, kStd) == doctest::Approx(-0.2603).epsilon(5e-4 / 0.2603));
    CHECK(normalized_loss(0.3, 0.0, kStd) == -1.0);
    const double l7 = normalized_loss(-0.00768, 10.0, kStd);
    CHECK(l7 == doctest::Approx(10.0 - 10.0 * oracle_retained(-0.00768, 1.0) - 1.0).epsilon(1e-8));
    CHECK(l7 > 0.0);

    double prev = 1e9;
    for (double b = -0.9; b <= 1.5; b += 0.05) {
        const double le = entire_loss(b, 10.0, kStd);
        CHECK(le < prev);
        CHECK(le <= normalized_loss(b, 10.0, kStd) + 1.0 + 1e-12);
        prev = le;
    }
}

TEST_CASE("profitability") {
    CHECK(profitability_check(0.06574, 10.0, kStd));
    CHECK_FALSE(profitability_check(-0.5, 10.0, kStd));
    CHECK(profitability_check(-0.5, 1e-9, kStd));
}

TEST_CASE("mean-variance objective") {
    for (double b : {-0.5, 0.0, 0.3}) {
        CHECK(mean_variance_objective(b, 0.0, kStd) == doctest::Approx(expected_retained(b, kStd)).epsilon(1e-14));
    }
    const double h = 1e-4;
    for (double lambda : {0.0, 0.25, 0.85}) {
        for (double b : {-0.6, -0.2, 0.1, 0.4}) {
            const double fd =
                (mean_variance_objective(b + h, lambda, kStd) - mean_variance_objective(b - h, lambda, kStd)) / (2 * h);
            CHECK(mean_variance_derivative(b, lambda, kStd) == doctest::Approx(fd).epsilon(1e-5).scale(1e-3));
        }
    }
    // 2 lambda (1 + b) = 0.5
    CHECK(mean_variance_derivative(0.25 / 0.85 - 1.0, 0.85, kStd) > 0.0);
    for (double b = -0.95; 2.0 * 0.85 * (1.0 + b) <= 1.0; b += 0.02) {
        CHECK(mean_variance_derivative(b, 0.85, kStd) > 0.0);
    }

    // Rises to a single peak, then falls.
    int sign_changes = 0;
    double prev = mean_variance_derivative(-0.99, 0.85, kStd);
    CHECK(prev > 0.0);
    for (double b = -0.95; b <= 1.0; b += 0.05) {
        const double d = mean_variance_derivative(b, 0.85, kStd);
        if ((d > 0.0) != (prev > 0.0)) {
            ++sign_changes;
        }
        prev = d;
    }
    CHECK(sign_changes == 1);
    CHECK(prev < 0.0);
    CHECK_THROWS_AS(mean_variance_objective(0.0, -1.0, kStd), DomainError);
}

TEST_CASE("currency summary for a 240 deficit") {
    const auto s = currency_summary(240.0, 0.06574024178, 10.0, kStd);
    CHECK(s.net_payment == doctest::Approx(177.5).epsilon(0.5 / 177.5));
    CHECK(s.excess_return == doctest::Approx(75.6).epsilon(0.5 / 75.6));
    CHECK(s.total_gain == doctest::Approx(138.1).epsilon(1.0 / 138.1));
    CHECK(s.total_gain == doctest::Approx(240.0 - s.net_payment + s.excess_return));
    CHECK_THROWS_AS(currency_summary(0.0, 0.0, 10.0, kStd), DomainError);
}

TEST_CASE("Monte Carlo agreement with discretisation allowance") {
    const int steps = 250;
    const std::size_t n = 100000;
    const auto paths = simulate_paths(kStd, 1.0, steps, n, 4242);
    const double delta = grid_max_shift(kStd, 1.0, steps);
    for (double b : {-0.2, 0.0, 0.06574, 0.5}) {
        const double shifted_b = (1.0 + b) * std::exp(delta) - 1.0;
        double rs = 0.0;
        double rq = 0.0;
        double ds = 0.0;
        double dq = 0.0;
        for (const auto& p : paths) {
            const auto o = withdrawal_outcome(p, b);
            rs += o.retained;
            rq += o.retained * o.retained;
            ds += o.debt_account;
            dq += o.debt_account * o.debt_account;
            if (o.debt_account > 0.0) {
                CHECK(o.retained <= 1.0 + b + 1e-12);
            }
        }
        const double rm = rs / n;
        const double dm = ds / n;
        const double rse = std::sqrt((rq / n - rm * rm) / n);
        const double dse = std::sqrt((dq / n - dm * dm) / n);
        const double v = expected_retained(b, kStd);
        const double u = expected_debt(b, kStd);
        const double v_shift = expected_retained(shifted_b, kStd);
        const double u_shift = expected_debt(shifted_b, kStd) * (1.0 + b) / (1.0 + shifted_b);
        CHECK(std::fabs(rm - v) < 3.0 * rse + 2.0 * std::fabs(v - v_shift));
        CHECK(std::fabs(dm - u) < 3.0 * dse + 2.0 * std::fabs(u - u_shift));
    }
}
