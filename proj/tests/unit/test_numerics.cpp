#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "doctest.h"
#include "paygmix/errors.hpp"
#include "paygmix/fund_model.hpp"
#include "paygmix/numerics.hpp"
#include "paygmix/rng.hpp"

using namespace paygmix;
using namespace paygmix::numerics;

namespace {

// Maclaurin series of erf in long double, fine for |x| <= 3.
long double erf_series(long double x) {
    long double term = x;
    long double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x * x / n;
        const long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(add) < 1e-22L) {
            break;
        }
    }
    return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
}

// Lentz continued fraction for erfc, good for x >= 2.
long double erfc_cf(long double x) {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))))
    long double f = x;
    long double c = x;
    long double d = 0.0L;
    for (int n = 1; n < 500; ++n) {
        const long double an = n * 0.5L;
        d = x + an * d;
        d = 1.0L / d;
        c = x + an / c;
        const long double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0L) < 1e-20L) {
            break;
        }
    }
    return std::exp(-x * x) / std::sqrt(std::numbers::pi_v<long double>) / f;
}

double erfc_oracle(double x) {
    if (x < 2.0) {
        return static_cast<double>(1.0L - erf_series(x));
    }
    return static_cast<double>(erfc_cf(x));
}

double quantile_by_bisection(double p) {
    if (p > 0.5) {
        return -quantile_by_bisection(1.0 - p); // 1 - p is exact here
    }
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("erfc against series and continued fraction") {
    CHECK(numerics::erfc(0.0) == 1.0);
    CHECK(numerics::erfc(1.0) == doctest::Approx(0.157299207050285).epsilon(1e-14));
    for (double x = -3.0; x <= 10.0; x += 0.0625) {
        const double ref = erfc_oracle(x);
        CHECK(std::fabs(numerics::erfc(x) - ref) <= 1e-12 * std::fabs(ref));
    }
    CHECK(numerics::erfc(40.0) < 1e-300);
    CHECK(numerics::erfc(-40.0) == 2.0);
    CHECK_THROWS_AS(numerics::erfc(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(numerics::erfc(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("erfcx is the scaled tail") {
    for (double x = -3.0; x <= 5.0; x += 0.25) {
        CHECK(erfcx(x) == doctest::Approx(std::exp(x * x) * erfc_oracle(x)).epsilon(1e-12));
    }
    // Asymptotic series where erfc itself underflows.
    for (double x : {30.0, 100.0, 1e4}) {
        const double inv = 1.0 / (x * x);
        const double ref = 1.0 / (x * std::sqrt(std::numbers::pi)) * (1.0 - 0.5 * inv + 0.75 * inv * inv);
        CHECK(erfcx(x) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("std_normal_cdf") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(0.2) == doctest::Approx(0.5793).epsilon(5e-5 / 0.5793));
    CHECK(std_normal_cdf(2.326347) == doctest::Approx(0.99).epsilon(1e-6));
    for (double x = -8.0; x <= 8.0; x += 0.1) {
        CHECK(std::fabs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) <= 1e-14);
    }
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v = std_normal_cdf(-10.0 + 0.02 * i);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("std_normal_quantile matches bisection") {
    for (double p : {1e-12, 1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999999}) {
        CHECK(std_normal_quantile(p) == doctest::Approx(quantile_by_bisection(p)).epsilon(1e-12).scale(1.0));
    }
    CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
}

TEST_CASE("finite quadrature") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);

    QuadratureSpec tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-15;
    tight.max_subintervals = 3;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight),
                    QuadratureError);
    try {
        integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight);
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > 0.0);
    }

    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("semi-infinite quadrature") {
    CHECK(integrate_semi_infinite([](double y) { return std::exp(-y); }, 0.0) == doctest::Approx(1.0).epsilon(1e-10));

    QuadratureSpec bounded;
    bounded.tail_bound = [](double x) { return std::exp(-x); };
    CHECK(integrate_semi_infinite([](double y) { return std::exp(-y); }, 0.0, bounded) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // Gaussian: int_1^inf phi = Phi(-1)
    QuadratureSpec gauss;
    gauss.tail_bound = [](double x) { return std_normal_cdf(-x); };
    CHECK(integrate_semi_infinite([](double y) { return std_normal_pdf(y); }, 1.0, gauss) ==
          doctest::Approx(std_normal_cdf(-1.0)).epsilon(1e-9));

    const FundParams fund(0.04, 0.2);
    auto g = [&](double y) { return running_max_density(y, 1.0, fund.mu(), fund); };
    QuadratureSpec tail;
    tail.tail_bound = [&](double x) { return running_max_tail_prob(x, 1.0, fund.mu(), fund); };
    CHECK(integrate_semi_infinite(g, 0.0, tail) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(integrate_semi_infinite(g, 0.15750112, tail) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("find_root") {
    CHECK(find_root([](double x) { return x - 1.0; }, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0) ==
          doctest::Approx(0.7390851332151607).epsilon(1e-10));
    const double x90 = find_root([](double x) { return std_normal_cdf(x) - 0.9; }, 0.0, 3.0);
    CHECK(x90 == doctest::Approx(quantile_by_bisection(0.9)).epsilon(1e-10));
    CHECK(x90 == doctest::Approx(1.2816).epsilon(1e-4));

    // Solves 1/((1+b)(p~ - ln(1+b))) = 10 with p~ for p = 0.5.
    const double pt = 0.15750111526;
    auto delta = [&](double b) { return 1.0 / ((1.0 + b) * (pt - std::log1p(b))) - 10.0; };
    const double b = find_root(delta, std::exp(pt - 1.0) - 1.0, std::exp(pt) - 1.0 - 1e-9);
    CHECK(b == doctest::Approx(0.06574).epsilon(5e-5 / 0.06574));

    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, -1.0), DomainError);
}

TEST_CASE("Philox known answers") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(RngStream::philox_block({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(RngStream::philox_block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(RngStream::philox_block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("RngStream determinism and independence") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_standard_normal(a) == sample_standard_normal(b));
    }
    RngStream c(42, 1);
    RngStream d(43, 0);
    RngStream e(42, 0);
    std::set<std::uint32_t> first;
    first.insert(c.next_u32());
    first.insert(d.next_u32());
    first.insert(e.next_u32());
    CHECK(first.size() == 3);

    RngStream u(7, 3);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform();
        CHECK((x > 0.0 && x < 1.0));
    }
}

TEST_CASE("standard normal moments") {
    RngStream s(2024, 0);
    const int n = 1000000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = sample_standard_normal(s);
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.004);
    CHECK(std::fabs(var - 1.0) < 0.005);
}
