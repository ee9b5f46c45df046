#pragma once

#include <functional>
#include <optional>

#include "paygmix/errors.hpp"

namespace paygmix::numerics {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Complementary error function, 2/sqrt(pi) * int_x^inf exp(-z^2) dz.
/// Cody's rational Chebyshev approximations; relative error near 1e-16.
double erfc(double x);

/// Scaled complementary error function exp(x^2) * erfc(x). Finite for all
/// x > -26.6; used wherever erfc multiplies a growing exponential.
double erfcx(double x);

/// Standard normal distribution function.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of std_normal_cdf on (0, 1). Acklam's rational start refined by
/// one Halley step against std_normal_cdf.
double std_normal_quantile(double p);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

using Integrand = std::function<double(double)>;

/// Upper bound on int_x^inf |f(y)| dy as a function of x.
using TailBound = std::function<double(double)>;

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    /// Optional certified tail bound. When present, the semi-infinite
    /// integral is truncated at the first point X where tail_bound(X) falls
    /// below abs_tol / 10.
    std::optional<TailBound> tail_bound;
    /// Scale for the doubling search of the truncation point.
    double initial_step = 1.0;
    /// Subdivision budget for the adaptive Gauss-Kronrod driver.
    int max_subintervals = 2000;

    void validate() const;
};

/// Adaptive 15-point Gauss-Kronrod quadrature on [a, b].
double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// int_lower^inf f(y) dy. See QuadratureSpec::tail_bound for the truncation
/// rule; without a bound, doubling panels are summed until two consecutive
/// panels contribute less than abs_tol / 10.
double integrate_semi_infinite(const Integrand& f, double lower, const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Brent's method on [lo, hi]. Requires f(lo) * f(hi) <= 0; throws
/// BracketError otherwise. Returns x in [lo, hi] with the bracket shrunk
/// below tol.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-10, int max_iter = 200);

} // namespace paygmix::numerics
