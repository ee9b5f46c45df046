#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "paygmix/numerics.hpp"

namespace paygmix::numerics {

namespace {

// Coefficients from W. J. Cody, "Rational Chebyshev approximations for the
// error function", Math. Comp. 23 (1969), as distributed in netlib specfun.
constexpr std::array<double, 5> kA{3.16112374387056560e00, 1.13864154151050156e02,
                                   3.77485237685302021e02, 3.20937758913846947e03,
                                   1.85777706184603153e-1};
constexpr std::array<double, 4> kB{2.36012909523441209e01, 2.44024637934444173e02,
                                   1.28261652607737228e03, 2.84423683343917062e03};
constexpr std::array<double, 9> kC{5.64188496988670089e-1, 8.88314979438837594e00,
                                   6.61191906371416295e01, 2.98635138197400131e02,
                                   8.81952221241769090e02, 1.71204761263407058e03,
                                   2.05107837782607147e03, 1.23033935479799725e03,
                                   2.15311535474403846e-8};
constexpr std::array<double, 8> kD{1.57449261107098347e01, 1.17693950891312499e02,
                                   5.37181101862009858e02, 1.62138957456669019e03,
                                   3.29079923573345963e03, 4.36261909014324716e03,
                                   3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kP{3.05326634961232344e-1, 3.60344899949804439e-1,
                                   1.25781726111229246e-1, 1.60837851487422766e-2,
                                   6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ{2.56852019228982242e00, 1.87295284992346047e00,
                                   5.27905102951428412e-1, 6.05183413124413191e-2,
                                   2.33520497626869185e-3};

constexpr double kSqrtPiInv = 0.56418958354775628695;
constexpr double kThresh = 0.46875;
constexpr double kXNeg = -26.628;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;
constexpr double kXHuge = 6.71e7;
constexpr double kXMax = 2.53e307;

enum class Kind { Erfc, Erfcx };

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(who) + ": argument must be finite");
    }
}

// exp(-y^2) split so that the leading part is exact in floating point.
double exp_minus_square(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

double calerf(double x, Kind kind) {
    const double y = std::fabs(x);
    double result = 0.0;

    if (y <= kThresh) {
        const double ysq = y > kXSmall ? y * y : 0.0;
        double xnum = kA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kA[i]) * ysq;
            xden = (xden + kB[i]) * ysq;
        }
        result = 1.0 - x * (xnum + kA[3]) / (xden + kB[3]);
        return kind == Kind::Erfcx ? std::exp(ysq) * result : result;
    }

    if (y <= 4.0) {
        double xnum = kC[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + kC[i]) * y;
            xden = (xden + kD[i]) * y;
        }
        result = (xnum + kC[7]) / (xden + kD[7]);
        if (kind == Kind::Erfc) {
            result *= exp_minus_square(y);
        }
    } else if (y >= kXBig && (kind == Kind::Erfc || y >= kXMax)) {
        result = 0.0;
    } else if (y >= kXHuge) {
        result = kSqrtPiInv / y;
    } else {
        const double ysq = 1.0 / (y * y);
        double xnum = kP[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + kP[i]) * ysq;
            xden = (xden + kQ[i]) * ysq;
        }
        result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
        result = (kSqrtPiInv - result) / y;
        if (kind == Kind::Erfc) {
            result *= exp_minus_square(y);
        }
    }

    if (x < 0.0) {
        if (kind == Kind::Erfc) {
            result = 2.0 - result;
        } else if (x < kXNeg) {
            result = std::numeric_limits<double>::infinity();
        } else {
            const double ysq = std::trunc(x * 16.0) / 16.0;
            const double del = (x - ysq) * (x + ysq);
            const double e = std::exp(ysq * ysq) * std::exp(del);
            result = 2.0 * e - result;
        }
    }
    return result;
}

} // namespace

double erfc(double x) {
    require_finite(x, "erfc");
    return calerf(x, Kind::Erfc);
}

double erfcx(double x) {
    require_finite(x, "erfcx");
    return calerf(x, Kind::Erfcx);
}

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    return 0.5 * calerf(-x / std::numbers::sqrt2, Kind::Erfc);
}

double std_normal_pdf(double x) {
    require_finite(x, "std_normal_pdf");
    return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_quantile: probability must lie in (0, 1)");
    }
    constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
    constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
    constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement; the upper tail is refined through the complement to
    // keep relative accuracy.
    const double e = p > 0.5 ? (1.0 - p) - std_normal_cdf(-x) : std_normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

} // namespace paygmix::numerics
