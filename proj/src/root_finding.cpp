#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "paygmix/numerics.hpp"

namespace paygmix::numerics {

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
    if (!(tol > 0.0)) {
        throw DomainError("find_root: tolerance must be positive");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw DomainError("find_root: bracket must be finite with lo <= hi");
    }
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if (std::signbit(fa) == std::signbit(fb)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "] (f(lo)=" << fa
            << ", f(hi)=" << fb << ")";
        throw BracketError(msg.str());
    }

    // Brent (1973), zero(): inverse quadratic / secant steps guarded by
    // bisection. c is the contrapoint, b the current best estimate.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::signbit(fb) == std::signbit(fc)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p = 0.0;
            double q = 0.0;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw BracketError("find_root: iteration budget exhausted");
}

} // namespace paygmix::numerics
