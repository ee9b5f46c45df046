#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "paygmix/numerics.hpp"

namespace paygmix::numerics {

namespace {

// Kronrod nodes (descending, last is the centre) and weights for the
// 15-point rule, with the embedded 7-point Gauss weights on the even nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * fsum;
        }
    }
    const double value = kronrod * half;
    const double error = std::fabs((kronrod - gauss) * half);
    return {a, b, value, error};
}

double required_accuracy(const QuadratureSpec& spec, double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be strictly positive");
    }
    if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
        throw DomainError("QuadratureSpec: initial_step must be positive and finite");
    }
    if (max_subintervals < 1) {
        throw DomainError("QuadratureSpec: max_subintervals must be at least 1");
    }
}

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: limits must be finite");
    }
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -integrate(f, b, a, spec);
    }

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod(f, a, b);
    double total = first.value;
    double total_error = first.error;
    panels.push(first);

    int count = 1;
    while (total_error > required_accuracy(spec, total)) {
        if (count >= spec.max_subintervals) {
            throw QuadratureError("integrate: subdivision budget exhausted on [" + std::to_string(a) +
                                      ", " + std::to_string(b) + "]",
                                  total, total_error);
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval too narrow to split further in double precision.
            throw QuadratureError("integrate: interval collapsed before reaching tolerance", total,
                                  total_error);
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    // Re-sum to shed the drift from incremental updates.
    double sum = 0.0;
    while (!panels.empty()) {
        sum += panels.top().value;
        panels.pop();
    }
    return sum;
}

double integrate_semi_infinite(const Integrand& f, double lower, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(lower)) {
        throw DomainError("integrate_semi_infinite: lower limit must be finite");
    }
    constexpr int kMaxDoublings = 64;
    const double tail_target = spec.abs_tol / 10.0;

    if (spec.tail_bound) {
        const auto& bound = *spec.tail_bound;
        double step = spec.initial_step;
        double upper = lower;
        int doublings = 0;
        while (bound(upper) > tail_target) {
            if (++doublings > kMaxDoublings) {
                throw QuadratureError("integrate_semi_infinite: tail bound never fell below tolerance",
                                      0.0, bound(upper));
            }
            upper = lower + step;
            step *= 2.0;
        }
        QuadratureSpec finite = spec;
        finite.abs_tol = spec.abs_tol - tail_target;
        return integrate(f, lower, upper, finite);
    }

    // No certified bound: accumulate doubling panels until two in a row are
    // negligible.
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = tail_target;
    double total = 0.0;
    double a = lower;
    double width = spec.initial_step;
    int quiet = 0;
    for (int k = 0; k < kMaxDoublings; ++k) {
        const double piece = integrate(f, a, a + width, panel_spec);
        total += piece;
        quiet = std::fabs(piece) < tail_target ? quiet + 1 : 0;
        if (quiet >= 2) {
            return total;
        }
        a += width;
        width *= 2.0;
    }
    throw QuadratureError("integrate_semi_infinite: integrand did not decay", total, 0.0);
}

} // namespace paygmix::numerics
