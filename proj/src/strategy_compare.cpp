#include <algorithm>
#include <cmath>

#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/errors.hpp"
#include "paygmix/numerics.hpp"
#include "paygmix/strategy_compare.hpp"

namespace paygmix {

std::string short_label(StrategyLabel label) {
    switch (label) {
    case StrategyLabel::Payg:
        return "PAYG";
    case StrategyLabel::Continuous:
        return "C";
    case StrategyLabel::LumpSum:
        return "LS";
    }
    return "?";
}

std::string label_name(StrategyLabel label) {
    switch (label) {
    case StrategyLabel::Payg:
        return "PAYG";
    case StrategyLabel::Continuous:
        return "CONTINUOUS";
    case StrategyLabel::LumpSum:
        return "LUMP_SUM";
    }
    return "?";
}

namespace strategy {

namespace {

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError(std::string(who) + ": alpha must be positive");
    }
}

} // namespace

double lump_sum_loss(double t, double alpha, const FundParams& params) {
    require_alpha(alpha, "lump_sum_loss");
    return alpha - alpha * growth_factor_moment(params, t) + 1.0;
}

double continuous_loss(double t, double b, double alpha, const FundParams& params) {
    require_alpha(alpha, "continuous_loss");
    return continuous::normalized_loss(b, alpha, params, t);
}

double lambda_gap(double t, double b, double alpha, const FundParams& params) {
    require_alpha(alpha, "lambda_gap");
    if (!(b > -1.0)) {
        throw DomainError("lambda_gap: barrier b must exceed -1");
    }
    if (t == 0.0) {
        // Nothing has grown yet; the fund is 1 and is skimmed down to 1+b at once.
        return b >= 0.0 ? -2.0 : -alpha * b - 2.0;
    }
    return continuous_loss(t, b, alpha, params) - lump_sum_loss(t, alpha, params);
}

std::optional<double> beta_curve(double t, double alpha, const FundParams& params, double p) {
    require_alpha(alpha, "beta_curve");
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("beta_curve: horizon must be positive");
    }
    const double p_tilde = continuous::solve_p_tilde(params, p, t);
    const double lo = std::max(-2.0 / alpha, -1.0) + 1e-6;
    double hi = std::max(lo + 1e-6, std::expm1(p_tilde) - 1e-6);
    auto gap = [&](double b) { return lambda_gap(t, b, alpha, params); };
    if (gap(lo) <= 0.0) {
        return std::nullopt;
    }
    int extensions = 0;
    while (gap(hi) > 0.0) {
        if (++extensions > 40) {
            return std::nullopt;
        }
        hi = 2.0 * hi + 1.0;
    }
    return numerics::find_root(gap, lo, hi, 1e-12);
}

StrategyDecision recommend_strategy(double t, double alpha, double p, const FundParams& params) {
    require_alpha(alpha, "recommend_strategy");
    CredibilityConstraint constraint{p, alpha, t};
    const BarrierSolution barrier = continuous::optimal_barrier(constraint, params);

    StrategyDecision d;
    d.l_d = lump_sum_loss(t, alpha, params);
    if (!barrier.feasible) {
        d.feasible = false;
        d.label = StrategyLabel::Payg;
        d.l_c = std::nan("");
        d.lambda_gap = std::nan("");
        d.b_star = std::nan("");
        d.note = "no credible barrier: alpha below e^{1-p~}";
        return d;
    }
    d.b_star = barrier.b_star;
    d.l_c = continuous_loss(t, d.b_star, alpha, params);
    d.lambda_gap = d.l_c - d.l_d;
    if (std::min(d.l_d, d.l_c) >= 0.0) {
        d.label = StrategyLabel::Payg;
    } else if (d.lambda_gap > 0.0) {
        d.label = StrategyLabel::LumpSum;
    } else {
        d.label = StrategyLabel::Continuous;
    }
    return d;
}

double lump_sum_default_prob(double t, double alpha, const FundParams& params) {
    require_alpha(alpha, "lump_sum_default_prob");
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("lump_sum_default_prob: horizon must be positive");
    }
    const double threshold = std::log1p(1.0 / alpha);
    return numerics::std_normal_cdf((threshold - params.mu() * t) / (params.sigma() * std::sqrt(t)));
}

} // namespace strategy
} // namespace paygmix
