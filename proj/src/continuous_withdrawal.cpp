#include <algorithm>
#include <cmath>

#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/errors.hpp"

namespace paygmix {

void CredibilityConstraint::validate() const {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("CredibilityConstraint: p must lie in (0, 1)");
    }
    if (!(alpha_cap > 0.0) || !std::isfinite(alpha_cap)) {
        throw DomainError("CredibilityConstraint: alpha_cap must be positive");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("CredibilityConstraint: horizon must be positive");
    }
}

namespace continuous {

namespace {

void require_barrier(double b, const char* who) {
    if (!(b > -1.0) || std::isnan(b)) {
        throw DomainError(std::string(who) + ": barrier b must exceed -1");
    }
}

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError(std::string(who) + ": alpha must be positive");
    }
}

void require_horizon(double t, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(who) + ": horizon must be positive");
    }
}

// prefactor * {P[M <= l+] + scale * int_{l+}^inf e^{-k y} g(y; t, mu + k sigma^2) dy}
// with l = ln(1+b) and scale = (1+b)^k. Covers E[R] (k = 1) and E[R^2] (k = 2).
double tilted_moment(int k, double b, const FundParams& params, double t, const numerics::QuadratureSpec& spec) {
    const double drift = params.tilted_drift(k);
    const double log_barrier = std::log1p(b);
    const double lower = std::max(0.0, log_barrier);
    auto density = [&](double y) { return running_max_density(y, t, drift, params); };

    double below = 0.0;
    if (lower > 0.0) {
        below = numerics::integrate(density, 0.0, lower, spec);
    }
    numerics::QuadratureSpec tail_spec = spec;
    tail_spec.initial_step = std::max(spec.initial_step, params.sigma() * std::sqrt(t));
    tail_spec.tail_bound = [&](double x) {
        return std::exp(-k * x) * running_max_tail_prob(x, t, drift, params);
    };
    const double above = numerics::integrate_semi_infinite(
        [&](double y) { return std::exp(-k * y) * density(y); }, lower, tail_spec);

    const double exponent = k == 1 ? params.mean_growth_rate() : 2.0 * params.mu() + 2.0 * params.variance();
    return std::exp(exponent * t) * (below + std::pow(1.0 + b, k) * above);
}

} // namespace

WithdrawalOutcome withdrawal_outcome(const PathSample& path, double b) {
    require_barrier(b, "withdrawal_outcome");
    const double excess = std::max(0.0, path.running_max - std::log1p(b));
    return {std::exp(path.terminal_log - excess), (1.0 + b) * excess};
}

double credibility_prob(const FundParams& params, double b, double alpha, double t) {
    require_barrier(b, "credibility_prob");
    require_alpha(alpha, "credibility_prob");
    require_horizon(t, "credibility_prob");
    const double level = std::log1p(b) + 1.0 / (alpha * (1.0 + b));
    return running_max_tail_prob(level, t, params.mu(), params);
}

double solve_p_tilde(const FundParams& params, double p, double t) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("solve_p_tilde: p must lie in (0, 1)");
    }
    require_horizon(t, "solve_p_tilde");
    auto excess = [&](double x) { return running_max_tail_prob(x, t, params.mu(), params) - p; };
    double hi = params.sigma() * std::sqrt(t) + std::fabs(params.mu()) * t;
    while (excess(hi) > 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw BracketError("solve_p_tilde: could not bracket the level");
        }
    }
    return numerics::find_root(excess, 0.0, hi, 1e-13);
}

double credible_alpha(double b, double p_tilde) {
    require_barrier(b, "credible_alpha");
    const double room = p_tilde - std::log1p(b);
    if (!(room > 0.0)) {
        throw DomainError("credible_alpha: requires ln(1+b) < p_tilde");
    }
    return 1.0 / ((1.0 + b) * room);
}

BarrierSolution optimal_barrier(const CredibilityConstraint& constraint, const FundParams& params) {
    constraint.validate();
    BarrierSolution s;
    s.p_tilde = solve_p_tilde(params, constraint.p, constraint.horizon);
    s.min_alpha = std::exp(1.0 - s.p_tilde);
    s.feasible = constraint.alpha_cap >= s.min_alpha;
    if (!s.feasible) {
        return s;
    }
    // With u = ln(1+b) the condition reads e^u (p~ - u) = 1/alpha_cap, and the
    // left side decreases from e^{p~-1} to 0 on [p~ - 1, p~].
    const double target = 1.0 / constraint.alpha_cap;
    const double pt = s.p_tilde;
    auto gap = [&](double u) { return std::exp(u) * (pt - u) - target; };
    const double u = numerics::find_root(gap, pt - 1.0, pt, 1e-14);
    s.b_star = std::expm1(u);
    return s;
}

double expected_retained(double b, const FundParams& params, double t, const numerics::QuadratureSpec& spec) {
    require_barrier(b, "expected_retained");
    require_horizon(t, "expected_retained");
    return tilted_moment(1, b, params, t, spec);
}

double expected_debt(double b, const FundParams& params, double t, const numerics::QuadratureSpec& spec) {
    require_barrier(b, "expected_debt");
    require_horizon(t, "expected_debt");
    const double log_barrier = std::log1p(b);
    const double lower = std::max(0.0, log_barrier);
    const double mu = params.mu();
    numerics::QuadratureSpec tail_spec = spec;
    tail_spec.initial_step = std::max(spec.initial_step, params.sigma() * std::sqrt(t));
    tail_spec.tail_bound = [&](double x) {
        return running_max_excess_bound(std::max(x, log_barrier), log_barrier, t, mu, params);
    };
    const double excess = numerics::integrate_semi_infinite(
        [&](double y) { return (y - log_barrier) * running_max_density(y, t, mu, params); }, lower,
        tail_spec);
    return (1.0 + b) * excess;
}

double normalized_loss(double b, double alpha, const FundParams& params, double t) {
    return alpha - alpha * expected_retained(b, params, t) - 1.0;
}

double entire_loss(double b, double alpha, const FundParams& params, double t) {
    return alpha - alpha * expected_retained(b, params, t) - alpha * expected_debt(b, params, t);
}

bool profitability_check(double b, double alpha, const FundParams& params, double t) {
    require_alpha(alpha, "profitability_check");
    return alpha * (1.0 - expected_retained(b, params, t)) < 1.0;
}

double retained_second_moment(double b, const FundParams& params, double t, const numerics::QuadratureSpec& spec) {
    require_barrier(b, "retained_second_moment");
    require_horizon(t, "retained_second_moment");
    return tilted_moment(2, b, params, t, spec);
}

double mean_variance_objective(double b, double lambda, const FundParams& params, double t) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("mean_variance_objective: lambda must be non-negative");
    }
    return expected_retained(b, params, t) - lambda * retained_second_moment(b, params, t);
}

double mean_variance_derivative(double b, double lambda, const FundParams& params, double t) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("mean_variance_derivative: lambda must be non-negative");
    }
    require_barrier(b, "mean_variance_derivative");
    require_horizon(t, "mean_variance_derivative");
    // The boundary terms from moving ln(1+b) cancel; only the integrals over
    // the skimmed region survive.
    const double lower = std::max(0.0, std::log1p(b));
    numerics::QuadratureSpec spec;
    spec.initial_step = std::max(1.0, params.sigma() * std::sqrt(t));
    auto skimmed = [&](int k) {
        const double drift = params.tilted_drift(k);
        numerics::QuadratureSpec s = spec;
        s.tail_bound = [&, k](double x) { return std::exp(-k * x) * running_max_tail_prob(x, t, drift, params); };
        return numerics::integrate_semi_infinite(
            [&, k](double y) { return std::exp(-k * y) * running_max_density(y, t, drift, params); }, lower, s);
    };
    const double first = std::exp(params.mean_growth_rate() * t) * skimmed(1);
    const double second = 2.0 * (1.0 + b) * std::exp((2.0 * params.mu() + 2.0 * params.variance()) * t) * skimmed(2);
    return first - lambda * second;
}

CurrencySummary currency_summary(double deficit, double b, double alpha, const FundParams& params, double t) {
    if (!(deficit > 0.0) || !std::isfinite(deficit)) {
        throw DomainError("currency_summary: deficit must be positive");
    }
    require_alpha(alpha, "currency_summary");
    CurrencySummary s;
    s.loss = normalized_loss(b, alpha, params, t);
    s.expected_debt = expected_debt(b, params, t);
    s.net_payment = deficit * (1.0 + s.loss);
    s.excess_return = deficit * (alpha * s.expected_debt - 1.0);
    s.total_gain = -deficit * s.loss + s.excess_return;
    return s;
}

} // namespace continuous
} // namespace paygmix
