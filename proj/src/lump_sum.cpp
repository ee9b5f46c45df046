#include <cmath>

#include "paygmix/errors.hpp"
#include "paygmix/lump_sum.hpp"
#include "paygmix/numerics.hpp"

namespace paygmix {

DeficitStep::DeficitStep(double c0, double cj) : c0_(c0), cj_(cj) {
    if (!std::isfinite(c0) || !std::isfinite(cj) || !(c0 > 0.0) || !(cj > c0)) {
        throw DomainError("DeficitStep: requires C_j > C_0 > 0");
    }
}

namespace lump_sum {

namespace {

using numerics::std_normal_cdf;

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError(std::string(who) + ": alpha must be positive");
    }
}

// Standardised payback threshold (mu + ln alpha) / sigma and its tilted
// counterpart (mu + sigma^2 + ln alpha) / sigma.
struct Thresholds {
    double plain;
    double tilted;
};

Thresholds thresholds(const FundParams& params, double alpha) {
    const double s = params.sigma();
    const double base = params.mu() + std::log(alpha);
    return {base / s, (base + s * s) / s};
}

// Per unit of deficit.
double unit_state_loss(const FundParams& params, double alpha) {
    const auto [plain, tilted] = thresholds(params, alpha);
    return std_normal_cdf(-plain) - alpha * std::exp(params.mean_growth_rate()) * std_normal_cdf(-tilted);
}

double unit_pc_gain(const FundParams& params, double alpha) {
    const auto [plain, tilted] = thresholds(params, alpha);
    return alpha * std::exp(params.mean_growth_rate()) * std_normal_cdf(tilted) - std_normal_cdf(plain);
}

double unit_barrier_debt(const FundParams& params, const BarrierPolicy& policy) {
    const double s = params.sigma();
    const double log_barrier = std::log1p(policy.b);
    const double in_the_money = (params.mu() - log_barrier) / s;
    return policy.alpha * (std::exp(params.mean_growth_rate()) * std_normal_cdf(in_the_money + s) -
                           std_normal_cdf(in_the_money) * (1.0 + policy.b));
}

void require_barrier_policy(const BarrierPolicy& policy, const char* who) {
    require_alpha(policy.alpha, who);
    if (!(policy.b > -1.0) || !std::isfinite(policy.b)) {
        throw DomainError(std::string(who) + ": barrier b must exceed -1");
    }
}

} // namespace

double full_payback_prob(const FundParams& params, double alpha) {
    require_alpha(alpha, "full_payback_prob");
    return std_normal_cdf(thresholds(params, alpha).plain);
}

double expected_state_loss(const FundParams& params, double alpha, const DeficitStep& step) {
    require_alpha(alpha, "expected_state_loss");
    return step.deficit() * std::max(0.0, unit_state_loss(params, alpha));
}

double expected_pc_gain(const FundParams& params, double alpha, const DeficitStep& step) {
    require_alpha(alpha, "expected_pc_gain");
    return step.deficit() * std::max(0.0, unit_pc_gain(params, alpha));
}

double expected_fund_after_forced_payback(const FundParams& params, double alpha, const DeficitStep& step) {
    require_alpha(alpha, "expected_fund_after_forced_payback");
    return step.deficit() * (alpha * std::exp(params.mean_growth_rate()) - 1.0);
}

double expected_net_gain_vs_extra_investment(const FundParams& params, double alpha,
                                             const DeficitStep& step) {
    return expected_pc_gain(params, alpha, step) - (alpha - 1.0) * step.deficit();
}

double alpha_for_payback_prob(const FundParams& params, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("alpha_for_payback_prob: p must lie in (0, 1)");
    }
    return std::exp(params.sigma() * numerics::std_normal_quantile(p) - params.mu());
}

double at_least_one_shortfall_prob(const FundParams& params, double alpha, int years) {
    if (years < 1) {
        throw DomainError("at_least_one_shortfall_prob: years must be at least 1");
    }
    return 1.0 - std::pow(full_payback_prob(params, alpha), years);
}

double barrier_payback_prob(const FundParams& params, const BarrierPolicy& policy) {
    require_alpha(policy.alpha, "barrier_payback_prob");
    const double level = 1.0 + policy.b + 1.0 / policy.alpha;
    if (!(level > 0.0) || !std::isfinite(policy.b)) {
        throw DomainError("barrier_payback_prob: requires 1 + b + 1/alpha > 0");
    }
    return std_normal_cdf((params.mu() - std::log(level)) / params.sigma());
}

double barrier_expected_debt(const FundParams& params, const BarrierPolicy& policy, const DeficitStep& step) {
    require_barrier_policy(policy, "barrier_expected_debt");
    return step.deficit() * std::max(0.0, unit_barrier_debt(params, policy));
}

double barrier_expected_retained(const FundParams& params, const BarrierPolicy& policy,
                                 const DeficitStep& step) {
    require_barrier_policy(policy, "barrier_expected_retained");
    const double total = policy.alpha * std::exp(params.mean_growth_rate());
    return step.deficit() * (total - std::max(0.0, unit_barrier_debt(params, policy)));
}

} // namespace lump_sum
} // namespace paygmix
