#pragma once

#include "paygmix/fund_model.hpp"

namespace paygmix {

/// One year of the contribution schedule: the baseline C_0 and the
/// required contribution C_j. The state covers the deficit C_j - C_0.
class DeficitStep {
public:
    /// Throws DomainError unless cj > c0 > 0.
    DeficitStep(double c0, double cj);

    /// Step with C_0 = 1 and the given deficit.
    static DeficitStep from_deficit(double deficit) { return DeficitStep(1.0, 1.0 + deficit); }

    double c0() const noexcept { return c0_; }
    double cj() const noexcept { return cj_; }
    double deficit() const noexcept { return cj_ - c0_; }

private:
    double c0_;
    double cj_;
};

/// Investment multiplier alpha and retained-return barrier b.
struct BarrierPolicy {
    double alpha = 1.0;
    double b = 0.0;
};

namespace lump_sum {

// Payback first: alpha (C_j - C_0) is invested for one year, the deficit is
// repaid in full if the fund covers it, otherwise the state takes the fund.
// All currency results are (C_j - C_0) times a deficit-normalised quantity.

/// P[alpha exp(mu + sigma Z) >= 1] = Phi((mu + ln alpha) / sigma).
double full_payback_prob(const FundParams& params, double alpha);

/// Expected loss of the state, E[(C_j - C_0)(1 - alpha e^{mu + sigma Z})^+].
double expected_state_loss(const FundParams& params, double alpha, const DeficitStep& step);

/// Expected gain of the contributor, E[(C_j - C_0)(alpha e^{mu + sigma Z} - 1)^+].
double expected_pc_gain(const FundParams& params, double alpha, const DeficitStep& step);

/// E[(C_j - C_0)(alpha e^{mu + sigma Z} - 1)]: fund position if the full
/// deficit is always repaid.
double expected_fund_after_forced_payback(const FundParams& params, double alpha, const DeficitStep& step);

/// Expected gain minus the extra investment (alpha - 1)(C_j - C_0).
double expected_net_gain_vs_extra_investment(const FundParams& params, double alpha,
                                             const DeficitStep& step);

/// Multiplier reaching payback probability p: exp(sigma Phi^{-1}(p) - mu).
double alpha_for_payback_prob(const FundParams& params, double p);

/// Probability that at least one of `years` independent annual paybacks
/// falls short, 1 - P^years.
double at_least_one_shortfall_prob(const FundParams& params, double alpha, int years);

// Payback above a retained return b: the contributor keeps up to
// (1 + b) alpha (C_j - C_0), the excess D goes to the state.

/// P[D_1 >= C_1 - C_0] = Phi((mu - ln(1 + b + 1/alpha)) / sigma).
double barrier_payback_prob(const FundParams& params, const BarrierPolicy& policy);

/// E[D_1] = alpha (C_1 - C_0) E[(e^{mu + sigma Z} - (1 + b))^+].
double barrier_expected_debt(const FundParams& params, const BarrierPolicy& policy, const DeficitStep& step);

/// E[R_1] = alpha (C_1 - C_0) E[min(e^{mu + sigma Z}, 1 + b)], computed as
/// alpha (C_1 - C_0) e^{mu + sigma^2/2} - E[D_1].
double barrier_expected_retained(const FundParams& params, const BarrierPolicy& policy,
                                 const DeficitStep& step);

} // namespace lump_sum
} // namespace paygmix
