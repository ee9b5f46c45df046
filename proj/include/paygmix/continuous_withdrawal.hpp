#pragma once

#include "paygmix/fund_model.hpp"
#include "paygmix/numerics.hpp"

namespace paygmix {

/// Credibility requirement P[D_t(b) >= 1/alpha] >= p under a liquidity cap
/// alpha_cap on the investment multiplier.
struct CredibilityConstraint {
    double p = 0.5;
    double alpha_cap = 10.0;
    double horizon = 1.0;

    void validate() const;
};

struct BarrierSolution {
    double p_tilde = 0.0;
    double b_star = 0.0;   // meaningful only when feasible
    bool feasible = false;
    double min_alpha = 0.0; // e^{1 - p_tilde}, the smallest credible cap
};

/// Growth-factor units (fund started at 1).
struct WithdrawalOutcome {
    double retained = 1.0;
    double debt_account = 0.0;
};

namespace continuous {

/// R_t(b) = e^{X_t - (M_t - ln(1+b))^+}, D_t(b) = (1+b)(M_t - ln(1+b))^+.
WithdrawalOutcome withdrawal_outcome(const PathSample& path, double b);

/// P[M_t >= ln(1+b) + 1/(alpha (1+b))].
double credibility_prob(const FundParams& params, double b, double alpha, double t);

/// Level p~ >= 0 with P[M_t >= p~] = p.
double solve_p_tilde(const FundParams& params, double p, double t);

/// 1 / ((1+b)(p~ - ln(1+b))): the multiplier at which barrier b is exactly
/// credible. Defined for ln(1+b) < p~.
double credible_alpha(double b, double p_tilde);

/// Largest credible barrier under the cap. Infeasible when alpha_cap is
/// below e^{1 - p~}; that is a result, not an error.
BarrierSolution optimal_barrier(const CredibilityConstraint& constraint, const FundParams& params);

/// V_t(b) = E[R_t(b)], by quadrature against the running-max density under
/// the tilted drift mu + sigma^2.
double expected_retained(double b, const FundParams& params, double t = 1.0,
                         const numerics::QuadratureSpec& spec = {});

/// U_t(b) = E[D_t(b)].
double expected_debt(double b, const FundParams& params, double t = 1.0,
                     const numerics::QuadratureSpec& spec = {});

/// L(b, alpha) = alpha - alpha V(b) - 1.
double normalized_loss(double b, double alpha, const FundParams& params, double t = 1.0);

/// L_e(b, alpha) = alpha - alpha V(b) - alpha U(b).
double entire_loss(double b, double alpha, const FundParams& params, double t = 1.0);

/// alpha (1 - V(b)) < 1.
bool profitability_check(double b, double alpha, const FundParams& params, double t = 1.0);

/// E[R_t(b)^2], drift mu + 2 sigma^2 under the tilted measure.
double retained_second_moment(double b, const FundParams& params, double t = 1.0,
                              const numerics::QuadratureSpec& spec = {});

/// V(b) - lambda E[R(b)^2].
double mean_variance_objective(double b, double lambda, const FundParams& params, double t = 1.0);

/// d/db of mean_variance_objective.
double mean_variance_derivative(double b, double lambda, const FundParams& params, double t = 1.0);

/// One-year barrier outcome expressed in currency for a given deficit.
struct CurrencySummary {
    double loss = 0.0;            // L(b*, alpha*)
    double expected_debt = 0.0;   // U(b*)
    double net_payment = 0.0;     // deficit (1 + L)
    double excess_return = 0.0;   // deficit (alpha U - 1), returned to the contributor
    double total_gain = 0.0;      // -deficit L + excess_return
};

CurrencySummary currency_summary(double deficit, double b, double alpha, const FundParams& params,
                                 double t = 1.0);

} // namespace continuous
} // namespace paygmix
