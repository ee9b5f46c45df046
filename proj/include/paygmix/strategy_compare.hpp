#pragma once

#include <optional>
#include <string>

#include "paygmix/fund_model.hpp"

namespace paygmix {

enum class StrategyLabel { Payg, Continuous, LumpSum };

/// Short table label: "PAYG", "C" or "LS".
std::string short_label(StrategyLabel label);

/// Long name: "PAYG", "CONTINUOUS" or "LUMP_SUM".
std::string label_name(StrategyLabel label);

struct StrategyDecision {
    StrategyLabel label = StrategyLabel::Payg;
    double l_d = 0.0;
    double l_c = 0.0;
    double lambda_gap = 0.0;
    double b_star = 0.0;
    bool feasible = true; // false when the cap cannot make any barrier credible
    std::string note;
};

namespace strategy {

/// L_d(t) = alpha - alpha e^{(mu + sigma^2/2) t} + 1.
double lump_sum_loss(double t, double alpha, const FundParams& params);

/// L_c(t, b) = alpha - alpha V_t(b) - 1.
double continuous_loss(double t, double b, double alpha, const FundParams& params);

/// Lambda(t, b) = L_c(t, b) - L_d(t). At t = 0 this is -2 for b >= 0 and
/// -alpha b - 2 below.
double lambda_gap(double t, double b, double alpha, const FundParams& params);

/// Barrier beta(t) with Lambda(t, beta(t)) = 0. The search starts on
/// [max(-2/alpha, -1) + 1e-6, e^{p~} - 1 - 1e-6] with p~ taken at
/// probability p, and extends the upper end if Lambda is still positive.
/// Empty when Lambda does not change sign.
std::optional<double> beta_curve(double t, double alpha, const FundParams& params, double p = 0.5);

/// Lump sum, continuous withdrawal or direct payment at horizon t, with b*
/// from the credibility constraint (p, alpha, t).
StrategyDecision recommend_strategy(double t, double alpha, double p, const FundParams& params);

/// P[alpha e^{mu t + sigma W_t} < 1 + alpha].
double lump_sum_default_prob(double t, double alpha, const FundParams& params);

} // namespace strategy
} // namespace paygmix
