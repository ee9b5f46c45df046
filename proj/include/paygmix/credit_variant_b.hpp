#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paygmix/fund_model.hpp"

namespace paygmix {

/// Deterministic contribution schedule C_1..C_T over a baseline C_0. The
/// state lends the deficits C_j - C_0 at zero interest and is repaid at T.
class CreditSchedule {
public:
    /// Throws DomainError unless required is non-empty and every C_j > C_0 > 0.
    CreditSchedule(double c0, std::vector<double> required);

    /// T years of the same deficit over C_0 = 1.
    static CreditSchedule constant(int horizon, double deficit);

    double c0() const noexcept { return c0_; }
    const std::vector<double>& required() const noexcept { return required_; }
    int horizon() const noexcept { return static_cast<int>(required_.size()); }

    /// C_j - C_0 for 1 <= j <= T.
    double deficit(int j) const;

    /// Sum of all deficits.
    double total_credit() const noexcept { return total_; }

private:
    double c0_;
    std::vector<double> required_;
    double total_;
};

struct VariantBResult {
    double p_shortfall = 0.0;      // P[F_T <= C_total]
    double e_shortfall = 0.0;      // E[(C_total - F_T)^+]
    double e_final_net_fund = 0.0; // E[(F_T - C_total)^+]
    double mean_fund = 0.0;        // sample mean of F_T
    double std_error_shortfall = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

namespace variant_b {

/// Default realisation count for CLI runs.
inline constexpr std::size_t kDefaultSamples = 10000;

// Timing: alpha (C_j - C_0) is invested at the start of year j (time j - 1)
// and grows until T, so at horizon j the contribution of year i has grown
// for j - i + 1 years.

/// E[F_j] = alpha sum_{k=1}^{j} (C_{j-k+1} - C_0) e^{(mu + sigma^2/2) k}.
double expected_fund_value(const CreditSchedule& schedule, double alpha, int j, const FundParams& params);

/// Multiplier with E[F_T] = C_total.
double alpha_star_expected_full_payback(const CreditSchedule& schedule, const FundParams& params);

/// Unit-multiplier terminal funds S_i, one per realisation, so that
/// F_T(alpha) = alpha S_i. Realisation i draws its T annual increments from
/// RngStream(seed, i).
std::vector<double> simulate_unit_funds(const CreditSchedule& schedule, const FundParams& params,
                                        std::size_t samples, std::uint64_t seed, unsigned threads = 0);

/// Shortfall statistics of alpha * unit_funds against C_total.
VariantBResult summarize(const std::vector<double>& unit_funds, double alpha, double total_credit);

VariantBResult simulate_variant_b(const CreditSchedule& schedule, double alpha, const FundParams& params,
                                  std::size_t samples, std::uint64_t seed, unsigned threads = 0);

/// alpha with E[(C_total - F_T)^+] equal to target. All alphas are evaluated
/// on the same realisations, which makes the estimate monotone in alpha.
/// Throws BracketError when target is not attained on (0, 1e6].
double break_even_alpha(const CreditSchedule& schedule, const FundParams& params, double target_expected_loss,
                        std::size_t samples, std::uint64_t seed, unsigned threads = 0);

} // namespace variant_b
} // namespace paygmix
