#include <algorithm>
#include <cmath>

#include "paygmix/credit_variant_b.hpp"
#include "paygmix/errors.hpp"
#include "paygmix/numerics.hpp"
#include "paygmix/parallel.hpp"
#include "paygmix/rng.hpp"

namespace paygmix {

CreditSchedule::CreditSchedule(double c0, std::vector<double> required)
    : c0_(c0), required_(std::move(required)), total_(0.0) {
    if (required_.empty()) {
        throw DomainError("CreditSchedule: schedule must cover at least one year");
    }
    if (!(c0_ > 0.0) || !std::isfinite(c0_)) {
        throw DomainError("CreditSchedule: C_0 must be positive");
    }
    for (double c : required_) {
        if (!(c > c0_) || !std::isfinite(c)) {
            throw DomainError("CreditSchedule: every C_j must exceed C_0");
        }
        total_ += c - c0_;
    }
}

CreditSchedule CreditSchedule::constant(int horizon, double deficit) {
    if (horizon < 1) {
        throw DomainError("CreditSchedule: horizon must be at least 1");
    }
    return CreditSchedule(1.0, std::vector<double>(static_cast<std::size_t>(horizon), 1.0 + deficit));
}

double CreditSchedule::deficit(int j) const {
    if (j < 1 || j > horizon()) {
        throw DomainError("CreditSchedule::deficit: year out of range");
    }
    return required_[static_cast<std::size_t>(j - 1)] - c0_;
}

namespace variant_b {

namespace {

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError(std::string(who) + ": alpha must be positive");
    }
}

// sum_{i=1}^{j} (C_i - C_0) e^{g (j - i + 1)}
double grown_deficits(const CreditSchedule& schedule, int j, double g) {
    double sum = 0.0;
    for (int i = 1; i <= j; ++i) {
        sum += schedule.deficit(i) * std::exp(g * (j - i + 1));
    }
    return sum;
}

} // namespace

double expected_fund_value(const CreditSchedule& schedule, double alpha, int j, const FundParams& params) {
    require_alpha(alpha, "expected_fund_value");
    if (j < 1 || j > schedule.horizon()) {
        throw DomainError("expected_fund_value: j must lie in [1, T]");
    }
    return alpha * grown_deficits(schedule, j, params.mean_growth_rate());
}

double alpha_star_expected_full_payback(const CreditSchedule& schedule, const FundParams& params) {
    return schedule.total_credit() / grown_deficits(schedule, schedule.horizon(), params.mean_growth_rate());
}

std::vector<double> simulate_unit_funds(const CreditSchedule& schedule, const FundParams& params,
                                        std::size_t samples, std::uint64_t seed, unsigned threads) {
    if (samples == 0) {
        throw DomainError("simulate_variant_b: samples must be at least 1");
    }
    const int horizon = schedule.horizon();
    std::vector<double> deficits(static_cast<std::size_t>(horizon));
    for (int j = 1; j <= horizon; ++j) {
        deficits[static_cast<std::size_t>(j - 1)] = schedule.deficit(j);
    }
    const double mu = params.mu();
    const double sigma = params.sigma();
    std::vector<double> funds(samples);
    parallel_for_slices(samples, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> log_growth(static_cast<std::size_t>(horizon));
        for (std::size_t s = begin; s < end; ++s) {
            RngStream stream(seed, s);
            for (auto& x : log_growth) {
                x = mu + sigma * stream.standard_normal();
            }
            // Walk backwards so the accumulated exponent covers years j..T.
            double tail = 0.0;
            double fund = 0.0;
            for (int j = horizon; j >= 1; --j) {
                tail += log_growth[static_cast<std::size_t>(j - 1)];
                fund += deficits[static_cast<std::size_t>(j - 1)] * std::exp(tail);
            }
            funds[s] = fund;
        }
    });
    return funds;
}

VariantBResult summarize(const std::vector<double>& unit_funds, double alpha, double total_credit) {
    require_alpha(alpha, "summarize");
    if (unit_funds.empty()) {
        throw DomainError("summarize: no realisations");
    }
    const double n = static_cast<double>(unit_funds.size());
    std::size_t hits = 0;
    double short_sum = 0.0;
    double short_sq = 0.0;
    double excess_sum = 0.0;
    double fund_sum = 0.0;
    for (double s : unit_funds) {
        fund_sum += alpha * s;
        const double gap = total_credit - alpha * s;
        if (gap >= 0.0) {
            ++hits;
            short_sum += gap;
            short_sq += gap * gap;
        } else {
            excess_sum -= gap;
        }
    }
    VariantBResult r;
    r.samples = unit_funds.size();
    r.p_shortfall = hits / n;
    r.e_shortfall = short_sum / n;
    r.e_final_net_fund = excess_sum / n;
    r.mean_fund = fund_sum / n;
    if (unit_funds.size() > 1) {
        const double var = std::max(0.0, (short_sq / n - r.e_shortfall * r.e_shortfall) * n / (n - 1.0));
        r.std_error_shortfall = std::sqrt(var / n);
    }
    return r;
}

VariantBResult simulate_variant_b(const CreditSchedule& schedule, double alpha, const FundParams& params,
                                  std::size_t samples, std::uint64_t seed, unsigned threads) {
    require_alpha(alpha, "simulate_variant_b");
    auto funds = simulate_unit_funds(schedule, params, samples, seed, threads);
    auto r = summarize(funds, alpha, schedule.total_credit());
    r.seed = seed;
    return r;
}

double break_even_alpha(const CreditSchedule& schedule, const FundParams& params, double target_expected_loss,
                        std::size_t samples, std::uint64_t seed, unsigned threads) {
    if (!(target_expected_loss > 0.0) || !std::isfinite(target_expected_loss)) {
        throw DomainError("break_even_alpha: target loss must be positive");
    }
    const auto funds = simulate_unit_funds(schedule, params, samples, seed, threads);
    const double total = schedule.total_credit();
    auto gap = [&](double alpha) { return summarize(funds, alpha, total).e_shortfall - target_expected_loss; };

    double lo = 1.0;
    double hi = 1.0;
    if (gap(1.0) > 0.0) {
        while (gap(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e6) {
                throw BracketError("break_even_alpha: target loss not reached for alpha up to 1e6");
            }
        }
    } else {
        while (gap(lo) < 0.0) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-9) {
                throw BracketError("break_even_alpha: target loss exceeds the loss at alpha near 0");
            }
        }
    }
    return numerics::find_root(gap, lo, hi, 1e-10);
}

} // namespace variant_b
} // namespace paygmix
