#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paygmix/rng.hpp"

namespace paygmix {

/// Log-price dynamics of the fund, F_t = F_0 exp(mu t + sigma W_t).
class FundParams {
public:
    /// Throws DomainError unless mu is finite and sigma > 0.
    FundParams(double mu, double sigma);

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }
    double variance() const noexcept { return sigma_ * sigma_; }

    /// mu + sigma^2 / 2, the exponential growth rate of E[F_t].
    double mean_growth_rate() const noexcept { return mu_ + 0.5 * sigma_ * sigma_; }

    /// Drift of the log price after tilting by exp(k sigma W_t); k = 1 gives
    /// mu + sigma^2, k = 2 gives mu + 2 sigma^2.
    double tilted_drift(int k) const noexcept { return mu_ + k * sigma_ * sigma_; }

private:
    double mu_;
    double sigma_;
};

/// Terminal log price and running maximum of one simulated path.
struct PathSample {
    double terminal_log = 0.0; // mu t + sigma W_t
    double running_max = 0.0;  // max over the grid of mu s + sigma W_s, s in [0, t]
    double horizon = 0.0;
};

/// E[exp(mu t + sigma W_t)] = exp((mu + sigma^2/2) t).
double growth_factor_moment(const FundParams& params, double t);

/// Density of M_t = max_{0<=s<=t} (drift s + sigma W_s) at y >= 0.
///
/// The drift is passed separately from params because the change-of-measure
/// representations evaluate the same law under drifts mu + k sigma^2. The
/// erfc term is evaluated through erfcx so that exp(2 drift y / sigma^2)
/// never overflows.
double running_max_density(double y, double t, double drift, const FundParams& params);

/// P[M_t >= level]; equals 1 for level <= 0.
double running_max_tail_prob(double level, double t, double drift, const FundParams& params);

/// Upper bound on E[(M_t - shift) 1{M_t >= level}] for level >= shift.
/// Used to certify quadrature truncation of first-moment integrals.
double running_max_excess_bound(double level, double shift, double t, double drift,
                                const FundParams& params);

/// Default grid resolution for path simulation (steps per year).
inline constexpr int kDefaultStepsPerYear = 1000;

/// Euler path of mu s + sigma W_s on a uniform grid with `steps` steps over
/// [0, t]. The running maximum is the grid maximum (including s = 0), which
/// underestimates the continuous maximum by O(sigma sqrt(t / steps)).
PathSample simulate_path_with_max(const FundParams& params, double t, int steps, RngStream& stream);

/// Simulates `count` paths; path i draws from RngStream(seed, first_index + i).
/// Work is split over `threads` workers (0 = hardware concurrency); the output
/// does not depend on the thread count.
std::vector<PathSample> simulate_paths(const FundParams& params, double t, int steps, std::size_t count,
                                       std::uint64_t seed, unsigned threads = 0,
                                       std::uint64_t first_index = 0);

/// Expected shortfall of the grid maximum relative to the continuous one,
/// beta * sigma * sqrt(dt) with beta = -zeta(1/2) / sqrt(2 pi) ~ 0.5826
/// (Broadie-Glasserman-Kou). Monte Carlo checks use it to size their
/// discretisation allowance.
double grid_max_shift(const FundParams& params, double t, int steps);

} // namespace paygmix
