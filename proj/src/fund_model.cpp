#include <algorithm>
#include <cmath>
#include <numbers>

#include "paygmix/errors.hpp"
#include "paygmix/fund_model.hpp"
#include "paygmix/numerics.hpp"
#include "paygmix/parallel.hpp"

namespace paygmix {

namespace {

void require_positive_horizon(double t, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(who) + ": horizon must be positive and finite");
    }
}

} // namespace

FundParams::FundParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!std::isfinite(mu)) {
        throw DomainError("FundParams: mu must be finite");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("FundParams: sigma must be positive and finite");
    }
}

double growth_factor_moment(const FundParams& params, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("growth_factor_moment: horizon must be non-negative");
    }
    return std::exp(params.mean_growth_rate() * t);
}

double running_max_density(double y, double t, double drift, const FundParams& params) {
    require_positive_horizon(t, "running_max_density");
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw DomainError("running_max_density: y must be non-negative (M_t >= 0)");
    }
    if (!std::isfinite(drift)) {
        throw DomainError("running_max_density: drift must be finite");
    }
    const double sigma = params.sigma();
    const double scale = sigma * std::sqrt(t);
    // g = exp(-(y - m t)^2 / (2 s^2)) * [2 / (sqrt(2 pi) s) - (m / sigma^2) erfcx(z)],
    // using exp(2 m y / sigma^2) erfc(z) = exp(-(y - m t)^2 / (2 s^2)) erfcx(z).
    const double dev = (y - drift * t) / scale;
    const double z = (y + drift * t) / (std::numbers::sqrt2 * scale);
    const double bracket = 2.0 / (std::sqrt(2.0 * std::numbers::pi) * scale) -
                           drift / (sigma * sigma) * numerics::erfcx(z);
    return std::max(0.0, std::exp(-0.5 * dev * dev) * bracket);
}

double running_max_tail_prob(double level, double t, double drift, const FundParams& params) {
    require_positive_horizon(t, "running_max_tail_prob");
    if (std::isnan(level) || !std::isfinite(drift)) {
        throw DomainError("running_max_tail_prob: level and drift must be numbers");
    }
    if (level <= 0.0) {
        return 1.0;
    }
    if (std::isinf(level)) {
        return 0.0;
    }
    const double scale = params.sigma() * std::sqrt(t);
    const double dev = (level - drift * t) / scale;
    const double z = (level + drift * t) / (std::numbers::sqrt2 * scale);
    // P[M >= l] = Phi(-(l - m t)/s) + exp(2 m l / sigma^2) Phi(-(l + m t)/s)
    const double reflected = 0.5 * std::exp(-0.5 * dev * dev) * numerics::erfcx(z);
    return std::clamp(numerics::std_normal_cdf(-dev) + reflected, 0.0, 1.0);
}

double running_max_excess_bound(double level, double shift, double t, double drift,
                                const FundParams& params) {
    require_positive_horizon(t, "running_max_excess_bound");
    if (level < shift) {
        throw DomainError("running_max_excess_bound: level must not lie below shift");
    }
    // E[(M - c) 1{M >= x}] = (x - c) P[M >= x] + int_x^inf P[M >= y] dy, and
    // P[M >= y] <= 2 Phi(-(y - |m| t) / s) by reflection of the driftless part.
    const double scale = params.sigma() * std::sqrt(t);
    const double offset = std::fabs(drift) * t;
    const double a = std::max(0.0, (level - offset) / scale);
    const double flat = std::max(0.0, offset - level);
    const double gaussian = 2.0 * scale *
                            (numerics::std_normal_pdf(a) - a * numerics::std_normal_cdf(-a));
    return (level - shift) * running_max_tail_prob(level, t, drift, params) + flat + gaussian;
}

PathSample simulate_path_with_max(const FundParams& params, double t, int steps, RngStream& stream) {
    if (steps < 1) {
        throw DomainError("simulate_path_with_max: steps must be at least 1");
    }
    require_positive_horizon(t, "simulate_path_with_max");
    const double dt = t / steps;
    const double drift_step = params.mu() * dt;
    const double vol_step = params.sigma() * std::sqrt(dt);
    double x = 0.0;
    double running_max = 0.0;
    for (int i = 0; i < steps; ++i) {
        x += drift_step + vol_step * stream.standard_normal();
        running_max = std::max(running_max, x);
    }
    return {x, running_max, t};
}

std::vector<PathSample> simulate_paths(const FundParams& params, double t, int steps, std::size_t count,
                                       std::uint64_t seed, unsigned threads, std::uint64_t first_index) {
    if (steps < 1) {
        throw DomainError("simulate_paths: steps must be at least 1");
    }
    require_positive_horizon(t, "simulate_paths");
    std::vector<PathSample> paths(count);
    parallel_for_slices(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream stream(seed, first_index + i);
            paths[i] = simulate_path_with_max(params, t, steps, stream);
        }
    });
    return paths;
}

double grid_max_shift(const FundParams& params, double t, int steps) {
    if (steps < 1) {
        throw DomainError("grid_max_shift: steps must be at least 1");
    }
    constexpr double kBeta = 0.5825971579390106; // -zeta(1/2) / sqrt(2 pi)
    return kBeta * params.sigma() * std::sqrt(t / steps);
}

} // namespace paygmix
