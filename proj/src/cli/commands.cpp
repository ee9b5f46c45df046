#include <cmath>
#include <ostream>

#include "paygmix/cli/commands.hpp"
#include "paygmix/cli/emit.hpp"
#include "paygmix/cli/fixtures.hpp"
#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/credit_variant_b.hpp"
#include "paygmix/errors.hpp"
#include "paygmix/lump_sum.hpp"
#include "paygmix/strategy_compare.hpp"

namespace paygmix::cli {

namespace {

const char* kClosedForm = "closed-form";
const char* kQuadrature = "quadrature";

class Builder {
public:
    Builder(std::string title) {
        artifact_.title = std::move(title);
        artifact_.row_header = "quantity";
        artifact_.columns = {"value"};
    }

    void add(std::string label, CellKind kind, Cell value, std::string operation, std::string provenance) {
        artifact_.rows.push_back({std::move(label), kind, {std::move(value)}, std::move(operation),
                                  std::move(provenance)});
    }

    TableArtifact& artifact() { return artifact_; }

private:
    TableArtifact artifact_;
};

std::string yes_no(bool x) { return x ? "yes" : "no"; }

TableArtifact variant_a(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    const DeficitStep step(cfg.c0, cfg.c0 + cfg.currency_deficit());
    Builder out("Variant A, alpha=" + grid_key(cfg.alpha));
    out.add("P1", CellKind::Probability, lump_sum::full_payback_prob(fund, cfg.alpha), "lump_sum::full_payback_prob",
            kClosedForm);
    out.add("E[L1]", CellKind::Currency, lump_sum::expected_state_loss(fund, cfg.alpha, step),
            "lump_sum::expected_state_loss", kClosedForm);
    out.add("E[G1]", CellKind::Currency, lump_sum::expected_pc_gain(fund, cfg.alpha, step),
            "lump_sum::expected_pc_gain", kClosedForm);
    out.add("E[B1]", CellKind::Currency, lump_sum::expected_fund_after_forced_payback(fund, cfg.alpha, step),
            "lump_sum::expected_fund_after_forced_payback", kClosedForm);
    out.add("E[GA1]", CellKind::Currency, lump_sum::expected_net_gain_vs_extra_investment(fund, cfg.alpha, step),
            "lump_sum::expected_net_gain_vs_extra_investment", kClosedForm);
    out.add("P[any shortfall over horizon]", CellKind::Probability,
            lump_sum::at_least_one_shortfall_prob(fund, cfg.alpha, cfg.horizon),
            "lump_sum::at_least_one_shortfall_prob", kClosedForm);
    out.add("alpha for P1=p", CellKind::Real, lump_sum::alpha_for_payback_prob(fund, cfg.p),
            "lump_sum::alpha_for_payback_prob", kClosedForm);
    return out.artifact();
}

TableArtifact barrier(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    const DeficitStep step(cfg.c0, cfg.c0 + cfg.currency_deficit());
    const BarrierPolicy policy{cfg.alpha, cfg.b};
    Builder out("Payback above return b=" + grid_key(cfg.b) + ", alpha=" + grid_key(cfg.alpha));
    out.add("P[D1 >= C1-C0]", CellKind::Probability, lump_sum::barrier_payback_prob(fund, policy),
            "lump_sum::barrier_payback_prob", kClosedForm);
    out.add("E[D1]", CellKind::Currency, lump_sum::barrier_expected_debt(fund, policy, step),
            "lump_sum::barrier_expected_debt", kClosedForm);
    out.add("E[R1]", CellKind::Currency, lump_sum::barrier_expected_retained(fund, policy, step),
            "lump_sum::barrier_expected_retained", kClosedForm);
    return out.artifact();
}

TableArtifact variant_b(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    const auto deficit = cfg.currency_deficit();
    const CreditSchedule schedule(cfg.c0, std::vector<double>(static_cast<std::size_t>(cfg.horizon), cfg.c0 + deficit));
    const auto r = variant_b::simulate_variant_b(schedule, cfg.alpha, fund, cfg.mc.samples, cfg.mc.seed, cfg.mc.streams);
    const std::string mc = "monte-carlo(seed=" + std::to_string(r.seed) + ",samples=" + std::to_string(r.samples) + ")";
    Builder out("Variant B credit, T=" + std::to_string(cfg.horizon) + ", alpha=" + grid_key(cfg.alpha));
    out.add("P_shortfall", CellKind::Probability, r.p_shortfall, "variant_b::simulate_variant_b", mc);
    out.add("E_shortfall", CellKind::Currency, r.e_shortfall, "variant_b::simulate_variant_b", mc);
    out.add("E_final_net_fund", CellKind::Currency, r.e_final_net_fund, "variant_b::simulate_variant_b", mc);
    out.add("E[F_T]", CellKind::Currency, variant_b::expected_fund_value(schedule, cfg.alpha, cfg.horizon, fund),
            "variant_b::expected_fund_value", kClosedForm);
    out.add("alpha*", CellKind::Real, variant_b::alpha_star_expected_full_payback(schedule, fund),
            "variant_b::alpha_star_expected_full_payback", kClosedForm);
    out.artifact().metadata.seed = r.seed;
    out.artifact().metadata.samples = r.samples;
    return out.artifact();
}

TableArtifact continuous_cmd(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    Builder out("Continuous withdrawal, b=" + grid_key(cfg.b) + ", alpha=" + grid_key(cfg.alpha) +
                ", t=" + grid_key(cfg.t));
    out.add("credibility P[D_t >= 1/alpha]", CellKind::Probability,
            continuous::credibility_prob(fund, cfg.b, cfg.alpha, cfg.t), "continuous::credibility_prob",
            kClosedForm);
    out.add("V", CellKind::Real, continuous::expected_retained(cfg.b, fund, cfg.t), "continuous::expected_retained",
            kQuadrature);
    out.add("U", CellKind::Real, continuous::expected_debt(cfg.b, fund, cfg.t), "continuous::expected_debt",
            kQuadrature);
    out.add("L", CellKind::Real, continuous::normalized_loss(cfg.b, cfg.alpha, fund, cfg.t),
            "continuous::normalized_loss", kQuadrature);
    out.add("L_e", CellKind::Real, continuous::entire_loss(cfg.b, cfg.alpha, fund, cfg.t), "continuous::entire_loss",
            kQuadrature);
    out.add("profitable", CellKind::Label, yes_no(continuous::profitability_check(cfg.b, cfg.alpha, fund, cfg.t)),
            "continuous::profitability_check", kQuadrature);
    out.add("mean-variance objective", CellKind::Real,
            continuous::mean_variance_objective(cfg.b, cfg.lambda, fund, cfg.t),
            "continuous::mean_variance_objective", kQuadrature);
    return out.artifact();
}

TableArtifact optimize(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    const auto s = continuous::optimal_barrier({cfg.p, cfg.alpha, cfg.t}, fund);
    Builder out("Optimal barrier, p=" + grid_key(cfg.p) + ", alpha*=" + grid_key(cfg.alpha) + ", t=" + grid_key(cfg.t));
    out.add("p_tilde", CellKind::Real, s.p_tilde, "continuous::optimal_barrier", kClosedForm);
    out.add("min_alpha", CellKind::Real, s.min_alpha, "continuous::optimal_barrier", kClosedForm);
    out.add("feasible", CellKind::Label, yes_no(s.feasible), "continuous::optimal_barrier", kClosedForm);
    if (!s.feasible) {
        return out.artifact();
    }
    out.add("b*", CellKind::Real, s.b_star, "continuous::optimal_barrier", kClosedForm);
    const auto money = continuous::currency_summary(cfg.currency_deficit(), s.b_star, cfg.alpha, fund, cfg.t);
    out.add("L(b*)", CellKind::Real, money.loss, "continuous::normalized_loss", kQuadrature);
    out.add("U(b*)", CellKind::Real, money.expected_debt, "continuous::expected_debt", kQuadrature);
    out.add("expected net payment", CellKind::Currency, money.net_payment, "continuous::currency_summary",
            kQuadrature);
    out.add("expected excess return", CellKind::Currency, money.excess_return, "continuous::currency_summary",
            kQuadrature);
    out.add("expected total gain", CellKind::Currency, money.total_gain, "continuous::currency_summary", kQuadrature);
    return out.artifact();
}

TableArtifact compare(const RunConfig& cfg) {
    const auto fund = cfg.fund();
    const auto d = strategy::recommend_strategy(cfg.t, cfg.alpha, cfg.p, fund);
    Builder out("Strategy comparison, t=" + grid_key(cfg.t) + ", alpha=" + grid_key(cfg.alpha) +
                ", p=" + grid_key(cfg.p));
    out.add("decision", CellKind::Label, label_name(d.label), "strategy::recommend_strategy", kQuadrature);
    out.add("L_d", CellKind::Real, d.l_d, "strategy::recommend_strategy", kClosedForm);
    out.add("L_c", CellKind::Real, d.l_c, "strategy::recommend_strategy", kQuadrature);
    out.add("Lambda", CellKind::Real, d.lambda_gap, "strategy::recommend_strategy", kQuadrature);
    out.add("b*", CellKind::Real, d.b_star, "strategy::recommend_strategy", kClosedForm);
    const auto beta = strategy::beta_curve(cfg.t, cfg.alpha, fund, cfg.p);
    out.add("beta(t)", CellKind::Real, beta ? *beta : std::nan(""), "strategy::beta_curve", kQuadrature);
    out.add("lump-sum default probability", CellKind::Probability,
            strategy::lump_sum_default_prob(cfg.t, cfg.alpha, fund), "strategy::lump_sum_default_prob",
            kClosedForm);
    if (!d.note.empty()) {
        out.add("note", CellKind::Label, d.note, "strategy::recommend_strategy", kClosedForm);
    }
    return out.artifact();
}

} // namespace

TableArtifact run_command(const RunConfig& config) {
    if (config.command == "variant-a") {
        return variant_a(config);
    }
    if (config.command == "barrier") {
        return barrier(config);
    }
    if (config.command == "variant-b") {
        return variant_b(config);
    }
    if (config.command == "continuous") {
        return continuous_cmd(config);
    }
    if (config.command == "optimize") {
        return optimize(config);
    }
    if (config.command == "compare") {
        return compare(config);
    }
    if (config.command == "table") {
        return run_table(config.table_id, config);
    }
    throw ParseError("unknown command '" + config.command + "'");
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(args);
        if (cfg.fixtures_dir) {
            return run_fixture_report(*cfg.fixtures_dir, cfg, out) ? 0 : 1;
        }
        const auto artifact = run_command(cfg);
        if (cfg.output.path.empty()) {
            out << (cfg.output.format == OutputFormat::Json ? to_json(artifact) : to_csv(artifact));
        } else {
            write_output(artifact, cfg.output);
        }
        return 0;
    } catch (const HelpRequested& e) {
        out << e.what();
        return 0;
    } catch (const ParseError& e) {
        err << "paygmix: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "paygmix: " << e.what() << '\n';
        return 2;
    } catch (const QuadratureError& e) {
        err << "paygmix: " << e.what() << '\n';
        return 3;
    } catch (const BracketError& e) {
        err << "paygmix: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        err << "paygmix: " << e.what() << '\n';
        return 4;
    }
}

} // namespace paygmix::cli
