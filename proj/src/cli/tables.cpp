#include <cmath>
#include <functional>
#include <sstream>

#include "paygmix/cli/tables.hpp"
#include "paygmix/continuous_withdrawal.hpp"
#include "paygmix/credit_variant_b.hpp"
#include "paygmix/lump_sum.hpp"
#include "paygmix/strategy_compare.hpp"

namespace paygmix::cli {

std::string kind_name(CellKind kind) {
    switch (kind) {
    case CellKind::Probability:
        return "probability";
    case CellKind::Currency:
        return "currency";
    case CellKind::Real:
        return "real";
    case CellKind::Label:
        return "label";
    }
    return "real";
}

CellKind kind_from_name(const std::string& name) {
    if (name == "probability") {
        return CellKind::Probability;
    }
    if (name == "currency") {
        return CellKind::Currency;
    }
    if (name == "real") {
        return CellKind::Real;
    }
    if (name == "label") {
        return CellKind::Label;
    }
    throw ParseError("unknown cell kind '" + name + "'");
}

const TableRow* TableArtifact::find_row(const std::string& label) const {
    for (const auto& r : rows) {
        if (r.label == label) {
            return &r;
        }
    }
    return nullptr;
}

std::optional<std::size_t> TableArtifact::find_column(const std::string& header) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == header) {
            return i;
        }
    }
    return std::nullopt;
}

namespace {

bool same_cell(const Cell& a, const Cell& b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto* x = std::get_if<double>(&a)) {
        const double y = std::get<double>(b);
        return *x == y || (std::isnan(*x) && std::isnan(y));
    }
    return std::get<std::string>(a) == std::get<std::string>(b);
}

} // namespace

bool operator==(const TableArtifact& a, const TableArtifact& b) {
    if (a.id != b.id || a.title != b.title || a.row_header != b.row_header || a.columns != b.columns ||
        a.rows.size() != b.rows.size() || a.metadata.seed != b.metadata.seed ||
        a.metadata.samples != b.metadata.samples || a.metadata.version != b.metadata.version) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& ra = a.rows[i];
        const auto& rb = b.rows[i];
        if (ra.label != rb.label || ra.kind != rb.kind || ra.operation != rb.operation ||
            ra.provenance != rb.provenance || ra.cells.size() != rb.cells.size()) {
            return false;
        }
        for (std::size_t j = 0; j < ra.cells.size(); ++j) {
            if (!same_cell(ra.cells[j], rb.cells[j])) {
                return false;
            }
        }
    }
    return true;
}

std::string grid_key(double x) {
    std::ostringstream ss;
    ss << x;
    return ss.str();
}

namespace {

const char* kClosedForm = "closed-form";
const char* kQuadrature = "quadrature";

std::vector<std::string> keys(const std::vector<double>& grid) {
    std::vector<std::string> out;
    for (double x : grid) {
        out.push_back(grid_key(x));
    }
    return out;
}

TableRow numeric_row(std::string label, CellKind kind, const std::vector<double>& grid,
                     const std::function<double(double)>& f, std::string operation, std::string provenance) {
    TableRow row{std::move(label), kind, {}, std::move(operation), std::move(provenance)};
    for (double x : grid) {
        row.cells.emplace_back(f(x));
    }
    return row;
}

std::string mc_provenance(const RunConfig& config) {
    return "monte-carlo(seed=" + std::to_string(config.mc.seed) + ",samples=" + std::to_string(config.mc.samples) +
           ")";
}

TableArtifact table_variant_a(int id, double sigma, const std::vector<double>& alphas, bool full) {
    const FundParams fund(0.04, sigma);
    const auto step = DeficitStep::from_deficit(0.1);
    TableArtifact t;
    t.id = id;
    t.title = full ? "Variant A payback-first quantities, mu=0.04 sigma=0.2, C0=1 C1=1.1"
                   : "Variant A payback-first quantities, mu=0.04 sigma=0.1, C0=1 C1=1.1";
    t.row_header = "quantity";
    t.columns = keys(alphas);
    t.rows.push_back(numeric_row(
        "P1", CellKind::Probability, alphas, [&](double a) { return lump_sum::full_payback_prob(fund, a); },
        "lump_sum::full_payback_prob", kClosedForm));
    t.rows.push_back(numeric_row(
        "E[L1]", CellKind::Currency, alphas,
        [&](double a) { return lump_sum::expected_state_loss(fund, a, step); }, "lump_sum::expected_state_loss",
        kClosedForm));
    t.rows.push_back(numeric_row(
        "E[G1]", CellKind::Currency, alphas, [&](double a) { return lump_sum::expected_pc_gain(fund, a, step); },
        "lump_sum::expected_pc_gain", kClosedForm));
    if (full) {
        t.rows.push_back(numeric_row(
            "E[B1]", CellKind::Currency, alphas,
            [&](double a) { return lump_sum::expected_fund_after_forced_payback(fund, a, step); },
            "lump_sum::expected_fund_after_forced_payback", kClosedForm));
        t.rows.push_back(numeric_row(
            "E[GA1]", CellKind::Currency, alphas,
            [&](double a) { return lump_sum::expected_net_gain_vs_extra_investment(fund, a, step); },
            "lump_sum::expected_net_gain_vs_extra_investment", kClosedForm));
    }
    return t;
}

TableArtifact table_barrier_prob() {
    const FundParams fund(0.04, 0.2);
    const std::vector<double> alphas = {0.8, 0.9, 1, 1.25, 2, 10};
    const std::vector<double> barriers = {0.02, 0, -0.5, -0.75, -0.9, -0.95, -1};
    TableArtifact t;
    t.id = 3;
    t.title = "Payback probability above a retained return b, mu=0.04 sigma=0.2";
    t.row_header = "b\\alpha";
    t.columns = keys(alphas);
    for (double b : barriers) {
        t.rows.push_back(numeric_row(
            grid_key(b), CellKind::Probability, alphas,
            [&](double a) { return lump_sum::barrier_payback_prob(fund, {a, b}); }, "lump_sum::barrier_payback_prob",
            kClosedForm));
    }
    return t;
}

TableArtifact table_barrier_expectations() {
    const FundParams fund(0.04, 0.2);
    const auto step = DeficitStep::from_deficit(0.1);
    const std::vector<BarrierPolicy> policies = {{10, 0.030}, {10, 0.005}, {10, -0.070},
                                                 {20, 0.153}, {20, 0.100}, {20, 0.009}};
    TableArtifact t;
    t.id = 4;
    t.title = "Expected payment to the state and retained fund above a return b, columns alpha;b";
    t.row_header = "quantity";
    TableRow debt{"E[D1]", CellKind::Currency, {}, "lump_sum::barrier_expected_debt", kClosedForm};
    TableRow kept{"E[R1]", CellKind::Currency, {}, "lump_sum::barrier_expected_retained", kClosedForm};
    for (const auto& policy : policies) {
        t.columns.push_back(grid_key(policy.alpha) + ";" + grid_key(policy.b));
        debt.cells.emplace_back(lump_sum::barrier_expected_debt(fund, policy, step));
        kept.cells.emplace_back(lump_sum::barrier_expected_retained(fund, policy, step));
    }
    t.rows.push_back(std::move(debt));
    t.rows.push_back(std::move(kept));
    return t;
}

TableArtifact table_variant_b(int id, double sigma, const RunConfig& config) {
    const FundParams fund(0.04, sigma);
    const auto schedule = CreditSchedule::constant(10, 0.1);
    const std::vector<double> alphas = {1, 1.05, 1.1, 1.15, 1.2, 1.25};
    // One set of realisations serves every alpha, as in simulate_variant_b
    // with the same seed.
    const auto funds =
        variant_b::simulate_unit_funds(schedule, fund, config.mc.samples, config.mc.seed, config.mc.streams);
    TableArtifact t;
    t.id = id;
    t.title = "Variant B credit over T=10 years, deficit 0.1, mu=0.04 sigma=" + grid_key(sigma);
    t.row_header = "quantity";
    t.columns = keys(alphas);
    const std::string provenance = mc_provenance(config);
    TableRow p{"P_shortfall", CellKind::Probability, {}, "variant_b::simulate_variant_b", provenance};
    TableRow e{"E_shortfall", CellKind::Currency, {}, "variant_b::simulate_variant_b", provenance};
    TableRow f{"E_final_net_fund", CellKind::Currency, {}, "variant_b::simulate_variant_b", provenance};
    for (double a : alphas) {
        const auto r = variant_b::summarize(funds, a, schedule.total_credit());
        p.cells.emplace_back(r.p_shortfall);
        e.cells.emplace_back(r.e_shortfall);
        f.cells.emplace_back(r.e_final_net_fund);
    }
    t.rows.push_back(std::move(p));
    t.rows.push_back(std::move(e));
    t.rows.push_back(std::move(f));
    t.metadata.seed = config.mc.seed;
    t.metadata.samples = config.mc.samples;
    return t;
}

TableArtifact table_credibility(int id, double horizon) {
    const FundParams fund(0.04, 0.2);
    const std::vector<double> alphas = {1, 2, 3, 4, 5};
    const std::vector<double> barriers = {-0.2, -0.1, -0.05, 0, 0.05};
    TableArtifact t;
    t.id = id;
    t.title = "Credibility P[D_t(b) >= 1/alpha], t=" + grid_key(horizon) + ", mu=0.04 sigma=0.2";
    t.row_header = "b\\alpha";
    t.columns = keys(alphas);
    for (double b : barriers) {
        t.rows.push_back(numeric_row(
            grid_key(b), CellKind::Probability, alphas,
            [&](double a) { return continuous::credibility_prob(fund, b, a, horizon); },
            "continuous::credibility_prob", kClosedForm));
    }
    return t;
}

const std::vector<double> kStrategyAlphas = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
const std::vector<double> kStrategyHorizons = {1, 2, 4, 6, 8, 10, 20, 40};

TableArtifact table_strategy() {
    const FundParams fund(0.04, 0.2);
    TableArtifact t;
    t.id = 9;
    t.title = "Recommended strategy (PAYG, C continuous withdrawal, LS lump sum), p=0.5, mu=0.04 sigma=0.2";
    t.row_header = "t\\alpha";
    t.columns = keys(kStrategyAlphas);
    for (double horizon : kStrategyHorizons) {
        TableRow row{grid_key(horizon), CellKind::Label, {}, "strategy::recommend_strategy", kQuadrature};
        for (double a : kStrategyAlphas) {
            row.cells.emplace_back(short_label(strategy::recommend_strategy(horizon, a, 0.5, fund).label));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

TableArtifact table_default() {
    const FundParams fund(0.04, 0.2);
    TableArtifact t;
    t.id = 10;
    t.title = "Lump-sum default probability P[alpha e^{mu t + sigma W_t} < 1 + alpha], mu=0.04 sigma=0.2";
    t.row_header = "t\\alpha";
    t.columns = keys(kStrategyAlphas);
    for (double horizon : kStrategyHorizons) {
        t.rows.push_back(numeric_row(
            grid_key(horizon), CellKind::Probability, kStrategyAlphas,
            [&](double a) { return strategy::lump_sum_default_prob(horizon, a, fund); },
            "strategy::lump_sum_default_prob", kClosedForm));
    }
    return t;
}

} // namespace

TableArtifact run_table(int id, const RunConfig& config) {
    switch (id) {
    case 1:
        return table_variant_a(1, 0.2, {1, 1.05, 1.1, 1.15, 1.25, 2, 3}, true);
    case 2:
        return table_variant_a(2, 0.1, {1, 1.05, 1.1, 1.15, 1.2, 1.25}, false);
    case 3:
        return table_barrier_prob();
    case 4:
        return table_barrier_expectations();
    case 5:
        return table_variant_b(5, 0.2, config);
    case 6:
        return table_variant_b(6, 0.1, config);
    case 7:
        return table_credibility(7, 1.0);
    case 8:
        return table_credibility(8, 10.0);
    case 9:
        return table_strategy();
    case 10:
        return table_default();
    default:
        throw ParseError("invalid value for 'id': table must be between 1 and " + std::to_string(kTableCount));
    }
}

} // namespace paygmix::cli
