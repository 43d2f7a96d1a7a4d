#include "juliacheb/widom.hpp"

#include "juliacheb/io.hpp"

#include <algorithm>
#include <cmath>

namespace juliacheb {

WidomRow widom_factor(const PolynomialSequence& seq, int m, const SolverParams& params) {
    const ChebyshevSolution sol = structured_chebyshev(seq, m, params);
    WidomRow row;
    row.m = m;
    row.degree = seq.degree_product(m);
    row.tau = sol.tau.value_or(cplx{});
    row.norm = sol.sup_norm;
    row.capacity = capacity(seq);
    // pow(1, D) is exactly 1, so capacity-one rows report W == norm.
    row.widom = row.norm / std::pow(row.capacity, row.degree);
    return row;
}

double widom_general(std::span<const cplx> sample, double cap, int n,
                     const LawsonOptions& options) {
    if (!(cap > 0.0))
        throw InvalidArgument("capacity must be positive");
    if (n < 1)
        throw InvalidArgument("degree must be at least 1");
    if (sample.size() < 4 * static_cast<std::size_t>(n))
        throw InvalidArgument("Widom sample needs at least 4n points");
    const ChebyshevSolution sol = lawson_minimax(sample, n, options);
    return sol.sup_norm / std::pow(cap, n);
}

std::string to_string(ConjecturePreset preset) {
    return preset == ConjecturePreset::Autonomous ? "autonomous" : "perturbed";
}

std::optional<ConjecturePreset> parse_preset(const std::string& name) {
    if (name == "autonomous")
        return ConjecturePreset::Autonomous;
    if (name == "perturbed")
        return ConjecturePreset::Perturbed;
    return std::nullopt;
}

PolynomialSequence conjecture_sequence(ConjecturePreset preset, int max_depth) {
    return preset == ConjecturePreset::Autonomous
               ? PolynomialSequence::quadratic_constant(0.25, max_depth)
               : PolynomialSequence::quadratic_perturbed(0.25, max_depth);
}

void summarize_growth(WidomReport& report) {
    report.ratios.clear();
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        report.ratios.push_back(report.rows[i].widom / report.rows[i - 1].widom);
    report.loglog_slope = 0.0;
    const std::size_t count = report.rows.size();
    if (count < 2)
        return;
    double mx = 0.0, my = 0.0;
    for (const auto& row : report.rows) {
        mx += std::log(row.degree);
        my += std::log(row.widom);
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxy = 0.0, sxx = 0.0;
    for (const auto& row : report.rows) {
        const double dx = std::log(row.degree) - mx;
        sxy += dx * (std::log(row.widom) - my);
        sxx += dx * dx;
    }
    report.loglog_slope = sxx > 0.0 ? sxy / sxx : 0.0;
}

WidomReport conjecture_run(ConjecturePreset preset, int m_max, const ConjectureParams& params) {
    if (m_max < 2)
        throw InvalidArgument("conjecture run needs m_max >= 2");
    if (!(params.budget_scale > 0.0))
        throw InvalidArgument("budget scale must be positive");
    const int max_depth = m_max + params.solver.depth_offset + 1;
    const PolynomialSequence seq = conjecture_sequence(preset, max_depth);

    WidomReport report;
    report.preset = to_string(preset);
    report.seed = params.solver.seed;
    for (int m = 1; m <= m_max; ++m) {
        const double wanted =
            std::max(static_cast<double>(params.min_budget),
                     static_cast<double>(params.per_degree) * seq.degree_product(m));
        SolverParams row_params = params.solver;
        row_params.budget = static_cast<std::size_t>(std::ceil(wanted * params.budget_scale));
        report.depths.push_back(m + row_params.depth_offset);
        report.budgets.push_back(row_params.budget);
        try {
            report.rows.push_back(widom_factor(seq, m, row_params));
        } catch (const Error& e) {
            report.failure = "row m = " + std::to_string(m) + ": " + e.what();
            report.failure_kind = e.kind();
            report.depths.pop_back();
            report.budgets.pop_back();
            break;
        }
    }
    summarize_growth(report);
    return report;
}

std::string widom_csv(const std::vector<WidomRow>& rows) {
    std::string out = "m,degree,tau_re,tau_im,norm,capacity,widom\n";
    for (const auto& row : rows) {
        out += std::to_string(row.m) + ',' + format_real(row.degree) + ',' +
               format_real(row.tau.real()) + ',' + format_real(row.tau.imag()) + ',' +
               format_real(row.norm) + ',' + format_real(row.capacity) + ',' +
               format_real(row.widom) + '\n';
    }
    return out;
}

} // namespace juliacheb
