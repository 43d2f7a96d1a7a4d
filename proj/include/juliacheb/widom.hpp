#pragma once

#include "juliacheb/errors.hpp"
#include "juliacheb/structural.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace juliacheb {

struct WidomRow {
    int m = 0;
    double degree = 0.0; ///< D_m
    cplx tau{};
    double norm = 0.0;
    double capacity = 0.0;
    double widom = 0.0;
};

/// W_{D_m} = ||F_m/rho_m - tau_m|| / cap^{D_m}, the norm taken from the
/// structural solution.
WidomRow widom_factor(const PolynomialSequence& seq, int m, const SolverParams& params);

/// W_n from the minimax solver on `sample`, for degrees with no structural form.
double widom_general(std::span<const cplx> sample, double cap, int n,
                     const LawsonOptions& options = {});

enum class ConjecturePreset { Autonomous, Perturbed };

std::string to_string(ConjecturePreset preset);
std::optional<ConjecturePreset> parse_preset(const std::string& name);

/// z^2 + 1/4, or z^2 + 1/4 - eps_n for the perturbed preset.
PolynomialSequence conjecture_sequence(ConjecturePreset preset, int max_depth = 64);

struct ConjectureParams {
    SolverParams solver;
    /// Row m uses budget_scale * max(min_budget, per_degree * D_m) points.
    std::size_t min_budget = 20000;
    std::size_t per_degree = 16;
    double budget_scale = 1.0;
};

struct WidomReport {
    std::string preset;
    std::uint64_t seed = 0;
    std::vector<int> depths;           ///< sample depth per row
    std::vector<std::size_t> budgets;  ///< sample budget per row
    std::vector<WidomRow> rows;
    std::vector<double> ratios;        ///< W_{m+1} / W_m
    double loglog_slope = 0.0;         ///< least-squares slope of log W against log D_m
    std::optional<std::string> failure;
    std::optional<ErrorKind> failure_kind;
};

/// Fills ratios and the slope from the rows.
void summarize_growth(WidomReport& report);

/// Rows m = 1..m_max. On a numerical error the rows done so far are kept and
/// the error is recorded in the report rather than thrown.
WidomReport conjecture_run(ConjecturePreset preset, int m_max, const ConjectureParams& params);

/// CSV with header m,degree,tau_re,tau_im,norm,capacity,widom.
std::string widom_csv(const std::vector<WidomRow>& rows);

} // namespace juliacheb
