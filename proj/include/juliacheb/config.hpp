#pragma once

#include "juliacheb/structural.hpp"
#include "juliacheb/widom.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace juliacheb {

struct SequenceConfig {
    /// quadratic | quadratic_perturbed | quadratic_random | periodic
    std::string preset = "quadratic";
    cplx c{};
    double bound = 0.25;
    std::optional<std::uint64_t> seed; ///< c_n stream; defaults to the run seed
    std::vector<std::vector<cplx>> maps; ///< periodic: ascending coefficients per map
    int max_depth = 64;
    std::optional<double> a1, a2, a3; ///< declared constants overriding the preset's
    int check_depth = 32;

    bool operator==(const SequenceConfig&) const = default;
};

struct RunConfig {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir = "out";
    SequenceConfig sequence;
    double radius_margin = 1.05;

    int sample_depth = 20;
    std::size_t sample_budget = 10000;
    std::string sample_strategy = "stochastic"; ///< stochastic | tree

    int cheb_degree = 4;
    std::string cheb_input; ///< cloud CSV; empty: sample from the sequence

    int m = 1;
    int tau_l_max = 0; ///< 0: m + solver.tau_span
    bool tau_image_shortcut = false; ///< also report the disk of F_m(sample) / rho_m

    int verify_depth = 32;
    std::size_t verify_budget = 20000;

    int widom_m_max = 3;
    std::vector<int> widom_degrees;

    std::string conjecture_preset = "autonomous";
    int conjecture_m_max = 6;
    double conjecture_budget_scale = 1.0;
    std::size_t conjecture_min_budget = 20000;
    std::size_t conjecture_per_degree = 16;

    int distances_k_max = 10;
    int distances_resolution = 201;
    int distances_bounded_depth = 60;

    // Solver parameters.
    std::size_t solver_budget = 20000;
    int depth_offset = 32;
    int tau_span = 8;
    double tau_tolerance = 1e-6;
    int refine_candidates = 16;
    int refine_rounds = 2;
    double root_tolerance = 1e-12;
    int root_max_sweeps = 200;
    int lawson_max_iterations = 1000;
    double lawson_tolerance = 1e-6;
    int lawson_polish_after = 20;
    bool lawson_polish = true;
    double lawson_polish_gap = 1e-10;
    double lawson_stall_gap = 1e-2;

    bool operator==(const RunConfig&) const = default;
};

struct ParseOptions {
    std::optional<std::uint64_t> seed_override;
    /// Reject sequences whose maps break the declared regularity constants.
    bool check_regularity = true;
};

/// Parses `key = value` lines; keys are dotted, values are JSON or a bare
/// string. Lines starting with '#' are comments. All problems are collected
/// and raised together as one ConfigError, one per line, naming the key.
RunConfig parse_config(const std::string& text, const ParseOptions& options = {});

/// Canonical text; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

PolynomialSequence build_sequence(const RunConfig& config, int min_depth = 0);
SolverParams solver_params(const RunConfig& config);
LawsonOptions lawson_options(const RunConfig& config);

} // namespace juliacheb
