#pragma once

#include "juliacheb/disk.hpp"
#include "juliacheb/julia.hpp"
#include "juliacheb/minimax.hpp"
#include "juliacheb/sequence.hpp"

#include <cstdint>
#include <vector>

namespace juliacheb {

struct SolverParams {
    double radius_margin = 1.05;
    /// Points per pulled-back cloud.
    std::size_t budget = 20000;
    /// Structural norms are taken on the pullback from level m + depth_offset.
    int depth_offset = 32;
    /// tau_sequence runs l over (m, m + tau_span].
    int tau_span = 8;
    double tau_tolerance = 1e-6;
    /// Extremal refinement: candidates per round and number of rounds.
    int refine_candidates = 16;
    int refine_rounds = 2;
    std::uint64_t seed = 0;
    PullbackOptions pullback;
    LawsonOptions lawson;
};

struct TauTraceEntry {
    int l = 0;
    cplx tau{};
    double norm = 0.0; ///< C_l, the Chebyshev radius of the scaled cloud
    std::size_t cloud_size = 0;
};

struct TauResult {
    cplx tau{};
    bool converged = false;
    int converged_at = 0; ///< l at which |tau_l - tau_{l-1}| < tol first held
    std::vector<TauTraceEntry> trace;
};

/// Raised when no two successive tau_l agree within tolerance; the full
/// trace is attached.
class TauNoConvergence : public Error {
public:
    TauNoConvergence(const std::string& what, TauResult result)
        : Error(ErrorKind::TauNoConvergence, what), result_(std::move(result)) {}
    const TauResult& result() const noexcept { return result_; }

private:
    TauResult result_;
};

/// Chebyshev disk of g_l^{-1}(closed disk R) / rho_m for g_l = f_l ∘ ... ∘ f_{m+1},
/// sampled on its boundary, for l = m+1 .. l_max. Every cloud uses the same
/// seed so successive levels share their random streams.
TauResult tau_sequence(const PolynomialSequence& seq, int m, int l_max,
                       const EscapeRadius& radius, const SolverParams& params);

/// Chebyshev disk of F_m(sample) / rho_m. Kept only to compare against the
/// pullback construction; no claim that it yields the right shift.
Disk tau_by_image(const PolynomialSequence& seq, int m, std::span<const cplx> sample);

/// F_m / rho_m - tau_m with its sup norm on a deep Julia sample. For
/// sequences whose maps contain only even powers tau_m is exactly zero.
ChebyshevSolution structured_chebyshev(const PolynomialSequence& seq, int m,
                                       const SolverParams& params);

/// Evaluates F_m(z)/rho - tau by iterating the maps, which is better
/// conditioned near the Julia set than the expanded polynomial.
cplx evaluate_structural(const PolynomialSequence& seq, int m, cplx rho, cplx tau, cplx z);

struct VerificationReport {
    int degree = 0;
    int m = 0;
    cplx tau{};
    double structural_norm = 0.0;      ///< structural polynomial on the sample
    double structural_deep_norm = 0.0; ///< structural polynomial on the deep sample
    double minimax_norm = 0.0;
    double coeff_deviation = 0.0;
    double norm_gap = 0.0;
    bool optimality_ok = false; ///< structural >= minimax (1 - 1e-6)
    double certificate_gap = 0.0;
    std::size_t sample_size = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    Polynomial structural;
    Polynomial minimax;
};

/// Runs the independent minimax solver on `sample` and compares it with the
/// structural polynomial. Coefficients are compared after rescaling both to
/// the sample radius: P(r s) / r^n.
VerificationReport verify_structural(const PolynomialSequence& seq, int m, const PointCloud& sample,
                                  const SolverParams& params);

} // namespace juliacheb
