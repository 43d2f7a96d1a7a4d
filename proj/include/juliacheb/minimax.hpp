#pragma once

#include "juliacheb/errors.hpp"
#include "juliacheb/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace juliacheb {

/// A monic polynomial together with its sup norm on a point sample.
struct ChebyshevSolution {
    Polynomial monic;
    int degree = 0;
    double sup_norm = 0.0;
    /// Sample points with |P| >= (1 - 1e-6) sup_norm.
    std::size_t extremal_count = 0;
    /// Shift tau for structural solutions F_m/rho_m - tau.
    std::optional<cplx> tau;

    // Lawson diagnostics (zero for structural solutions).
    int iterations = 0;
    double lower_bound = 0.0;    ///< dual lower bound on the minimax error
    double certificate_gap = 0.0; ///< (sup_norm - lower_bound) / sup_norm
    double scale = 1.0;          ///< sample radius used for conditioning
    bool converged = true;       ///< certificate gap reached the tolerance
};

struct LawsonOptions {
    int max_iterations = 1000;
    /// Converged once the certificate gap drops below this.
    double tolerance = 1e-6;
    /// At the iteration cap the best iterate is accepted when its gap is
    /// below this; otherwise SolverStalled is raised.
    double stall_gap = 1e-2;
    /// Lawson iterations before switching to the barrier Newton polish.
    int polish_after = 20;
    bool polish = true;
    /// Target relative duality gap of the polish.
    double polish_gap = 1e-10;
    /// Pivot threshold (relative) of the initial weighted system.
    double rank_tolerance = 1e-13;
};

/// Raised when Lawson iteration hits its cap; carries the best iterate.
class SolverStalled : public Error {
public:
    SolverStalled(const std::string& what, ChebyshevSolution last)
        : Error(ErrorKind::SolverStalled, what), last_(std::move(last)) {}
    const ChebyshevSolution& last() const noexcept { return last_; }

private:
    ChebyshevSolution last_;
};

/// Discrete complex Chebyshev polynomial of the given degree on `points`.
///
/// Lawson's iteratively reweighted least squares, finished by a log-barrier
/// Newton solve of the same second-order cone problem when Lawson has not
/// reached the certificate tolerance (it converges sublinearly on dense
/// samples). The basis of degree < n is
/// orthonormalized against the uniform discrete inner product by Arnoldi on
/// the scaled points z / max|z|, so every residual is evaluated in that basis;
/// monomial coefficients are produced only for the returned polynomial.
/// The weighted least-squares error sqrt(sum w |r|^2) is a lower bound on the
/// minimax error and gives the certificate gap.
///
/// Throws RankDeficient when the sample cannot support the degree and
/// SolverStalled when the iteration cap is hit.
ChebyshevSolution lawson_minimax(std::span<const cplx> points, int degree,
                                 const LawsonOptions& options = {});

/// max |p(z)| over the points.
double sup_norm(const Polynomial& p, std::span<const cplx> points);

/// Number of points where |p| >= (1 - rel) * norm.
std::size_t count_extremal(const Polynomial& p, std::span<const cplx> points, double norm,
                           double rel = 1e-6);

} // namespace juliacheb
