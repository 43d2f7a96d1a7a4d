#pragma once

#include "juliacheb/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace juliacheb {

struct RootOptions {
    /// Relative residual tolerance: |p(r) - w| <= tolerance * scale.
    double tolerance = 1e-12;
    /// Aberth sweeps before NonConvergence is raised.
    int max_sweeps = 200;
    /// Roots closer than merge_tolerance * max(1, |r|) are merged.
    double merge_tolerance = 1e-8;
    /// Rotates the initial circle; a different seed is a random restart.
    std::uint64_t restart_seed = 0;
};

/// All solutions of p(z) = w, repeated according to multiplicity.
///
/// Quadratics are solved in closed form as centre ± sqrt(disc)/(2a), which
/// keeps the pair exactly symmetric about the critical point. Higher degrees
/// use Aberth–Ehrlich from a perturbed circle followed by Newton polishing.
/// Throws NonConvergence when the sweep cap is hit or a root fails the
/// residual check.
std::vector<cplx> preimages(const Polynomial& p, cplx w, const RootOptions& options = {});

/// Scale used in the residual test at root r: max(1, |w|, max|a_j|, sum |a_j||r|^j).
double residual_scale(const Polynomial& p, cplx w, cplx root);

/// Replaces clusters of nearby roots by their mean, keeping multiplicity.
/// Returned vector has the same size as `roots`.
std::vector<cplx> merge_clusters(std::vector<cplx> roots, double tolerance);

} // namespace juliacheb
