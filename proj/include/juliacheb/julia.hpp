#pragma once

#include "juliacheb/polynomial.hpp"
#include "juliacheb/roots.hpp"
#include "juliacheb/sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace juliacheb {

// ---------------------------------------------------------------------------
// Regularity

struct ValidationReport {
    int up_to = 0;
    RegularityConstants declared;
    RegularityConstants realized; ///< min |lead|, max ratio, max log|lead|/d
    bool leading_bound_ok = false;     ///< |lead_n| >= A1
    bool coefficient_ratio_ok = false; ///< |a_{n,j}| <= A2 |lead_n|
    bool growth_bound_ok = false;      ///< log|lead_n| <= A3 d_n

    bool passed() const noexcept {
        return leading_bound_ok && coefficient_ratio_ok && growth_bound_ok;
    }
    /// One human-readable line per failed condition.
    std::vector<std::string> failures() const;
};

ValidationReport validate_regularity(const PolynomialSequence& seq, int up_to);

// ---------------------------------------------------------------------------
// Escape radius

struct EscapeRadius {
    double radius = 0.0;
    double margin = 1.0;
};

/// True when a1 * r * (1 - a2/(r-1)) > 2 and r > max(1, 1 + a2).
bool escape_inequality_holds(double a1, double a2, double r);

/// margin times the largest root of a1 R^2 - (a1(1+a2)+2) R + 2 = 0, promoted
/// above 1 + a2 when that root degenerates, then nudged upward until the
/// strict inequality holds in floating point.
EscapeRadius escape_radius(double a1, double a2, double margin = 1.05);
EscapeRadius escape_radius(const PolynomialSequence& seq, double margin = 1.05);

// ---------------------------------------------------------------------------
// Escape-time classification

struct Classification {
    bool escaped = false;
    /// First k with |F_k(z)| > R when escaped (0: z itself lies outside),
    /// otherwise the depth reached.
    int depth = 0;

    /// Whether z lies outside the closed set {|F_k| <= R}.
    bool escaped_by(int k) const noexcept { return escaped && depth <= k; }
};

Classification classify(const PolynomialSequence& seq, cplx z, double radius, int max_depth);

// ---------------------------------------------------------------------------
// Point clouds and inverse iteration

struct Provenance {
    int depth = 0;
    std::uint64_t seed = 0;
    std::string strategy;
    std::string sequence;
    std::size_t resampled = 0;
};

struct PointCloud {
    std::vector<cplx> points;
    Provenance provenance;
};

enum class SamplingStrategy { Stochastic, FullTree };

struct PullbackOptions {
    RootOptions roots;
    unsigned threads = 0; ///< 0: machine parallelism
    std::size_t tree_node_budget = std::size_t{1} << 16;
};

/// Points of (f_top ∘ ... ∘ f_{bottom+1})^{-1}(|w| = R) together with the
/// branch data needed to revisit them.
///
/// Seeds sit uniformly on the circle with a seeded rotation. Each seed is
/// pulled through f_top down to f_{bottom+2} choosing one preimage uniformly
/// at random per level, then through f_{bottom+1} keeping every preimage.
/// Keeping the whole last fibre makes clouds of maps with a symmetric fibre
/// (z^2 + c, or any even map) exactly symmetric.
struct PullbackSample {
    int top = 0;
    int bottom = 0;
    double radius = 0.0;
    std::size_t seed_count = 0;
    std::vector<cplx> points;
    std::vector<double> angles;               ///< seed angle per point
    std::vector<std::uint32_t> branches;      ///< (top - bottom) root indices per point
    std::size_t resampled = 0;

    int levels() const noexcept { return top - bottom; }
    double angular_spacing() const;
};

PullbackSample pullback_sample(const PolynomialSequence& seq, int top, int bottom, double radius,
                               std::size_t budget, std::uint64_t seed,
                               const PullbackOptions& options = {});

/// Locally maximizes |u - centre| along the pulled-back curve around the
/// `candidates` sample points farthest from `centre`. Seed angles are
/// scanned and then golden-section searched inside one seed spacing, with
/// preimages tracked by continuity. Every returned point is a genuine point
/// of the pulled-back curve, so adding them to the cloud only sharpens
/// sup-norm estimates from below.
std::vector<cplx> refine_farthest(const PolynomialSequence& seq, const PullbackSample& sample,
                                  cplx centre, int candidates, const PullbackOptions& options = {});

/// `budget` points on F_depth^{-1}(|w| = R).
PointCloud sample_julia(const PolynomialSequence& seq, int depth, std::size_t budget,
                        const EscapeRadius& radius, std::uint64_t seed,
                        SamplingStrategy strategy = SamplingStrategy::Stochastic,
                        const PullbackOptions& options = {});

// ---------------------------------------------------------------------------
// Capacity

struct CapacityResult {
    double capacity = 0.0;
    int terms = 0;
    double tail_bound = 0.0;
};

/// exp(-sum_k log|lead_k| / D_k), truncated once the geometric tail bound
/// from the declared constants falls below tol.
CapacityResult capacity_series(const PolynomialSequence& seq, double tol = 1e-12);
double capacity(const PolynomialSequence& seq, double tol = 1e-12);

/// Aitken extrapolation of log|rho_n|/D_n from directly composed
/// F_{n-2s}, F_{n-s}, F_n (s = stride), returned as a capacity. Independent
/// of the series route. Exact for periodic sequences when s is the period.
double capacity_from_composition(const PolynomialSequence& seq, int n, int stride = 1);

// ---------------------------------------------------------------------------
// Distance diagnostic

struct GridSpec {
    int resolution = 201;   ///< points per axis over [-R, R]
    int bounded_depth = 60; ///< depth used to decide a grid point is in K
};

struct DistanceProfile {
    std::vector<double> values; ///< values[k-1] = a_k for k = 1..k_max
    double cell = 0.0;          ///< grid spacing
    double cell_diagonal() const;
    std::size_t kloud_size = 0;
};

/// Grid points that stay bounded to grid.bounded_depth, plus `julia`.
std::vector<cplx> filled_set_sample(const PolynomialSequence& seq, const EscapeRadius& radius,
                                    const GridSpec& grid, const std::vector<cplx>& julia,
                                    unsigned threads = 0);

/// a_k = max over grid points with |F_k(g)| <= R of dist(g, kloud).
DistanceProfile distance_profile(const PolynomialSequence& seq, const EscapeRadius& radius,
                                 int k_max, const GridSpec& grid,
                                 const std::vector<cplx>& kloud, unsigned threads = 0);

} // namespace juliacheb
