#include "juliacheb/julia.hpp"

#include "juliacheb/errors.hpp"
#include "juliacheb/parallel.hpp"
#include "juliacheb/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace juliacheb {

// ---------------------------------------------------------------------------
// Regularity

std::vector<std::string> ValidationReport::failures() const {
    std::vector<std::string> out;
    std::ostringstream os;
    os.precision(17);
    if (!leading_bound_ok) {
        os << "condition 1 (leading coefficient bound): min |lead| = " << realized.a1
           << " < A1 = " << declared.a1;
        out.push_back(os.str());
        os.str("");
    }
    if (!coefficient_ratio_ok) {
        os << "condition 2 (coefficient ratio bound): max ratio = " << realized.a2
           << " > A2 = " << declared.a2;
        out.push_back(os.str());
        os.str("");
    }
    if (!growth_bound_ok) {
        os << "condition 3 (leading coefficient growth): max log|lead|/d = " << realized.a3
           << " > A3 = " << declared.a3;
        out.push_back(os.str());
    }
    return out;
}

ValidationReport validate_regularity(const PolynomialSequence& seq, int up_to) {
    if (up_to < 1)
        throw InvalidArgument("validate_regularity needs up_to >= 1");
    ValidationReport report;
    report.up_to = up_to;
    report.declared = seq.declared();
    report.realized = realized_constants(seq, up_to);
    const auto& d = report.declared;
    const auto& r = report.realized;
    // Realized quantities are compared with a relative rounding allowance so
    // that equality cases such as log 2 <= (log 2 / 2) * 2 pass.
    constexpr double slack = 1e-12;
    report.leading_bound_ok = d.a1 > 0.0 && r.a1 >= d.a1 * (1.0 - slack);
    report.coefficient_ratio_ok = r.a2 <= d.a2 * (1.0 + slack) + slack * (d.a2 == 0.0 ? 0.0 : 1.0);
    report.growth_bound_ok = r.a3 <= d.a3 + slack * std::max(1.0, std::abs(d.a3));
    return report;
}

// ---------------------------------------------------------------------------
// Escape radius

bool escape_inequality_holds(double a1, double a2, double r) {
    if (!(r > 1.0) || !(r > 1.0 + a2))
        return false;
    return a1 * r * (1.0 - a2 / (r - 1.0)) > 2.0;
}

EscapeRadius escape_radius(double a1, double a2, double margin) {
    if (!(a1 > 0.0) || !(a2 >= 0.0) || !(margin >= 1.0))
        throw InvalidArgument("escape_radius needs A1 > 0, A2 >= 0 and margin >= 1");
    const double b = a1 * (1.0 + a2) + 2.0;
    const double disc = b * b - 8.0 * a1;
    if (!(disc >= 0.0))
        throw NoAdmissibleRadius("boundary quadratic has no real root");
    const double root = (b + std::sqrt(disc)) / (2.0 * a1);
    const double boundary = std::max({root, 1.0 + a2, 1.0 + 1e-9});
    double r = margin * boundary;
    for (int i = 0; i < 4096 && !escape_inequality_holds(a1, a2, r); ++i)
        r = r * (1.0 + 1e-15) + std::numeric_limits<double>::denorm_min();
    if (!escape_inequality_holds(a1, a2, r))
        throw NoAdmissibleRadius("no radius satisfying the escape inequality near " +
                                 std::to_string(boundary));
    return {r, margin};
}

EscapeRadius escape_radius(const PolynomialSequence& seq, double margin) {
    return escape_radius(seq.declared().a1, seq.declared().a2, margin);
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const PolynomialSequence& seq, cplx z, double radius, int max_depth) {
    if (max_depth < 1)
        throw InvalidArgument("classify needs max_depth >= 1");
    if (!(std::abs(z) <= radius))
        return {true, 0};
    cplx w = z;
    for (int k = 1; k <= max_depth; ++k) {
        w = seq.map(k)(w);
        const double m = std::abs(w);
        // NaN and overflow both count as escape.
        if (!(m <= radius))
            return {true, k};
    }
    return {false, max_depth};
}

// ---------------------------------------------------------------------------
// Inverse iteration

namespace {

std::vector<cplx> solve_with_restarts(const Polynomial& p, cplx w, const RootOptions& base) {
    RootOptions options = base;
    for (std::uint64_t attempt = 0;; ++attempt) {
        options.restart_seed = base.restart_seed + attempt * 7919;
        try {
            return preimages(p, w, options);
        } catch (const NonConvergence&) {
            if (attempt >= 3)
                throw;
        }
    }
}

std::size_t nearest_index(const std::vector<cplx>& roots, cplx target) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
        const double d = std::abs(roots[j] - target);
        if (d < dist) {
            dist = d;
            best = j;
        }
    }
    return best;
}

void check_levels(const PolynomialSequence& seq, int top, int bottom) {
    if (bottom < 0 || top <= bottom)
        throw InvalidArgument("pullback needs top > bottom >= 0");
    (void)seq.map(top); // surfaces GeneratorFailure early
}

// Replays a recorded branch word, returning the full chain (seed first).
std::vector<cplx> replay_chain(const PolynomialSequence& seq, const PullbackSample& s,
                               double angle, const std::uint32_t* branch,
                               const RootOptions& roots) {
    std::vector<cplx> chain;
    chain.reserve(static_cast<std::size_t>(s.levels()) + 1);
    cplx w = std::polar(s.radius, angle);
    chain.push_back(w);
    for (int t = 0; t < s.levels(); ++t) {
        const auto pre = solve_with_restarts(seq.map(s.top - t), w, roots);
        w = pre[std::min<std::size_t>(branch[t], pre.size() - 1)];
        chain.push_back(w);
    }
    return chain;
}

// Pulls the circle point at `angle` back, choosing at each level the
// preimage nearest to the reference chain.
std::vector<cplx> follow_chain(const PolynomialSequence& seq, const PullbackSample& s,
                               double angle, const std::vector<cplx>& reference,
                               const RootOptions& roots) {
    std::vector<cplx> chain;
    chain.reserve(reference.size());
    cplx w = std::polar(s.radius, angle);
    chain.push_back(w);
    for (int t = 0; t < s.levels(); ++t) {
        const auto pre = solve_with_restarts(seq.map(s.top - t), w, roots);
        w = pre[nearest_index(pre, reference[static_cast<std::size_t>(t) + 1])];
        chain.push_back(w);
    }
    return chain;
}

} // namespace

double PullbackSample::angular_spacing() const {
    return 2.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(seed_count, 1));
}

PullbackSample pullback_sample(const PolynomialSequence& seq, int top, int bottom, double radius,
                               std::size_t budget, std::uint64_t seed,
                               const PullbackOptions& options) {
    check_levels(seq, top, bottom);
    if (budget < 1)
        throw InvalidArgument("pullback budget must be at least 1");
    if (!(radius > 0.0))
        throw InvalidArgument("pullback radius must be positive");

    PullbackSample out;
    out.top = top;
    out.bottom = bottom;
    out.radius = radius;
    const int levels = top - bottom;
    const std::size_t fibre = static_cast<std::size_t>(seq.degree(bottom + 1));
    out.seed_count = (budget + fibre - 1) / fibre;

    const double phase = Stream(seed, 0).uniform();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(out.seed_count);

    struct SeedResult {
        double angle = 0.0;
        std::vector<std::uint32_t> word;
        std::vector<cplx> fibre;
        std::size_t resampled = 0;
    };
    std::vector<SeedResult> results(out.seed_count);

    parallel_for(out.seed_count, options.threads, [&](std::size_t i) {
        Stream stream(seed, static_cast<std::uint64_t>(i) + 1);
        SeedResult& res = results[i];
        res.angle = step * (static_cast<double>(i) + phase);
        for (int attempt = 0;; ++attempt) {
            try {
                res.word.clear();
                cplx w = std::polar(radius, res.angle);
                for (int k = top; k > bottom + 1; --k) {
                    const auto pre = solve_with_restarts(seq.map(k), w, options.roots);
                    const auto idx = static_cast<std::uint32_t>(stream.below(pre.size()));
                    res.word.push_back(idx);
                    w = pre[idx];
                }
                res.fibre = solve_with_restarts(seq.map(bottom + 1), w, options.roots);
                return;
            } catch (const NonConvergence&) {
                if (attempt >= 16)
                    throw;
                ++res.resampled;
                res.angle = 2.0 * std::numbers::pi * stream.uniform();
            }
        }
    });

    out.points.reserve(budget);
    out.angles.reserve(budget);
    out.branches.reserve(budget * static_cast<std::size_t>(levels));
    for (const auto& res : results) {
        out.resampled += res.resampled;
        for (std::size_t j = 0; j < res.fibre.size() && out.points.size() < budget; ++j) {
            out.points.push_back(res.fibre[j]);
            out.angles.push_back(res.angle);
            out.branches.insert(out.branches.end(), res.word.begin(), res.word.end());
            out.branches.push_back(static_cast<std::uint32_t>(j));
        }
    }
    return out;
}

std::vector<cplx> refine_farthest(const PolynomialSequence& seq, const PullbackSample& sample,
                                  cplx centre, int candidates, const PullbackOptions& options) {
    if (sample.points.empty() || candidates <= 0)
        return {};
    std::vector<std::size_t> order(sample.points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t count = std::min<std::size_t>(order.size(), static_cast<std::size_t>(candidates));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double da = std::abs(sample.points[a] - centre);
                          const double db = std::abs(sample.points[b] - centre);
                          return da > db || (da == db && a < b);
                      });

    constexpr int kScanSteps = 24;
    constexpr int kGoldenIterations = 60;
    const double h = sample.angular_spacing() / kScanSteps;
    const auto levels = static_cast<std::size_t>(sample.levels());

    std::vector<cplx> refined(count);
    parallel_for(count, options.threads, [&](std::size_t c) {
        const std::size_t idx = order[c];
        const double angle0 = sample.angles[idx];
        auto objective = [&](const std::vector<cplx>& chain) {
            return std::abs(chain.back() - centre);
        };
        std::vector<cplx> base =
            replay_chain(seq, sample, angle0, sample.branches.data() + idx * levels, options.roots);
        double best_angle = angle0;
        std::vector<cplx> best_chain = base;
        double best_value = objective(base);
        try {
            for (int dir : {-1, 1}) {
                std::vector<cplx> ref = base;
                for (int j = 1; j <= kScanSteps; ++j) {
                    const double a = angle0 + dir * j * h;
                    ref = follow_chain(seq, sample, a, ref, options.roots);
                    const double v = objective(ref);
                    if (v > best_value) {
                        best_value = v;
                        best_angle = a;
                        best_chain = ref;
                    }
                }
            }
            const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double lo = best_angle - h, hi = best_angle + h;
            const std::vector<cplx> anchor = best_chain;
            auto eval = [&](double a) {
                auto chain = follow_chain(seq, sample, a, anchor, options.roots);
                const double v = objective(chain);
                if (v > best_value) {
                    best_value = v;
                    best_chain = std::move(chain);
                }
                return v;
            };
            double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
            double f1 = eval(x1), f2 = eval(x2);
            for (int it = 0; it < kGoldenIterations; ++it) {
                if (f1 > f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = eval(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + phi * (hi - lo);
                    f2 = eval(x2);
                }
            }
        } catch (const NonConvergence&) {
            // keep the best point found so far
        }
        refined[c] = best_chain.back();
    });
    return refined;
}

PointCloud sample_julia(const PolynomialSequence& seq, int depth, std::size_t budget,
                        const EscapeRadius& radius, std::uint64_t seed, SamplingStrategy strategy,
                        const PullbackOptions& options) {
    if (depth < 1 || budget < 1)
        throw InvalidArgument("sample_julia needs depth >= 1 and budget >= 1");
    PointCloud cloud;
    cloud.provenance.depth = depth;
    cloud.provenance.seed = seed;
    cloud.provenance.sequence = seq.description();

    if (strategy == SamplingStrategy::Stochastic) {
        PullbackSample s = pullback_sample(seq, depth, 0, radius.radius, budget, seed, options);
        cloud.points = std::move(s.points);
        cloud.provenance.resampled = s.resampled;
        cloud.provenance.strategy = "stochastic";
        return cloud;
    }

    // Full preimage tree of evenly spaced seeds.
    const double leaves_per_seed = seq.degree_product(depth);
    double nodes_per_seed = 0.0;
    for (int k = depth; k >= 1; --k)
        nodes_per_seed += seq.degree_product(depth) / seq.degree_product(k - 1);
    const std::size_t seeds = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(budget) / leaves_per_seed)));
    if (nodes_per_seed * static_cast<double>(seeds) > static_cast<double>(options.tree_node_budget))
        throw InvalidArgument("full preimage tree exceeds the node budget; use stochastic sampling");
    const double phase = Stream(seed, 0).uniform();
    for (std::size_t i = 0; i < seeds && cloud.points.size() < budget; ++i) {
        const double angle = 2.0 * std::numbers::pi * (static_cast<double>(i) + phase) /
                             static_cast<double>(seeds);
        std::vector<cplx> level{std::polar(radius.radius, angle)};
        for (int k = depth; k >= 1; --k) {
            std::vector<cplx> next;
            for (const auto& w : level) {
                const auto pre = solve_with_restarts(seq.map(k), w, options.roots);
                next.insert(next.end(), pre.begin(), pre.end());
            }
            level = std::move(next);
        }
        for (const auto& z : level)
            if (cloud.points.size() < budget)
                cloud.points.push_back(z);
    }
    cloud.provenance.strategy = "tree";
    return cloud;
}

// ---------------------------------------------------------------------------
// Capacity

CapacityResult capacity_series(const PolynomialSequence& seq, double tol) {
    if (!(tol > 0.0))
        throw InvalidArgument("capacity tolerance must be positive");
    const auto& c = seq.declared();
    // |log|lead_k|| <= max(|A3| d_k, |log A1|) and d_k >= 2 bound term k by
    // M / D_{k-1}; the tail past K is then at most 2M / D_K.
    const double bound = std::max(std::abs(c.a3), std::abs(std::log(c.a1)) / 2.0);
    CapacityResult out;
    double sum = 0.0;
    double d = 1.0;
    for (int k = 1; k <= seq.max_depth(); ++k) {
        d *= seq.degree(k);
        sum += std::log(std::abs(seq.map(k).leading())) / d;
        out.terms = k;
        out.tail_bound = 2.0 * bound / d;
        if (out.tail_bound < tol)
            break;
    }
    out.capacity = std::exp(-sum);
    return out;
}

double capacity(const PolynomialSequence& seq, double tol) { return capacity_series(seq, tol).capacity; }

double capacity_from_composition(const PolynomialSequence& seq, int n, int stride) {
    if (stride < 1 || n <= 2 * stride)
        throw InvalidArgument("composition extrapolation needs stride >= 1 and n > 2 stride");
    double s[3];
    Polynomial f = seq.map(1);
    for (int k = 1;; ++k) {
        if (k > 1)
            f = compose(seq.map(k), f);
        const int offset = n - k;
        if (offset % stride == 0 && offset <= 2 * stride)
            s[2 - offset / stride] = std::log(std::abs(f.leading())) / f.degree();
        if (k == n)
            break;
    }
    const double d1 = s[1] - s[0];
    const double d2 = s[2] - s[1];
    const double denom = d2 - d1;
    double limit = s[2];
    if (std::abs(denom) > 1e-300)
        limit = s[2] - d2 * d2 / denom;
    return std::exp(-limit);
}

// ---------------------------------------------------------------------------
// Distance diagnostic

namespace {

class NearestIndex {
public:
    NearestIndex(const std::vector<cplx>& points, double cell) : points_(points), cell_(cell) {
        lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        double hx = -lo_.real(), hy = -lo_.imag();
        for (const auto& p : points) {
            lo_ = {std::min(lo_.real(), p.real()), std::min(lo_.imag(), p.imag())};
            hx = std::max(hx, p.real());
            hy = std::max(hy, p.imag());
        }
        nx_ = static_cast<int>((hx - lo_.real()) / cell_) + 1;
        ny_ = static_cast<int>((hy - lo_.imag()) / cell_) + 1;
        start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
        std::vector<std::size_t> key(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            key[i] = bucket(cell_of(points[i].real(), lo_.real(), nx_),
                            cell_of(points[i].imag(), lo_.imag(), ny_));
            ++start_[key[i] + 1];
        }
        std::partial_sum(start_.begin(), start_.end(), start_.begin());
        items_.resize(points.size());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < points.size(); ++i)
            items_[fill[key[i]]++] = i;
    }

    double distance(cplx q) const {
        const int cx = cell_of(q.real(), lo_.real(), nx_);
        const int cy = cell_of(q.imag(), lo_.imag(), ny_);
        double best = std::numeric_limits<double>::infinity();
        const int max_ring = std::max(nx_, ny_) + 1;
        for (int ring = 0; ring <= max_ring; ++ring) {
            // Points in ring r are at least (r - 1) cells from the projection of q
            // onto the bucket box, hence from q itself.
            const double floor_dist = (ring - 1) * cell_;
            if (floor_dist > best)
                break;
            for (int x = cx - ring; x <= cx + ring; ++x)
                for (int y = cy - ring; y <= cy + ring; ++y) {
                    if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring)
                        continue;
                    if (x < 0 || y < 0 || x >= nx_ || y >= ny_)
                        continue;
                    const std::size_t b = bucket(x, y);
                    for (std::size_t s = start_[b]; s < start_[b + 1]; ++s)
                        best = std::min(best, std::abs(points_[items_[s]] - q));
                }
        }
        return best;
    }

private:
    int cell_of(double v, double lo, int n) const {
        const int c = static_cast<int>(std::floor((v - lo) / cell_));
        return std::clamp(c, 0, n - 1);
    }
    std::size_t bucket(int x, int y) const { return static_cast<std::size_t>(x) * ny_ + y; }

    const std::vector<cplx>& points_;
    double cell_;
    cplx lo_;
    int nx_ = 1, ny_ = 1;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> items_;
};

std::vector<cplx> grid_points(double radius, int resolution) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(resolution) * resolution);
    const double step = 2.0 * radius / (resolution - 1);
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            pts.emplace_back(-radius + i * step, -radius + j * step);
    return pts;
}

std::vector<Classification> classify_grid(const PolynomialSequence& seq, const std::vector<cplx>& pts,
                                          double radius, int depth, unsigned threads) {
    std::vector<Classification> out(pts.size());
    parallel_for(pts.size(), threads,
                 [&](std::size_t i) { out[i] = classify(seq, pts[i], radius, depth); });
    return out;
}

} // namespace

double DistanceProfile::cell_diagonal() const { return cell * std::numbers::sqrt2; }

std::vector<cplx> filled_set_sample(const PolynomialSequence& seq, const EscapeRadius& radius,
                                    const GridSpec& grid, const std::vector<cplx>& julia,
                                    unsigned threads) {
    if (grid.resolution < 2 || grid.bounded_depth < 1)
        throw InvalidArgument("grid needs resolution >= 2 and bounded_depth >= 1");
    const auto pts = grid_points(radius.radius, grid.resolution);
    const auto cls = classify_grid(seq, pts, radius.radius, grid.bounded_depth, threads);
    std::vector<cplx> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!cls[i].escaped)
            out.push_back(pts[i]);
    out.insert(out.end(), julia.begin(), julia.end());
    return out;
}

DistanceProfile distance_profile(const PolynomialSequence& seq, const EscapeRadius& radius,
                                 int k_max, const GridSpec& grid, const std::vector<cplx>& kloud,
                                 unsigned threads) {
    if (k_max < 2)
        throw InvalidArgument("distance_profile needs k_max >= 2");
    if (kloud.empty())
        throw InvalidArgument("distance_profile needs a nonempty sample of the filled set");
    if (grid.resolution < 2)
        throw InvalidArgument("grid resolution must be at least 2");
    DistanceProfile profile;
    profile.cell = 2.0 * radius.radius / (grid.resolution - 1);
    profile.kloud_size = kloud.size();
    const auto pts = grid_points(radius.radius, grid.resolution);
    const auto cls = classify_grid(seq, pts, radius.radius, k_max, threads);

    const NearestIndex index(kloud, profile.cell);
    std::vector<double> dist(pts.size(), 0.0);
    parallel_for(pts.size(), threads, [&](std::size_t i) {
        if (!cls[i].escaped_by(1))
            dist[i] = index.distance(pts[i]);
    });

    for (int k = 1; k <= k_max; ++k) {
        double a = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!cls[i].escaped_by(k))
                a = std::max(a, dist[i]);
        if (a < 0.0)
            throw EmptyGrid("no grid point survives " + std::to_string(k) + " iterations");
        profile.values.push_back(a);
    }
    return profile;
}

} // namespace juliacheb
