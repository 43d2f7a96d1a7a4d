#include "juliacheb/roots.hpp"

#include "juliacheb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace juliacheb {
namespace {

std::vector<cplx> solve_quadratic(const Polynomial& p, cplx w) {
    const cplx a = p[2];
    const cplx b = p[1];
    const cplx c = p[0] - w;
    const cplx centre = -b / (2.0 * a);
    const cplx half = std::sqrt(b * b - 4.0 * a * c) / (2.0 * a);
    return {centre + half, centre - half};
}

// Lagrange-style bound on root moduli, used to size the initial circle.
double initial_radius(const Polynomial& q) {
    const int n = q.degree();
    const double lead = std::abs(q.leading());
    const double c0 = std::abs(q[0]);
    if (c0 == 0.0) {
        double m = 0.0;
        for (int j = 0; j < n; ++j)
            m = std::max(m, std::pow(std::abs(q[j]) / lead, 1.0 / (n - j)));
        return m > 0.0 ? m : 1.0;
    }
    return std::pow(c0 / lead, 1.0 / n);
}

struct EvalPair {
    cplx value;
    cplx slope;
};

EvalPair eval_with_derivative(const Polynomial& q, cplx z) {
    const auto c = q.coeffs();
    cplx v = c.back();
    cplx d = 0.0;
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    return {v, d};
}

std::vector<cplx> aberth(const Polynomial& q, const RootOptions& options) {
    const int n = q.degree();
    const double radius = initial_radius(q);
    const cplx centroid = -q[n - 1] / (static_cast<double>(n) * q.leading());
    // Offset angle avoids symmetric starts that stall on symmetric polynomials.
    const double offset = 0.4 + 0.7 * static_cast<double>(options.restart_seed % 9973) / 9973.0;
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n + offset;
        z[k] = centroid + radius * std::polar(1.0, theta);
    }

    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        bool settled = true;
        for (int k = 0; k < n; ++k) {
            const auto [v, d] = eval_with_derivative(q, z[k]);
            const double rounding = 4.0 * n * 2.2e-16 * q.abs_eval(std::abs(z[k]));
            if (std::abs(v) <= rounding)
                continue;
            const cplx ratio = v / d;
            cplx repulsion = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    repulsion += 1.0 / (z[k] - z[j]);
            const cplx step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                continue;
            z[k] -= step;
            if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[k])))
                settled = false;
        }
        if (settled)
            return z;
    }
    throw NonConvergence("Aberth iteration did not converge within " +
                         std::to_string(options.max_sweeps) + " sweeps (degree " +
                         std::to_string(n) + ")");
}

void newton_polish(const Polynomial& q, std::vector<cplx>& roots) {
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const auto [v, d] = eval_with_derivative(q, r);
            if (d == cplx{} || v == cplx{})
                break;
            const cplx next = r - v / d;
            if (std::abs(q(next)) >= std::abs(v))
                break;
            r = next;
        }
    }
}

} // namespace

double residual_scale(const Polynomial& p, cplx w, cplx root) {
    return std::max({1.0, std::abs(w), p.max_abs_coeff(), p.abs_eval(std::abs(root))});
}

std::vector<cplx> merge_clusters(std::vector<cplx> roots, double tolerance) {
    const std::size_t n = roots.size();
    std::vector<int> group(n, -1);
    int groups = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (group[i] >= 0)
            continue;
        group[i] = groups;
        // Transitive closure over the proximity graph.
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b) {
                if (group[b] >= 0)
                    continue;
                const double scale = std::max({1.0, std::abs(roots[a]), std::abs(roots[b])});
                if (std::abs(roots[a] - roots[b]) <= tolerance * scale) {
                    group[b] = groups;
                    stack.push_back(b);
                }
            }
        }
        ++groups;
    }
    for (int g = 0; g < groups; ++g) {
        cplx sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (group[i] == g) {
                sum += roots[i];
                ++count;
            }
        if (count < 2)
            continue;
        const cplx mean = sum / static_cast<double>(count);
        for (std::size_t i = 0; i < n; ++i)
            if (group[i] == g)
                roots[i] = mean;
    }
    return roots;
}

std::vector<cplx> preimages(const Polynomial& p, cplx w, const RootOptions& options) {
    if (p.degree() < 1)
        throw InvalidArgument("preimages requires a nonconstant polynomial");
    if (p.degree() == 1)
        return {(w - p[0]) / p[1]};
    if (p.degree() == 2)
        return solve_quadratic(p, w);

    const Polynomial q = p - Polynomial::constant(w);
    std::vector<cplx> roots = aberth(q, options);
    newton_polish(q, roots);
    const std::vector<cplx> merged = merge_clusters(roots, options.merge_tolerance);

    for (std::size_t i = 0; i < merged.size(); ++i) {
        const cplx r = merged[i];
        const double residual = std::abs(q(r));
        // A merged cluster mean sits on a multiple root, where the residual
        // is only as small as the cluster spread allows.
        const double tol = merged[i] == roots[i] ? options.tolerance : options.merge_tolerance;
        if (!(residual <= tol * residual_scale(p, w, r)))
            throw NonConvergence("preimage residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    }
    return merged;
}

} // namespace juliacheb
