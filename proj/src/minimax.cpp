#include "juliacheb/minimax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace juliacheb {
namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct ArnoldiBasis {
    Matrix q;     // N x (n+1), orthonormal columns
    Matrix h;     // (n+1) x n Hessenberg
};

ArnoldiBasis arnoldi(const Vector& s, int n) {
    const Eigen::Index rows = s.size();
    ArnoldiBasis b;
    b.q = Matrix::Zero(rows, n + 1);
    b.h = Matrix::Zero(n + 1, n);
    b.q.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(rows)));
    for (int k = 0; k < n; ++k) {
        Vector v = s.cwiseProduct(b.q.col(k));
        const double before = v.norm();
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j <= k; ++j) {
                const cplx coef = b.q.col(j).dot(v);
                b.h(j, k) += coef;
                v -= coef * b.q.col(j);
            }
        const double hk = v.norm();
        if (!(hk > 1e-13 * std::max(before, 1e-300)))
            throw RankDeficient("sample supports polynomials of degree at most " +
                                std::to_string(k) + ", requested " + std::to_string(n));
        b.h(k + 1, k) = hk;
        b.q.col(k + 1) = v / hk;
    }
    return b;
}

// Any y orthogonal to the span of the lower basis gives
//   |y^H t| = |y^H r| <= max|r| * ||y||_1   for every candidate residual r,
// so |y^H t| / ||y||_1 bounds the minimax error from below. Dual weights
// lambda enter as y = lambda * r, projected onto the orthogonal complement.
double dual_bound(const Matrix& lower_basis, const Vector& target, const Eigen::VectorXd& lambda,
                  const Vector& residual) {
    Vector y = lambda.cast<cplx>().cwiseProduct(residual);
    // Rows may be a subset of the sample, so the columns need not be orthonormal.
    y -= lower_basis * lower_basis.householderQr().solve(y);
    const double l1 = y.cwiseAbs().sum();
    if (!(l1 > 0.0))
        return 0.0;
    return std::abs(y.dot(target)) / l1;
}

// Weighted least-squares step shared by Lawson and the certificate.
struct WeightedFit {
    Vector coef;
    Eigen::VectorXd magnitude;
    double max = 0.0;
    double lower = 0.0; // sqrt(sum w |r|^2), w normalized
};

WeightedFit weighted_fit(const Matrix& lower_basis, const Vector& target,
                         const Eigen::VectorXd& weight, double rank_tolerance, bool check_rank) {
    const Eigen::VectorXd root_w = weight.cwiseSqrt();
    const Matrix a = root_w.asDiagonal() * lower_basis;
    const Vector rhs = -(root_w.cast<cplx>().cwiseProduct(target));
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    if (check_rank) {
        qr.setThreshold(rank_tolerance);
        if (qr.rank() < lower_basis.cols())
            throw RankDeficient("weighted system has rank " + std::to_string(qr.rank()) + " < " +
                                std::to_string(lower_basis.cols()));
    }
    WeightedFit fit;
    fit.coef = qr.solve(rhs);
    const Vector residual = target + lower_basis * fit.coef;
    fit.magnitude = residual.cwiseAbs();
    fit.max = fit.magnitude.maxCoeff();
    fit.lower = dual_bound(lower_basis, target, weight, residual);
    return fit;
}

// Log-barrier Newton method for  min E  s.t. |target_i + (Q c)_i| <= E.
// Variables are x = (E, Re c, Im c). Returns the polished coefficients and
// the best dual bound seen along the central path. The duals are the barrier
// weights 1/(E^2 - |r_i|^2); near the end the slacks reach rounding level, so
// the last round is not always the tightest.
struct PolishResult {
    Vector coef;
    double lower = 0.0;
};

PolishResult barrier_polish(const Matrix& q, const Vector& target, Vector coef, double rel_gap) {
    const Eigen::Index rows = q.rows();
    const Eigen::Index n = q.cols();
    const Eigen::Index dim = 2 * n + 1;

    auto residuals = [&](const Vector& c) { return Vector(target + q * c); };
    Vector r = residuals(coef);
    double e = r.cwiseAbs().maxCoeff() * (1.0 + 1e-3) + 1e-300;

    auto objective = [&](double big_t, double ee, const Vector& rr) {
        double f = big_t * ee;
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double m = std::abs(rr(i));
            const double slack = (ee - m) * (ee + m);
            if (!(slack > 0.0))
                return std::numeric_limits<double>::infinity();
            f -= std::log(slack);
        }
        return f;
    };

    // Largest alpha keeping (E + alpha dE)^2 - |r_i + alpha dr_i|^2 positive.
    auto feasible_step = [&](double ee, const Vector& rr, const Eigen::VectorXd& step) {
        Vector dc(n);
        for (Eigen::Index j = 0; j < n; ++j)
            dc(j) = cplx(step(1 + j), step(1 + n + j));
        const Vector dr = q * dc;
        const double de = step(0);
        double limit = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double m = std::abs(rr(i));
            const double a = de * de - std::norm(dr(i));
            const double b = 2.0 * (ee * de - (std::conj(rr(i)) * dr(i)).real());
            const double c = (ee - m) * (ee + m);
            double root = std::numeric_limits<double>::infinity();
            if (a == 0.0) {
                if (b < 0.0)
                    root = -c / b;
            } else {
                const double disc = b * b - 4.0 * a * c;
                if (disc >= 0.0) {
                    // Stable quadratic roots; keep the smallest positive one.
                    const double qv = -0.5 * (b + std::copysign(std::sqrt(disc), b));
                    for (double x : {qv / a, qv != 0.0 ? c / qv : -1.0})
                        if (x > 0.0)
                            root = std::min(root, x);
                }
            }
            limit = std::min(limit, root);
        }
        return limit;
    };

    // Barrier parameter 2 per cone: the duality gap on the central path is 2N/t.
    double big_t = 2.0 * static_cast<double>(rows) / (1e-2 * e);
    const double final_t = 2.0 * static_cast<double>(rows) / (rel_gap * e);
    double lower = 0.0;
    for (int outer = 0; outer < 60; ++outer) {
        for (int inner = 0; inner < 80; ++inner) {
            // Row i of g is the gradient of s_i = E^2 - |r_i|^2 divided by s_i.
            Eigen::MatrixXd g(rows, dim);
            Eigen::VectorXd curvature(rows);
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double ri = std::abs(r(i));
                const double s = (e - ri) * (e + ri);
                g(i, 0) = 2.0 * e / s;
                for (Eigen::Index j = 0; j < n; ++j) {
                    const cplx p = std::conj(r(i)) * q(i, j);
                    g(i, 1 + j) = -2.0 * p.real() / s;
                    g(i, 1 + n + j) = 2.0 * p.imag() / s;
                }
                curvature(i) = 2.0 / s;
            }
            Eigen::VectorXd grad = -g.colwise().sum().transpose();
            grad(0) += big_t;
            Eigen::MatrixXd full = g.transpose() * g;
            // Curvature of s_i: +2 in E, -2 Re(conj(dr_a) dr_b) in the coefficients.
            full(0, 0) -= curvature.sum();
            const Matrix m = q.adjoint() * (curvature.cast<cplx>().asDiagonal() * q);
            full.block(1, 1, n, n) += m.real();
            full.block(1 + n, 1 + n, n, n) += m.real();
            full.block(1 + n, 1, n, n) += m.imag();
            full.block(1, 1 + n, n, n) -= m.imag();
            const Eigen::VectorXd step = full.ldlt().solve(-grad);
            const double decrement = -grad.dot(step);
            if (!(decrement > 1e-9))
                break;
            const double f0 = objective(big_t, e, r);
            double alpha = std::min(1.0, 0.99 * feasible_step(e, r, step));
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
                Vector trial = coef;
                for (Eigen::Index j = 0; j < n; ++j)
                    trial(j) += alpha * cplx(step(1 + j), step(1 + n + j));
                const double trial_e = e + alpha * step(0);
                const Vector trial_r = residuals(trial);
                const double f1 = objective(big_t, trial_e, trial_r);
                if (f1 <= f0 - 0.25 * alpha * decrement) {
                    coef = trial;
                    e = trial_e;
                    r = trial_r;
                    moved = true;
                    break;
                }
            }
            if (!moved)
                break;
        }
        Eigen::VectorXd weight(rows);
        for (Eigen::Index i = 0; i < rows; ++i)
            weight(i) = 1.0 / std::max((e - std::abs(r(i))) * (e + std::abs(r(i))), 1e-300);
        weight /= weight.sum();
        lower = std::max(lower, dual_bound(q, target, weight, r));
        if (big_t >= final_t)
            break;
        big_t = std::min(final_t, big_t * 8.0);
    }
    return {coef, lower};
}

} // namespace

double sup_norm(const Polynomial& p, std::span<const cplx> points) {
    double m = 0.0;
    for (const auto& z : points)
        m = std::max(m, std::abs(p(z)));
    return m;
}

std::size_t count_extremal(const Polynomial& p, std::span<const cplx> points, double norm,
                           double rel) {
    std::size_t c = 0;
    for (const auto& z : points)
        if (std::abs(p(z)) >= (1.0 - rel) * norm)
            ++c;
    return c;
}

ChebyshevSolution lawson_minimax(std::span<const cplx> points, int degree,
                                 const LawsonOptions& options) {
    if (degree < 1)
        throw InvalidArgument("minimax degree must be at least 1");
    const auto count = static_cast<Eigen::Index>(points.size());
    if (count < degree + 1)
        throw RankDeficient("need at least " + std::to_string(degree + 1) + " points, got " +
                            std::to_string(points.size()));

    double scale = 0.0;
    for (const auto& z : points)
        scale = std::max(scale, std::abs(z));
    if (!(scale > 0.0))
        throw RankDeficient("all sample points coincide at the origin");

    Vector s(count);
    for (Eigen::Index i = 0; i < count; ++i)
        s(i) = points[static_cast<std::size_t>(i)] / scale;

    const int n = degree;
    const ArnoldiBasis basis = arnoldi(s, n);
    // q_n divided by its leading coefficient is monic.
    double lead_inv = std::sqrt(static_cast<double>(count));
    for (int k = 0; k < n; ++k)
        lead_inv *= basis.h(k + 1, k).real();
    const Vector target = basis.q.col(n) * lead_inv;
    const auto lower = basis.q.leftCols(n);

    Eigen::VectorXd weight = Eigen::VectorXd::Constant(count, 1.0 / static_cast<double>(count));
    Vector best_coef = Vector::Zero(n);
    double best_max = std::numeric_limits<double>::infinity();
    double best_lower = 0.0;
    bool converged = false;
    int iterations = 0;
    auto gap = [&] { return best_max > 0.0 ? (best_max - best_lower) / best_max : 0.0; };

    for (int it = 0; it < options.max_iterations; ++it) {
        iterations = it + 1;
        const WeightedFit fit = weighted_fit(lower, target, weight, options.rank_tolerance, it == 0);
        if (fit.max < best_max) {
            best_max = fit.max;
            best_coef = fit.coef;
        }
        best_lower = std::max(best_lower, fit.lower);
        // The max residual oscillates, so a small step-to-step change is not
        // evidence of convergence; only the certificate is.
        if (best_max == 0.0 || gap() < options.tolerance) {
            converged = true;
            break;
        }
        if (iterations >= options.polish_after)
            break;
        weight = weight.cwiseProduct(fit.magnitude);
        const double total = weight.sum();
        if (!(total > 0.0))
            break;
        weight /= total;
    }

    // The polish is cheap next to the reweighting, so it always runs to its own
    // tighter gap; the tolerance only decides convergence.
    if (options.polish && gap() > options.polish_gap) {
        // Constraints far below the maximum are inactive at the optimum; solve
        // on the near-extremal rows and add any row the solution violates.
        std::vector<bool> active(static_cast<std::size_t>(count), false);
        Eigen::VectorXd magnitude = (target + lower * best_coef).cwiseAbs();
        double threshold = 0.8 * best_max;
        Vector coef = best_coef;
        for (int round = 0; round < 8; ++round) {
            std::vector<Eigen::Index> rows;
            for (Eigen::Index i = 0; i < count; ++i) {
                if (magnitude(i) >= threshold)
                    active[static_cast<std::size_t>(i)] = true;
                if (active[static_cast<std::size_t>(i)])
                    rows.push_back(i);
            }
            const Matrix sub_q = lower(rows, Eigen::all);
            const Vector sub_t = target(rows);
            const PolishResult polished = barrier_polish(sub_q, sub_t, coef, options.polish_gap);
            coef = polished.coef;
            best_lower = std::max(best_lower, polished.lower);
            magnitude = (target + lower * coef).cwiseAbs();
            const double sub_max = magnitude(rows).maxCoeff();
            const double full_max = magnitude.maxCoeff();
            if (full_max < best_max) {
                best_max = full_max;
                best_coef = coef;
            }
            if (full_max <= sub_max * (1.0 + 1e-12))
                break;
            threshold = 0.8 * sub_max;
        }
        converged = gap() < options.tolerance;
    }

    // Monomial coefficients of the basis in the scaled variable.
    std::vector<std::vector<cplx>> mono(static_cast<std::size_t>(n) + 1);
    mono[0] = {cplx(1.0 / std::sqrt(static_cast<double>(count)))};
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> next(static_cast<std::size_t>(k) + 2, cplx{});
        for (std::size_t j = 0; j < mono[k].size(); ++j)
            next[j + 1] += mono[k][j];
        for (int j = 0; j <= k; ++j)
            for (std::size_t t = 0; t < mono[j].size(); ++t)
                next[t] -= basis.h(j, k) * mono[j][t];
        for (auto& v : next)
            v /= basis.h(k + 1, k).real();
        mono[static_cast<std::size_t>(k) + 1] = std::move(next);
    }
    std::vector<cplx> scaled(static_cast<std::size_t>(n) + 1, cplx{});
    for (std::size_t t = 0; t < mono[n].size(); ++t)
        scaled[t] += mono[n][t] * lead_inv;
    for (int j = 0; j < n; ++j)
        for (std::size_t t = 0; t < mono[j].size(); ++t)
            scaled[t] += best_coef(j) * mono[j][t];
    scaled[n] = 1.0;
    // P(z) = scale^n P_s(z / scale)
    std::vector<cplx> coeffs(scaled.size());
    for (int j = 0; j <= n; ++j)
        coeffs[j] = scaled[j] * std::pow(scale, n - j);

    ChebyshevSolution sol;
    sol.monic = Polynomial(std::move(coeffs));
    sol.degree = n;
    const double norm_scale = std::pow(scale, n);
    sol.sup_norm = best_max * norm_scale;
    sol.lower_bound = best_lower * norm_scale;
    sol.certificate_gap = (best_max - best_lower) / best_max;
    sol.iterations = iterations;
    sol.scale = scale;
    sol.converged = converged;
    {
        const Vector residual = target + lower * best_coef;
        std::size_t extremal = 0;
        for (Eigen::Index i = 0; i < count; ++i)
            if (std::abs(residual(i)) >= (1.0 - 1e-6) * best_max)
                ++extremal;
        sol.extremal_count = extremal;
    }
    if (!converged && !(sol.certificate_gap < options.stall_gap))
        throw SolverStalled("Lawson iteration stalled after " + std::to_string(iterations) +
                                " iterations, certificate gap " +
                                std::to_string(sol.certificate_gap),
                            sol);
    return sol;
}

} // namespace juliacheb
