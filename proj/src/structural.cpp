#include "juliacheb/structural.hpp"

#include "juliacheb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace juliacheb {
namespace {

void check_m(const PolynomialSequence& seq, int m) {
    if (m < 1)
        throw InvalidArgument("m must be at least 1");
    (void)seq.map(m);
}

// Chebyshev disk of a pulled-back cloud divided by rho, sharpened by local
// maximization of the distance to the current centre.
Disk scaled_disk(const PolynomialSequence& seq, const PullbackSample& sample, cplx rho,
                 const SolverParams& params, std::size_t* size) {
    std::vector<cplx> cloud(sample.points.size());
    std::transform(sample.points.begin(), sample.points.end(), cloud.begin(),
                   [rho](cplx u) { return u / rho; });
    Disk disk = enclosing_disk(cloud);
    for (int round = 0; round < params.refine_rounds; ++round) {
        const auto extra =
            refine_farthest(seq, sample, disk.center * rho, params.refine_candidates, params.pullback);
        for (const auto& u : extra)
            cloud.push_back(u / rho);
        disk = enclosing_disk(cloud);
    }
    if (size)
        *size = cloud.size();
    return disk;
}

} // namespace

TauResult tau_sequence(const PolynomialSequence& seq, int m, int l_max, const EscapeRadius& radius,
                       const SolverParams& params) {
    check_m(seq, m);
    if (l_max <= m)
        throw InvalidArgument("tau_sequence needs l_max > m");
    const cplx rho = seq.leading_coefficient(m);
    TauResult result;
    for (int l = m + 1; l <= l_max; ++l) {
        const PullbackSample sample =
            pullback_sample(seq, l, m, radius.radius, params.budget, params.seed, params.pullback);
        TauTraceEntry entry;
        entry.l = l;
        const Disk disk = scaled_disk(seq, sample, rho, params, &entry.cloud_size);
        entry.tau = disk.center;
        entry.norm = disk.radius;
        if (!result.converged && !result.trace.empty() &&
            std::abs(entry.tau - result.trace.back().tau) < params.tau_tolerance) {
            result.converged = true;
            result.converged_at = l;
            result.tau = entry.tau;
        }
        result.trace.push_back(entry);
    }
    if (!result.converged) {
        result.tau = result.trace.back().tau;
        throw TauNoConvergence("tau_l did not settle within tolerance by l = " +
                                   std::to_string(l_max),
                               result);
    }
    return result;
}

Disk tau_by_image(const PolynomialSequence& seq, int m, std::span<const cplx> sample) {
    check_m(seq, m);
    const cplx rho = seq.leading_coefficient(m);
    std::vector<cplx> image;
    image.reserve(sample.size());
    for (cplx z : sample) {
        for (int k = 1; k <= m; ++k)
            z = seq.map(k)(z);
        image.push_back(z / rho);
    }
    return enclosing_disk(image);
}

cplx evaluate_structural(const PolynomialSequence& seq, int m, cplx rho, cplx tau, cplx z) {
    for (int k = 1; k <= m; ++k)
        z = seq.map(k)(z);
    return z / rho - tau;
}

ChebyshevSolution structured_chebyshev(const PolynomialSequence& seq, int m,
                                       const SolverParams& params) {
    check_m(seq, m);
    if (params.depth_offset < 8)
        throw InvalidArgument("structural norm needs a sample at depth >= m + 8");
    const Polynomial fm = seq.composed(m);
    const cplx rho = fm.leading();
    const EscapeRadius radius = escape_radius(seq, params.radius_margin);

    cplx tau{};
    if (!seq.even_monomial())
        tau = tau_sequence(seq, m, m + params.tau_span, radius, params).tau;

    ChebyshevSolution sol;
    sol.monic = fm / rho - Polynomial::constant(tau);
    sol.degree = sol.monic.degree();
    sol.tau = tau;

    // The pullback from level m + offset down to level m lands on F_m of the
    // deep Julia sample, so |F_m/rho - tau| is read off without the forward
    // error growth of evaluating F_m near J.
    const PullbackSample sample = pullback_sample(seq, m + params.depth_offset, m, radius.radius,
                                                  params.budget, params.seed, params.pullback);
    std::vector<cplx> values(sample.points.size());
    std::transform(sample.points.begin(), sample.points.end(), values.begin(),
                   [&](cplx u) { return u / rho - tau; });
    double norm = 0.0;
    for (const auto& v : values)
        norm = std::max(norm, std::abs(v));
    for (int round = 0; round < params.refine_rounds; ++round)
        for (const auto& u : refine_farthest(seq, sample, tau * rho, params.refine_candidates,
                                             params.pullback))
            norm = std::max(norm, std::abs(u / rho - tau));
    sol.sup_norm = norm;
    sol.extremal_count = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [norm](cplx v) { return std::abs(v) >= (1.0 - 1e-6) * norm; }));
    sol.extremal_count = std::max<std::size_t>(sol.extremal_count, 1);
    return sol;
}

VerificationReport verify_structural(const PolynomialSequence& seq, int m, const PointCloud& sample,
                                  const SolverParams& params) {
    check_m(seq, m);
    const double degree = seq.degree_product(m);
    if (static_cast<double>(sample.points.size()) < 4.0 * degree)
        throw InvalidArgument("verification sample needs at least 4 deg F_m points");

    VerificationReport report;
    report.m = m;
    report.degree = static_cast<int>(degree);
    report.sample_size = sample.points.size();
    report.depth = sample.provenance.depth;
    report.seed = sample.provenance.seed;

    const ChebyshevSolution minimax = lawson_minimax(sample.points, report.degree, params.lawson);
    const ChebyshevSolution structural = structured_chebyshev(seq, m, params);
    const cplx rho = seq.composed(m).leading();

    report.tau = structural.tau.value_or(cplx{});
    report.structural = structural.monic;
    report.minimax = minimax.monic;
    report.minimax_norm = minimax.sup_norm;
    report.certificate_gap = minimax.certificate_gap;
    report.structural_deep_norm = structural.sup_norm;

    double norm = 0.0;
    double reach = 0.0;
    for (const auto& z : sample.points) {
        norm = std::max(norm, std::abs(evaluate_structural(seq, m, rho, report.tau, z)));
        reach = std::max(reach, std::abs(z));
    }
    report.structural_norm = norm;

    const Polynomial a = rescaled(structural.monic, reach);
    const Polynomial b = rescaled(minimax.monic, reach);
    for (int j = 0; j <= report.degree; ++j)
        report.coeff_deviation = std::max(report.coeff_deviation,
                                          std::abs(a[static_cast<std::size_t>(j)] -
                                                   b[static_cast<std::size_t>(j)]));
    report.norm_gap = (report.structural_norm - report.minimax_norm) / report.minimax_norm;
    report.optimality_ok = report.structural_norm >= report.minimax_norm * (1.0 - 1e-6);
    return report;
}

} // namespace juliacheb
