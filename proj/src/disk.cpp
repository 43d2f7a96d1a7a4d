#include "juliacheb/disk.hpp"

#include "juliacheb/errors.hpp"
#include "juliacheb/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace juliacheb {
namespace {

Disk from_two(cplx a, cplx b) { return {(a + b) / 2.0, std::abs(a - b) / 2.0}; }

// Circumcircle, falling back to the widest pair when the three points are
// (numerically) collinear.
Disk from_three(cplx a, cplx b, cplx c) {
    const cplx ab = b - a;
    const cplx ac = c - a;
    const double cross = ab.real() * ac.imag() - ab.imag() * ac.real();
    const double scale = std::max({std::norm(ab), std::norm(ac), std::norm(c - b)});
    if (std::abs(cross) <= 1e-14 * scale) {
        Disk best = from_two(a, b);
        for (const Disk& d : {from_two(a, c), from_two(b, c)})
            if (d.radius > best.radius)
                best = d;
        return best;
    }
    const double nab = std::norm(ab);
    const double nac = std::norm(ac);
    const cplx offset{(ac.imag() * nab - ab.imag() * nac) / (2.0 * cross),
                      (ab.real() * nac - ac.real() * nab) / (2.0 * cross)};
    const cplx centre = a + offset;
    const double r = std::max({std::abs(offset), std::abs(b - centre), std::abs(c - centre)});
    return {centre, r};
}

bool inside(const Disk& d, cplx p) {
    return std::abs(p - d.center) <= d.radius * (1.0 + 1e-14) + 1e-300;
}

} // namespace

bool Disk::contains(cplx p, double rel_tol) const noexcept {
    return std::abs(p - center) <= radius * (1.0 + rel_tol);
}

Disk enclosing_disk(std::span<const cplx> input) {
    if (input.empty())
        throw InvalidArgument("enclosing_disk needs at least one point");

    std::vector<cplx> pts(input.begin(), input.end());
    // Fixed shuffle: expected linear time, deterministic output.
    Stream stream(0x5eedd15cULL, pts.size());
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[stream.below(i)]);

    Disk d{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (inside(d, pts[i]))
            continue;
        d = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (inside(d, pts[j]))
                continue;
            d = from_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!inside(d, pts[k]))
                    d = from_three(pts[i], pts[j], pts[k]);
        }
    }

    // Rounding in the support formulas can leave a point marginally outside.
    double reach = 0.0;
    for (const auto& p : pts)
        reach = std::max(reach, std::abs(p - d.center));
    d.radius = std::max(d.radius, reach);
    return d;
}

} // namespace juliacheb
