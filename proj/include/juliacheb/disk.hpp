#pragma once

#include "juliacheb/polynomial.hpp"

#include <span>

namespace juliacheb {

/// Closed disk; for a Chebyshev disk `center` is the Chebyshev center.
struct Disk {
    cplx center{};
    double radius = 0.0;

    bool contains(cplx p, double rel_tol = 1e-12) const noexcept;
};

/// Smallest closed disk containing every point (Welzl, iterative
/// move-to-front form over a fixed pseudo-random order). Throws
/// InvalidArgument on an empty input.
Disk enclosing_disk(std::span<const cplx> points);

} // namespace juliacheb
