#include "juliacheb/errors.hpp"
#include "juliacheb/random.hpp"
#include "juliacheb/roots.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>

using namespace juliacheb;

namespace {

// Greedy matching; fine for the small, well separated sets used here.
double match_error(std::vector<cplx> got, std::vector<cplx> want) {
    double worst = 0.0;
    for (const auto& w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](cplx a, cplx b) {
            return std::abs(a - w) < std::abs(b - w);
        });
        worst = std::max(worst, std::abs(*it - w));
        got.erase(it);
    }
    return worst;
}

} // namespace

TEST_CASE("preimage examples") {
    CHECK(match_error(preimages(Polynomial{-2.0, 0.0, 1.0}, 2.0), {2.0, -2.0}) == 0.0);
    CHECK(match_error(preimages(Polynomial{0.0, 0.0, 1.0}, -1.0), {cplx(0, 1), cplx(0, -1)}) == 0.0);

    const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const auto cube = preimages(Polynomial::monomial(3), 8.0);
    CHECK(cube.size() == 3);
    CHECK(match_error(cube, {2.0, 2.0 * omega, 2.0 * omega * omega}) < 1e-12);
}

TEST_CASE("quadratic preimages are symmetric about the critical point") {
    const Polynomial p{cplx(0.1, -0.3), cplx(0.4, 0.2), 1.0};
    const cplx centre = -p[1] / (2.0 * p[2]);
    const auto r = preimages(p, cplx(1.7, 0.9));
    CHECK(r[0] - centre == -(r[1] - centre));
}

TEST_CASE("random polynomials: count and residual") {
    Stream s(3, 0);
    RootOptions opts;
    for (int trial = 0; trial < 60; ++trial) {
        const int degree = 1 + static_cast<int>(s.below(9));
        std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
        for (auto& a : c)
            a = {2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0};
        c.back() += 1.0;
        const Polynomial p(c);
        const cplx w{4.0 * s.uniform() - 2.0, 4.0 * s.uniform() - 2.0};
        const auto roots = preimages(p, w, opts);
        REQUIRE(roots.size() == static_cast<std::size_t>(p.degree()));
        for (const auto& r : roots)
            CHECK(std::abs(p(r) - w) <= opts.tolerance * residual_scale(p, w, r));
    }
}

TEST_CASE("multiple roots are merged with multiplicity") {
    // (z - 1)^2 (z + 2) = z^3 - 3z + 2
    const auto roots = preimages(Polynomial{2.0, -3.0, 0.0, 1.0}, 0.0);
    REQUIRE(roots.size() == 3);
    const auto ones = std::count_if(roots.begin(), roots.end(),
                                    [](cplx r) { return std::abs(r - 1.0) < 1e-6; });
    CHECK(ones == 2);
    CHECK(std::any_of(roots.begin(), roots.end(), [](cplx r) { return std::abs(r + 2.0) < 1e-12; }));
}

TEST_CASE("critical value of a high power") {
    const auto roots = preimages(Polynomial::monomial(6), 0.0);
    REQUIRE(roots.size() == 6);
    for (const auto& r : roots)
        CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("iteration cap raises NonConvergence") {
    RootOptions opts;
    opts.max_sweeps = 1;
    CHECK_THROWS_AS(preimages(Polynomial{0.3, -1.1, 0.7, 0.2, 0.0, 1.0}, cplx(0.4, 2.0), opts),
                    NonConvergence);
}

TEST_CASE("constant polynomials are rejected") {
    CHECK_THROWS_AS(preimages(Polynomial::constant(2.0), 1.0), InvalidArgument);
}
