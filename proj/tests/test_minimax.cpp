#include "juliacheb/errors.hpp"
#include "juliacheb/minimax.hpp"
#include "juliacheb/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace juliacheb;

namespace {

std::vector<cplx> circle(int n) {
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / n));
    return pts;
}

std::vector<cplx> segment(int n) {
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(-2.0 + 4.0 * i / (n - 1));
    return pts;
}

// exp(i t)(1 + 0.3 cos 3t) + 0.2 + 0.1i at 240 equispaced t.
std::vector<cplx> trefoil() {
    std::vector<cplx> pts;
    for (int i = 0; i < 240; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 240;
        pts.push_back(std::polar(1.0 + 0.3 * std::cos(3.0 * t), t) + cplx(0.2, 0.1));
    }
    return pts;
}

} // namespace

TEST_CASE("unit circle: the monomial is optimal") {
    for (int degree : {1, 3, 8}) {
        const auto sol = lawson_minimax(circle(512), degree);
        CHECK(sol.monic.degree() == degree);
        CHECK(sol.monic.leading() == cplx(1.0));
        for (int j = 0; j < degree; ++j)
            CHECK(std::abs(sol.monic[static_cast<std::size_t>(j)]) < 1e-6);
        CHECK(std::abs(sol.sup_norm - 1.0) < 1e-6);
        CHECK(sol.extremal_count >= 1);
    }
}

TEST_CASE("[-2, 2]: 2 T_n(x/2)") {
    const std::vector<std::vector<double>> expected = {
        {-2.0, 0.0, 1.0}, {0.0, -3.0, 0.0, 1.0}, {2.0, 0.0, -4.0, 0.0, 1.0}};
    for (int degree = 2; degree <= 4; ++degree) {
        const auto sol = lawson_minimax(segment(2001), degree);
        const auto& want = expected[static_cast<std::size_t>(degree - 2)];
        for (int j = 0; j <= degree; ++j)
            CHECK(std::abs(sol.monic[static_cast<std::size_t>(j)] - want[static_cast<std::size_t>(j)]) < 1e-5);
        CHECK(std::abs(sol.sup_norm - 2.0) < 1e-5);
    }
}

TEST_CASE("two points: the midpoint") {
    const auto sol = lawson_minimax(std::vector<cplx>{0.0, 2.0}, 1);
    CHECK(std::abs(sol.monic[0] + 1.0) < 1e-9);
    CHECK(std::abs(sol.sup_norm - 1.0) < 1e-9);
}

TEST_CASE("matches an SOCP solution on a non-symmetric curve") {
    // Reference optima from an interior-point conic solver on the same points.
    const auto pts = trefoil();
    const auto s3 = lawson_minimax(pts, 3);
    CHECK(s3.sup_norm == doctest::Approx(1.3270956445752806).epsilon(1e-7));
    CHECK(std::abs(s3.monic[0] - cplx(-0.8719043556224964, -0.011)) < 1e-5);
    CHECK(std::abs(s3.monic[1] - cplx(0.09, 0.12)) < 1e-5);
    CHECK(std::abs(s3.monic[2] - cplx(-0.6, -0.3)) < 1e-5);

    const auto s5 = lawson_minimax(pts, 5);
    CHECK(s5.sup_norm == doctest::Approx(1.8543137541443564).epsilon(1e-7));
    CHECK(std::abs(s5.monic[4] - cplx(-1.0, -0.5)) < 1e-5);
    CHECK(std::abs(s5.monic[0] - cplx(-0.034899781852887155, -0.047449707957442036)) < 1e-5);
}

TEST_CASE("sup norm and certificate are consistent") {
    const auto pts = trefoil();
    const auto sol = lawson_minimax(pts, 4);
    CHECK(std::abs(sup_norm(sol.monic, pts) - sol.sup_norm) <= 1e-12 * sol.sup_norm * 10);
    CHECK(sol.lower_bound <= sol.sup_norm);
    CHECK(sol.certificate_gap < 1e-6);
    CHECK(sol.converged);
}

TEST_CASE("no random perturbation improves the solution") {
    const auto pts = trefoil();
    const auto sol = lawson_minimax(pts, 4);
    Stream s(31, 0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<cplx> c(sol.monic.coeffs().begin(), sol.monic.coeffs().end());
        for (int j = 0; j < 4; ++j) {
            const cplx dir{2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0};
            c[static_cast<std::size_t>(j)] += 1e-4 * std::max(1.0, std::abs(c[static_cast<std::size_t>(j)])) * dir;
        }
        CHECK(sup_norm(Polynomial(c), pts) >= sol.sup_norm - 1e-9);
    }
}

TEST_CASE("adding a point inside the residual level does not raise the norm") {
    auto pts = trefoil();
    const auto before = lawson_minimax(pts, 3);
    pts.push_back(cplx(0.2, 0.1)); // curve centre, residual well below the max
    REQUIRE(std::abs(before.monic(pts.back())) < before.sup_norm);
    const auto after = lawson_minimax(pts, 3);
    CHECK(after.sup_norm <= before.sup_norm + 1e-12);
}

TEST_CASE("rank deficiency and bad arguments") {
    CHECK_THROWS_AS(lawson_minimax(std::vector<cplx>{1.0, 2.0}, 2), RankDeficient);
    CHECK_THROWS_AS(lawson_minimax(std::vector<cplx>(20, cplx(0.5, 0.5)), 3), RankDeficient);
    CHECK_THROWS_AS(lawson_minimax(std::vector<cplx>{0.0, 1.0, 2.0}, 0), InvalidArgument);
    // Collinear points are legal.
    CHECK_NOTHROW(lawson_minimax(segment(50), 3));
}

TEST_CASE("a stalled solver reports its last iterate") {
    LawsonOptions opts;
    opts.max_iterations = 2;
    opts.polish_after = 2;
    opts.polish = false;
    opts.stall_gap = 1e-12;
    try {
        lawson_minimax(trefoil(), 5, opts);
        FAIL("expected SolverStalled");
    } catch (const SolverStalled& e) {
        CHECK(e.last().iterations == 2);
        CHECK(e.last().certificate_gap > 1e-12);
        CHECK(e.last().monic.degree() == 5);
    }
}
