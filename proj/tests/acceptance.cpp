// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include "juliacheb/app.hpp"
#include "juliacheb/io.hpp"
#include "juliacheb/julia.hpp"
#include "juliacheb/minimax.hpp"
#include "juliacheb/structural.hpp"
#include "juliacheb/widom.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace juliacheb;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

PolynomialSequence autonomous(Polynomial p) {
    return PolynomialSequence::periodic({std::move(p)}, 96);
}

std::vector<PolynomialSequence> random_quadratics() {
    std::vector<PolynomialSequence> out;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        out.push_back(PolynomialSequence::quadratic_random(0.2, seed, 96));
    return out;
}

SolverParams default_params() {
    SolverParams p;
    p.seed = 42;
    return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1(Outcome& o) {
    const auto seq = autonomous(Polynomial{-2.0, 0.0, 1.0});
    const auto cloud = sample_julia(seq, 18, 4000, escape_radius(seq), 7);
    const std::vector<Polynomial> expected = {Polynomial{-2.0, 0.0, 1.0},
                                              Polynomial{2.0, 0.0, -4.0, 0.0, 1.0}};
    for (int m = 1; m <= 2; ++m) {
        const auto r = verify_structural(seq, m, cloud, default_params());
        const auto& want = expected[static_cast<std::size_t>(m - 1)];
        double off = 0.0;
        for (std::size_t j = 0; j < want.coeffs().size(); ++j)
            off = std::max(off, std::abs(r.structural[j] - want[j]));
        o.require(off < 1e-9, "structural polynomial at m=" + std::to_string(m));
        o.require(r.coeff_deviation < 1e-4, "coefficient deviation at m=" + std::to_string(m));
        o.require(std::abs(r.structural_norm - 2.0) <= 0.01 && std::abs(r.minimax_norm - 2.0) <= 0.01,
                  "norms 2 +- 0.5% at m=" + std::to_string(m));
        o.detail << "m=" << m << " dev=" << r.coeff_deviation << " norms=" << r.structural_norm << "/"
                 << r.minimax_norm << "; ";
    }
    const double cap = capacity(seq);
    o.require(cap == 1.0, "capacity exactly 1");
    o.detail << "cap=" << cap;
}

void criterion2(Outcome& o) {
    const auto seq = autonomous(Polynomial{0.0, -2.0, 1.0});
    const auto params = default_params();
    const auto tau = tau_sequence(seq, 1, 1 + params.tau_span, escape_radius(seq), params);
    o.require(std::abs(tau.tau - 1.0) <= 1e-3, "tau_1 = 1 +- 1e-3");
    const auto sol = structured_chebyshev(seq, 1, params);
    const Polynomial want{-1.0, -2.0, 1.0};
    double off = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        off = std::max(off, std::abs(sol.monic[j] - want[j]));
    o.require(off < 1e-3, "polynomial z^2 - 2z - 1");
    o.require(std::abs(sol.sup_norm - 2.0) <= 0.02, "norm 2 +- 1%");
    o.detail << "tau=" << tau.tau.real() << "+" << tau.tau.imag() << "i norm=" << sol.sup_norm;
}

// Criteria 3 to 5 share the same ten sequences.
void criteria3to5(Outcome& c3, Outcome& c4, Outcome& c5) {
    const auto params = default_params();
    double worst_dev = 0.0, worst_gap = 0.0, worst_tau = 0.0, worst_rise = -1e300;
    const int m = 2;
    for (const auto& seq : random_quadratics()) {
        const auto radius = escape_radius(seq);
        const auto cloud = sample_julia(seq, 32, 20000, radius, 7);
        const auto r = verify_structural(seq, m, cloud, params);
        worst_dev = std::max(worst_dev, r.coeff_deviation);
        worst_gap = std::max(worst_gap, r.norm_gap);
        c3.require(r.coeff_deviation < 1e-3, seq.description() + " coefficient deviation");
        c3.require(r.norm_gap < 1e-3, seq.description() + " norm gap");
        c3.require(r.structural_norm >= r.minimax_norm * (1 - 1e-6), seq.description() + " optimality");

        TauResult trace;
        try {
            trace = tau_sequence(seq, m, m + params.tau_span, radius, params);
        } catch (const TauNoConvergence& e) {
            trace = e.result();
        }
        for (const auto& e : trace.trace)
            worst_tau = std::max(worst_tau, std::abs(e.tau));
        for (std::size_t i = 1; i < trace.trace.size(); ++i) {
            const double rise = trace.trace[i].norm - trace.trace[i - 1].norm;
            worst_rise = std::max(worst_rise, rise);
            c5.require(rise <= 1e-6, seq.description() + " C_l increases at l=" + std::to_string(trace.trace[i].l));
        }
    }
    c4.require(worst_tau < 1e-6, "|tau_l| < 1e-6");
    c3.detail << "worst dev=" << worst_dev << " worst gap=" << worst_gap;
    c4.detail << "max |tau_l|=" << worst_tau;
    c5.detail << "largest step C_l - C_(l-1)=" << worst_rise;
}

void criterion6(Outcome& o) {
    GridSpec grid;
    grid.resolution = 401;
    const auto z2 = autonomous(Polynomial{0.0, 0.0, 1.0});
    {
        const auto radius = escape_radius(z2);
        const auto julia = sample_julia(z2, 20, 4000, radius, 3);
        const auto profile = distance_profile(z2, radius, 10, grid, filled_set_sample(z2, radius, grid, julia.points));
        double worst = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const double expected = std::pow(radius.radius, std::pow(0.5, k)) - 1.0;
            worst = std::max(worst, std::abs(profile.values[static_cast<std::size_t>(k - 1)] - expected));
        }
        o.require(worst <= profile.cell_diagonal(), "z^2 profile within one cell");
        o.detail << "z^2 worst error=" << worst << " cell=" << profile.cell_diagonal() << "; ";
    }
    std::vector<PolynomialSequence> tests = random_quadratics();
    tests.push_back(z2);
    tests.push_back(autonomous(Polynomial{-2.0, 0.0, 1.0}));
    tests.push_back(PolynomialSequence::quadratic_constant(0.25, 96));
    tests.push_back(PolynomialSequence::quadratic_perturbed(0.25, 96));
    grid.resolution = 201;
    for (const auto& seq : tests) {
        const auto radius = escape_radius(seq);
        const auto julia = sample_julia(seq, 20, 4000, radius, 3);
        const auto profile = distance_profile(seq, radius, 10, grid, filled_set_sample(seq, radius, grid, julia.points));
        for (std::size_t k = 1; k < profile.values.size(); ++k)
            o.require(profile.values[k] <= profile.values[k - 1] + profile.cell_diagonal(),
                      seq.description() + " nonincreasing");
    }
    o.detail << tests.size() << " sequences nonincreasing";
}

void criterion7(Outcome& o) {
    for (const auto& seq : {PolynomialSequence::quadratic_constant(0.25), PolynomialSequence::quadratic_constant(-2.0),
                            PolynomialSequence::quadratic_perturbed(0.25), PolynomialSequence::quadratic_random(0.2, 3)})
        o.require(capacity(seq) == 1.0, seq.description() + " capacity 1");
    const auto two = autonomous(Polynomial{0.0, 0.0, 2.0});
    const double cap = capacity(two);
    o.require(std::abs(cap - 0.5) <= 1e-9, "2z^2 capacity 0.5");
    double worst = std::abs(cap - capacity_from_composition(two, 8));
    const auto mixed = PolynomialSequence::periodic({Polynomial{0.3, 0.0, 1.5}, Polynomial{0.0, 0.1, 0.0, 0.7}});
    worst = std::max(worst, std::abs(capacity(mixed) - capacity_from_composition(mixed, 8, 2)));
    const auto q = PolynomialSequence::quadratic_random(0.2, 3);
    worst = std::max(worst, std::abs(capacity(q) - capacity_from_composition(q, 8)));
    o.require(worst <= 1e-9, "series agrees with composition at n=8");
    o.detail << "2z^2 cap=" << cap << " series/composition gap=" << worst;
}

void criterion8(Outcome& o) {
    std::vector<cplx> circle;
    for (int i = 0; i < 512; ++i)
        circle.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / 512));
    double worst_circle = 0.0;
    for (int n : {1, 3, 8}) {
        const auto sol = lawson_minimax(circle, n);
        for (int j = 0; j < n; ++j)
            worst_circle = std::max(worst_circle, std::abs(sol.monic[static_cast<std::size_t>(j)]));
        worst_circle = std::max(worst_circle, std::abs(sol.sup_norm - 1.0));
    }
    o.require(worst_circle < 1e-6, "unit circle monomials");

    std::vector<cplx> segment;
    for (int i = 0; i <= 2000; ++i)
        segment.push_back(-2.0 + 0.002 * i);
    const std::vector<Polynomial> cheb = {Polynomial{-2.0, 0.0, 1.0}, Polynomial{0.0, -3.0, 0.0, 1.0},
                                          Polynomial{2.0, 0.0, -4.0, 0.0, 1.0}};
    double worst_segment = 0.0;
    for (const auto& want : cheb) {
        const auto sol = lawson_minimax(segment, want.degree());
        for (std::size_t j = 0; j < want.coeffs().size(); ++j)
            worst_segment = std::max(worst_segment, std::abs(sol.monic[j] - want[j]));
    }
    o.require(worst_segment < 1e-5, "2 T_n(x/2) on [-2, 2]");
    o.detail << "circle error=" << worst_circle << " segment error=" << worst_segment;
}

void criterion9(Outcome& o) {
    const auto params = default_params();
    const auto z2 = autonomous(Polynomial{0.0, 0.0, 1.0});
    double circle_err = 0.0;
    for (int m = 1; m <= 6; ++m)
        circle_err = std::max(circle_err, std::abs(widom_factor(z2, m, params).widom - 1.0));
    o.require(circle_err <= 1e-9, "unit circle rows 1 +- 1e-9");

    double lowest = 1e300;
    std::size_t rows = 0;
    for (const auto& seq : random_quadratics())
        for (int m = 1; m <= 3; ++m) {
            lowest = std::min(lowest, widom_factor(seq, m, params).widom);
            ++rows;
        }
    ConjectureParams cp;
    cp.solver = params;
    for (auto preset : {ConjecturePreset::Autonomous, ConjecturePreset::Perturbed}) {
        const auto report = conjecture_run(preset, 6, cp);
        o.require(!report.failure.has_value(), "conjecture run " + to_string(preset) + " complete");
        for (const auto& row : report.rows) {
            lowest = std::min(lowest, row.widom);
            ++rows;
        }
    }
    o.require(lowest >= 1.0 - 1e-9, "W >= 1 - 1e-9");
    o.detail << "circle error=" << circle_err << " min W=" << lowest << " over " << rows << " rows";
}

void criterion10(Outcome& o) {
    const auto root = fs::temp_directory_path() / "juliacheb_acceptance";
    fs::remove_all(root);
    const std::string base = "seed = 2024\nconjecture.preset = autonomous\nconjecture.m_max = 8\n";
    auto run = [&](const std::string& text, const std::string& dir) {
        RunOptions opts;
        opts.config_text = text;
        opts.out_dir = root / dir;
        std::ostringstream log;
        const int code = run_subcommand("conjecture", opts, log);
        o.require(code == 0, dir + " exit code " + std::to_string(code));
        return code == 0 ? json::parse(read_text(root / dir / "conjecture.json")) : json{};
    };
    const auto first = run(base, "run");
    const std::string table = read_text(root / "run" / "conjecture.csv");
    run(base, "run");
    o.require(read_text(root / "run" / "conjecture.csv") == table, "byte-identical table");
    const auto doubled = run(base + "conjecture.budget_scale = 2\n", "doubled");
    if (!o.pass)
        return;
    o.require(first["rows"].size() == 8, "8 rows");
    double worst = 0.0;
    for (std::size_t i = 0; i < first["rows"].size(); ++i) {
        const double w = first["rows"][i]["widom"].get<double>();
        const double w2 = doubled["rows"][i]["widom"].get<double>();
        o.require(w >= 1.0, "W >= 1");
        worst = std::max(worst, std::abs(w2 - w) / w);
    }
    o.require(worst < 0.01, "doubling the budget moves W by < 1%");
    o.detail << "rows=" << first["rows"].size() << " max relative change=" << worst;
    fs::remove_all(root);
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Outcome&)> body;
};

void report(int id, const char* title, Outcome& o, double elapsed, double limit) {
    if (limit > 0 && elapsed > limit)
        o.require(false, "runtime over " + std::to_string(static_cast<int>(limit)) + " s");
    std::printf("criterion %2d: %s  %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", title, elapsed,
                o.detail.str().c_str());
    std::fflush(stdout);
}

} // namespace

int main() {
    bool all = true;
    auto guard = [](Outcome& o, const std::function<void(Outcome&)>& body) {
        try {
            body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
    };

    const std::vector<Criterion> singles = {
        {1, "z^2 - 2 regression", 30, criterion1},
        {2, "shifted case z^2 - 2z", 30, criterion2},
    };
    for (const auto& c : singles) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        guard(o, c.body);
        report(c.id, c.title, o, seconds_since(t0), c.limit_seconds);
        all = all && o.pass;
    }

    {
        Outcome c3, c4, c5;
        const auto t0 = std::chrono::steady_clock::now();
        guard(c3, [&](Outcome&) { criteria3to5(c3, c4, c5); });
        const double elapsed = seconds_since(t0);
        report(3, "random quadratic sequences, m = 2", c3, elapsed, 300);
        report(4, "even maps give zero shifts", c4, elapsed, 0);
        report(5, "C_l trace nonincreasing", c5, elapsed, 0);
        all = all && c3.pass && c4.pass && c5.pass;
    }

    const std::vector<Criterion> rest = {
        {6, "distance profile", 0, criterion6},
        {7, "capacity", 0, criterion7},
        {8, "minimax oracles", 0, criterion8},
        {9, "Widom invariants", 0, criterion9},
        {10, "conjecture reproducibility", 0, criterion10},
    };
    for (const auto& c : rest) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        guard(o, c.body);
        report(c.id, c.title, o, seconds_since(t0), c.limit_seconds);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
