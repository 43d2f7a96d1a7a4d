#pragma once

#include "juliacheb/polynomial.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace juliacheb {

/// The three coefficient bounds of a regular polynomial sequence:
/// |lead_n| >= a1, |a_{n,j}| <= a2 |lead_n| for j < d_n, log|lead_n| <= a3 d_n.
struct RegularityConstants {
    double a1 = 1.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

/// Perturbation used by the perturbed quadratic preset: eps_n = 4^{-n}/4.
double perturbation(int n);

/// Immutable generator of f_1, f_2, ... up to a depth cap.
///
/// Maps are realized eagerly at construction so the object can be shared by
/// concurrent workers. A generator that throws (or yields degree < 2) marks
/// the first failing index; `map(n)` at or beyond it throws GeneratorFailure.
class PolynomialSequence {
public:
    using Generator = std::function<Polynomial(int n)>;

    PolynomialSequence(Generator generator, RegularityConstants declared, int max_depth,
                       std::string description, bool even_monomial);

    /// f_n = polys[(n-1) mod size]. Declared constants default to the
    /// realized ones over one period.
    static PolynomialSequence periodic(std::vector<Polynomial> polys, int max_depth = 64,
                                       std::optional<RegularityConstants> declared = {});
    /// f_n = z^2 + c.
    static PolynomialSequence quadratic_constant(cplx c, int max_depth = 64);
    /// f_n = z^2 + c - eps_n.
    static PolynomialSequence quadratic_perturbed(cplx c, int max_depth = 64);
    /// f_n = z^2 + c_n, c_n uniform in the disk |c| <= bound, seeded.
    static PolynomialSequence quadratic_random(double bound, std::uint64_t seed,
                                               int max_depth = 64);

    const Polynomial& map(int n) const;
    int degree(int n) const { return map(n).degree(); }

    int max_depth() const noexcept { return max_depth_; }
    const RegularityConstants& declared() const noexcept { return declared_; }
    const std::string& description() const noexcept { return description_; }
    bool even_monomial() const noexcept { return even_monomial_; }

    /// D_m = d_1 ... d_m (D_0 = 1), as a double since it feeds only ratios.
    double degree_product(int m) const;
    /// Leading coefficient of F_m by the recursion rho_m = lead_m rho_{m-1}^{d_m}.
    cplx leading_coefficient(int m) const;
    /// log|rho_m| / D_m accumulated as sum_k log|lead_k| / D_k.
    double robin_partial(int m) const;
    /// F_m = f_m ∘ ... ∘ f_1 by repeated composition.
    Polynomial composed(int m, std::size_t cap = kDefaultCompositionCap) const;

    /// phi ∘ f_n ∘ phi^{-1} with phi(z) = z - shift. Declared A2 is
    /// recomputed over the realized maps; A1 and A3 carry over.
    PolynomialSequence conjugated_by_translation(cplx shift) const;

    PolynomialSequence with_declared(RegularityConstants declared) const;

private:
    PolynomialSequence() = default;
    void realize(const Generator& generator);

    RegularityConstants declared_;
    int max_depth_ = 0;
    std::string description_;
    bool even_monomial_ = false;
    std::vector<Polynomial> maps_;
    int failure_at_ = 0; // 0: none
    std::string failure_message_;
};

/// Tightest constants realized by f_1..f_n.
RegularityConstants realized_constants(const PolynomialSequence& seq, int up_to);

} // namespace juliacheb
