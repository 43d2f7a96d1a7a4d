#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace juliacheb {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficient j multiplies z^j.
///
/// Trailing zero coefficients are stripped on construction so `degree()` is
/// always exact; the zero polynomial is a single zero coefficient with
/// degree 0 and `is_zero()` true.
class Polynomial {
public:
    Polynomial();
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs);

    static Polynomial monomial(int degree, cplx coefficient = 1.0);
    static Polynomial constant(cplx value);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{}; }
    bool is_constant() const noexcept { return coeffs_.size() == 1; }

    cplx leading() const noexcept { return coeffs_.back(); }
    cplx operator[](std::size_t j) const noexcept {
        return j < coeffs_.size() ? coeffs_[j] : cplx{};
    }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// Horner evaluation.
    cplx operator()(cplx z) const noexcept;

    /// True when every odd-power coefficient is exactly zero.
    bool is_even() const noexcept;

    /// Largest coefficient magnitude.
    double max_abs_coeff() const noexcept;

    /// Sum of |a_j| |z|^j, the natural rounding scale for evaluating at z.
    double abs_eval(double radius) const noexcept;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(cplx scalar) const;
    Polynomial operator/(cplx scalar) const;

    bool operator==(const Polynomial& rhs) const = default;

private:
    void trim();
    std::vector<cplx> coeffs_;
};

/// Default cap on the number of coefficients a composition may produce.
inline constexpr std::size_t kDefaultCompositionCap = std::size_t{1} << 20;

/// outer ∘ inner. Throws CompositionTooLarge when the result would need
/// more than `cap` coefficients, InvalidArgument on constant operands.
Polynomial compose(const Polynomial& outer, const Polynomial& inner,
                   std::size_t cap = kDefaultCompositionCap);

Polynomial derivative(const Polynomial& p);

/// Polynomial in s obtained by substituting z = scale*s and dividing by
/// scale^degree, i.e. p(scale*s)/scale^n. Used to compare coefficient
/// vectors on a common footing for clouds of radius `scale`.
Polynomial rescaled(const Polynomial& p, double scale);

} // namespace juliacheb
