#include "juliacheb/polynomial.hpp"

#include "juliacheb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace juliacheb {

Polynomial::Polynomial() : coeffs_{cplx{}} {}

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) {
    trim();
}

Polynomial Polynomial::monomial(int degree, cplx coefficient) {
    if (degree < 0)
        throw InvalidArgument("monomial degree must be nonnegative");
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coefficient;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(cplx value) { return Polynomial({value}); }

void Polynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{})
        coeffs_.pop_back();
    if (coeffs_.empty())
        coeffs_.push_back(cplx{});
}

cplx Polynomial::operator()(cplx z) const noexcept {
    cplx acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

bool Polynomial::is_even() const noexcept {
    for (std::size_t j = 1; j < coeffs_.size(); j += 2)
        if (coeffs_[j] != cplx{})
            return false;
    return true;
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::abs_eval(double radius) const noexcept {
    double acc = std::abs(coeffs_.back());
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it)
        acc = acc * radius + std::abs(*it);
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<cplx> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = (*this)[j] + rhs[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<cplx> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = (*this)[j] - rhs[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero())
        return Polynomial();
    std::vector<cplx> c(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == cplx{})
            continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(cplx scalar) const {
    std::vector<cplx> c = coeffs_;
    for (auto& v : c)
        v *= scalar;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator/(cplx scalar) const {
    if (scalar == cplx{})
        throw InvalidArgument("division of polynomial by zero");
    std::vector<cplx> c = coeffs_;
    for (auto& v : c)
        v /= scalar;
    return Polynomial(std::move(c));
}

Polynomial compose(const Polynomial& outer, const Polynomial& inner, std::size_t cap) {
    if (outer.is_constant() || inner.is_constant())
        throw InvalidArgument("compose requires nonconstant polynomials");
    const std::size_t degree = static_cast<std::size_t>(outer.degree()) *
                               static_cast<std::size_t>(inner.degree());
    if (degree + 1 > cap)
        throw CompositionTooLarge("composition of degree " + std::to_string(degree) +
                                  " exceeds the cap of " + std::to_string(cap) +
                                  " coefficients");
    // Horner in the polynomial ring.
    const auto c = outer.coeffs();
    Polynomial acc = Polynomial::constant(c.back());
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it)
        acc = acc * inner + Polynomial::constant(*it);
    return acc;
}

Polynomial derivative(const Polynomial& p) {
    if (p.is_constant())
        return Polynomial();
    const auto c = p.coeffs();
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j)
        d[j - 1] = c[j] * static_cast<double>(j);
    return Polynomial(std::move(d));
}

Polynomial rescaled(const Polynomial& p, double scale) {
    if (!(scale > 0.0))
        throw InvalidArgument("rescaling factor must be positive");
    const auto c = p.coeffs();
    const int n = p.degree();
    std::vector<cplx> out(c.size());
    for (int j = 0; j <= n; ++j)
        out[j] = c[j] * std::pow(scale, j - n);
    return Polynomial(std::move(out));
}

} // namespace juliacheb
