#include "juliacheb/sequence.hpp"

#include "juliacheb/errors.hpp"
#include "juliacheb/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace juliacheb {
namespace {

std::string format_complex(cplx c) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << c.real() << "," << c.imag() << "]";
    return os.str();
}

} // namespace

double perturbation(int n) { return 0.25 * std::pow(4.0, -n); }

PolynomialSequence::PolynomialSequence(Generator generator, RegularityConstants declared,
                                       int max_depth, std::string description,
                                       bool even_monomial)
    : declared_(declared), max_depth_(max_depth), description_(std::move(description)),
      even_monomial_(even_monomial) {
    if (max_depth < 1)
        throw InvalidArgument("sequence max depth must be at least 1");
    realize(generator);
}

void PolynomialSequence::realize(const Generator& generator) {
    maps_.clear();
    maps_.reserve(static_cast<std::size_t>(max_depth_));
    for (int n = 1; n <= max_depth_; ++n) {
        try {
            Polynomial f = generator(n);
            if (f.degree() < 2) {
                failure_at_ = n;
                failure_message_ = "f_" + std::to_string(n) + " has degree " +
                                   std::to_string(f.degree()) + " < 2";
                return;
            }
            maps_.push_back(std::move(f));
        } catch (const std::exception& e) {
            failure_at_ = n;
            failure_message_ = e.what();
            return;
        }
    }
}

const Polynomial& PolynomialSequence::map(int n) const {
    if (n < 1)
        throw GeneratorFailure("sequence index must be >= 1, got " + std::to_string(n));
    if (failure_at_ != 0 && n >= failure_at_)
        throw GeneratorFailure("cannot produce f_" + std::to_string(n) + ": " + failure_message_);
    if (n > max_depth_)
        throw GeneratorFailure("f_" + std::to_string(n) + " is beyond the depth cap " +
                               std::to_string(max_depth_));
    return maps_[static_cast<std::size_t>(n - 1)];
}

PolynomialSequence PolynomialSequence::periodic(std::vector<Polynomial> polys, int max_depth,
                                                std::optional<RegularityConstants> declared) {
    if (polys.empty())
        throw InvalidArgument("periodic sequence needs at least one polynomial");
    bool even = std::all_of(polys.begin(), polys.end(),
                            [](const Polynomial& p) { return p.is_even(); });
    std::ostringstream desc;
    desc << "periodic[";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (i)
            desc << ";";
        desc << "(";
        const auto c = polys[i].coeffs();
        for (std::size_t j = 0; j < c.size(); ++j)
            desc << (j ? "," : "") << format_complex(c[j]);
        desc << ")";
    }
    desc << "]";
    auto shared = std::make_shared<std::vector<Polynomial>>(std::move(polys));
    Generator gen = [shared](int n) {
        return (*shared)[static_cast<std::size_t>(n - 1) % shared->size()];
    };
    PolynomialSequence seq(gen, declared.value_or(RegularityConstants{}), max_depth, desc.str(),
                           even);
    if (!declared) {
        const int period = static_cast<int>(shared->size());
        seq.declared_ = realized_constants(seq, std::min(period, max_depth));
    }
    return seq;
}

PolynomialSequence PolynomialSequence::quadratic_constant(cplx c, int max_depth) {
    Generator gen = [c](int) { return Polynomial{c, 0.0, 1.0}; };
    return PolynomialSequence(gen, {1.0, std::abs(c), 0.0}, max_depth,
                              "quadratic_constant c=" + format_complex(c), true);
}

PolynomialSequence PolynomialSequence::quadratic_perturbed(cplx c, int max_depth) {
    Generator gen = [c](int n) { return Polynomial{c - perturbation(n), 0.0, 1.0}; };
    double a2 = 0.0;
    for (int n = 1; n <= max_depth; ++n)
        a2 = std::max(a2, std::abs(c - perturbation(n)));
    return PolynomialSequence(gen, {1.0, a2, 0.0}, max_depth,
                              "quadratic_perturbed c=" + format_complex(c) + " eps_n=4^-n/4",
                              true);
}

PolynomialSequence PolynomialSequence::quadratic_random(double bound, std::uint64_t seed,
                                                        int max_depth) {
    if (!(bound >= 0.0))
        throw InvalidArgument("random quadratic bound must be nonnegative");
    Generator gen = [bound, seed](int n) {
        Stream s(seed, static_cast<std::uint64_t>(n));
        const double radius = bound * std::sqrt(s.uniform());
        const double angle = 2.0 * std::numbers::pi * s.uniform();
        return Polynomial{std::polar(radius, angle), 0.0, 1.0};
    };
    std::ostringstream desc;
    desc.precision(17);
    desc << "quadratic_random bound=" << bound << " seed=" << seed;
    return PolynomialSequence(gen, {1.0, bound, 0.0}, max_depth, desc.str(), true);
}

double PolynomialSequence::degree_product(int m) const {
    double d = 1.0;
    for (int k = 1; k <= m; ++k)
        d *= degree(k);
    return d;
}

cplx PolynomialSequence::leading_coefficient(int m) const {
    cplx rho = 1.0;
    for (int k = 1; k <= m; ++k)
        rho = map(k).leading() * std::pow(rho, degree(k));
    return rho;
}

double PolynomialSequence::robin_partial(int m) const {
    double sum = 0.0;
    double d = 1.0;
    for (int k = 1; k <= m; ++k) {
        d *= degree(k);
        sum += std::log(std::abs(map(k).leading())) / d;
    }
    return sum;
}

Polynomial PolynomialSequence::composed(int m, std::size_t cap) const {
    Polynomial f = map(1);
    for (int k = 2; k <= m; ++k)
        f = compose(map(k), f, cap);
    return f;
}

PolynomialSequence PolynomialSequence::conjugated_by_translation(cplx shift) const {
    // f(z + shift) - shift
    auto base = std::make_shared<PolynomialSequence>(*this);
    Generator gen = [base, shift](int n) {
        return compose(base->map(n), Polynomial{shift, 1.0}) - Polynomial::constant(shift);
    };
    PolynomialSequence seq(gen, declared_, max_depth_,
                           description_ + " conjugated by z-" + format_complex(shift),
                           even_monomial_ && shift == cplx{});
    const int realizable = failure_at_ ? failure_at_ - 1 : max_depth_;
    if (realizable >= 1) {
        const RegularityConstants r = realized_constants(seq, realizable);
        seq.declared_.a2 = std::max(declared_.a2, r.a2);
    }
    return seq;
}

PolynomialSequence PolynomialSequence::with_declared(RegularityConstants declared) const {
    PolynomialSequence seq = *this;
    seq.declared_ = declared;
    return seq;
}

RegularityConstants realized_constants(const PolynomialSequence& seq, int up_to) {
    RegularityConstants r{std::numeric_limits<double>::infinity(), 0.0,
                          -std::numeric_limits<double>::infinity()};
    for (int n = 1; n <= up_to; ++n) {
        const Polynomial& f = seq.map(n);
        const double lead = std::abs(f.leading());
        r.a1 = std::min(r.a1, lead);
        for (int j = 0; j < f.degree(); ++j)
            r.a2 = std::max(r.a2, std::abs(f[static_cast<std::size_t>(j)]) / lead);
        r.a3 = std::max(r.a3, std::log(lead) / f.degree());
    }
    return r;
}

} // namespace juliacheb
