#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "lstar/errors.hpp"

namespace lstar {

/// Floating coefficients with enough guard digits for long compositions.
/// Series built over BigFloat are converted to double at the very end.
using BigFloat = mpf_class;

inline constexpr int kBigFloatPrecisionBits = 512;

/// Dense univariate polynomial over exact rationals; the coefficient ring
/// used to track the arc-count indeterminate t inside a z-series.
/// Invariant: no trailing zero coefficients (zero polynomial is empty).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(const mpq_class& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    static RatPoly monomial(const mpq_class& c, std::size_t degree) {
        RatPoly p;
        if (c != 0) {
            p.coeffs_.assign(degree + 1, mpq_class(0));
            p.coeffs_[degree] = c;
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    mpq_class coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        RatPoly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        r.trim();
        return r;
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        RatPoly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        r.trim();
        return r;
    }
    friend RatPoly operator-(const RatPoly& a) { return RatPoly() - a; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        RatPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        r.trim();
        return r;
    }
    RatPoly& operator+=(const RatPoly& b) { return *this = *this + b; }
    RatPoly& operator-=(const RatPoly& b) { return *this = *this - b; }
    RatPoly& operator*=(const RatPoly& b) { return *this = *this * b; }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Evaluate at a double point (Horner).
    double eval(double t) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i].get_d();
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<mpq_class> coeffs_;
};

/// Coefficient-ring operations the series template needs beyond the
/// arithmetic operators: constants, embeddings, division and square roots
/// with their domain checks.
template <class T>
struct ring;

template <>
struct ring<mpq_class> {
    static constexpr bool exact = true;
    static mpq_class zero() { return mpq_class(0); }
    static mpq_class one() { return mpq_class(1); }
    static mpq_class from_mpq(const mpq_class& q) { return q; }
    static bool is_zero(const mpq_class& a) { return a == 0; }
    static mpq_class div(const mpq_class& a, const mpq_class& b) {
        if (b == 0) throw not_invertible("division by zero in exact ring");
        return a / b;
    }
    static mpq_class sqrt0(const mpq_class& a) {
        if (a != 1)
            throw not_a_square_root_domain("exact series sqrt requires constant term 1");
        return mpq_class(1);
    }
};

template <>
struct ring<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_mpq(const mpq_class& q) { return q.get_d(); }
    static bool is_zero(double a) { return a == 0.0; }
    static double div(double a, double b) {
        if (b == 0.0) throw not_invertible("division by zero in float ring");
        return a / b;
    }
    static double sqrt0(double a) {
        if (!(a > 0.0))
            throw not_a_square_root_domain("float series sqrt requires positive constant term");
        return std::sqrt(a);
    }
};

template <>
struct ring<BigFloat> {
    static constexpr bool exact = false;
    static BigFloat zero() { return BigFloat(0, kBigFloatPrecisionBits); }
    static BigFloat one() { return BigFloat(1, kBigFloatPrecisionBits); }
    static BigFloat from_mpq(const mpq_class& q) {
        return BigFloat(q, kBigFloatPrecisionBits);
    }
    static bool is_zero(const BigFloat& a) { return a == 0; }
    static BigFloat div(const BigFloat& a, const BigFloat& b) {
        if (b == 0) throw not_invertible("division by zero in bigfloat ring");
        return a / b;
    }
    static BigFloat sqrt0(const BigFloat& a) {
        if (!(a > 0))
            throw not_a_square_root_domain("bigfloat series sqrt requires positive constant term");
        return sqrt(a);
    }
};

template <>
struct ring<RatPoly> {
    static constexpr bool exact = true;
    static RatPoly zero() { return RatPoly(); }
    static RatPoly one() { return RatPoly(mpq_class(1)); }
    static RatPoly from_mpq(const mpq_class& q) { return RatPoly(q); }
    static bool is_zero(const RatPoly& a) { return a.is_zero(); }
    // Division in the polynomial ring is supported for unit (nonzero
    // constant) divisors only; that is all the series algorithms use.
    static RatPoly div(const RatPoly& a, const RatPoly& b) {
        if (b.is_zero() || !b.is_constant())
            throw not_invertible("polynomial divisor is not a unit");
        RatPoly r;
        mpq_class inv = 1 / b.coeff(0);
        for (std::size_t k = 0; k <= a.degree(); ++k)
            r += RatPoly::monomial(a.coeff(k) * inv, k);
        return r;
    }
    static RatPoly sqrt0(const RatPoly& a) {
        if (!(a == one()))
            throw not_a_square_root_domain("polynomial series sqrt requires constant term 1");
        return one();
    }
};

}  // namespace lstar
