#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "lstar/rings.hpp"

namespace lstar {

/// Formal power series known up to a fixed truncation order N (inclusive),
/// over a coefficient ring R.  Values are immutable in spirit: every
/// operation returns a fresh series and the result order is the minimum of
/// the operand orders.  Exact rings (mpq_class, RatPoly) reproduce bit-equal
/// results across runs; the double ring is documented to hold a 1e-9
/// relative tolerance per operation on the well-conditioned series used here.
template <class R>
class Series {
public:
    using ring_t = ring<R>;

    explicit Series(int order) : coeffs_(static_cast<std::size_t>(order) + 1, ring_t::zero()) {}

    Series(std::initializer_list<R> cs) : coeffs_(cs) {
        if (coeffs_.empty()) coeffs_.push_back(ring_t::zero());
    }

    static Series from_coeffs(std::vector<R> cs) {
        Series s(0);
        if (cs.empty()) cs.push_back(ring_t::zero());
        s.coeffs_ = std::move(cs);
        return s;
    }

    /// The constant series c to the given order.
    static Series constant(const R& c, int order) {
        Series s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static Series one(int order) { return constant(ring_t::one(), order); }

    /// The indeterminate z.
    static Series z(int order) {
        Series s(order);
        if (order >= 1) s.coeffs_[1] = ring_t::one();
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const R& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    R& at(int n) { return coeffs_[static_cast<std::size_t>(n)]; }

    const std::vector<R>& coeffs() const { return coeffs_; }

    /// Index of the first nonzero coefficient; order()+1 for the zero series.
    int valuation() const {
        for (int n = 0; n <= order(); ++n)
            if (!ring_t::is_zero(coeffs_[n])) return n;
        return order() + 1;
    }

    Series truncated(int new_order) const {
        Series s(new_order);
        int m = std::min(new_order, order());
        for (int n = 0; n <= m; ++n) s.coeffs_[n] = coeffs_[n];
        return s;
    }

    /// Multiply by z^k (shift coefficients up), same order.
    Series shifted_up(int k) const {
        Series s(order());
        for (int n = order(); n >= k; --n) s.coeffs_[n] = coeffs_[n - k];
        return s;
    }

    /// Divide by z^k; requires the k lowest coefficients to vanish.
    Series shifted_down(int k) const {
        for (int n = 0; n < std::min(k, order() + 1); ++n)
            if (!ring_t::is_zero(coeffs_[n]))
                throw contract_violation("shifted_down: series has a lower-order term");
        Series s(order());
        for (int n = 0; n + k <= order(); ++n) s.coeffs_[n] = coeffs_[n + k];
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series r(n);
        for (int i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series r(n);
        for (int i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return r;
    }

    friend Series operator-(const Series& a) {
        Series r(a.order());
        for (int i = 0; i <= a.order(); ++i) r.coeffs_[i] = ring_t::zero() - a.coeffs_[i];
        return r;
    }

    /// Truncated Cauchy product.
    friend Series operator*(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series r(n);
        for (int i = 0; i <= n; ++i) {
            if (ring_t::is_zero(a.coeffs_[i])) continue;
            for (int j = 0; i + j <= n; ++j) {
                if (ring_t::is_zero(b.coeffs_[j])) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    Series scaled(const R& c) const {
        Series r(order());
        for (int i = 0; i <= order(); ++i) r.coeffs_[i] = coeffs_[i] * c;
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Multiplicative inverse: b with a*b = 1 up to the truncation order.
    Series reciprocal() const {
        if (ring_t::is_zero(coeffs_[0]))
            throw not_invertible("reciprocal of a series with zero constant term");
        int n = order();
        Series r(n);
        R inv0 = ring_t::div(ring_t::one(), coeffs_[0]);
        r.coeffs_[0] = inv0;
        for (int k = 1; k <= n; ++k) {
            R acc = ring_t::zero();
            for (int i = 1; i <= k; ++i) {
                if (ring_t::is_zero(coeffs_[i])) continue;
                acc += coeffs_[i] * r.coeffs_[k - i];
            }
            r.coeffs_[k] = (ring_t::zero() - acc) * inv0;
        }
        return r;
    }

    /// Square root with s*s = a up to order; exact rings require a_0 = 1.
    Series sqrt() const {
        R s0 = ring_t::sqrt0(coeffs_[0]);
        int n = order();
        Series r(n);
        r.coeffs_[0] = s0;
        R twos0 = s0 + s0;
        for (int k = 1; k <= n; ++k) {
            R acc = coeffs_[k];
            for (int i = 1; i < k; ++i) acc = acc - r.coeffs_[i] * r.coeffs_[k - i];
            r.coeffs_[k] = ring_t::div(acc, twos0);
        }
        return r;
    }

    /// Composition outer(inner); inner must have zero constant term.
    /// Horner over the truncated ring; terms of the outer series beyond
    /// order/valuation(inner) cannot contribute and are skipped.
    friend Series compose(const Series& outer, const Series& inner) {
        if (!ring_t::is_zero(inner[0]))
            throw composition_diverges("composition requires inner constant term 0");
        int n = std::min(outer.order(), inner.order());
        Series in = inner.truncated(n);
        int v = in.valuation();
        int top = outer.order();
        if (v > 0) top = std::min(top, n / std::max(v, 1));
        Series r = Series::constant(outer[top], n);
        for (int k = top - 1; k >= 0; --k) {
            r = r * in;
            r.coeffs_[0] += outer.coeffs_[k];
        }
        return r;
    }

    /// a^p for rational p via the power-series recurrence
    ///   n b_n = sum_{k=1..n} ((p+1)k - n) a_k b_{n-k},
    /// valid when a_0 = 1.  For p = 1/2 this agrees with sqrt().
    Series pow_fractional(const mpq_class& p) const {
        if (!(coeffs_[0] == ring_t::one()))
            throw contract_violation("pow_fractional requires constant term 1");
        int n = order();
        Series r(n);
        r.coeffs_[0] = ring_t::one();
        for (int m = 1; m <= n; ++m) {
            R acc = ring_t::zero();
            for (int k = 1; k <= m; ++k) {
                if (ring_t::is_zero(coeffs_[k])) continue;
                mpq_class w = (p + 1) * k - m;
                if (w == 0) continue;
                acc += (coeffs_[k] * r.coeffs_[m - k]) * ring_t::from_mpq(w);
            }
            r.coeffs_[m] = ring_t::div(acc, ring_t::from_mpq(mpq_class(m)));
        }
        return r;
    }

private:
    std::vector<R> coeffs_;
};

using ExactSeries = Series<mpq_class>;
using FloatSeries = Series<double>;

/// Coefficientwise ring conversions.
template <class To, class From>
Series<To> convert_series(const Series<From>& s);

template <>
inline Series<mpq_class> convert_series<mpq_class, mpq_class>(const Series<mpq_class>& s) {
    return s;
}

template <>
inline Series<double> convert_series<double, mpq_class>(const Series<mpq_class>& s) {
    Series<double> r(s.order());
    for (int n = 0; n <= s.order(); ++n) r.at(n) = s[n].get_d();
    return r;
}

template <>
inline Series<BigFloat> convert_series<BigFloat, mpq_class>(const Series<mpq_class>& s) {
    Series<BigFloat> r(s.order());
    for (int n = 0; n <= s.order(); ++n) r.at(n) = ring<BigFloat>::from_mpq(s[n]);
    return r;
}

template <>
inline Series<double> convert_series<double, BigFloat>(const Series<BigFloat>& s) {
    Series<double> r(s.order());
    for (int n = 0; n <= s.order(); ++n) r.at(n) = s[n].get_d();
    return r;
}

template <>
inline Series<RatPoly> convert_series<RatPoly, mpq_class>(const Series<mpq_class>& s) {
    Series<RatPoly> r(s.order());
    for (int n = 0; n <= s.order(); ++n) r.at(n) = RatPoly(s[n]);
    return r;
}

inline std::vector<double> to_doubles(const Series<mpq_class>& s) {
    std::vector<double> v(static_cast<std::size_t>(s.order()) + 1);
    for (int n = 0; n <= s.order(); ++n) v[static_cast<std::size_t>(n)] = s[n].get_d();
    return v;
}

inline std::vector<double> to_doubles(const Series<double>& s) {
    return s.coeffs();
}

}  // namespace lstar
