#include "lstar/genusgf.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lstar/oracle.hpp"

namespace lstar::gf {

double default_eta() { return 6.0 * std::exp(1.0) / 16.0; }

double growth_rate(double eta) {
    if (!(eta > 0.25))
        throw contract_violation("growth_rate: eta must exceed 1/4");
    // positive branch of eta z^2/(eta z^2 - z + 1)^2 = 1/4:
    // eta z^2 - (1 + 2 sqrt(eta)) z + 1 = 0, smaller root.
    double s = 1.0 + 2.0 * std::sqrt(eta);
    double z = (s - std::sqrt(s * s - 4.0 * eta)) / (2.0 * eta);
    return 1.0 / z;
}

ExactSeries catalan_gf(int order) {
    if (order < 0) throw contract_violation("catalan_gf: negative order");
    ExactSeries a(order + 1);
    a.at(0) = 1;
    a.at(1) = -4;
    auto num = ExactSeries::one(order + 1) - a.sqrt();
    return num.shifted_down(1).scaled(mpq_class(1, 2)).truncated(order);
}

std::vector<mpq_class> derive_p_polynomial(int g, const std::vector<mpq_class>& counts) {
    if (g < 1) throw contract_violation("derive_p_polynomial: genus must be >= 1");
    if (static_cast<int>(counts.size()) < g)
        throw fit_failed("derive_p_polynomial: need at least g counts from n = 2g on");
    int top = 2 * g + static_cast<int>(counts.size()) - 1;
    ExactSeries base(top);
    base.at(0) = 1;
    base.at(1) = -4;
    // (1-4z)^{-(3g - 1/2)}
    auto b = base.pow_fractional(mpq_class(-(6 * g - 1), 2));

    // coefficients p_h for h = 2g .. 3g-1, triangular solve since b_0 = 1
    std::vector<mpq_class> p(static_cast<std::size_t>(3 * g), 0);
    for (int h = 2 * g; h <= 3 * g - 1; ++h) {
        mpq_class acc = counts[static_cast<std::size_t>(h - 2 * g)];
        for (int h2 = 2 * g; h2 < h; ++h2) acc -= p[static_cast<std::size_t>(h2)] * b[h - h2];
        p[static_cast<std::size_t>(h)] = acc;
        if (acc.get_den() != 1)
            throw fit_failed("derive_p_polynomial: non-integer coefficient");
    }
    if (p[static_cast<std::size_t>(2 * g)] == 0)
        throw fit_failed("derive_p_polynomial: lowest coefficient u^{2g} vanishes");
    // every supplied count must be reproduced
    for (int n = 2 * g; n <= top; ++n) {
        mpq_class acc = 0;
        for (int h = 2 * g; h <= 3 * g - 1 && h <= n; ++h)
            acc += p[static_cast<std::size_t>(h)] * b[n - h];
        if (acc != counts[static_cast<std::size_t>(n - 2 * g)])
            throw fit_failed("derive_p_polynomial: fitted polynomial disagrees with counts");
    }
    // P_g(1/4) != 0 is required for the singular expansion
    mpq_class at_quarter = 0;
    mpq_class pow(1, 1);
    for (int h = 0; h < 3 * g; ++h) {
        at_quarter += p[static_cast<std::size_t>(h)] * pow;
        pow /= 4;
    }
    if (at_quarter == 0) throw fit_failed("derive_p_polynomial: P_g(1/4) vanishes");
    return p;
}

const std::vector<mpq_class>& p_polynomial(int g) {
    static std::map<int, std::vector<mpq_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    if (g < 1 || g > kMaxGenus)
        throw not_implemented_genus("p_polynomial: supported genus range is 1..2");
    // brute-force matching counts c_g(n) for n = 2g .. 3g+1: g of them fix
    // the coefficients, the rest cross-check the fit
    std::vector<mpq_class> counts;
    for (int n = 2 * g; n <= 3 * g + 1; ++n)
        counts.emplace_back(static_cast<long>(oracle::count_matchings(n, g)));
    auto p = derive_p_polynomial(g, counts);
    return cache.emplace(g, std::move(p)).first->second;
}

ExactSeries matching_gf(int g, int order) {
    if (g == 0) return catalan_gf(order);
    if (g < 0 || g > kMaxGenus)
        throw not_implemented_genus("matching_gf: supported genus range is 0..2");
    const auto& p = p_polynomial(g);
    ExactSeries base(order);
    base.at(0) = 1;
    if (order >= 1) base.at(1) = -4;
    auto b = base.pow_fractional(mpq_class(-(6 * g - 1), 2));
    ExactSeries poly(order);
    for (std::size_t h = 0; h < p.size() && static_cast<int>(h) <= order; ++h)
        poly.at(static_cast<int>(h)) = p[h];
    return poly * b;
}

ExactSeries structure_gf(int g, int order) {
    auto d = structure_gf_t<mpq_class>(g, mpq_class(1), order);
    require_integer_coeffs(d);
    return d;
}

ETable arc_filtered_gf(int g, int order) {
    auto t = RatPoly::monomial(mpq_class(1), 1);
    auto e = structure_gf_t<RatPoly>(g, t, order);
    ETable table;
    table.g = g;
    table.order = order;
    table.rows.resize(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        auto& row = table.rows[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n / 2) + 1, mpz_class(0));
        const RatPoly& poly = e[n];
        if (static_cast<int>(poly.degree()) > n / 2 && !poly.is_zero())
            throw error("arc_filtered_gf: arc count exceeds n/2");
        for (std::size_t l = 0; l <= poly.degree(); ++l) {
            mpq_class q = poly.coeff(l);
            if (q.get_den() != 1 || q < 0)
                throw error("arc_filtered_gf: coefficient is not a nonnegative integer");
            row[l] = q.get_num();
        }
    }
    return table;
}

EtaSeries eta_specialize(int g, double eta, int order) {
    if (!(eta > 0)) throw contract_violation("eta_specialize: eta must be positive");
    auto big = structure_gf_t<BigFloat>(g, BigFloat(eta, kBigFloatPrecisionBits), order);
    EtaSeries s;
    s.g = g;
    s.eta = eta;
    s.series = convert_series<double, BigFloat>(big);
    return s;
}

std::vector<mpz_class> require_integer_coeffs(const ExactSeries& s) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(s.order()) + 1);
    for (int n = 0; n <= s.order(); ++n) {
        if (s[n].get_den() != 1 || s[n] < 0)
            throw error("series coefficient is not a nonnegative integer");
        out.push_back(s[n].get_num());
    }
    return out;
}

}  // namespace lstar::gf
