#include "lstar/irrgf.hpp"

#include <cmath>

namespace lstar::irr {

namespace {

// Inversion-recursion family Dst_0..Dst_g from the structure series D_0..D_g of the
// same ring; shared by the exact, eta-weighted and arc-filtered variants.
template <class R>
std::vector<Series<R>> irreducible_family(const std::vector<Series<R>>& d) {
    std::vector<Series<R>> dst;
    auto inv0 = d[0].reciprocal();
    auto one = Series<R>::one(d[0].order());
    dst.push_back(one - inv0);
    for (std::size_t g = 1; g < d.size(); ++g) {
        auto acc = (dst[0] - one) * d[g];
        for (std::size_t h = 1; h < g; ++h) acc = acc + dst[h] * d[g - h];
        dst.push_back(-(acc * inv0));
    }
    return dst;
}

}  // namespace

ExactSeries irreducible_gf(int g, int order) {
    std::vector<ExactSeries> d;
    for (int h = 0; h <= g; ++h) d.push_back(gf::structure_gf(h, order));
    auto dst = irreducible_family(d);
    gf::require_integer_coeffs(dst[static_cast<std::size_t>(g)]);
    return dst[static_cast<std::size_t>(g)];
}

std::vector<std::vector<int>> compositions(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k <= 0 || n < k) return out;
    std::vector<int> cur(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == k - 1) {
            cur[static_cast<std::size_t>(pos)] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = 1; rest - v >= k - pos - 1; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

ExactSeries irreducible_gf_composition(int g, int order) {
    if (g < 1) throw contract_violation("irreducible_gf_composition: genus must be >= 1");
    std::vector<ExactSeries> d;
    for (int h = 0; h <= g; ++h) d.push_back(gf::structure_gf(h, order));
    auto inv0 = d[0].reciprocal();

    auto result = d[static_cast<std::size_t>(g)] * inv0 * inv0;
    for (int j = 0; j <= g - 2; ++j) {
        // (-1)^{g+1-j} / D_0^{g+1-j} * sum over compositions of g into g-j parts
        ExactSeries sum(order);
        for (const auto& sigma : compositions(g, g - j)) {
            auto prod = ExactSeries::one(order);
            for (int part : sigma) prod = prod * d[static_cast<std::size_t>(part)];
            sum = sum + prod;
        }
        auto term = sum;
        for (int rep = 0; rep < g + 1 - j; ++rep) term = term * inv0;
        if ((g + 1 - j) % 2 != 0) term = -term;
        result = result + term;
    }
    gf::require_integer_coeffs(result);
    return result;
}

gf::ETable irreducible_arc_filtered(int g, int order) {
    auto t = RatPoly::monomial(mpq_class(1), 1);
    std::vector<Series<RatPoly>> e;
    for (int h = 0; h <= g; ++h) e.push_back(gf::structure_gf_t<RatPoly>(h, t, order));
    auto est = irreducible_family(e);

    gf::ETable table;
    table.g = g;
    table.order = order;
    table.rows.resize(static_cast<std::size_t>(order) + 1);
    const auto& series = est[static_cast<std::size_t>(g)];
    for (int n = 0; n <= order; ++n) {
        auto& row = table.rows[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n / 2) + 1, mpz_class(0));
        const RatPoly& poly = series[n];
        if (static_cast<int>(poly.degree()) > n / 2 && !poly.is_zero())
            throw error("irreducible_arc_filtered: arc count exceeds n/2");
        for (std::size_t l = 0; l <= poly.degree(); ++l) {
            mpq_class q = poly.coeff(l);
            if (q.get_den() != 1 || q < 0)
                throw error("irreducible_arc_filtered: coefficient is not a nonnegative integer");
            row[l] = q.get_num();
        }
    }
    return table;
}

FloatSeries structure_gf_eta(int g, double eta, int order) {
    return gf::eta_specialize(g, eta, order).series;
}

FloatSeries irreducible_gf_eta(int g, double eta, int order) {
    if (!(eta > 0)) throw contract_violation("irreducible_gf_eta: eta must be positive");
    std::vector<Series<BigFloat>> d;
    BigFloat t(eta, kBigFloatPrecisionBits);
    for (int h = 0; h <= g; ++h) d.push_back(gf::structure_gf_t<BigFloat>(h, t, order));
    auto dst = irreducible_family(d);
    return convert_series<double, BigFloat>(dst[static_cast<std::size_t>(g)]);
}

LoopWeights LoopWeights::defaults() {
    return LoopWeights{std::exp(0.5), std::exp(1.0), std::exp(-5.0), 6.0 / 16.0};
}

FloatSeries loop_irreducible_gf(const LoopWeights& w, int order) {
    if (!(w.hairpin_factor > 0) || !(w.interior_factor > 0) || !(w.multi_factor > 0) ||
        !(w.pair_prob > 0))
        throw contract_violation("loop_irreducible_gf: weights must be positive");

    FloatSeries chain(order);  // 1/(1-z)
    for (int n = 0; n <= order; ++n) chain.at(n) = 1.0;
    auto chain2 = chain * chain;
    FloatSeries hairpin = chain.shifted_up(3).scaled(w.pair_prob * w.hairpin_factor);

    // Every occurrence of Fst on the right-hand side is multiplied by z^2,
    // so each pass freezes at least two more coefficients.
    FloatSeries f(order);
    int max_iter = order / 2 + 8;
    for (int iter = 0; iter < max_iter; ++iter) {
        auto nested = (chain2 * f).shifted_up(2).scaled(w.pair_prob * w.interior_factor);
        auto comp = f * chain;  // Fst/(1-z)
        auto multi_tail = (comp * comp) * (FloatSeries::one(order) - comp).reciprocal();
        auto multi =
            (multi_tail * chain).shifted_up(2).scaled(w.pair_prob * w.multi_factor);
        auto next = hairpin + nested + multi;
        if (next == f) return f;
        f = next;
    }
    throw fixed_point_failure("loop_irreducible_gf: no fixed point after order/2 + 8 passes");
}

FloatSeries loop_full_gf(const FloatSeries& fstar, int order) {
    if (fstar[0] != 0.0)
        throw contract_violation("loop_full_gf: fstar must have zero constant term");
    auto f = fstar.truncated(order);
    FloatSeries chain(order);
    for (int n = 0; n <= order; ++n) chain.at(n) = 1.0;
    return chain * (FloatSeries::one(order) - f * chain).reciprocal();
}

GrowthEstimate growth_estimate(const std::vector<double>& coeffs) {
    int top = static_cast<int>(coeffs.size()) - 1;
    int first_pos = 0;
    while (first_pos <= top && !(coeffs[static_cast<std::size_t>(first_pos)] > 0)) ++first_pos;
    int positive = 0;
    for (int n = first_pos; n <= top; ++n)
        if (coeffs[static_cast<std::size_t>(n)] > 0) ++positive;
    if (positive < 100 || positive != top - first_pos + 1)
        throw insufficient_data("growth_estimate: need >= 100 trailing positive coefficients");

    int lo = std::max(first_pos + 3, top / 2);
    auto c = [&](int n) { return coeffs[static_cast<std::size_t>(n)]; };

    // ratios r_n = c_{n+1}/c_n = gamma (1 + s/n + O(1/n^2)); two Richardson
    // levels cancel the 1/n and 1/n^2 terms
    auto r = [&](int n) { return c(n + 1) / c(n); };
    auto r1 = [&](int n) { return n * r(n) - (n - 1) * r(n - 1); };
    auto r2 = [&](int n) {
        double nn = static_cast<double>(n) * n;
        double mm = static_cast<double>(n - 1) * (n - 1);
        return (nn * r1(n) - mm * r1(n - 1)) / (nn - mm);
    };
    double gamma = 0.0;
    const int avg_count = 10;
    for (int n = top - avg_count; n < top; ++n) gamma += r2(n);
    gamma /= avg_count;

    // subexponential exponent: slope of log(c_n / gamma^n) against log n
    double log_gamma = std::log(gamma);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n = lo; n <= top; ++n) {
        double x = std::log(static_cast<double>(n));
        double y = std::log(c(n)) - n * log_gamma;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    double intercept = (sy - slope * sx) / count;

    GrowthEstimate est;
    est.gamma = gamma;
    est.subexp = slope;
    est.constant = std::exp(intercept);
    return est;
}

double ProbabilityTable::at(int m) const {
    if (m < 0 || m > order())
        throw out_of_range_error("probability requested beyond the series order");
    return p[static_cast<std::size_t>(m)];
}

ProbabilityTable probability_table(const std::vector<double>& irreducible,
                                   const std::vector<double>& all) {
    ProbabilityTable t;
    std::size_t n = std::min(irreducible.size(), all.size());
    t.p.resize(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        if (!(all[m] > 0)) {
            t.p[m] = 0.0;
            continue;
        }
        double v = irreducible[m] / all[m];
        if (v < -1e-9 || v > 1.0 + 1e-9) t.clamped = true;
        t.p[m] = std::min(1.0, std::max(0.0, v));
    }
    return t;
}

CandidateExpectation expected_candidates(const ProbabilityTable& table, int n) {
    if (n < 1 || n > table.order())
        throw out_of_range_error("expected_candidates: n beyond the series order");
    CandidateExpectation e;
    e.n = n;
    double acc = 0.0;
    for (int m = 1; m <= n; ++m) acc += (n - m + 1) * table.at(m);
    e.expected = acc;
    e.omega = 0.5 * n * (n + 1.0);
    e.normalized = acc / e.omega;
    return e;
}

PolymerZetaFit polymer_zeta_fit(const ProbabilityTable& table, int m_lo, int m_hi) {
    if (m_lo < 1 || m_hi > table.order() || m_hi < m_lo)
        throw out_of_range_error("polymer_zeta_fit: window beyond the series order");
    if (m_hi - m_lo + 1 < 20)
        throw fit_failed("polymer_zeta_fit: need at least 20 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int m = m_lo; m <= m_hi; ++m) {
        double p = table.at(m);
        if (!(p > 0))
            throw fit_failed("polymer_zeta_fit: nonpositive probability in the tail");
        double x = std::log(static_cast<double>(m));
        double y = std::log(p);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    double intercept = (sy - slope * sx) / count;
    PolymerZetaFit fit;
    fit.c = -slope;
    fit.b = std::exp(intercept);
    double ss = 0;
    for (int m = m_lo; m <= m_hi; ++m) {
        double resid = std::log(table.at(m)) - (intercept + slope * std::log(m));
        ss += resid * resid;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

}  // namespace lstar::irr
