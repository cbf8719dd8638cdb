#pragma once

#include <vector>

#include <gmpxx.h>

#include "lstar/series.hpp"

namespace lstar::gf {

/// Genus range with oracle-verified coefficients; the formulas themselves
/// are genus-generic.
inline constexpr int kMaxGenus = 2;

inline constexpr int kDefaultAsymptoticOrder = 400;
inline constexpr int kDefaultTestOrder = 64;

/// Arc weight modelling the chance 6/16 of two random positions being
/// compatible, with one factor e of energy per arc: 6e/16.
double default_eta();

/// Exponential growth rate of eta-weighted structure counts: the
/// reciprocal of the smallest real root of eta z^2/(eta z^2 - z + 1)^2 = 1/4.
/// At eta = 1 this is (3 + sqrt 5)/2.
double growth_rate(double eta);

/// Generating function of non-crossing perfect matchings,
/// (1 - sqrt(1 - 4z))/(2z): the Catalan numbers.
ExactSeries catalan_gf(int order);

/// Numerator polynomial P_g(u) of the genus-g matching generating function
/// P_g(u)/(1-4u)^{3g-1/2}, reconstructed from reference counts c_g(n) for
/// n = 2g, 2g+1, ... (consecutive).  The counts beyond the first g pin all
/// free coefficients and are used as consistency checks.  Coefficients of
/// u^h vanish for h < 2g and the degree is at most 3g-1.
std::vector<mpq_class> derive_p_polynomial(int g, const std::vector<mpq_class>& counts);

/// Fitted P_g(u) for the supported range, backed by brute-force matching
/// counts; cached per genus.
const std::vector<mpq_class>& p_polynomial(int g);

/// Number of genus-g matchings by arc count: C_g(z).
ExactSeries matching_gf(int g, int order);

/// Number of genus-g structures (1-arc-free diagrams) by vertex count:
/// D_g(z) = C_g(z^2/(z^2-z+1)^2) / (z^2-z+1).
ExactSeries structure_gf(int g, int order);

/// Exact counts e_g(n, l) of genus-g structures over n vertices with
/// exactly l arcs.
struct ETable {
    int g = 0;
    int order = 0;
    std::vector<std::vector<mpz_class>> rows;  // rows[n][l], l <= n/2

    mpz_class get(int n, int l) const {
        const auto& r = rows[static_cast<std::size_t>(n)];
        return static_cast<std::size_t>(l) < r.size() ? r[static_cast<std::size_t>(l)]
                                                      : mpz_class(0);
    }
};
ETable arc_filtered_gf(int g, int order);

/// Structure counts weighted by eta per arc: d_{g,eta}(n) = sum_l e_g(n,l) eta^l.
struct EtaSeries {
    int g = 0;
    double eta = 1.0;
    FloatSeries series{0};
};
EtaSeries eta_specialize(int g, double eta, int order);

/// The bivariate substitution behind structure_gf and its eta/arc-filtered
/// variants, over any coefficient ring: with the per-arc weight t,
///   D_g(z; t) = C_g(t z^2/(t z^2 - z + 1)^2) / (t z^2 - z + 1).
template <class R>
Series<R> structure_gf_t(int g, const R& t, int order) {
    auto cg = convert_series<R, mpq_class>(matching_gf(g, order));
    Series<R> denom(order);
    denom.at(0) = ring<R>::one();
    if (order >= 1) denom.at(1) = ring<R>::zero() - ring<R>::one();
    if (order >= 2) denom.at(2) = t;
    auto inv = denom.reciprocal();
    auto u = (inv * inv).shifted_up(2).scaled(t);
    return inv * compose(cg, u);
}

/// Throws unless every coefficient is a nonnegative integer; returns them.
std::vector<mpz_class> require_integer_coeffs(const ExactSeries& s);

}  // namespace lstar::gf
