#pragma once

#include <vector>

#include "lstar/genusgf.hpp"
#include "lstar/series.hpp"

namespace lstar::irr {

/// Irreducible genus-g structures (no backbone cut point avoids every arc),
/// counted by vertex number.  Computed from the structure series by
///   Dst_0 = 1 - 1/D_0,
///   Dst_g = -((Dst_0 - 1) D_g + sum_{h=1}^{g-1} Dst_h D_{g-h}) / D_0.
ExactSeries irreducible_gf(int g, int order);

/// The same series through the closed inversion formula
///   Dst_G = D_G/D_0^2 + sum_{j=0}^{G-2} (-1)^{G+1-j} / D_0^{G+1-j}
///           * sum over compositions of G into G-j parts of prod D_parts,
/// an algebraically independent route used as a cross-check.  G >= 1.
ExactSeries irreducible_gf_composition(int g, int order);

/// Exact counts of irreducible genus-g structures by vertex and arc count.
gf::ETable irreducible_arc_filtered(int g, int order);

/// Eta-weighted irreducible structure series (per-arc weight eta).
FloatSeries irreducible_gf_eta(int g, double eta, int order);

/// Eta-weighted structure series, as plain doubles.
FloatSeries structure_gf_eta(int g, double eta, int order);

/// All compositions of n into k positive parts, lexicographic.
std::vector<std::vector<int>> compositions(int n, int k);

/// Weighted count of secondary structures under the simplified loop model:
/// per-arc pairing probability and one multiplicative factor per loop type.
struct LoopWeights {
    double hairpin_factor;
    double interior_factor;
    double multi_factor;
    double pair_prob;

    static LoopWeights defaults();
};

/// The weight series Fst of loop-scored structures covered by an outer arc,
/// the unique power-series solution of
///   Fst = p*wh z^2 z/(1-z) + p*wi z^2 Fst/(1-z)^2
///       + p*wm z^2 (Fst/(1-z))^2 / (1 - Fst/(1-z)) * 1/(1-z),
/// solved coefficient-by-coefficient (coefficient n only depends on
/// lower-order data).
FloatSeries loop_irreducible_gf(const LoopWeights& w, int order);

/// Weight series of all secondary structures:
/// F = 1/(1-z) * 1/(1 - Fst/(1-z)).
FloatSeries loop_full_gf(const FloatSeries& fstar, int order);

/// Coefficient asymptotics c_n ~ const * n^subexp * gamma^n, estimated from
/// Richardson-accelerated ratios and a log-log tail regression.
struct GrowthEstimate {
    double gamma = 0.0;
    double subexp = 0.0;
    double constant = 0.0;
};
GrowthEstimate growth_estimate(const std::vector<double>& coeffs);

/// Ratio table P(m) = irreducible(m)/all(m) in [0,1]; P(m) = 0 where no
/// structure exists.  Ratios are clamped to [0,1]; material excursions
/// (beyond float noise) set the clamped flag.
struct ProbabilityTable {
    std::vector<double> p;
    bool clamped = false;

    int order() const { return static_cast<int>(p.size()) - 1; }
    double at(int m) const;
};
ProbabilityTable probability_table(const std::vector<double>& irreducible,
                                   const std::vector<double>& all);

/// Expected candidate counts E(n) = sum_{m=1..n} (n-m+1) P(m) together
/// with the normalization Omega(n) = n(n+1)/2.
struct CandidateExpectation {
    int n = 0;
    double expected = 0.0;
    double omega = 0.0;
    double normalized = 0.0;
};
CandidateExpectation expected_candidates(const ProbabilityTable& table, int n);

/// Least-squares fit of P(m) = b m^{-c} over m in [m_lo, m_hi].
struct PolymerZetaFit {
    double b = 0.0;
    double c = 0.0;
    double residual = 0.0;
};
PolymerZetaFit polymer_zeta_fit(const ProbabilityTable& table, int m_lo, int m_hi);

}  // namespace lstar::irr
