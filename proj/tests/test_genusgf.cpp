#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lstar/genusgf.hpp"
#include "lstar/oracle.hpp"

using namespace lstar;

TEST_CASE("catalan_gf matches the matching oracle") {
    auto c = gf::catalan_gf(10);
    CHECK(c[0] == 1);
    CHECK(c[3] == 5);
    CHECK(c[5] == 42);
    for (int m = 0; m <= 6; ++m)
        CHECK(c[m] == static_cast<long>(oracle::count_matchings(m, 0)));
}

TEST_CASE("matching_gf: genus 1 and 2 reproduce oracle counts") {
    auto c1 = gf::matching_gf(1, 8);
    CHECK(c1[2] == 1);
    CHECK(c1[3] == 10);
    CHECK(c1[4] == 70);
    CHECK(c1[5] == 420);
    for (int n = 0; n <= 6; ++n)
        CHECK(c1[n] == static_cast<long>(oracle::count_matchings(n, 1)));

    auto c2 = gf::matching_gf(2, 8);
    for (int n = 0; n <= 7; ++n)
        CHECK(c2[n] == static_cast<long>(oracle::count_matchings(n, 2)));

    CHECK(gf::matching_gf(0, 10) == gf::catalan_gf(10));
    CHECK_THROWS_AS((void)gf::matching_gf(3, 8), not_implemented_genus);
}

TEST_CASE("derive_p_polynomial: P_1(u) = u^2 and the Gamma value at 1/4") {
    std::vector<mpq_class> counts{1, 10, 70};  // c_1(2..4)
    auto p = gf::derive_p_polynomial(1, counts);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 0);
    CHECK(p[1] == 0);
    CHECK(p[2] == 1);

    // P_1(1/4) = 1/16, which the closed Gamma-product form must match:
    // Gamma(g-1/6) Gamma(g+1/2) Gamma(g+1/6) 9^g 4^{-g} / (6 pi^{3/2} Gamma(g+1))
    double expected = 1.0 / 16.0;
    double gamma_form = std::exp(std::lgamma(1.0 - 1.0 / 6.0) + std::lgamma(1.5) +
                                 std::lgamma(1.0 + 1.0 / 6.0)) *
                        std::pow(9.0 / 4.0, 1.0) /
                        (6.0 * std::pow(M_PI, 1.5) * std::tgamma(2.0));
    CHECK(gamma_form == doctest::Approx(expected).epsilon(1e-12));

    // inconsistent counts must be rejected
    std::vector<mpq_class> bad{1, 10, 71};
    CHECK_THROWS_AS((void)gf::derive_p_polynomial(1, bad), fit_failed);
    CHECK_THROWS_AS((void)gf::derive_p_polynomial(2, {mpq_class(21)}), fit_failed);
}

TEST_CASE("derive_p_polynomial: genus 2 support is {u^4, u^5}") {
    std::vector<mpq_class> counts;
    for (int n = 4; n <= 6; ++n)
        counts.emplace_back(static_cast<long>(oracle::count_matchings(n, 2)));
    auto p = gf::derive_p_polynomial(2, counts);
    REQUIRE(p.size() == 6);
    for (int h = 0; h <= 3; ++h) CHECK(p[static_cast<std::size_t>(h)] == 0);
    CHECK(p[4] != 0);

    // P_2(1/4) against the Gamma product
    double at_quarter = (p[4].get_d() + p[5].get_d() / 4.0) / 256.0;
    double gamma_form = std::exp(std::lgamma(2.0 - 1.0 / 6.0) + std::lgamma(2.5) +
                                 std::lgamma(2.0 + 1.0 / 6.0)) *
                        std::pow(9.0 / 4.0, 2.0) /
                        (6.0 * std::pow(M_PI, 1.5) * std::tgamma(3.0));
    CHECK(at_quarter == doctest::Approx(gamma_form).epsilon(1e-9));
}

TEST_CASE("structure_gf: genus 0 series") {
    auto d0 = gf::structure_gf(0, 12);
    long expected[8] = {1, 1, 1, 2, 4, 8, 17, 37};
    for (int n = 0; n <= 7; ++n) CHECK(d0[n] == expected[n]);
    for (int n = 0; n <= 12; ++n)
        CHECK(d0[n] == static_cast<long>(oracle::count_structures(n, 0, false)));
}

TEST_CASE("structure_gf: genus 1 and 2 match the oracle") {
    auto d1 = gf::structure_gf(1, 12);
    CHECK(d1[4] == 1);
    for (int n = 0; n <= 12; ++n)
        CHECK(d1[n] == static_cast<long>(oracle::count_structures(n, 1, false)));

    auto d2 = gf::structure_gf(2, 10);
    for (int n = 0; n <= 10; ++n)
        CHECK(d2[n] == static_cast<long>(oracle::count_structures(n, 2, false)));
}

TEST_CASE("arc_filtered_gf: marginals and oracle rows") {
    for (int g = 0; g <= 1; ++g) {
        auto table = gf::arc_filtered_gf(g, 10);
        auto d = gf::structure_gf(g, 10);
        for (int n = 0; n <= 10; ++n) {
            mpz_class total = 0;
            for (const auto& v : table.rows[static_cast<std::size_t>(n)]) total += v;
            CHECK(total == d[n].get_num());
        }
        for (int n = 0; n <= 9; ++n) {
            auto by_arcs = oracle::count_structures_by_arcs(n, g, false);
            for (std::size_t l = 0; l < by_arcs.size(); ++l)
                CHECK(table.get(n, static_cast<int>(l)) == by_arcs[l]);
        }
    }
    auto e0 = gf::arc_filtered_gf(0, 10);
    for (int n = 0; n <= 10; ++n) CHECK(e0.get(n, 0) == 1);
    CHECK(e0.get(3, 1) == 1);
}

TEST_CASE("eta_specialize: eta = 1 recovers the uniform counts") {
    auto d0 = gf::structure_gf(0, 24);
    auto s = gf::eta_specialize(0, 1.0, 24);
    for (int n = 0; n <= 24; ++n)
        CHECK(s.series[n] == doctest::Approx(d0[n].get_d()).epsilon(1e-9));
}

TEST_CASE("eta_specialize: weighted coefficients from the e-table") {
    double eta = gf::default_eta();
    auto s = gf::eta_specialize(0, eta, 16);
    auto table = gf::arc_filtered_gf(0, 16);
    for (int n = 0; n <= 16; ++n) {
        double expect = 0.0;
        for (std::size_t l = 0; l < table.rows[static_cast<std::size_t>(n)].size(); ++l)
            expect += table.rows[static_cast<std::size_t>(n)][l].get_d() *
                      std::pow(eta, static_cast<double>(l));
        CHECK(s.series[n] == doctest::Approx(expect).epsilon(1e-9));
    }
    // n = 3: empty structure plus the single arc (1,3)
    CHECK(s.series[3] == doctest::Approx(1.0 + eta).epsilon(1e-12));
}

TEST_CASE("eta_specialize: positive exactly where structures exist") {
    double eta = gf::default_eta();
    for (int g = 0; g <= 2; ++g) {
        auto s = gf::eta_specialize(g, eta, 40);
        auto d = gf::structure_gf(g, 40);
        for (int n = 0; n <= 40; ++n) {
            if (d[n] > 0)
                CHECK(s.series[n] > 0.0);
            else
                CHECK(s.series[n] == doctest::Approx(0.0).epsilon(1e-12));
        }
        // the first genus-g structure needs 2g arcs on 4g vertices
        if (g >= 1) {
            CHECK(d[4 * g - 1] == 0);
            CHECK(d[4 * g] > 0);
        }
    }
}

TEST_CASE("eta_specialize: growth increases with eta") {
    auto uniform = gf::eta_specialize(0, 1.0, 120);
    auto heavy = gf::eta_specialize(0, 1.5, 120);
    double r1 = uniform.series[120] / uniform.series[119];
    double r2 = heavy.series[120] / heavy.series[119];
    CHECK(r2 > r1);
}

TEST_CASE("growth_rate: closed form at eta = 1") {
    double expected = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(gf::growth_rate(1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(2.618).epsilon(1e-3));
    CHECK(gf::default_eta() == doctest::Approx(1.01936).epsilon(1e-4));
}

TEST_CASE("asymptotic exponent: log(d_g(n)/gamma^n) slope vs log n") {
    const int N = 400;
    double gamma = (3.0 + std::sqrt(5.0)) / 2.0;
    for (int g = 0; g <= 1; ++g) {
        auto d = to_doubles(gf::structure_gf(g, N));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (int n = N / 2; n <= N; ++n) {
            double x = std::log(static_cast<double>(n));
            double y = std::log(d[static_cast<std::size_t>(n)]) - n * std::log(gamma);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        CHECK(std::abs(slope - 3.0 * (g - 0.5)) < 0.15);
    }
}
