#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "fockbench/metrics.hpp"
#include "fockbench/state_factory.hpp"

using namespace fockbench;

namespace {
const Complex root10(std::sqrt(10.0), 0.0);
}

TEST_CASE("quadrature statistics of reference states") {
    for (Complex alpha : {Complex(0.4, 0.0), Complex(1.1, -2.3), root10}) {
        // the 1e-12 identity needs truncation well below the default tail
        const auto q = quadrature_stats(coherent(alpha, {1e-24, -1}));
        CHECK_THAT(q.var_x, Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(q.var_p, Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(q.mean_x, Catch::Matchers::WithinAbs(std::numbers::sqrt2 * alpha.real(), 1e-10));
        CHECK_THAT(q.mean_p, Catch::Matchers::WithinAbs(std::numbers::sqrt2 * alpha.imag(), 1e-10));
    }
    for (int n : {0, 1, 5}) {
        const auto q = quadrature_stats(FockVector::basis(n));
        CHECK_THAT(q.var_x, Catch::Matchers::WithinAbs(n + 0.5, 1e-12));
        CHECK_THAT(q.var_p, Catch::Matchers::WithinAbs(n + 0.5, 1e-12));
    }
    // LTCS has identical uncertainties in both quadratures for every order
    for (int n : {0, 3, 10, 25}) {
        const auto q = quadrature_stats(ltcs(root10, n));
        CHECK(std::abs(q.var_x - q.var_p) < 1e-10);
    }
    CHECK_THROWS_AS(quadrature_stats(scaled(coherent(root10), 0.7)), std::invalid_argument);
}

TEST_CASE("uncertainty product bound") {
    const auto states = {coherent(Complex(0.8, 0.3)), utcs(root10, 4), ltcs(root10, 7),
                         pacs(root10, 2), deformed_pacs(root10, 3, DeformParam(0.5)),
                         bernoulli_approx(root10, 12), FockVector::basis(4)};
    for (const auto& s : states) {
        const auto q = quadrature_stats(s);
        CHECK(q.var_x * q.var_p >= 0.25 - 1e-12);
        CHECK(q.var_x > 0.0);
        CHECK(q.var_p > 0.0);
    }
}

TEST_CASE("utcs squeezing at small amplitude and the uncertainty peak") {
    const auto q = quadrature_stats(utcs(Complex(0.3, 0.0), 1));
    CHECK(std::min(q.var_x, q.var_p) < 0.5);
    CHECK_THAT(q.var_x, Catch::Matchers::WithinAbs(0.4310664085514687, 1e-12));
    CHECK_THAT(q.var_p, Catch::Matchers::WithinAbs(0.5825688073394495, 1e-12));

    int argmax = 0;
    double best = 0.0;
    for (int n = 0; n <= 30; ++n) {
        const double v = quadrature_stats(utcs(root10, n)).var_x;
        if (v > best) {
            best = v;
            argmax = n;
        }
    }
    CHECK(std::abs(argmax - 7) <= 2); // peak near |alpha|^2/sqrt(2)
}

TEST_CASE("ltcs closed-form variance, published vs corrected") {
    for (int n : {1, 2, 5, 10}) {
        const auto v = ltcs_variance_closed_form(root10, n);
        const double numeric = quadrature_stats(ltcs(root10, n)).var_x;
        CHECK_THAT(v.corrected, Catch::Matchers::WithinRel(numeric, 1e-9));
        CHECK(std::abs(v.published - numeric) > 1e-3); // recorded discrepancy
    }
    // alpha -> 0: the corrected form approaches the |N+1> variance N + 3/2
    for (int n : {1, 4}) {
        const auto v = ltcs_variance_closed_form(Complex(1e-7, 0.0), n);
        CHECK_THAT(v.corrected, Catch::Matchers::WithinAbs(n + 1.5, 1e-6));
    }
    CHECK_THROWS_AS(ltcs_variance_closed_form(root10, 0), std::domain_error);
}

TEST_CASE("utcs closed-form moments, published vs corrected") {
    for (int n : {1, 2, 5, 10}) {
        const auto m = ladder_moments(utcs(root10, n));
        const auto cf = utcs_moments_closed_form(root10, n);
        CHECK(std::abs(cf.mean_a_corrected - m.mean_a) <= 1e-9 * std::max(std::abs(m.mean_a), 1e-12));
        CHECK(std::abs(cf.mean_a2_corrected - m.mean_a2) <= 1e-9 * std::max(std::abs(m.mean_a2), 1e-12));
        CHECK_THAT(cf.mean_n_corrected, Catch::Matchers::WithinRel(m.mean_n, 1e-9));
        if (cf.published_defined) {
            CHECK(std::abs(cf.mean_a_published - m.mean_a) > 1e-3);
            CHECK(std::abs(cf.mean_n_published - m.mean_n) > 1e-3);
        }
    }
    // N = 0: all ladder expectations vanish with the vacuum
    const auto cf0 = utcs_moments_closed_form(root10, 0);
    CHECK(cf0.mean_a_corrected == Complex(0, 0));
    CHECK(cf0.mean_n_corrected == 0.0);
    CHECK_FALSE(cf0.published_defined);
}

TEST_CASE("mandel q") {
    CHECK(std::abs(mandel_q(coherent(Complex(1.7, 0.4)))) < 1e-12);
    for (int n : {1, 3, 8}) CHECK_THAT(mandel_q(FockVector::basis(n)), Catch::Matchers::WithinAbs(-1.0, 1e-12));
    for (int n = 0; n <= 40; ++n) CHECK(mandel_q(ltcs(root10, n)) < 0.0);
    CHECK_THROWS_AS(mandel_q(FockVector::basis(0)), std::domain_error);
}

TEST_CASE("bernoulli number variance") {
    CHECK(bernoulli_number_variance(Complex(0, 0), 5) == 0.0);
    CHECK_THAT(bernoulli_number_variance(root10, 10),
               Catch::Matchers::WithinRel(120.0 / 484.0, 1e-14));
    // matches the second moment of the explicit two-level state
    for (int n : {0, 4, 12}) {
        const auto m = ladder_moments(bernoulli_approx(root10, n));
        CHECK_THAT(bernoulli_number_variance(root10, n),
                   Catch::Matchers::WithinAbs(m.mean_n2 - m.mean_n * m.mean_n, 1e-12));
    }
    CHECK(bernoulli_number_variance(root10, 1000000) < 1e-4);
}

TEST_CASE("phase distribution") {
    // any Fock state has the flat distribution 1/(2 pi)
    const auto pf = phase_distribution(FockVector::basis(3), 256);
    for (double d : pf.density)
        CHECK_THAT(d, Catch::Matchers::WithinRel(1.0 / (2.0 * std::numbers::pi), 1e-12));

    for (const auto& s : {utcs(root10, 12), ltcs(root10, 12), coherent(Complex(1.0, 0.8))}) {
        const auto p = phase_distribution(s, 2048);
        CHECK_THAT(phase_integral(p), Catch::Matchers::WithinAbs(1.0, 1e-6));
        for (double d : p.density) CHECK(d >= 0.0);
        CHECK(p.theta_grid.front() == -std::numbers::pi);
    }

    // sharper phase for larger upper cutoff (real positive alpha peaks at 0)
    const auto p2 = phase_distribution(utcs(root10, 2));
    const auto p20 = phase_distribution(utcs(root10, 20));
    CHECK(phase_fwhm(p20) < phase_fwhm(p2));
    const int mid = 1024; // theta = 0 on the default grid
    CHECK(p20.density[mid] > p2.density[mid]);
}

TEST_CASE("metrics under phase-space rotation") {
    const double phi = 2.0 * std::numbers::pi * 128.0 / 2048.0;
    const Complex rotated = root10 * std::polar(1.0, phi);
    const auto base = ltcs(root10, 3);
    const auto rot = ltcs(rotated, 3);
    CHECK_THAT(mandel_q(rot), Catch::Matchers::WithinAbs(mandel_q(base), 1e-11));
    CHECK_THAT(ladder_moments(rot).mean_n, Catch::Matchers::WithinAbs(ladder_moments(base).mean_n, 1e-11));
    // the phase distribution shifts by exactly phi (128 grid slots)
    const auto pb = phase_distribution(base), pr = phase_distribution(rot);
    for (int i = 0; i < 2048; ++i)
        CHECK_THAT(pr.density[static_cast<std::size_t>((i + 128) % 2048)],
                   Catch::Matchers::WithinAbs(pb.density[static_cast<std::size_t>(i)], 1e-10));

    // a true global phase changes nothing at all
    const auto g = scaled(base, std::polar(1.0, 0.9));
    const auto qb = quadrature_stats(base), qg = quadrature_stats(g);
    CHECK(qb.var_x == qg.var_x);
    CHECK(qb.mean_x == qg.mean_x);
    CHECK(mandel_q(g) == mandel_q(base));
}

TEST_CASE("pacs-ltcs overlap") {
    // common limit |1> as alpha -> 0
    CHECK_THAT(pacs_ltcs_overlap(Complex(1e-8, 0.0), 0).numeric,
               Catch::Matchers::WithinAbs(1.0, 1e-7));
    const auto big = pacs_ltcs_overlap(root10, 30);
    CHECK(big.numeric < 0.05);

    for (int n : {0, 2, 5}) {
        const auto ov = pacs_ltcs_overlap(root10, n);
        // brute-force amplitude-sum value agrees with the closed form here
        CHECK_THAT(ov.published, Catch::Matchers::WithinRel(ov.numeric, 1e-9));
    }
    CHECK_THAT(pacs_ltcs_overlap(root10, 2).numeric,
               Catch::Matchers::WithinAbs(0.480718, 5e-6));
}

TEST_CASE("resolution of identity quadrature") {
    const auto res = resolution_of_identity_check(0, 8.0, 128, 48, 10);
    CHECK(res.max_deviation <= 1e-6);
    CHECK_FALSE(res.tail_warning);
    // the family has no vacuum component at all
    CHECK(res.vacuum_element <= 1e-8);
    // phase mismatch dies under the angular integral
    CHECK(res.offdiag_element <= 1e-6);

    const auto res1 = resolution_of_identity_check(1, 8.0, 128, 48, 10);
    CHECK(res1.max_deviation <= 1e-6);
    CHECK(res1.vacuum_element <= 1e-8);
    CHECK(res1.offdiag_element <= 1e-6);

    CHECK_THROWS_AS(resolution_of_identity_check(-1, 8.0, 64, 32, 8), std::domain_error);
    CHECK_THROWS_AS(resolution_of_identity_check(0, 8.0, 64, 32, 2), std::invalid_argument);

    // shrinking the disk must trip the tail warning
    const auto tiny = resolution_of_identity_check(0, 1.5, 64, 32, 10);
    CHECK(tiny.tail_warning);
}
