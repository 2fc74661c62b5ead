#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beam_splitter.hpp"
#include "fock_vector.hpp"
#include "metrics.hpp"
#include "state_factory.hpp"

namespace fockbench {

struct CheckReport {
    bool pass;
    std::string text;
};

/// Resolution-of-identity quadrature for the LTCS family of the given order.
inline CheckReport check_identity(int order = 0, double alpha_max = 8.0, int radial_nodes = 200,
                                  int angular_nodes = 64, int basis_dim = 12, double tol = 1e-6) {
    const auto res = resolution_of_identity_check(order, alpha_max, radial_nodes,
                                                  angular_nodes, basis_dim, tol);
    std::ostringstream os;
    os.precision(6);
    os << "identity check, order " << order << ": max deviation " << res.max_deviation
       << " (tolerance " << tol << "), estimated tail beyond |alpha|=" << alpha_max
       << ": " << res.estimated_tail << "\n";
    if (res.tail_warning)
        os << "warning: integration domain too small for the probed block\n";
    return {res.max_deviation <= tol && !res.tail_warning, os.str()};
}

/// Rebuilds coherent states from their complementary truncated parts.
inline CheckReport check_decomposition(double tol = 1e-10) {
    struct Case { Complex alpha; int N; };
    const std::vector<Case> cases{
        {Complex(std::sqrt(10.0), 0.0), 0}, {Complex(std::sqrt(10.0), 0.0), 2},
        {Complex(std::sqrt(10.0), 0.0), 5}, {Complex(std::sqrt(10.0), 0.0), 10},
        {Complex(2.0, 0.0), 0},             {Complex(0.0, 0.0), 3},
        {Complex(1.0, 2.0), 4}};
    std::ostringstream os;
    os.precision(3);
    double worst = 0.0;
    for (const auto& c : cases) {
        const double d = coherent_decomposition_check(c.alpha, c.N);
        worst = std::max(worst, d);
        os << "decomposition alpha=(" << c.alpha.real() << "," << c.alpha.imag()
           << ") N=" << c.N << ": distance " << d << "\n";
    }
    os << "max distance " << worst << " (tolerance " << tol << ")\n";
    return {worst <= tol, os.str()};
}

/// Evaluates the published closed forms next to their index-consistent
/// variants and the numeric ground truth. The published ladder/number
/// expectations and the variance formula are expected to disagree; the
/// corrected variants must match the state-vector numerics.
inline CheckReport check_closed_forms(double rel_tol = 1e-9) {
    const Complex alpha(std::sqrt(10.0), 0.0);
    std::ostringstream os;
    os.precision(10);
    bool pass = true;
    auto rel = [](double got, double want) {
        return std::abs(got - want) / std::max(std::abs(want), 1e-30);
    };

    os << "closed-form ledger at alpha=sqrt(10)\n";
    for (int N : {1, 2, 3, 5, 10}) {
        const auto m = ladder_moments(utcs(alpha, N));
        const auto cf = utcs_moments_closed_form(alpha, N);
        os << "UTCS N=" << N << " <a>: numeric " << m.mean_a.real()
           << ", corrected " << cf.mean_a_corrected.real();
        pass = pass && rel(cf.mean_a_corrected.real(), m.mean_a.real()) <= rel_tol;
        if (cf.published_defined)
            os << ", published " << cf.mean_a_published.real()
               << " (|diff| " << std::abs(cf.mean_a_published - m.mean_a) << ")";
        os << "\n";
        if (N >= 2) {
            os << "UTCS N=" << N << " <a2>: numeric " << m.mean_a2.real()
               << ", corrected " << cf.mean_a2_corrected.real()
               << ", published " << cf.mean_a2_published.real()
               << " (|diff| " << std::abs(cf.mean_a2_published - m.mean_a2) << ")\n";
            pass = pass && rel(cf.mean_a2_corrected.real(), m.mean_a2.real()) <= rel_tol;
        }
        if (N >= 1) {
            os << "UTCS N=" << N << " <n>: numeric " << m.mean_n
               << ", corrected " << cf.mean_n_corrected;
            pass = pass && rel(cf.mean_n_corrected, m.mean_n) <= rel_tol;
            if (cf.published_defined)
                os << ", published " << cf.mean_n_published
                   << " (|diff| " << std::abs(cf.mean_n_published - m.mean_n) << ")";
            os << "\n";
        }

        const double vx = quadrature_stats(ltcs(alpha, N)).var_x;
        const auto v = ltcs_variance_closed_form(alpha, N);
        os << "LTCS N=" << N << " var_x: numeric " << vx << ", corrected " << v.corrected
           << ", published " << v.published << " (|diff| " << std::abs(v.published - vx) << ")\n";
        pass = pass && rel(v.corrected, vx) <= rel_tol;

        const auto ov = pacs_ltcs_overlap(alpha, N);
        os << "PACS/LTCS overlap N=" << N << ": numeric " << ov.numeric
           << ", published " << ov.published
           << " (|diff| " << std::abs(ov.published - ov.numeric) << ")\n";
        pass = pass && std::abs(ov.published - ov.numeric) <=
                           rel_tol * std::max(ov.numeric, 1e-30) + 1e-12;
    }
    os << (pass ? "corrected variants match numerics\n"
                : "corrected variant mismatch beyond tolerance\n");
    return {pass, os.str()};
}

/// Beam-splitter route equivalence plus the recorded discrepancies of the
/// published disentangled product form and reduced-density expression.
inline CheckReport check_bs_oracle(double route_tol = 1e-11) {
    std::ostringstream os;
    os.precision(6);
    bool pass = true;

    std::mt19937 rng(20240811u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    const BeamSplitterParam g = BeamSplitterParam::symmetric();
    const BeamSplitterParam g2{Complex(0.4, -0.9)};
    for (int trial = 0; trial < 8; ++trial) {
        TwoModeVector in(20, 20); // sectors up to 40 photons
        for (int n = 0; n <= 20; ++n)
            for (int k = 0; k <= 20; ++k) in.at(n, k) = Complex(gauss(rng), gauss(rng));
        in = in.normalized();
        const BeamSplitterParam& gp = (trial % 2 == 0) ? g : g2;
        const auto a = bs_apply(in, gp, BsRoute::binomial);
        const auto b = bs_apply(in, gp, BsRoute::matrix_exponential);
        double dev = 0.0;
        for (int n = 0; n <= a.cutoff_a(); ++n)
            for (int k = 0; k <= a.cutoff_b(); ++k)
                dev = std::max(dev, std::abs(a.at(n, k) - b.at(n, k)));
        worst = std::max(worst, dev);
    }
    os << "sector routes, max elementwise |binomial - expm|: " << worst
       << " (tolerance " << route_tol << ")\n";
    pass = pass && worst <= route_tol;

    const double ep_coh = entanglement_potential(coherent(Complex(std::sqrt(10.0), 0.0)));
    const double ep_one = entanglement_potential(FockVector::basis(1));
    os << "EP(coherent) = " << ep_coh << ", EP(|1>) = " << ep_one << "\n";
    pass = pass && std::abs(ep_coh) <= 1e-9 && std::abs(ep_one - 0.5) <= 1e-12;

    const FockVector probe = utcs(Complex(std::sqrt(10.0), 0.0), 6);
    const auto dis = disentangled_form_report(probe, g);
    os << "disentangled product form vs oracle (UTCS probe): as published " << dis.as_published
       << ", labels swapped " << dis.labels_swapped << ", corrected " << dis.corrected << "\n";
    pass = pass && dis.corrected <= 1e-11;

    const auto chi = bs_output_vacuum_input(probe, g);
    const auto rho_tr = reduce_mode_a(chi);
    const auto rho_pub = reduced_density_closed_form(probe, g, RdenVariant::published);
    const auto rho_kf = reduced_density_closed_form(probe, g, RdenVariant::corrected_with_kfact);
    const auto rho_cor = reduced_density_closed_form(probe, g, RdenVariant::corrected);
    os << "reduced density closed form vs partial trace: published "
       << frobenius_distance(rho_pub, rho_tr) << ", corrected with 1/k! weight "
       << frobenius_distance(rho_kf, rho_tr) << ", corrected "
       << frobenius_distance(rho_cor, rho_tr) << "\n";
    pass = pass && frobenius_distance(rho_cor, rho_tr) <= 1e-11;

    return {pass, os.str()};
}

} // namespace fockbench
