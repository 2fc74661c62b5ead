#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fock_vector.hpp"
#include "special_functions.hpp"

namespace fockbench {

/// Knobs shared by the amplitude-series constructors. tail_tol bounds the
/// neglected probability of the auto-chosen cutoff; cutoff_override forces an
/// exact cutoff instead (useful when two states must live on identical grids).
struct BuildOptions {
    double tail_tol = 1e-12;
    int cutoff_override = -1;
};

/// Parameter bundle for the CLI-facing state constructors.
struct StateSpec {
    Complex alpha{0.0, 0.0};
    int order = 0;       // N for truncated families, m for photon-added ones
    double k = 0.0;      // deformation, where applicable
};

namespace detail {

constexpr int kMaxSeriesTerms = 6000;

// Builds the state with amplitudes exp(logmag(j)) * e^{i j phase} at Fock
// index base+j, then normalizes. The series stops once the geometric bound on
// the remaining probability drops below tail_tol of the accumulated weight;
// the term ratio of every family used here decreases in the convergent
// regime, which makes that bound valid.
template <class LogMag>
FockVector build_series_state(LogMag&& logmag, double phase, int base,
                              const BuildOptions& opt) {
    std::vector<double> logs;
    double best = -std::numeric_limits<double>::infinity();
    const double log_tol = std::log(opt.tail_tol);
    int j = 0;
    while (true) {
        const double l = logmag(j);
        logs.push_back(l);
        best = std::max(best, l);
        if (opt.cutoff_override >= 0) {
            if (base + j >= opt.cutoff_override) break;
        } else if (j >= 2) {
            const double lr_here = logs[j] - logs[j - 1];
            const double lr_prev = logs[j - 1] - logs[j - 2];
            // past the peak, ratios shrinking, remainder geometrically small
            if (lr_here < -0.05 && lr_here <= lr_prev + 1e-12) {
                const double r = std::exp(2.0 * lr_here);
                const double tail_vs_peak = 2.0 * (logs[j] + lr_here - best);
                if (tail_vs_peak - std::log1p(-r) < log_tol - 2.0) break;
            }
        }
        if (++j > kMaxSeriesTerms)
            throw std::runtime_error("build_series_state: series did not converge");
    }
    std::vector<Complex> amps(static_cast<std::size_t>(base) + logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double mag = std::exp(logs[i] - best);
        amps[static_cast<std::size_t>(base) + i] =
            std::polar(mag, phase * static_cast<double>(i));
    }
    FockVector out(std::move(amps), opt.tail_tol);
    return out.normalized();
}

inline double phase_of(Complex alpha) {
    return std::abs(alpha) > 0.0 ? std::arg(alpha) : 0.0;
}

} // namespace detail

/// Coherent state |alpha>: c_n = e^{-|a|^2/2} alpha^n / sqrt(n!).
inline FockVector coherent(Complex alpha, const BuildOptions& opt = {}) {
    const double a = std::abs(alpha);
    if (a == 0.0)
        return FockVector::basis(0, opt.tail_tol);
    const double la = std::log(a);
    return detail::build_series_state(
        [la](int n) { return n * la - 0.5 * log_factorial(n); },
        detail::phase_of(alpha), 0, opt);
}

/// Upper-truncated coherent state: the coherent expansion kept on {0..N}.
inline FockVector utcs(Complex alpha, int N, const BuildOptions& opt = {}) {
    if (N < 0) throw std::invalid_argument("utcs: N must be >= 0");
    const double a = std::abs(alpha);
    std::vector<Complex> amps(static_cast<std::size_t>(N) + 1);
    if (a == 0.0) {
        amps[0] = Complex(1.0, 0.0);
        return FockVector(std::move(amps), opt.tail_tol);
    }
    const double la = std::log(a);
    const double phase = detail::phase_of(alpha);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        logs[static_cast<std::size_t>(n)] = n * la - 0.5 * log_factorial(n);
        best = std::max(best, logs[static_cast<std::size_t>(n)]);
    }
    for (int n = 0; n <= N; ++n)
        amps[static_cast<std::size_t>(n)] =
            std::polar(std::exp(logs[static_cast<std::size_t>(n)] - best), phase * n);
    return FockVector(std::move(amps), opt.tail_tol).normalized();
}

/// Lower-truncated coherent state: support on {N+1, N+2, ...}, with
/// c_{N+1+j} proportional to alpha^j / sqrt((N+1+j)!). The base amplitude is
/// real positive, matching the series convention.
inline FockVector ltcs(Complex alpha, int N, const BuildOptions& opt = {}) {
    if (N < 0) throw std::invalid_argument("ltcs: N must be >= 0");
    const double a = std::abs(alpha);
    if (a == 0.0)
        return FockVector::basis(N + 1, opt.tail_tol);
    const double la = std::log(a);
    return detail::build_series_state(
        [la, N](int j) { return j * la - 0.5 * log_factorial(N + 1 + j); },
        detail::phase_of(alpha), N + 1, opt);
}

/// Photon-added coherent state of order m: normalized a†^m |alpha>.
inline FockVector pacs(Complex alpha, int m, const BuildOptions& opt = {}) {
    if (m < 1) throw std::invalid_argument("pacs: order m must be >= 1");
    const double a = std::abs(alpha);
    if (a == 0.0)
        return FockVector::basis(m, opt.tail_tol);
    const double la = std::log(a);
    return detail::build_series_state(
        [la, m](int n) { return n * la + 0.5 * log_factorial(n + m) - log_factorial(n); },
        detail::phase_of(alpha), m, opt);
}

/// Deformed photon-added coherent state: normalized B†^m |alpha>. k = 0
/// reproduces the PACS, k = 1 the LTCS of order m-1.
inline FockVector deformed_pacs(Complex alpha, int m, DeformParam k,
                                const BuildOptions& opt = {}) {
    if (m < 1) throw std::invalid_argument("deformed_pacs: order m must be >= 1");
    const double a = std::abs(alpha);
    if (a == 0.0)
        return FockVector::basis(m, opt.tail_tol);
    const double la = std::log(a);
    const double kk = k.k;
    return detail::build_series_state(
        [la, m, kk](int n) {
            double s = n * la + 0.5 * log_factorial(n + m) - log_factorial(n);
            for (int j = 0; j < m; ++j)
                s -= std::log1p(kk * n + kk * j);
            return s;
        },
        detail::phase_of(alpha), m, opt);
}

/// Two-level superposition of |N+1> and |N+2> that approximates the LTCS for
/// N >> |alpha|^2.
inline FockVector bernoulli_approx(Complex alpha, int N, const BuildOptions& opt = {}) {
    if (N < 0) throw std::invalid_argument("bernoulli_approx: N must be >= 0");
    std::vector<Complex> amps(static_cast<std::size_t>(N) + 3);
    amps[static_cast<std::size_t>(N) + 1] = Complex(1.0, 0.0);
    amps[static_cast<std::size_t>(N) + 2] = alpha / std::sqrt(N + 2.0);
    return FockVector(std::move(amps), opt.tail_tol).normalized();
}

/// Finite-dimensional phase state: c_n = e^{i n theta} / sqrt(1+s), n <= s.
inline FockVector phase_state(double theta, int s) {
    if (s < 0) throw std::invalid_argument("phase_state: s must be >= 0");
    std::vector<Complex> amps(static_cast<std::size_t>(s) + 1);
    const double w = 1.0 / std::sqrt(s + 1.0);
    for (int n = 0; n <= s; ++n)
        amps[static_cast<std::size_t>(n)] = std::polar(w, theta * n);
    return FockVector(std::move(amps), 0.0);
}

/// Normalized exp(alpha B† - alpha* A)|0>:
/// c_n proportional to alpha^n / (sqrt(n!) * prod_{j=1}^{n-1} (1 + j k)).
/// terms <= 0 selects the automatic cutoff.
inline FockVector b_displaced_vacuum(Complex alpha, DeformParam k, int terms = 0,
                                     BuildOptions opt = {}) {
    const double a = std::abs(alpha);
    if (a == 0.0)
        return FockVector::basis(0, opt.tail_tol);
    if (terms > 0)
        opt.cutoff_override = terms - 1;
    const double la = std::log(a);
    const double kk = k.k;
    return detail::build_series_state(
        [la, kk](int n) {
            double s = n * la - 0.5 * log_factorial(n);
            for (int j = 1; j < n; ++j)
                s -= std::log1p(j * kk);
            return s;
        },
        detail::phase_of(alpha), 0, opt);
}

/// Rebuilds |alpha> as the projection-weighted sum of the UTCS and LTCS of
/// order N and returns the norm distance to the directly built coherent
/// state. The weights are the numeric projections <UTCS|alpha>, <LTCS|alpha>,
/// so the result probes only the complementary-support decomposition itself.
inline double coherent_decomposition_check(Complex alpha, int N) {
    BuildOptions tight;
    tight.tail_tol = 1e-26; // keep truncation far below the 1e-10 verdict level
    const FockVector coh = coherent(alpha, tight);
    const FockVector u = utcs(alpha, N, tight);
    const FockVector l = ltcs(alpha, N, tight);
    const Complex wu = inner_product(u, coh);
    const Complex wl = inner_product(l, coh);
    const FockVector recon = add(scaled(u, wu), scaled(l, wl));
    return distance(recon, coh);
}

/// Analytic tail mass above the stored cutoff for the series families; used
/// by the truncation-soundness tests. Family tags: 'c' coherent, 'l' ltcs,
/// 'p' pacs (the dominating series for the deformed family as well).
inline double series_tail_above_cutoff(char family, Complex alpha, int order, int cutoff) {
    const double x = std::norm(alpha);
    if (x == 0.0) return 0.0;
    // direct continuation of the unnormalized probability series
    auto logterm = [&](int n) -> double {
        switch (family) {
        case 'c': return n * std::log(x) - log_factorial(n);
        case 'l': {
            const int j = n - (order + 1);
            return j * std::log(x) - log_factorial(n);
        }
        case 'p': {
            const int j = n - order;
            return j * std::log(x) + log_factorial(n) - 2.0 * log_factorial(j);
        }
        default: throw std::invalid_argument("series_tail_above_cutoff: unknown family");
        }
    };
    const int base = (family == 'c') ? 0 : (family == 'l' ? order + 1 : order);
    double best = -std::numeric_limits<double>::infinity();
    for (int n = base; n <= cutoff; ++n) best = std::max(best, logterm(n));
    double total = 0.0;
    for (int n = base; n <= cutoff; ++n) total += std::exp(logterm(n) - best);
    double tail = 0.0;
    for (int n = cutoff + 1; n <= cutoff + 400; ++n) tail += std::exp(logterm(n) - best);
    return tail / (total + tail);
}

} // namespace fockbench
