#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fock_vector.hpp"
#include "special_functions.hpp"

namespace fockbench {

/// Complex transmittance Gamma of the two-mode mixer exp(G a†b - G* a b†).
/// Gamma = i pi/4 is the symmetric 50-50 splitter.
struct BeamSplitterParam {
    Complex gamma;
    static BeamSplitterParam symmetric() {
        return BeamSplitterParam{Complex(0.0, std::numbers::pi / 4.0)};
    }
};

/// Pure two-mode state d_{n,k} on |n>_a |k>_b.
class TwoModeVector {
public:
    TwoModeVector(int cutoff_a, int cutoff_b)
        : rows_(cutoff_a + 1), cols_(cutoff_b + 1),
          d_(static_cast<std::size_t>(rows_) * cols_, Complex(0.0, 0.0)) {
        if (cutoff_a < 0 || cutoff_b < 0)
            throw std::invalid_argument("TwoModeVector: negative cutoff");
    }

    int cutoff_a() const { return rows_ - 1; }
    int cutoff_b() const { return cols_ - 1; }

    Complex& at(int n, int k) { return d_[static_cast<std::size_t>(n) * cols_ + k]; }
    Complex at(int n, int k) const {
        if (n < 0 || n >= rows_ || k < 0 || k >= cols_) return Complex(0.0, 0.0);
        return d_[static_cast<std::size_t>(n) * cols_ + k];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : d_) s += std::norm(c);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    TwoModeVector normalized() const {
        const double n = norm();
        if (n <= 0.0)
            throw std::runtime_error("TwoModeVector: cannot normalize the zero vector");
        TwoModeVector out(*this);
        for (auto& c : out.d_) c /= n;
        return out;
    }

private:
    int rows_, cols_;
    std::vector<Complex> d_;
};

inline double distance(const TwoModeVector& x, const TwoModeVector& y) {
    const int ma = std::max(x.cutoff_a(), y.cutoff_a());
    const int mb = std::max(x.cutoff_b(), y.cutoff_b());
    double s = 0.0;
    for (int n = 0; n <= ma; ++n)
        for (int k = 0; k <= mb; ++k) s += std::norm(x.at(n, k) - y.at(n, k));
    return std::sqrt(s);
}

inline TwoModeVector tensor_with_vacuum(const FockVector& psi) {
    TwoModeVector out(psi.cutoff(), 0);
    for (int n = 0; n <= psi.cutoff(); ++n) out.at(n, 0) = psi.amp(n);
    return out;
}

/// Hermitian matrix on the truncated number basis of one mode.
class DensityMatrix {
public:
    explicit DensityMatrix(int dim)
        : dim_(dim), m_(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0)) {
        if (dim < 1) throw std::invalid_argument("DensityMatrix: dim must be >= 1");
    }

    int dim() const { return dim_; }
    Complex& at(int n, int m) { return m_[static_cast<std::size_t>(n) * dim_ + m]; }
    Complex at(int n, int m) const { return m_[static_cast<std::size_t>(n) * dim_ + m]; }

    double trace_real() const {
        double t = 0.0;
        for (int n = 0; n < dim_; ++n) t += at(n, n).real();
        return t;
    }

    double hermiticity_error() const {
        double e = 0.0;
        for (int n = 0; n < dim_; ++n)
            for (int m = n; m < dim_; ++m)
                e = std::max(e, std::abs(at(n, m) - std::conj(at(m, n))));
        return e;
    }

    double frobenius_sq() const {
        double s = 0.0;
        for (const auto& c : m_) s += std::norm(c);
        return s;
    }

    /// Eigenvalues via cyclic Jacobi on the real symmetric embedding
    /// [[Re, -Im], [Im, Re]]; each eigenvalue of the Hermitian matrix shows up
    /// twice, so every second entry of the sorted doubled spectrum is taken.
    std::vector<double> eigenvalues() const;
    double min_eigenvalue() const {
        auto ev = eigenvalues();
        return ev.front();
    }

private:
    int dim_;
    std::vector<Complex> m_;
};

inline double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("frobenius_distance: dimension mismatch");
    double s = 0.0;
    for (int n = 0; n < a.dim(); ++n)
        for (int m = 0; m < a.dim(); ++m) s += std::norm(a.at(n, m) - b.at(n, m));
    return std::sqrt(s);
}

inline std::vector<double> DensityMatrix::eigenvalues() const {
    const int d = dim_;
    const int D = 2 * d;
    std::vector<double> a(static_cast<std::size_t>(D) * D, 0.0);
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * D + j]; };
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            A(n, m) = at(n, m).real();
            A(n + d, m + d) = at(n, m).real();
            A(n, m + d) = -at(n, m).imag();
            A(n + d, m) = at(n, m).imag();
        }
    double scale = 0.0;
    for (int i = 0; i < D; ++i) scale = std::max(scale, std::abs(A(i, i)));
    scale = std::max(scale, 1e-30);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < D; ++p)
            for (int q = p + 1; q < D; ++q) off = std::max(off, std::abs(A(p, q)));
        if (off < 1e-15 * scale) break;
        for (int p = 0; p < D; ++p)
            for (int q = p + 1; q < D; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) < 1e-18 * scale) continue;
                const double theta = 0.5 * std::atan2(2.0 * apq, A(p, p) - A(q, q));
                const double c = std::cos(theta), s = std::sin(theta);
                for (int i = 0; i < D; ++i) {
                    const double aip = A(i, p), aiq = A(i, q);
                    A(i, p) = c * aip + s * aiq;
                    A(i, q) = -s * aip + c * aiq;
                }
                for (int i = 0; i < D; ++i) {
                    const double api = A(p, i), aqi = A(q, i);
                    A(p, i) = c * api + s * aqi;
                    A(q, i) = -s * api + c * aqi;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) ev[static_cast<std::size_t>(i)] = A(i, i);
    std::sort(ev.begin(), ev.end());
    std::vector<double> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = ev[static_cast<std::size_t>(2 * i)];
    return out;
}

namespace detail {

// Matrix elements of the sector-s block of exp(G a†b - G* a b†) in the basis
// |s-j>_a |j>_b, from the binomial expansion of the rotated creation
// operators. The alternating sum is accumulated in extended precision; the
// worst-case cancellation near s ~ 40 otherwise eats into the 1e-11 budget of
// the route cross-check.
inline std::vector<Complex> sector_unitary_binomial(int s, BeamSplitterParam g) {
    const double gabs = std::abs(g.gamma);
    const double th = (gabs > 0.0) ? std::arg(g.gamma) : 0.0;
    const long double ct = std::cos(static_cast<long double>(gabs));
    const long double st = std::sin(static_cast<long double>(gabs));
    const int d = s + 1;

    std::vector<long double> factl(static_cast<std::size_t>(d));
    factl[0] = 1.0L;
    for (int i = 1; i < d; ++i) factl[static_cast<std::size_t>(i)] = factl[static_cast<std::size_t>(i - 1)] * i;
    std::vector<long double> ctp(static_cast<std::size_t>(d) + 1), stp(static_cast<std::size_t>(d) + 1);
    ctp[0] = stp[0] = 1.0L;
    for (int i = 1; i <= d; ++i) {
        ctp[static_cast<std::size_t>(i)] = ctp[static_cast<std::size_t>(i - 1)] * ct;
        stp[static_cast<std::size_t>(i)] = stp[static_cast<std::size_t>(i - 1)] * st;
    }
    auto binom = [&](int n, int k) -> long double {
        return factl[static_cast<std::size_t>(n)] /
               (factl[static_cast<std::size_t>(k)] * factl[static_cast<std::size_t>(n - k)]);
    };

    std::vector<Complex> w(static_cast<std::size_t>(d) * d);
    for (int j = 0; j <= s; ++j) {
        for (int jp = 0; jp <= s; ++jp) {
            const long double pref = std::sqrt(
                factl[static_cast<std::size_t>(s - jp)] * factl[static_cast<std::size_t>(jp)] /
                (factl[static_cast<std::size_t>(s - j)] * factl[static_cast<std::size_t>(j)]));
            long double re = 0.0L, im = 0.0L;
            const int pmin = std::max(0, jp - j);
            const int pmax = std::min(jp, s - j);
            for (int p = pmin; p <= pmax; ++p) {
                const int q = jp - p;
                long double mag = binom(s - j, p) * binom(j, q) *
                                  ctp[static_cast<std::size_t>(s - j - p + q)] *
                                  stp[static_cast<std::size_t>(p + j - q)];
                if (p & 1) mag = -mag;
                const long double ang = static_cast<long double>(th) * (j - q - p);
                re += mag * std::cos(ang);
                im += mag * std::sin(ang);
            }
            w[static_cast<std::size_t>(jp) * d + j] =
                Complex(static_cast<double>(pref * re), static_cast<double>(pref * im));
        }
    }
    return w;
}

// Same block through scaling-and-squaring of the tridiagonal generator; kept
// deliberately independent of the binomial route.
inline std::vector<Complex> sector_unitary_expm(int s, BeamSplitterParam g) {
    const int d = s + 1;
    std::vector<Complex> x(static_cast<std::size_t>(d) * d, Complex(0.0, 0.0));
    for (int j = 0; j <= s; ++j) {
        if (j >= 1) // a†b lowers the b-count
            x[static_cast<std::size_t>(j - 1) * d + j] +=
                g.gamma * std::sqrt(static_cast<double>(j) * (s - j + 1.0));
        if (j <= s - 1) // a b† raises it
            x[static_cast<std::size_t>(j + 1) * d + j] -=
                std::conj(g.gamma) * std::sqrt((s - j) * (j + 1.0));
    }
    double norm1 = 0.0;
    for (int col = 0; col < d; ++col) {
        double c = 0.0;
        for (int row = 0; row < d; ++row) c += std::abs(x[static_cast<std::size_t>(row) * d + col]);
        norm1 = std::max(norm1, c);
    }
    int scale_pow = 0;
    while (norm1 > 0.25) {
        norm1 /= 2.0;
        ++scale_pow;
    }
    const double inv = std::ldexp(1.0, -scale_pow);
    for (auto& c : x) c *= inv;

    auto matmul = [d](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        std::vector<Complex> r(static_cast<std::size_t>(d) * d, Complex(0.0, 0.0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const Complex aik = a[static_cast<std::size_t>(i) * d + k];
                if (aik == Complex(0.0, 0.0)) continue;
                for (int j = 0; j < d; ++j)
                    r[static_cast<std::size_t>(i) * d + j] += aik * b[static_cast<std::size_t>(k) * d + j];
            }
        return r;
    };

    std::vector<Complex> result(static_cast<std::size_t>(d) * d, Complex(0.0, 0.0));
    for (int i = 0; i < d; ++i) result[static_cast<std::size_t>(i) * d + i] = 1.0;
    std::vector<Complex> term = result;
    for (int k = 1; k <= 40; ++k) {
        term = matmul(term, x);
        for (auto& c : term) c /= static_cast<double>(k);
        double tn = 0.0;
        for (const auto& c : term) tn += std::abs(c);
        for (std::size_t i = 0; i < term.size(); ++i) result[i] += term[i];
        if (tn < 1e-20) break;
    }
    for (int i = 0; i < scale_pow; ++i) result = matmul(result, result);
    return result;
}

} // namespace detail

enum class BsRoute { binomial, matrix_exponential };

/// Applies the beam-splitter unitary. Photon number is conserved, so the
/// transformation acts sector by sector; amplitudes with different n+k never
/// mix.
inline TwoModeVector bs_apply(const TwoModeVector& input, BeamSplitterParam g,
                              BsRoute route = BsRoute::binomial, int max_sector = 4096) {
    const int ma = input.cutoff_a(), mb = input.cutoff_b();
    const int smax = ma + mb;
    if (smax + 1 > max_sector)
        throw std::overflow_error("bs_apply: sector size exceeds the configured maximum");
    TwoModeVector out(smax, smax);

    const double gabs = std::abs(g.gamma);
    const double th = (gabs > 0.0) ? std::arg(g.gamma) : 0.0;
    const bool vacuum_b = (mb == 0);

    for (int s = 0; s <= smax; ++s) {
        bool empty = true;
        for (int j = std::max(0, s - ma); j <= std::min(s, mb) && empty; ++j)
            if (input.at(s - j, j) != Complex(0.0, 0.0)) empty = false;
        if (empty) continue;

        if (vacuum_b && route == BsRoute::binomial) {
            // only the j = 0 column is populated; its elements are single
            // binomial terms with no cancellation
            const Complex c = input.at(s, 0);
            for (int jp = 0; jp <= s; ++jp) {
                double lmag = 0.5 * (log_factorial(s) - log_factorial(jp) - log_factorial(s - jp));
                if (s - jp > 0) lmag += (s - jp) * std::log(std::cos(gabs));
                if (jp > 0) lmag += jp * std::log(std::sin(gabs));
                const Complex phase = std::polar(1.0, (std::numbers::pi - th) * jp);
                out.at(s - jp, jp) += c * std::exp(lmag) * phase;
            }
            continue;
        }

        const auto w = (route == BsRoute::binomial) ? detail::sector_unitary_binomial(s, g)
                                                    : detail::sector_unitary_expm(s, g);
        const int d = s + 1;
        for (int jp = 0; jp <= s; ++jp) {
            Complex acc(0.0, 0.0);
            for (int j = std::max(0, s - ma); j <= std::min(s, mb); ++j)
                acc += w[static_cast<std::size_t>(jp) * d + j] * input.at(s - j, j);
            out.at(s - jp, jp) += acc;
        }
    }
    return out;
}

/// Output of the splitter fed with psi in one port and vacuum in the other,
/// computed through the exact sector route (the oracle path).
inline TwoModeVector bs_output_vacuum_input(const FockVector& psi, BeamSplitterParam g) {
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("bs_output_vacuum_input: state is not normalized");
    return bs_apply(tensor_with_vacuum(psi), g);
}

/// Distances between the oracle output and the disentangled product form
/// chi = sum_n c_n e^{nB} sum_k A^k sqrt(C(n,k)) |n-k>|k> under three choices
/// of the (A, B) coefficients: the published pair, the pair with the labels
/// swapped, and the internally consistent pair A = -e^{-i theta} tan|G|,
/// B = ln cos|G|.
struct DisentangledFormReport {
    double as_published;
    double labels_swapped;
    double corrected;
};

inline DisentangledFormReport disentangled_form_report(const FockVector& psi, BeamSplitterParam g) {
    const TwoModeVector oracle = bs_output_vacuum_input(psi, g);
    const double gabs = std::abs(g.gamma);
    const double th = (gabs > 0.0) ? std::arg(g.gamma) : 0.0;

    auto build = [&](Complex A, Complex B) {
        TwoModeVector chi(psi.cutoff(), psi.cutoff());
        for (int n = 0; n <= psi.cutoff(); ++n) {
            if (psi.amp(n) == Complex(0.0, 0.0)) continue;
            const Complex head = psi.amp(n) * std::exp(B * static_cast<double>(n));
            Complex apow(1.0, 0.0);
            for (int k = 0; k <= n; ++k) {
                const double root = std::exp(0.5 * (log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
                chi.at(n - k, k) += head * apow * root;
                apow *= A;
            }
        }
        return chi;
    };

    const Complex tan_term = -std::polar(1.0, -th) * std::tan(gabs);
    const Complex log_sec2 = Complex(2.0 * std::log(1.0 / std::cos(gabs)), 0.0);
    const Complex log_cos = Complex(std::log(std::cos(gabs)), 0.0);

    DisentangledFormReport rep{};
    rep.as_published = distance(build(log_sec2, tan_term), oracle);
    rep.labels_swapped = distance(build(tan_term, log_sec2), oracle);
    rep.corrected = distance(build(tan_term, log_cos), oracle);
    return rep;
}

/// Partial trace over mode b: rho_{nm} = sum_k d_{n,k} conj(d_{m,k}).
inline DensityMatrix reduce_mode_a(const TwoModeVector& chi) {
    const int d = chi.cutoff_a() + 1;
    DensityMatrix rho(d);
    for (int n = 0; n < d; ++n)
        for (int m = n; m < d; ++m) {
            Complex acc(0.0, 0.0);
            for (int k = 0; k <= chi.cutoff_b(); ++k)
                acc += chi.at(n, k) * std::conj(chi.at(m, k));
            rho.at(n, m) = acc;
            if (m != n) rho.at(m, n) = std::conj(acc);
        }
    return rho;
}

/// The closed-form reduced density expression, with its published 1/k! weight
/// or without it, for the cross-check against the partial-trace oracle.
enum class RdenVariant {
    published,             // published (A,B) pair and the 1/k! weight
    corrected_with_kfact,  // consistent (A,B), weight kept
    corrected              // consistent (A,B), no 1/k!; equals the partial trace
};

inline DensityMatrix reduced_density_closed_form(const FockVector& psi, BeamSplitterParam g,
                                                 RdenVariant variant) {
    const double gabs = std::abs(g.gamma);
    const double th = (gabs > 0.0) ? std::arg(g.gamma) : 0.0;
    Complex A, B;
    bool kfact = true;
    switch (variant) {
    case RdenVariant::published:
        A = Complex(2.0 * std::log(1.0 / std::cos(gabs)), 0.0);
        B = -std::polar(1.0, -th) * std::tan(gabs);
        break;
    case RdenVariant::corrected_with_kfact:
        A = -std::polar(1.0, -th) * std::tan(gabs);
        B = Complex(std::log(std::cos(gabs)), 0.0);
        break;
    case RdenVariant::corrected:
        A = -std::polar(1.0, -th) * std::tan(gabs);
        B = Complex(std::log(std::cos(gabs)), 0.0);
        kfact = false;
        break;
    }
    const int d = psi.cutoff() + 1;
    const double a2 = std::norm(A);
    DensityMatrix rho(d);
    for (int n = 0; n < d; ++n) {
        if (psi.amp(n) == Complex(0.0, 0.0)) continue;
        for (int m = 0; m < d; ++m) {
            if (psi.amp(m) == Complex(0.0, 0.0)) continue;
            const Complex pref = psi.amp(n) * std::conj(psi.amp(m)) *
                                 std::exp(B * static_cast<double>(n + m));
            double wk = 1.0;
            for (int k = 0; k <= std::min(n, m); ++k) {
                const double root = std::exp(0.5 * (log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
                                                    log_factorial(m) - log_factorial(k) - log_factorial(m - k)));
                rho.at(n - k, m - k) += pref * wk * root;
                wk *= a2 / (kfact ? (k + 1.0) : 1.0);
            }
        }
    }
    return rho;
}

/// Linear entropy 1 - Tr[rho^2] = 1 - sum |rho_{nm}|^2; zero for pure states.
inline double linear_entropy(const DensityMatrix& rho) {
    return 1.0 - rho.frobenius_sq();
}

/// Entanglement potential: linear entropy of one output mode of the 50-50
/// splitter fed with psi and vacuum. Zero exactly for coherent inputs.
inline double entanglement_potential(const FockVector& psi) {
    const TwoModeVector chi = bs_output_vacuum_input(psi, BeamSplitterParam::symmetric());
    return linear_entropy(reduce_mode_a(chi));
}

} // namespace fockbench
