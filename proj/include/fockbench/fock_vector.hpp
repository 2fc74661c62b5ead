#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockbench {

using Complex = std::complex<double>;

/// Deformation strength of the modified ladder operators; restricted to [0,1].
struct DeformParam {
    double k;
    explicit DeformParam(double kk) : k(kk) {
        if (!(kk >= 0.0 && kk <= 1.0))
            throw std::domain_error("DeformParam: k must lie in [0,1]");
    }
};

/// Single-mode state on the truncated number basis |0..M>.
///
/// The amplitudes are a plain value; every operation below returns a fresh
/// vector, so instances can be shared freely across threads. The zero vector
/// is representable (it shows up as the image of the vacuum under the
/// annihilator) but refuses to be normalized.
class FockVector {
public:
    FockVector() : amps_(1, Complex(1.0, 0.0)) {}
    explicit FockVector(std::vector<Complex> amps, double tail_tol = 1e-12)
        : amps_(std::move(amps)), tail_tol_(tail_tol) {
        if (amps_.empty())
            throw std::invalid_argument("FockVector: needs at least the vacuum slot");
    }

    static FockVector basis(int n, double tail_tol = 1e-12) {
        if (n < 0) throw std::invalid_argument("FockVector::basis: negative index");
        std::vector<Complex> a(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
        a.back() = Complex(1.0, 0.0);
        return FockVector(std::move(a), tail_tol);
    }

    static FockVector zero(int cutoff, double tail_tol = 1e-12) {
        if (cutoff < 0) throw std::invalid_argument("FockVector::zero: negative cutoff");
        return FockVector(std::vector<Complex>(static_cast<std::size_t>(cutoff) + 1), tail_tol);
    }

    int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
    double tail_tol() const { return tail_tol_; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    /// Amplitude c_n; indices beyond the cutoff read as zero.
    Complex amp(int n) const {
        if (n < 0 || n > cutoff()) return Complex(0.0, 0.0);
        return amps_[static_cast<std::size_t>(n)];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : amps_) s += std::norm(c);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    bool is_zero(double eps = 1e-300) const { return norm_sq() <= eps; }

    FockVector normalized() const {
        const double n = norm();
        if (n <= 0.0 || !std::isfinite(n))
            throw std::runtime_error("FockVector: cannot normalize the zero vector");
        std::vector<Complex> a(amps_);
        for (auto& c : a) c /= n;
        return FockVector(std::move(a), tail_tol_);
    }

private:
    std::vector<Complex> amps_;
    double tail_tol_ = 1e-12;
};

/// <a|b> over the common index range; conjugation on the left argument.
inline Complex inner_product(const FockVector& a, const FockVector& b) {
    const int m = std::min(a.cutoff(), b.cutoff());
    Complex s(0.0, 0.0);
    for (int n = 0; n <= m; ++n) s += std::conj(a.amp(n)) * b.amp(n);
    return s;
}

/// |<a|b>|^2 for normalized inputs.
inline double fidelity(const FockVector& a, const FockVector& b) {
    return std::norm(inner_product(a, b));
}

inline FockVector scaled(const FockVector& s, Complex z) {
    std::vector<Complex> a(s.amplitudes());
    for (auto& c : a) c *= z;
    return FockVector(std::move(a), s.tail_tol());
}

inline FockVector add(const FockVector& x, const FockVector& y) {
    std::vector<Complex> a(static_cast<std::size_t>(std::max(x.cutoff(), y.cutoff())) + 1);
    for (int n = 0; n < static_cast<int>(a.size()); ++n)
        a[static_cast<std::size_t>(n)] = x.amp(n) + y.amp(n);
    return FockVector(std::move(a), std::min(x.tail_tol(), y.tail_tol()));
}

/// Norm of the elementwise difference, padding the shorter vector with zeros.
inline double distance(const FockVector& x, const FockVector& y) {
    const int m = std::max(x.cutoff(), y.cutoff());
    double s = 0.0;
    for (int n = 0; n <= m; ++n) s += std::norm(x.amp(n) - y.amp(n));
    return std::sqrt(s);
}

/// a|psi>: c'_n = sqrt(n+1) c_{n+1}. The vacuum maps to the zero vector.
inline FockVector annihilate(const FockVector& s) {
    if (s.cutoff() == 0)
        return FockVector::zero(0, s.tail_tol());
    std::vector<Complex> a(static_cast<std::size_t>(s.cutoff()));
    for (int n = 0; n + 1 <= s.cutoff(); ++n)
        a[static_cast<std::size_t>(n)] = std::sqrt(n + 1.0) * s.amp(n + 1);
    return FockVector(std::move(a), s.tail_tol());
}

/// a†|psi>: c'_{n+1} = sqrt(n+1) c_n. Grows the cutoff by one unless
/// auto_extend is off, in which case the shifted-out top component must be
/// negligible against tail_tol.
inline FockVector create(const FockVector& s, bool auto_extend = true) {
    if (!auto_extend) {
        const double dropped = std::norm(s.amp(s.cutoff())) * (s.cutoff() + 1.0);
        if (dropped > s.tail_tol() * std::max(s.norm_sq(), 1e-300))
            throw std::overflow_error("create: cutoff overflow with auto-extend disabled");
        std::vector<Complex> a(static_cast<std::size_t>(s.cutoff()) + 1);
        for (int n = 0; n + 1 <= s.cutoff(); ++n)
            a[static_cast<std::size_t>(n) + 1] = std::sqrt(n + 1.0) * s.amp(n);
        return FockVector(std::move(a), s.tail_tol());
    }
    std::vector<Complex> a(static_cast<std::size_t>(s.cutoff()) + 2);
    for (int n = 0; n <= s.cutoff(); ++n)
        a[static_cast<std::size_t>(n) + 1] = std::sqrt(n + 1.0) * s.amp(n);
    return FockVector(std::move(a), s.tail_tol());
}

/// A|psi> with A = (1 + k n̂) a: c'_n = (1 + k n) sqrt(n+1) c_{n+1}.
inline FockVector deformed_annihilate(const FockVector& s, DeformParam d) {
    if (s.cutoff() == 0)
        return FockVector::zero(0, s.tail_tol());
    std::vector<Complex> a(static_cast<std::size_t>(s.cutoff()));
    for (int n = 0; n + 1 <= s.cutoff(); ++n)
        a[static_cast<std::size_t>(n)] = (1.0 + d.k * n) * std::sqrt(n + 1.0) * s.amp(n + 1);
    return FockVector(std::move(a), s.tail_tol());
}

/// B†|psi> with B† = a† (1 + k n̂)^{-1}: c'_{n+1} = sqrt(n+1)/(1 + k n) c_n.
/// At k = 1 this is the right inverse of the annihilator.
inline FockVector deformed_create(const FockVector& s, DeformParam d, bool auto_extend = true) {
    FockVector base = s;
    if (!auto_extend) {
        const int m = s.cutoff();
        const double dropped = std::norm(s.amp(m)) * (m + 1.0) / ((1.0 + d.k * m) * (1.0 + d.k * m));
        if (dropped > s.tail_tol() * std::max(s.norm_sq(), 1e-300))
            throw std::overflow_error("deformed_create: cutoff overflow with auto-extend disabled");
    }
    std::vector<Complex> a(static_cast<std::size_t>(s.cutoff()) + (auto_extend ? 2 : 1));
    for (int n = 0; n <= s.cutoff(); ++n) {
        if (n + 1 >= static_cast<int>(a.size())) break;
        a[static_cast<std::size_t>(n) + 1] = std::sqrt(n + 1.0) / (1.0 + d.k * n) * s.amp(n);
    }
    return FockVector(std::move(a), s.tail_tol());
}

struct LadderMoments {
    Complex mean_a;   // <a>
    Complex mean_a2;  // <a^2>
    double mean_n;    // <n>
    double mean_n2;   // <n^2>
};

/// First and second ladder/number moments of a normalized state.
inline LadderMoments ladder_moments(const FockVector& s) {
    if (std::abs(s.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("ladder_moments: state is not normalized");
    LadderMoments m{Complex(0, 0), Complex(0, 0), 0.0, 0.0};
    const int M = s.cutoff();
    for (int n = 0; n <= M; ++n) {
        const double p = std::norm(s.amp(n));
        m.mean_n += n * p;
        m.mean_n2 += static_cast<double>(n) * n * p;
        if (n + 1 <= M)
            m.mean_a += std::conj(s.amp(n)) * s.amp(n + 1) * std::sqrt(n + 1.0);
        if (n + 2 <= M)
            m.mean_a2 += std::conj(s.amp(n)) * s.amp(n + 2) * std::sqrt((n + 1.0) * (n + 2.0));
    }
    return m;
}

/// Text dump: header with cutoff and tail tolerance, then one
/// "n <tab> re <tab> im" line per retained index.
inline void dump_state(const FockVector& s, std::ostream& os) {
    os.precision(17);
    os << "cutoff " << s.cutoff() << " tail_tol " << s.tail_tol() << "\n";
    for (int n = 0; n <= s.cutoff(); ++n)
        os << n << "\t" << s.amp(n).real() << "\t" << s.amp(n).imag() << "\n";
}

inline FockVector load_state(std::istream& is) {
    std::string word;
    int cutoff = -1;
    double tail_tol = 1e-12;
    if (!(is >> word) || word != "cutoff" || !(is >> cutoff))
        throw std::runtime_error("load_state: malformed header");
    if (!(is >> word) || word != "tail_tol" || !(is >> tail_tol))
        throw std::runtime_error("load_state: malformed header");
    if (cutoff < 0)
        throw std::runtime_error("load_state: negative cutoff");
    std::vector<Complex> a(static_cast<std::size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) {
        int idx;
        double re, im;
        if (!(is >> idx >> re >> im) || idx != n)
            throw std::runtime_error("load_state: malformed amplitude line");
        a[static_cast<std::size_t>(n)] = Complex(re, im);
    }
    return FockVector(std::move(a), tail_tol);
}

} // namespace fockbench
