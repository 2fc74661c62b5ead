#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fockbench {

/// Order parameter of the integer-order lower incomplete gamma function.
/// Orders below 1 are rejected: the factorial-based definition needs (N-1)!.
struct GammaOrder {
    int value;
    explicit GammaOrder(int n) : value(n) {
        if (n < 1)
            throw std::domain_error("GammaOrder: order must be >= 1");
    }
};

/// ln(n!) with a precomputed table; n up to the table size is supported.
inline double log_factorial(int n) {
    if (n < 0)
        throw std::domain_error("log_factorial: negative argument");
    static const std::vector<double> table = [] {
        std::vector<double> t(8192);
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    if (static_cast<std::size_t>(n) >= table.size())
        throw std::domain_error("log_factorial: argument beyond table range");
    return table[static_cast<std::size_t>(n)];
}

namespace detail {

// Poisson weight e^{-x} x^n / n!. The running product e^{-x} x^j / j! never
// leaves [e^{-x}, 1], so the direct loop is overflow-free and keeps relative
// error near n*eps; the log-space fallback for extreme arguments trades that
// for error proportional to the log magnitude.
inline double poisson_weight(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x < 700.0 && n < 4000) {
        double t = std::exp(-x);
        for (int j = 1; j <= n; ++j) t *= x / static_cast<double>(j);
        return t;
    }
    return std::exp(-x + n * std::log(x) - log_factorial(n));
}

// Regularized head sum Q(n,x) = e^{-x} sum_{j<n} x^j/j!, evaluated top-down
// from the largest term. All terms positive, no cancellation.
inline double regularized_upper_gamma_head(int n, double x) {
    if (n <= 0) return 0.0;
    if (x <= 0.0) return 1.0;
    double t = poisson_weight(n - 1, x);
    double sum = t;
    for (int j = n - 1; j >= 1; --j) {
        t *= static_cast<double>(j) / x;
        sum += t;
    }
    return sum;
}

// Regularized tail sum P(n,x) = e^{-x} sum_{j>=n} x^j/j!, factored around the
// leading term.
inline double regularized_lower_gamma_tail(int n, double x) {
    if (x <= 0.0) return 0.0;
    double term = 1.0, sum = 1.0;
    for (int i = 1; i < 100000; ++i) {
        term *= x / static_cast<double>(n + i);
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return poisson_weight(n, x) * sum;
}

} // namespace detail

/// Regularized lower incomplete gamma P(N,x) = gamma(N,x)/(N-1)!, in [0,1].
/// Branches so that neither side suffers cancellation: the complementary head
/// sum is only used where it is the smaller piece.
inline double regularized_lower_gamma(int n, double x) {
    if (n < 1)
        throw std::domain_error("regularized_lower_gamma: order must be >= 1");
    if (x < 0.0)
        throw std::domain_error("regularized_lower_gamma: negative argument");
    if (x == 0.0) return 0.0;
    if (x < static_cast<double>(n))
        return detail::regularized_lower_gamma_tail(n, x);
    return 1.0 - detail::regularized_upper_gamma_head(n, x);
}

/// Regularized complement Q(N,x) = 1 - P(N,x).
inline double regularized_upper_gamma(int n, double x) {
    if (n < 1)
        throw std::domain_error("regularized_upper_gamma: order must be >= 1");
    if (x < 0.0)
        throw std::domain_error("regularized_upper_gamma: negative argument");
    if (x == 0.0) return 1.0;
    if (x < static_cast<double>(n))
        return 1.0 - detail::regularized_lower_gamma_tail(n, x);
    return detail::regularized_upper_gamma_head(n, x);
}

/// Lower incomplete gamma gamma(N,x) for integer order N >= 1, x >= 0.
inline double lower_incomplete_gamma(GammaOrder order, double x) {
    if (x < 0.0)
        throw std::domain_error("lower_incomplete_gamma: negative argument");
    const int n = order.value;
    return std::exp(log_factorial(n - 1)) * regularized_lower_gamma(n, x);
}

/// Laguerre polynomial L_N(x) by the three-term recurrence.
inline double laguerre(int n, double x) {
    if (n < 0)
        throw std::domain_error("laguerre: negative order");
    if (n == 0) return 1.0;
    double lm1 = 1.0;        // L_0
    double l = 1.0 - x;      // L_1
    for (int j = 1; j < n; ++j) {
        const double lp1 = ((2.0 * j + 1.0 - x) * l - j * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

} // namespace fockbench
