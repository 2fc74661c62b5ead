#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "beam_splitter.hpp"
#include "metrics.hpp"
#include "state_factory.hpp"
#include "sweep_table.hpp"

namespace fockbench {

/// Sweep parallelism, capped by the FOCKBENCH_THREADS environment variable.
inline int sweep_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("FOCKBENCH_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

/// Runs f(i) for i in [0,n); each index owns its output slot, so assembly
/// stays deterministic regardless of the thread count.
template <class F>
void parallel_for(int n, F&& f) {
    const int nt = std::min(sweep_threads(), std::max(n, 1));
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([=, &f] {
            for (int i = t; i < n; i += nt) f(i);
        });
    for (auto& th : pool) th.join();
}

struct FigureParams {
    Complex alpha{std::sqrt(10.0), 0.0};
    int grid = 0; // 0 selects the per-figure default
    double tail_tol = 1e-12;
};

namespace detail {

inline std::string cplx_str(Complex z) {
    if (z.imag() == 0.0) return SweepTable::format_value(z.real());
    return SweepTable::format_value(z.real()) + "+" + SweepTable::format_value(z.imag()) + "i";
}

// Delta X of the deformed photon-added family vs k, orders {2,3,5}.
inline SweepTable fig1(const FigureParams& p) {
    const int grid = p.grid > 0 ? p.grid : 101;
    const std::vector<int> orders{2, 3, 5};
    SweepTable t;
    t.column_names = {"k", "delta_x_N2", "delta_x_N3", "delta_x_N5"};
    t.rows.assign(static_cast<std::size_t>(grid), {});
    parallel_for(grid, [&](int i) {
        const double k = static_cast<double>(i) / (grid - 1);
        std::vector<double> row{k};
        for (int m : orders) {
            const auto st = deformed_pacs(p.alpha, m, DeformParam(k), {p.tail_tol, -1});
            row.push_back(std::sqrt(quadrature_stats(st).var_x));
        }
        t.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    t.params = {{"figure", "fig1"}, {"alpha", cplx_str(p.alpha)},
                {"grid", std::to_string(grid)}, {"orders", "2,3,5"}};
    return t;
}

// Quadrature uncertainties of the UTCS and LTCS vs the cutoff N.
inline SweepTable fig2(const FigureParams& p) {
    const int nmax = p.grid > 0 ? p.grid - 1 : 30;
    SweepTable t;
    t.column_names = {"N", "utcs_delta_x", "utcs_delta_p", "ltcs_delta_x", "ltcs_delta_p"};
    t.rows.assign(static_cast<std::size_t>(nmax) + 1, {});
    parallel_for(nmax + 1, [&](int n) {
        const auto qu = quadrature_stats(utcs(p.alpha, n, {p.tail_tol, -1}));
        const auto ql = quadrature_stats(ltcs(p.alpha, n, {p.tail_tol, -1}));
        t.rows[static_cast<std::size_t>(n)] = {static_cast<double>(n),
                                               std::sqrt(qu.var_x), std::sqrt(qu.var_p),
                                               std::sqrt(ql.var_x), std::sqrt(ql.var_p)};
    });
    t.params = {{"figure", "fig2"}, {"alpha", cplx_str(p.alpha)},
                {"N_max", std::to_string(nmax)}};
    return t;
}

inline SweepTable fig_phase(const FigureParams& p, bool upper, const char* name) {
    const int grid = p.grid > 0 ? p.grid : 2048;
    const std::vector<int> orders{2, 10, 20};
    std::vector<PhaseDistribution> dists;
    for (int n : orders) {
        const auto st = upper ? utcs(p.alpha, n, {p.tail_tol, -1})
                              : ltcs(p.alpha, n, {p.tail_tol, -1});
        dists.push_back(phase_distribution(st, grid));
    }
    SweepTable t;
    t.column_names = {"theta", "p_N2", "p_N10", "p_N20"};
    t.rows.reserve(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
        t.rows.push_back({dists[0].theta_grid[static_cast<std::size_t>(i)],
                          dists[0].density[static_cast<std::size_t>(i)],
                          dists[1].density[static_cast<std::size_t>(i)],
                          dists[2].density[static_cast<std::size_t>(i)]});
    t.params = {{"figure", name}, {"alpha", cplx_str(p.alpha)},
                {"family", upper ? "utcs" : "ltcs"},
                {"grid", std::to_string(grid)}, {"orders", "2,10,20"}};
    return t;
}

// Mandel Q of the LTCS vs N.
inline SweepTable fig5(const FigureParams& p) {
    const int nmax = p.grid > 0 ? p.grid - 1 : 40;
    SweepTable t;
    t.column_names = {"N", "mandel_q"};
    t.rows.assign(static_cast<std::size_t>(nmax) + 1, {});
    parallel_for(nmax + 1, [&](int n) {
        t.rows[static_cast<std::size_t>(n)] = {static_cast<double>(n),
                                               mandel_q(ltcs(p.alpha, n, {p.tail_tol, -1}))};
    });
    t.params = {{"figure", "fig5"}, {"alpha", cplx_str(p.alpha)},
                {"N_max", std::to_string(nmax)}};
    return t;
}

// Entanglement potential of the UTCS and LTCS vs N.
inline SweepTable fig6(const FigureParams& p) {
    const int nmax = p.grid > 0 ? p.grid - 1 : 10;
    SweepTable t;
    t.column_names = {"N", "ep_utcs", "ep_ltcs"};
    t.rows.assign(static_cast<std::size_t>(nmax) + 1, {});
    parallel_for(nmax + 1, [&](int n) {
        t.rows[static_cast<std::size_t>(n)] = {
            static_cast<double>(n),
            entanglement_potential(utcs(p.alpha, n, {p.tail_tol, -1})),
            entanglement_potential(ltcs(p.alpha, n, {p.tail_tol, -1}))};
    });
    t.params = {{"figure", "fig6"}, {"alpha", cplx_str(p.alpha)},
                {"N_max", std::to_string(nmax)}};
    return t;
}

// Entanglement potential of the PACS and LTCS of equal order vs |alpha|.
inline SweepTable fig7(const FigureParams& p) {
    const int grid = p.grid > 0 ? p.grid : 41;
    const std::vector<int> orders{1, 2, 3, 4};
    SweepTable t;
    t.column_names = {"alpha"};
    for (int n : orders) {
        t.column_names.push_back("ep_pacs_N" + std::to_string(n));
        t.column_names.push_back("ep_ltcs_N" + std::to_string(n));
    }
    t.rows.assign(static_cast<std::size_t>(grid), {});
    parallel_for(grid, [&](int i) {
        const double a = 4.0 * static_cast<double>(i) / (grid - 1);
        std::vector<double> row{a};
        for (int n : orders) {
            row.push_back(entanglement_potential(pacs(Complex(a, 0.0), n, {p.tail_tol, -1})));
            row.push_back(entanglement_potential(ltcs(Complex(a, 0.0), n, {p.tail_tol, -1})));
        }
        t.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    t.params = {{"figure", "fig7"}, {"alpha_max", "4"},
                {"grid", std::to_string(grid)}, {"orders", "1,2,3,4"}};
    return t;
}

} // namespace detail

/// Tabular reproduction of the numbered figures; ids fig1..fig7.
inline SweepTable figure_table(const std::string& id, const FigureParams& p = {}) {
    if (p.grid != 0 && p.grid < 2)
        throw std::invalid_argument("figure_table: grid override must be >= 2");
    if (!(p.tail_tol > 0.0) || p.tail_tol > 1e-3)
        throw std::invalid_argument("figure_table: tail tolerance out of range");
    if (id == "fig1") return detail::fig1(p);
    if (id == "fig2") return detail::fig2(p);
    if (id == "fig3") return detail::fig_phase(p, true, "fig3");
    if (id == "fig4") return detail::fig_phase(p, false, "fig4");
    if (id == "fig5") return detail::fig5(p);
    if (id == "fig6") return detail::fig6(p);
    if (id == "fig7") return detail::fig7(p);
    throw std::invalid_argument("figure_table: unknown figure id '" + id + "'");
}

} // namespace fockbench
