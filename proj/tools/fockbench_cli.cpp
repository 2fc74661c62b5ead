// Command-line front end: figure sweeps as CSV/JSON tables, state
// construction and inspection, the sequential generation protocol, and the
// numeric cross-check suites.

#include <algorithm>
#include <cctype>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fockbench/checks.hpp"
#include "fockbench/figures.hpp"
#include "fockbench/jc_protocol.hpp"
#include "fockbench/metrics.hpp"
#include "fockbench/state_factory.hpp"

namespace {

using fockbench::Complex;

// Accepts "1.5", "2i", "1+2i", "1-2i", "-3.2+0.5i".
Complex parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw CLI::ConversionError("empty complex literal");
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            split = i; // keep the last sign, it separates the imaginary part
    }
    auto to_double = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw CLI::ConversionError("bad numeric literal '" + t + "'");
        return v;
    };
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        if (split == std::string::npos) return Complex(0.0, to_double(s));
        return Complex(to_double(s.substr(0, split)), to_double(s.substr(split)));
    }
    if (split != std::string::npos)
        throw CLI::ConversionError("imaginary part must end in 'i'");
    return Complex(to_double(s), 0.0);
}

void write_table(const fockbench::SweepTable& table, const std::string& out,
                 const std::string& format) {
    std::ostringstream body;
    if (format == "json")
        table.write_json(body);
    else
        table.write_csv(body);
    if (out.empty()) {
        std::cout << body.str();
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + out + "'");
    f << body.str();
}

fockbench::FockVector make_state(const std::string& family, const fockbench::StateSpec& spec,
                                 double tail_tol) {
    using namespace fockbench;
    const BuildOptions opt{tail_tol, -1};
    if (family == "coherent") return coherent(spec.alpha, opt);
    if (family == "utcs") return utcs(spec.alpha, spec.order, opt);
    if (family == "ltcs") return ltcs(spec.alpha, spec.order, opt);
    if (family == "pacs") return pacs(spec.alpha, spec.order, opt);
    if (family == "dpacs") return deformed_pacs(spec.alpha, spec.order, DeformParam(spec.k), opt);
    if (family == "bernoulli") return bernoulli_approx(spec.alpha, spec.order, opt);
    if (family == "bdisp") return b_displaced_vacuum(spec.alpha, DeformParam(spec.k), 0, opt);
    throw CLI::ValidationError("unknown state family '" + family + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockbench: truncated and photon-added coherent state toolkit"};
    app.require_subcommand(1);

    std::string alpha_str = "3.16227766016838";
    std::string out_path;
    std::string format = "csv";
    double k = 0.0;
    double tail_tol = 1e-12;
    int order = 0;
    int grid = 0;

    // fig
    auto* fig = app.add_subcommand("fig", "emit a figure sweep as a table");
    std::string fig_id;
    fig->add_option("id", fig_id, "figure id, fig1..fig7")->required();
    fig->add_option("--alpha", alpha_str, "coherent amplitude, a+bi or real");
    fig->add_option("--grid", grid, "sweep grid size override");
    fig->add_option("--tail-tol", tail_tol, "truncation tail tolerance");
    fig->add_option("--out", out_path, "output file (stdout when omitted)");
    fig->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // state
    auto* state = app.add_subcommand("state", "build a state, print its metrics, dump it");
    std::string family;
    state->add_option("family", family, "coherent|utcs|ltcs|pacs|dpacs|bernoulli|bdisp")
        ->required();
    state->add_option("--alpha", alpha_str, "coherent amplitude, a+bi or real");
    state->add_option("--order,-N", order, "truncation order N / photon-added order m");
    state->add_option("--k", k, "deformation strength in [0,1]");
    state->add_option("--tail-tol", tail_tol, "truncation tail tolerance");
    state->add_option("--out", out_path, "dump file (stdout when omitted)");

    // protocol
    auto* protocol = app.add_subcommand("protocol", "run the sequential generation protocol");
    int steps = 1;
    double lambda_t = 1e-3;
    bool exact = false;
    protocol->add_option("--alpha", alpha_str, "initial coherent amplitude");
    protocol->add_option("--steps", steps, "number of atoms")->required();
    protocol->add_option("--lambda-t", lambda_t, "interaction strength lambda*t per atom");
    protocol->add_option("--k", k, "deformation strength in [0,1]");
    protocol->add_flag("--exact", exact, "use the exact doublet rotation instead of first order");

    // check
    auto* check = app.add_subcommand("check", "run a numeric cross-check suite");
    std::string suite;
    check->add_option("suite", suite, "identity|decomposition|closed-forms|bs-oracle")
        ->required()
        ->check(CLI::IsMember({"identity", "decomposition", "closed-forms", "bs-oracle"}));
    double alpha_max = 8.0;
    int radial = 200, angular = 64, basis = 12;
    check->add_option("--order,-N", order, "truncation order for the identity suite");
    check->add_option("--alpha-max", alpha_max, "radial integration bound");
    check->add_option("--radial", radial, "radial quadrature nodes");
    check->add_option("--angular", angular, "angular quadrature nodes");
    check->add_option("--basis", basis, "probed basis dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const Complex alpha = parse_complex(alpha_str);

        if (fig->parsed()) {
            fockbench::FigureParams p;
            p.alpha = alpha;
            p.grid = grid;
            p.tail_tol = tail_tol;
            write_table(fockbench::figure_table(fig_id, p), out_path, format);
            return 0;
        }

        if (state->parsed()) {
            const auto s = make_state(family, fockbench::StateSpec{alpha, order, k}, tail_tol);
            const auto mom = fockbench::ladder_moments(s);
            const auto quad = fockbench::quadrature_stats(s);
            std::cout.precision(12);
            std::cout << "norm " << s.norm() << "\n"
                      << "mean_n " << mom.mean_n << "\n"
                      << "var_x " << quad.var_x << "\n"
                      << "var_p " << quad.var_p << "\n";
            if (mom.mean_n > 1e-12)
                std::cout << "mandel_q " << fockbench::mandel_q(s) << "\n";
            else
                std::cout << "mandel_q n/a\n";
            if (out_path.empty()) {
                fockbench::dump_state(s, std::cout);
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
                fockbench::dump_state(s, f);
            }
            return 0;
        }

        if (protocol->parsed()) {
            const auto rep = fockbench::run_protocol(alpha, steps, lambda_t,
                                                     fockbench::DeformParam(k), exact);
            std::cout.precision(12);
            std::cout << "steps " << steps << "\n";
            for (std::size_t i = 0; i < rep.per_step_success_prob.size(); ++i)
                std::cout << "step " << i + 1 << " success_prob "
                          << rep.per_step_success_prob[i] << "\n";
            std::cout << "cumulative_success_prob " << rep.cumulative_success_prob << "\n"
                      << "fidelity_vs_analytic " << rep.fidelity_vs_analytic << "\n"
                      << "deviation_vs_analytic " << rep.deviation_vs_analytic << "\n";
            return 0;
        }

        if (check->parsed()) {
            fockbench::CheckReport rep;
            if (suite == "identity")
                rep = fockbench::check_identity(order, alpha_max, radial, angular, basis);
            else if (suite == "decomposition")
                rep = fockbench::check_decomposition();
            else if (suite == "closed-forms")
                rep = fockbench::check_closed_forms();
            else
                rep = fockbench::check_bs_oracle();
            std::cout << rep.text << (rep.pass ? "PASS" : "FAIL") << "\n";
            return rep.pass ? 0 : 2;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
