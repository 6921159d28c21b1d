// chebls: command-line front end for the Chebyshev line search.
//
//   chebls minimize --fn f4 | --expr "cos(t) + (t-2)^2" [--a A --b B] [--order 1|2]
//   chebls bench table1 [--order 1|2]
//   chebls bench table2
//   chebls diffmat --n N --m M [--out PATH]
//   chebls roots --coeffs A1,A2,A3,A4
//
// Global: --format csv|json, --out PATH. CHEB_LS_SEED is reserved; every
// algorithm here is deterministic and the variable is ignored.

#include "chebls/bench/expression.hpp"
#include "chebls/bench/report.hpp"
#include "chebls/bench/suites.hpp"
#include "chebls/chebls.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using chebls::bench::ReportFormat;

struct Output {
    std::string format = "csv";
    std::string path;

    [[nodiscard]] ReportFormat report_format() const {
        return format == "json" ? ReportFormat::json : ReportFormat::csv;
    }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open '" + path + "' for writing");
        }
        out << text;
    }
};

std::string fmt17(double v) { return chebls::bench::detail::fmt17(v); }

struct MinimizeArgs {
    std::string expr;
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    bool have_a = false;
    bool have_b = false;
    int order = 2;
    chebls::LineSearchConfig cfg;
};

int run_minimize(const MinimizeArgs& args, const Output& out) {
    std::function<double(double)> f;
    double a = args.a;
    double b = args.b;
    std::string name;
    std::optional<chebls::bench::ScalarCase> reference;
    if (!args.fn.empty()) {
        const auto& c = chebls::bench::scalar_case(args.fn);
        reference = c;
        f = c.f;
        name = c.name;
        if (!args.have_a) {
            a = c.a;
        }
        if (!args.have_b) {
            b = c.b;
        }
    } else {
        const auto e = chebls::bench::parse_expression(args.expr);
        f = [e](double t) { return e(t); };
        name = args.expr;
        if (!args.have_a || !args.have_b) {
            throw std::invalid_argument("--expr needs both --a and --b");
        }
    }
    chebls::Objective1D obj(f);
    const auto t0 = std::chrono::steady_clock::now();
    const auto st = args.order == 1 ? chebls::cpslsm_minimize_first_order(obj, a, b, args.cfg)
                                    : chebls::cpslsm_minimize(obj, a, b, args.cfg);
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - t0;
    chebls::bench::RunReport r;
    r.suite = "minimize";
    chebls::bench::CaseResult cr;
    cr.name = name;
    cr.solver = args.order == 1 ? "cpslsm-secant" : "cpslsm";
    cr.result = {st.t_star};
    cr.fval = f(st.t_star);
    cr.accuracy = reference ? chebls::bench::cd_n(reference->t_star, st.t_star)
                            : std::numeric_limits<double>::quiet_NaN();
    cr.iterations = st.total_iterations();
    cr.time_ms = elapsed.count();
    cr.status = chebls::to_string(st.status);
    cr.passed = st.status == chebls::SearchStatus::converged;
    r.cases.push_back(cr);
    out.write(chebls::bench::render(r, out.report_format()));
    return cr.passed ? 0 : 1;
}

int run_diffmat(int n, int m, const Output& out) {
    const auto op = chebls::full_diff_matrix(n, m);
    std::ostringstream os;
    if (out.report_format() == ReportFormat::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < op.rows(); ++i) {
            const auto r = op.row(i);
            rows.push_back(std::vector<double>(r.begin(), r.end()));
        }
        os << nlohmann::json{{"n", n}, {"m", m}, {"matrix", rows}}.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < op.rows(); ++i) {
            const auto r = op.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) {
                os << (j ? "," : "") << fmt17(r[j] + 0.0);  // no "-0"
            }
            os << '\n';
        }
    }
    out.write(os.str());
    return 0;
}

int run_roots(const std::vector<double>& coeffs, const Output& out) {
    if (coeffs.size() != 4) {
        throw std::invalid_argument("--coeffs expects exactly four values A1,A2,A3,A4");
    }
    chebls::CubicDerivative c;
    std::copy(coeffs.begin(), coeffs.end(), c.A.begin());
    c = chebls::viete_roots(c);
    const auto cls = chebls::classify_roots(c);
    nlohmann::json roots = nlohmann::json::array();
    std::ostringstream os;
    const bool json = out.report_format() == ReportFormat::json;
    if (!json) {
        os << "root,real,imag,kappa_A1,kappa_A2,kappa_A3,kappa_A4\n";
    }
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> kappa;
        if (c.roots[i].imag() == 0.0) {
            for (std::size_t j = 0; j < 4; ++j) {
                try {
                    kappa.push_back(chebls::condition_number(c, i, j));
                } catch (const std::domain_error&) {
                    kappa.push_back(std::numeric_limits<double>::infinity());
                }
            }
        }
        if (json) {
            nlohmann::json k = nlohmann::json::array();
            for (double v : kappa) {
                k.push_back(chebls::bench::detail::number_json(v));
            }
            roots.push_back({{"real", c.roots[i].real()}, {"imag", c.roots[i].imag()}, {"kappa", k}});
        } else {
            os << i + 1 << ',' << fmt17(c.roots[i].real()) << ',' << fmt17(c.roots[i].imag());
            for (std::size_t j = 0; j < 4; ++j) {
                os << ',' << (j < kappa.size() ? fmt17(kappa[j]) : "");
            }
            os << '\n';
        }
    }
    const char* cls_name = cls == chebls::RootClass::all_real_distinct_in_unit ? "all_real_distinct_in_unit" : "fallback";
    if (json) {
        os << nlohmann::json{{"coeffs", coeffs}, {"p", c.p}, {"q", c.q}, {"class", cls_name}, {"roots", roots}}.dump(2)
           << '\n';
    } else {
        os << "# class=" << cls_name << " p=" << fmt17(c.p) << " q=" << fmt17(c.q) << '\n';
    }
    out.write(os.str());
    return 0;
}

void print_summary(const chebls::bench::RunReport& r) {
    int passed = 0;
    for (const auto& c : r.cases) {
        passed += c.passed ? 1 : 0;
        if (!c.passed) {
            std::cerr << r.suite << ": " << c.name << " missed its threshold (" << c.status << ")\n";
        }
    }
    std::cerr << r.suite << ": " << passed << "/" << r.cases.size() << " cases within thresholds\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev pseudospectral line search and BFGS driver"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--format", out.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out.path, "Write the report here instead of stdout");
    app.footer(
        "Expressions use the variable t, + - * / ^ and parentheses, and the functions\n"
        "sin cos tan tanh sinh cosh exp log sqrt abs. ^ is right associative and binds\n"
        "tighter than unary minus, so -t^2 means -(t^2).\n\n"
        "CHEB_LS_SEED is reserved; all algorithms are deterministic and it is ignored.");

    MinimizeArgs margs;
    auto* minimize = app.add_subcommand("minimize", "Minimise a scalar function on an interval");
    auto* expr_opt = minimize->add_option("--expr", margs.expr, "Objective in t");
    auto* fn_opt = minimize->add_option("--fn", margs.fn, "Built-in objective f1..f12");
    expr_opt->excludes(fn_opt);
    minimize->add_option("--a", margs.a, "Left end of the starting interval");
    minimize->add_option("--b", margs.b, "Right end of the starting interval");
    minimize->add_option("--order", margs.order, "2 = Newton refinement, 1 = secant")->check(CLI::IsMember({1, 2}));
    minimize->add_option("--eps", margs.cfg.eps, "Tolerance on t");
    minimize->add_option("--m-grid", margs.cfg.m_grid, "Grid order of the refinement operators");
    minimize->add_option("--k-max", margs.cfg.k_max, "Iteration cap");

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->require_subcommand(1);
    int t1_order = 2;
    auto* table1 = bench->add_subcommand("table1", "Twelve scalar test functions");
    table1->add_option("--order", t1_order, "2 = Newton refinement, 1 = secant")->check(CLI::IsMember({1, 2}));
    auto* table2 = bench->add_subcommand("table2", "BFGS on the multivariate test functions");

    int dn = 4;
    int dm = 1;
    auto* diffmat = app.add_subcommand("diffmat", "Print a differentiation matrix");
    diffmat->add_option("--n", dn, "Grid order")->required();
    diffmat->add_option("--m", dm, "Derivative order")->required();
    diffmat->add_option("--out", out.path, "Output path");

    std::vector<double> coeffs;
    auto* roots = app.add_subcommand("roots", "Roots and condition numbers of A1 x^3 + A2 x^2 + A3 x + A4");
    roots->add_option("--coeffs", coeffs, "A1,A2,A3,A4")->required()->delimiter(',')->expected(4);

    CLI11_PARSE(app, argc, argv);

    try {
        if (minimize->parsed()) {
            if (margs.expr.empty() && margs.fn.empty()) {
                throw std::invalid_argument("minimize needs --expr or --fn");
            }
            margs.have_a = minimize->count("--a") > 0;
            margs.have_b = minimize->count("--b") > 0;
            return run_minimize(margs, out);
        }
        if (table1->parsed() || table2->parsed()) {
            const auto r = table1->parsed()
                               ? chebls::bench::run_table1(t1_order == 1 ? chebls::bench::SearchOrder::first
                                                                          : chebls::bench::SearchOrder::second)
                               : chebls::bench::run_table2();
            out.write(chebls::bench::render(r, out.report_format()));
            print_summary(r);
            return r.all_passed() ? 0 : 1;
        }
        if (diffmat->parsed()) {
            return run_diffmat(dn, dm, out);
        }
        if (roots->parsed()) {
            return run_roots(coeffs, out);
        }
    } catch (const chebls::bench::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
