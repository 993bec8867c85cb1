#include "qeuclid/cli.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qeuclid/climit.hpp"
#include "qeuclid/expr.hpp"
#include "qeuclid/verify.hpp"

namespace qeuclid {

namespace {

using Json = nlohmann::ordered_json;

const char* kSymbolHelp = R"(Symbols:
  xm xz xp       x^-, x^0, x^+            xzinv  (x^0)^-1
  r rinv         r, r^-1                  Lam Laminv  Lambda, Lambda^-1
  xim xiz xip    xi^-, xi^0, xi^+         bxim bxiz bxip  bar xi^-, bar xi^0, bar xi^+
  alpha          frame normalization      alphainv  alpha^-1
  q sqrtq h i    q, q^(1/2), q^(1/2) - q^(-1/2), imaginary unit
Integers, + - * / ^ and parentheses; exponents are integers.)";

std::string truncated(const std::string& s, std::size_t n) { return s.size() <= n ? s : s.substr(0, n) + " ..."; }

void print_text(const Report& report, std::ostream& out) {
    int failed = 0;
    for (const SuiteReport& s : report.suites) {
        std::ostringstream line;
        line << std::left << std::setw(15) << s.name << (s.passed() ? "pass" : "FAIL") << std::right << std::setw(6) << s.checks
             << " checks  " << std::fixed << std::setprecision(3) << s.seconds << " s";
        if (!s.passed()) line << "  " << s.failures.size() << " failed";
        out << line.str() << "\n";
        for (const auto& [k, v] : s.notes) out << "    " << k << ": " << truncated(v, 300) << "\n";
        for (const Failure& f : s.failures) out << "  x " << f.id << "\n      lhs - rhs = " << truncated(f.residual, 300) << "\n";
        failed += !s.passed();
    }
    if (report.passed())
        out << "all " << report.suites.size() << " suites pass\n";
    else
        out << failed << " of " << report.suites.size() << " suites fail\n";
}

Json to_json(const Report& report, const VerifyOptions& opts, const std::string& alpha_text) {
    Json j;
    j["status"] = report.passed() ? "pass" : "fail";
    j["options"] = {{"sigma", opts.sigma ? to_string(*opts.sigma) : "all"},
                    {"calculus", opts.calculus ? to_string(*opts.calculus) : "all"},
                    {"alpha", alpha_text.empty() ? "symbolic" : alpha_text},
                    {"radius_reduction", opts.radius_reduction}};
    Json suites = Json::array();
    for (const SuiteReport& s : report.suites) {
        Json failures = Json::array();
        for (const Failure& f : s.failures) failures.push_back({{"id", f.id}, {"residual", f.residual}});
        Json notes = Json::object();
        for (const auto& [k, v] : s.notes) notes[k] = v;
        suites.push_back({{"name", s.name},
                          {"status", s.passed() ? "pass" : "fail"},
                          {"checks", s.checks},
                          {"failures", failures},
                          {"notes", notes},
                          {"seconds", s.seconds}});
    }
    j["suites"] = suites;
    return j;
}

void print_square(const Matrix& m, std::ostream& out) {
    const bool pairs = m.size() == 9;
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c) {
            if (m(r, c).is_zero()) continue;
            if (pairs)
                out << index_name(r / 3) << index_name(r % 3) << "|" << index_name(c / 3) << index_name(c % 3);
            else
                out << index_name(r) << index_name(c);
            out << "  " << m(r, c).to_string() << "\n";
        }
}

void print_elements(const ElementMatrix& m, const std::string& row, const std::string& col, bool transpose, std::ostream& out) {
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) {
            const Element& e = m[static_cast<std::size_t>(3 * a + i)];
            if (e.is_zero()) continue;
            const int up = transpose ? i : a;
            const int down = transpose ? a : i;
            out << row << "^" << index_name(up) << "_" << col << index_name(down) << " = " << render(e) << "\n";
        }
}

const std::vector<std::string>& matrix_names() {
    static const std::vector<std::string> names = {"Rhat", "Rhatinv", "Ps", "Pa", "Pt", "g", "ginv", "qR", "qRinv",
                                                   "vielbein", "theta", "bartheta", "mixed"};
    return names;
}

void print_matrix(const std::string& name, std::ostream& out) {
    const Algebra alg;
    if (name == "Rhat") return print_square(alg.rhat(), out);
    if (name == "Rhatinv") return print_square(alg.rhat_inv(), out);
    if (name == "Ps") return print_square(alg.projectors().ps, out);
    if (name == "Pa") return print_square(alg.projectors().pa, out);
    if (name == "Pt") return print_square(alg.projectors().pt, out);
    if (name == "g") return print_square(alg.metric().lower, out);
    if (name == "ginv") return print_square(alg.metric().upper, out);
    if (name == "qR") return print_square(s_matrix(alg, SChoice::qR), out);
    if (name == "qRinv") return print_square(s_matrix(alg, SChoice::qRinv), out);
    const Geometry geo(alg);
    if (name == "vielbein") return print_elements(geo.vielbein(), "e", "", true, out);
    if (name == "theta") return print_elements(geo.theta_coefficients(false), "theta", "", false, out);
    if (name == "bartheta") return print_elements(geo.theta_coefficients(true), "bartheta", "", false, out);
    if (name == "mixed") return print_square(mixed_frame_relation(geo), out);
}

std::string limit_text(const Element& e, bool real) {
    const ClassicalExpr lim = classical_limit(e);
    return real ? to_real(lim).to_string() : lim.to_string();
}

std::string complex_limit(const ComplexElement& v, bool real) {
    if (v.im.is_zero()) return limit_text(v.re, real);
    if (real) {
        RealExpr sum = to_real(classical_limit(v.re)) + QuadComplex::imag(1) * to_real(classical_limit(v.im));
        return sum.to_string();
    }
    const std::string im = "i * (" + limit_text(v.im, false) + ")";
    return v.re.is_zero() ? im : limit_text(v.re, false) + " + " + im;
}

void report_expr_error(const ExprError& e, const std::string& text, std::ostream& err) {
    err << "error: " << e.what() << "\n  " << text << "\n  " << std::string(std::min(e.offset(), text.size()), ' ') << "^\n";
}

AlgebraOptions reduction(const std::string& flag) {
    AlgebraOptions o;
    o.radius_reduction = flag != "off";
    return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact symbolic checks for quantum Euclidean space"};
    app.require_subcommand(1);
    app.footer(kSymbolHelp);

    std::vector<std::string> suites;
    std::string sigma;
    std::string calculus;
    std::string alpha;
    std::string radius = "on";
    bool json = false;
    auto* verify = app.add_subcommand("verify", "Run verification suites (all default suites if none named)");
    std::vector<std::string> allowed = default_suites();
    allowed.emplace_back("mixed");
    verify->add_option("suites", suites, "Suites to run")->check(CLI::IsMember(allowed));
    verify->add_option("--sigma", sigma, "Flip choice")->check(CLI::IsMember({"qR", "qRinv"}));
    verify->add_option("--calculus", calculus, "Calculus")->check(CLI::IsMember({"unbarred", "barred", "enlarged"}));
    verify->add_option("--alpha", alpha, "Fix the frame normalization to a constant expression");
    verify->add_option("--radius-reduction", radius, "Rewrite x^- x^+ through r^2")->check(CLI::IsMember({"on", "off"}));
    verify->add_flag("--json", json, "Machine-readable report");

    std::string expr_text;
    std::string norm_radius = "on";
    auto* normalize = app.add_subcommand("normalize", "Print the normal form of an expression");
    normalize->add_option("expr", expr_text, "Expression")->required();
    normalize->add_option("--radius-reduction", norm_radius, "Rewrite x^- x^+ through r^2")->check(CLI::IsMember({"on", "off"}));

    std::string matrix_name;
    auto* matrix = app.add_subcommand("matrix", "Print the nonzero entries of a named matrix");
    matrix->add_option("name", matrix_name, "Rhat Rhatinv Ps Pa Pt g ginv qR qRinv vielbein theta bartheta mixed")
        ->required()
        ->check(CLI::IsMember(matrix_names()));

    std::string limit_expr;
    int order = -1;
    bool real = false;
    std::string limit_radius = "on";
    auto* limit = app.add_subcommand("limit", "Evaluate an expression at q = 1");
    limit->add_option("expr", limit_expr, "Expression")->required();
    limit->add_option("--order", order, "Print the expansion in t = sqrtq - 1 through t^k instead")->check(CLI::NonNegativeNumber);
    limit->add_flag("--real", real, "Substitute x^- = (x - i z)/sqrt2, x^0 = y, x^+ = (x + i z)/sqrt2");
    limit->add_option("--radius-reduction", limit_radius, "Rewrite x^- x^+ through r^2")->check(CLI::IsMember({"on", "off"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (*verify) {
        VerifyOptions opts;
        if (!sigma.empty()) opts.sigma = sigma == "qR" ? SChoice::qR : SChoice::qRinv;
        if (!calculus.empty())
            opts.calculus = calculus == "unbarred" ? Calculus::unbarred : calculus == "barred" ? Calculus::barred : Calculus::enlarged;
        opts.radius_reduction = radius == "on";
        if (!alpha.empty()) {
            try {
                const Algebra plain;
                const auto value = as_scalar(evaluate(plain, parse(alpha)));
                if (!value || value->is_zero()) {
                    err << "error: --alpha must be a nonzero constant\n";
                    return kExitUsage;
                }
                opts.alpha = *value;
            } catch (const ExprError& e) {
                report_expr_error(e, alpha, err);
                return kExitUsage;
            }
        }
        const Report report = run_suites(suites, opts);
        if (json)
            out << to_json(report, opts, alpha).dump(2) << "\n";
        else
            print_text(report, out);
        return report.passed() ? kExitPass : kExitFail;
    }

    if (*normalize) {
        const Algebra alg(reduction(norm_radius));
        try {
            out << render(evaluate(alg, parse(expr_text))) << "\n";
        } catch (const ExprError& e) {
            report_expr_error(e, expr_text, err);
            return kExitUsage;
        }
        return kExitPass;
    }

    if (*matrix) {
        print_matrix(matrix_name, out);
        return kExitPass;
    }

    const Algebra alg(reduction(limit_radius));
    ComplexElement value;
    try {
        value = evaluate(alg, parse(limit_expr));
    } catch (const ExprError& e) {
        report_expr_error(e, limit_expr, err);
        return kExitUsage;
    }
    if (order >= 0) {
        if (!value.im.is_zero()) out << "re:\n";
        out << series_to_string(classical_series(value.re, order)) << "\n";
        if (!value.im.is_zero()) out << "im:\n" << series_to_string(classical_series(value.im, order)) << "\n";
        return kExitPass;
    }
    try {
        out << complex_limit(value, real) << "\n";
    } catch (const PoleError& e) {
        out << "divergent: pole of order " << e.order() << " in sqrtq - 1\n";
    }
    return kExitPass;
}

}  // namespace qeuclid
