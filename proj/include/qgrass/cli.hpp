#pragma once

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgrass/eval.hpp"
#include "qgrass/report.hpp"

namespace qgrass::cli {

// Exit contract: 0 = all pass/skip, 1 = any fail, 2 = usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline long max_k_guard() {
    if (const char* env = std::getenv("QGRASS_MAX_K")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return 12;
}

struct KRange {
    long lo = 0;
    long hi = 0;
};

/// Accepts "N" or "N..M".
inline KRange parse_k_range(const std::string& s) {
    const auto dots = s.find("..");
    auto to_long = [&](const std::string& part) {
        char* end = nullptr;
        const long v = std::strtol(part.c_str(), &end, 10);
        if (!end || *end != '\0' || part.empty()) throw error("invalid k specification '" + s + "'");
        return v;
    };
    KRange r;
    if (dots == std::string::npos) {
        r.lo = r.hi = to_long(s);
    } else {
        r.lo = to_long(s.substr(0, dots));
        r.hi = to_long(s.substr(dots + 2));
    }
    if (r.lo < 2 || r.hi < r.lo)
        throw error("k range must satisfy 2 <= lo <= hi (got '" + s + "')");
    const long guard = max_k_guard();
    if (r.hi > guard)
        throw error("k = " + std::to_string(r.hi) + " exceeds the configured maximum " +
                    std::to_string(guard) + " (set QGRASS_MAX_K to raise it)");
    return r;
}

namespace detail {

inline PrintFormat parse_format(const std::string& f) {
    if (f == "text") return PrintFormat::Text;
    if (f == "latex") return PrintFormat::Latex;
    throw error("unsupported format '" + f + "' here (use text or latex)");
}

inline std::string complex_string(std::complex<double> z) {
    std::ostringstream os;
    os << std::setprecision(12) << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

inline void print_verify_text(std::ostream& out, const suites::VerificationReport& r) {
    out << "k = " << r.k;
    if (r.degenerate) out << "  (degenerate: [" << r.k / 2 << "]_q = 0)";
    out << "\n";
    for (const auto& s : r.suites) {
        out << "  suite " << s.name << " (" << s.millis << " ms)\n";
        for (const auto& i : s.identities) {
            const char* tag = i.status == suites::Status::Pass   ? "[PASS]"
                              : i.status == suites::Status::Fail ? "[FAIL]"
                                                                 : "[SKIP]";
            out << "    " << tag << " " << i.name << " -- " << i.detail << "\n";
        }
    }
}

inline void print_verify_latex(std::ostream& out, const std::vector<suites::VerificationReport>& reports) {
    out << "\\begin{tabular}{rlll}\n";
    out << "$k$ & suite & identity & status \\\\\n\\hline\n";
    for (const auto& r : reports)
        for (const auto& s : r.suites)
            for (const auto& i : s.identities)
                out << r.k << " & " << s.name << " & " << i.name << " & "
                    << suites::status_name(i.status) << " \\\\\n";
    out << "\\end{tabular}\n";
}

inline int cmd_verify(const std::string& krange, const std::vector<std::string>& suite_filter,
                      const std::string& format, std::ostream& out) {
    const KRange range = parse_k_range(krange);
    for (const auto& s : suite_filter)
        if (std::find(suites::suite_names().begin(), suites::suite_names().end(), s) ==
            suites::suite_names().end())
            throw error("unknown suite '" + s + "'");
    std::vector<suites::VerificationReport> reports;
    for (long k = range.lo; k <= range.hi; ++k) reports.push_back(suites::run_verification(k, suite_filter));
    bool any_fail = false;
    for (const auto& r : reports) any_fail = any_fail || !r.all_ok();
    if (format == "json") {
        // A single k prints the bare report object; a range prints an array of them.
        if (reports.size() == 1) {
            out << suites::to_json(reports.front()).dump(2) << "\n";
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(suites::to_json(r));
            out << arr.dump(2) << "\n";
        }
    } else if (format == "latex") {
        print_verify_latex(out, reports);
    } else if (format == "text") {
        for (const auto& r : reports) print_verify_text(out, r);
        out << (any_fail ? "FAIL" : "OK") << "\n";
    } else {
        throw error("unsupported format '" + format + "' (use text, json or latex)");
    }
    return any_fail ? kExitFail : kExitOk;
}

inline int cmd_normal_order(long k, const std::string& expr, const std::string& format, std::ostream& out) {
    const QContext ctx(k);
    const MixedPolynomial value = evaluate_mixed(*parse(expr), ctx);
    out << print(value, parse_format(format)) << "\n";
    return kExitOk;
}

inline int cmd_integrate(long k, const std::string& expr, const std::string& format, std::ostream& out) {
    const QContext ctx(k);
    const GrassmannPolynomial value = integrate_expression(*parse(expr), ctx);
    out << print(value, parse_format(format)) << "\n";
    return kExitOk;
}

inline int cmd_eval(long k, const std::string& expr, bool numeric, const std::string& format,
                    std::ostream& out) {
    const QContext ctx(k);
    const MixedPolynomial value = evaluate_mixed(*parse(expr), ctx);
    if (!numeric) {
        out << print(value, parse_format(format)) << "\n";
        return kExitOk;
    }
    if (value.is_zero()) {
        out << complex_string({0.0, 0.0}) << "\n";
        return kExitOk;
    }
    bool first = true;
    for (const auto& [key, c] : value.terms()) {
        if (!first) out << " + ";
        first = false;
        out << complex_string(c.numeric());
        MixedPolynomial letters(ctx);
        letters.add_term(key, RadicalScalar(ctx.one()));
        if (!(key.grassmann.empty() && key.oscillator == OscWord{}))
            out << " " << print(letters, parse_format(format));
    }
    out << "\n";
    return kExitOk;
}

inline int cmd_repr(long k, const std::string& state_csv, const std::string& convention,
                    const std::string& format, std::ostream& out) {
    const QContext ctx(k);
    std::vector<RadicalScalar> state;
    std::stringstream ss(state_csv);
    std::string piece;
    while (std::getline(ss, piece, ','))
        state.push_back(evaluate_scalar(*parse(piece), ctx));
    if (state.size() != static_cast<std::size_t>(k))
        throw error("state must list exactly k = " + std::to_string(k) + " coefficients");
    const RepConvention conv = convention == "M" ? RepConvention::M : RepConvention::D;
    if (convention != "M" && convention != "D") throw error("convention must be M or D");
    out << print(to_representative(state, ctx, conv), parse_format(format)) << "\n";
    return kExitOk;
}

}  // namespace detail

/// Entry point shared by the binary and the tests; args exclude argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Z_k-graded Grassmann / q-oscillator identity engine"};
    app.require_subcommand(1);

    std::string krange = "2..10";
    std::vector<std::string> suite_filter;
    std::string format = "text";
    std::string expr;
    long k = 3;
    bool numeric = false;
    std::string state_csv;
    std::string convention = "D";

    CLI::App* verify = app.add_subcommand("verify", "run the identity suites over a k range");
    verify->add_option("--k", krange, "k value or range lo..hi (default 2..10)");
    verify->add_option("--suite", suite_filter, "restrict to named suites (repeatable)");
    verify->add_option("--format", format, "text | json | latex");

    auto add_common = [&](CLI::App* cmd, bool with_expr) {
        cmd->add_option("--k", k, "root-of-unity order k (>= 2)")->required();
        cmd->add_option("--format", format, "text | latex");
        if (with_expr) cmd->add_option("expr", expr, "expression")->required();
    };
    CLI::App* normal_order = app.add_subcommand("normal-order", "canonical form of a mixed word");
    add_common(normal_order, true);
    CLI::App* integrate = app.add_subcommand("integrate", "Berezin-integrate an expression");
    add_common(integrate, true);
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression exactly (or numerically)");
    add_common(eval_cmd, true);
    eval_cmd->add_flag("--numeric", numeric, "apply the numeric embedding after evaluation");
    CLI::App* repr = app.add_subcommand("repr", "Grassmann representative of a Fock state");
    add_common(repr, false);
    repr->add_option("--state", state_csv, "comma-separated Fock coefficients (k scalar expressions)")
        ->required();
    repr->add_option("--convention", convention, "M | D");

    try {
        std::vector<const char*> argv;
        argv.push_back("qgrass");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return detail::cmd_verify(krange, suite_filter, format, out);
        const long guard = max_k_guard();
        if (k < 2 || k > guard) {
            err << "usage error: k must lie in 2.." << guard << "\n";
            return kExitUsage;
        }
        if (normal_order->parsed()) return detail::cmd_normal_order(k, expr, format, out);
        if (integrate->parsed()) return detail::cmd_integrate(k, expr, format, out);
        if (eval_cmd->parsed()) return detail::cmd_eval(k, expr, numeric, format, out);
        if (repr->parsed()) return detail::cmd_repr(k, state_csv, convention, format, out);
        err << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const syntax_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const exponent_overflow& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const degenerate_parameter& e) {
        err << "degenerate parameter: " << e.what() << "\n";
        return kExitFail;
    } catch (const error& e) {
        // k-range and option validation problems are usage errors.
        const std::string what = e.what();
        if (what.find("k range") != std::string::npos || what.find("exceeds the configured maximum") != std::string::npos ||
            what.find("invalid k specification") != std::string::npos || what.find("unknown suite") != std::string::npos ||
            what.find("unsupported format") != std::string::npos || what.find("convention must be") != std::string::npos ||
            what.find("state must list") != std::string::npos) {
            err << "usage error: " << what << "\n";
            return kExitUsage;
        }
        err << "error: " << what << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace qgrass::cli
