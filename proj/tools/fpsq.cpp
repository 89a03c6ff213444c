// Command-line front end: series evaluation, Lagrange-inversion coefficient
// extraction, the identity-verification suite, and a worked-examples gallery.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 internal cross-check disagreement.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpsq/fpsq.hpp"

namespace {

struct cli_config {
    std::size_t order = 16;
    std::string format = "plain";
    std::uint64_t seed = 0;
    std::size_t trials = 50;
};

void add_order_and_format(CLI::App* cmd, cli_config& cfg) {
    cmd->add_option("--order", cfg.order, "truncation order N")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    cmd->add_option("--format", cfg.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"plain", "json"}));
}

// Caret diagnostics for parse and evaluation errors.
int report_input_error(const std::string& input, const fpsq::error& e) {
    std::cerr << "fpsq: error: " << e.what() << "\n";
    std::size_t begin = std::string::npos;
    std::size_t end = 0;
    if (const auto* se = dynamic_cast<const fpsq::syntax_error*>(&e)) {
        begin = se->offset;
        end = begin + 1;
    } else if (const auto* uf = dynamic_cast<const fpsq::unknown_function*>(&e)) {
        begin = uf->offset;
        end = begin + uf->name.size();
    } else if (const auto* sc = dynamic_cast<const fpsq::span_carrier*>(&e)) {
        begin = sc->where.begin;
        end = sc->where.end;
    }
    if (begin != std::string::npos) {
        begin = std::min(begin, input.size());
        end = std::clamp(end, begin + 1, input.size() + 1);
        std::cerr << "  " << input << "\n  " << std::string(begin, ' ')
                  << std::string(end - begin, '^') << "\n";
    }
    return 2;
}

fpsq::series eval_expr(const std::string& text, std::size_t order) {
    fpsq::eval_context ctx;
    ctx.truncation = order;
    return fpsq::eval(*fpsq::parse(text), ctx);
}

void print_series(const fpsq::series& s, const cli_config& cfg) {
    if (cfg.format == "json") {
        std::cout << fpsq::to_json(s).dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i <= s.truncation(); ++i)
            std::cout << i << ": " << s.coeff(i).str() << "\n";
    }
}

int cmd_series(const std::string& expr_text, const cli_config& cfg, bool invert) {
    try {
        fpsq::series s = eval_expr(expr_text, cfg.order);
        if (invert)
            s = fpsq::comp_inverse(s);
        print_series(s, cfg);
        return 0;
    } catch (const fpsq::error& e) {
        return report_input_error(expr_text, e);
    }
}

int print_extraction(const fpsq::rational& value, const std::optional<fpsq::rational>& oracle,
                     const nlohmann::json& header, const cli_config& cfg) {
    const bool agree = !oracle || *oracle == value;
    if (cfg.format == "json") {
        nlohmann::json out = header;
        out["value"] = value.str();
        if (oracle) {
            out["oracle"] = oracle->str();
            out["agree"] = agree;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << value.str() << "\n";
        if (oracle) {
            std::cout << "oracle: " << oracle->str() << "\n";
            std::cout << "agreement: " << (agree ? "exact" : "MISMATCH") << "\n";
        }
    }
    if (!agree) {
        std::cerr << "fpsq: internal error: extraction disagrees with the recurrence oracle\n";
        return 3;
    }
    return 0;
}

int cmd_lif_functional(const std::string& g_text, const std::string& f_text, std::size_t n,
                       bool cross_check, const cli_config& cfg) {
    if (n < 1 || n > cfg.order) {
        std::cerr << "fpsq: error: n must lie in [1, order]\n";
        return 2;
    }
    fpsq::series g = fpsq::series::zero(0);
    fpsq::series f = fpsq::series::zero(0);
    try {
        g = eval_expr(g_text, cfg.order);
    } catch (const fpsq::error& e) {
        return report_input_error(g_text, e);
    }
    try {
        f = eval_expr(f_text, cfg.order);
    } catch (const fpsq::error& e) {
        return report_input_error(f_text, e);
    }
    try {
        const fpsq::rational value = fpsq::lif_functional(g, f, n);
        std::optional<fpsq::rational> oracle;
        if (cross_check)
            oracle = fpsq::compose(g, fpsq::comp_inverse(f)).coeff(n);
        return print_extraction(value, oracle, {{"n", n}}, cfg);
    } catch (const fpsq::error& e) {
        std::cerr << "fpsq: error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_lif_sj(const std::string& f_text, std::size_t n, std::size_t l, bool cross_check,
               const cli_config& cfg) {
    if (n < 1 || n > cfg.order) {
        std::cerr << "fpsq: error: n must lie in [1, order]\n";
        return 2;
    }
    if (l > n) {
        std::cerr << "fpsq: error: l must lie in [0, n]\n";
        return 2;
    }
    fpsq::series f = fpsq::series::zero(0);
    try {
        f = eval_expr(f_text, cfg.order);
    } catch (const fpsq::error& e) {
        return report_input_error(f_text, e);
    }
    try {
        const fpsq::rational value = fpsq::lif_schur_jabotinsky(f, n, l);
        std::optional<fpsq::rational> oracle;
        if (cross_check)
            oracle = fpsq::pow(fpsq::comp_inverse(f), l).coeff(n);
        return print_extraction(value, oracle, {{"n", n}, {"l", l}}, cfg);
    } catch (const fpsq::error& e) {
        std::cerr << "fpsq: error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const cli_config& cfg, const std::vector<std::string>& checks,
               const std::optional<std::size_t>& corrupt_index) {
    fpsq::suite_options options;
    options.seed = cfg.seed;
    options.truncation = cfg.order;
    options.trials = cfg.trials;
    options.checks = checks;
    options.corrupt_index = corrupt_index;

    std::vector<fpsq::verify_report> reports;
    try {
        reports = fpsq::run_suite(options);
    } catch (const fpsq::precondition_violated& e) {
        std::cerr << "fpsq: error: " << e.what() << "\n";
        return 2;
    }

    bool all_passed = true;
    if (cfg.format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : reports) {
            out.push_back(fpsq::to_json(r));
            all_passed = all_passed && r.passed;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            if (r.passed) {
                std::cout << "PASS " << r.check << "\n";
            } else {
                all_passed = false;
                std::cout << "FAIL " << r.check << " (index " << r.first_mismatch->index << ": "
                          << r.first_mismatch->lhs.str() << " != " << r.first_mismatch->rhs.str()
                          << ")\n";
            }
        }
    }
    return all_passed ? 0 : 1;
}

fpsq::bigint binomial(std::size_t n, std::size_t k) {
    fpsq::bigint result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result *= static_cast<unsigned long long>(n - k + i);
        result /= static_cast<unsigned long long>(i); // always exact stepwise
    }
    return result;
}

fpsq::bigint factorial(std::size_t n) {
    fpsq::bigint result = 1;
    for (std::size_t i = 2; i <= n; ++i)
        result *= static_cast<unsigned long long>(i);
    return result;
}

// Rooted-tree counts f = x * exp(-x); its compositional inverse collects
// n^(n-1)/n!. The alternating factorial coefficients are built directly.
fpsq::series cayley_f(std::size_t order) {
    std::vector<fpsq::rational> c(order + 1);
    fpsq::bigint fact = 1; // (k-1)! below x^k
    for (std::size_t k = 1; k <= order; ++k) {
        c[k] = fpsq::rational(fpsq::bigint(k % 2 ? 1 : -1), fact);
        fact *= static_cast<unsigned long long>(k);
    }
    return fpsq::series(std::move(c));
}

int cmd_gallery(const std::string& name, const cli_config& cfg) {
    const bool catalan = name == "catalan";
    const bool cayley = name == "cayley";
    if (!catalan && !cayley) {
        std::cerr << "fpsq: error: unknown gallery \"" << name
                  << "\" (available: catalan, cayley)\n";
        return 2;
    }
    const std::size_t order = cfg.order;

    fpsq::series f = fpsq::series::zero(0);
    if (catalan) {
        // f = x - x^2, so x/f is the geometric series.
        std::vector<fpsq::rational> c(order + 1);
        c[1] = fpsq::rational(1);
        if (order >= 2)
            c[2] = fpsq::rational(-1);
        f = fpsq::series(std::move(c));
    } else {
        f = cayley_f(order);
    }

    const fpsq::series fbar = fpsq::comp_inverse(f);
    bool all_agree = true;
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format != "json")
        std::cout << "# n\tlif\toracle\tclosed\n";
    for (std::size_t n = 1; n <= order; ++n) {
        const fpsq::rational lif = fpsq::lif_schur_jabotinsky(f, n, 1);
        const fpsq::rational oracle = fbar.coeff(n);
        const fpsq::rational closed =
            catalan ? fpsq::rational(binomial(2 * n - 2, n - 1), fpsq::bigint(n))
                    : fpsq::rational(boost::multiprecision::pow(fpsq::bigint(n),
                                                                static_cast<unsigned>(n - 1)),
                                     factorial(n));
        all_agree = all_agree && lif == oracle && oracle == closed;
        if (cfg.format == "json") {
            rows.push_back({{"n", n},
                            {"lif", lif.str()},
                            {"oracle", oracle.str()},
                            {"closed", closed.str()}});
        } else {
            std::cout << n << "\t" << lif.str() << "\t" << oracle.str() << "\t" << closed.str()
                      << "\n";
        }
    }
    if (cfg.format == "json")
        std::cout << rows.dump(2) << "\n";
    if (!all_agree) {
        std::cerr << "fpsq: internal error: the three extraction paths disagree\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact truncated formal power series over Q, with Lagrange inversion"};
    app.require_subcommand(1);

    cli_config cfg;

    std::string coeffs_expr;
    auto* coeffs = app.add_subcommand("coeffs", "evaluate an expression, print coefficients");
    coeffs->add_option("expr", coeffs_expr, "series expression")->required();
    add_order_and_format(coeffs, cfg);

    std::string inverse_expr;
    auto* inverse = app.add_subcommand("inverse", "compositional inverse of an expression");
    inverse->add_option("expr", inverse_expr, "almost-unit series expression")->required();
    add_order_and_format(inverse, cfg);

    std::string lf_g, lf_f;
    std::size_t lf_n = 1;
    bool lf_cross = false;
    auto* lif_functional =
        app.add_subcommand("lif-functional", "extract [x^n] g(inverse(f)) via g' * (x/f)^n");
    lif_functional->add_option("g", lf_g, "outer series expression")->required();
    lif_functional->add_option("f", lf_f, "almost-unit series expression")->required();
    lif_functional->add_option("n", lf_n, "extraction index (n >= 1)")->required();
    lif_functional->add_flag("--cross-check", lf_cross, "also run the recurrence oracle");
    add_order_and_format(lif_functional, cfg);

    std::string sj_f;
    std::size_t sj_n = 1;
    std::size_t sj_l = 1;
    bool sj_cross = false;
    auto* lif_sj =
        app.add_subcommand("lif-sj", "extract [x^n] inverse(f)^l via (l/n) [x^(n-l)] (x/f)^n");
    lif_sj->add_option("f", sj_f, "almost-unit series expression")->required();
    lif_sj->add_option("n", sj_n, "extraction index (n >= 1)")->required();
    lif_sj->add_option("l", sj_l, "power of the inverse (0 <= l <= n)")->required();
    lif_sj->add_flag("--cross-check", sj_cross, "also run the recurrence oracle");
    add_order_and_format(lif_sj, cfg);

    std::vector<std::string> verify_checks;
    std::optional<std::size_t> verify_corrupt;
    auto* verify = app.add_subcommand("verify", "run the identity-verification suite");
    verify->add_option("--seed", cfg.seed, "suite PRNG seed")->capture_default_str();
    verify->add_option("--trials", cfg.trials, "random trials per check")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    verify->add_option("--checks", verify_checks, "comma-separated subset of checks")
        ->delimiter(',');
    verify
        ->add_option("--corrupt-index", verify_corrupt,
                     "negative control: bend one inverse coefficient and expect a failure")
        ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    add_order_and_format(verify, cfg);

    std::string gallery_name;
    auto* gallery = app.add_subcommand("gallery", "worked families: catalan, cayley");
    gallery->add_option("name", gallery_name, "family name")->required();
    add_order_and_format(gallery, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (coeffs->parsed())
        return cmd_series(coeffs_expr, cfg, false);
    if (inverse->parsed())
        return cmd_series(inverse_expr, cfg, true);
    if (lif_functional->parsed())
        return cmd_lif_functional(lf_g, lf_f, lf_n, lf_cross, cfg);
    if (lif_sj->parsed())
        return cmd_lif_sj(sj_f, sj_n, sj_l, sj_cross, cfg);
    if (verify->parsed())
        return cmd_verify(cfg, verify_checks, verify_corrupt);
    if (gallery->parsed())
        return cmd_gallery(gallery_name, cfg);
    return 2;
}
