#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpsq/errors.hpp"
#include "fpsq/lagrange.hpp"
#include "fpsq/rational.hpp"
#include "fpsq/series.hpp"

// Identity-verification harness: every check compares two independently
// computed exact values and reports the first coefficient index at which
// they differ. A green suite is a set of exact equalities, never a
// tolerance.

namespace fpsq {

struct coeff_mismatch {
    std::size_t index;
    rational lhs;
    rational rhs;
};

struct verify_report {
    std::string check;
    bool passed = true;
    std::optional<coeff_mismatch> first_mismatch;
    std::uint64_t seed = 0;
};

namespace detail {

class recorder {
public:
    recorder(std::string name, std::uint64_t seed) {
        report_.check = std::move(name);
        report_.seed = seed;
    }

    bool ok() const { return report_.passed; }

    void expect(std::size_t index, const rational& lhs, const rational& rhs) {
        if (!report_.passed || lhs == rhs)
            return;
        report_.passed = false;
        report_.first_mismatch = coeff_mismatch{index, lhs, rhs};
    }

    void expect_prefix(const series& lhs, const series& rhs, std::size_t through) {
        for (std::size_t i = 0; i <= through && report_.passed; ++i)
            expect(i, lhs.coeff(i), rhs.coeff(i));
    }

    void adopt(const verify_report& sub) {
        if (!report_.passed || sub.passed)
            return;
        report_.passed = false;
        report_.first_mismatch = sub.first_mismatch;
    }

    verify_report take() { return std::move(report_); }

private:
    verify_report report_;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Proof-step checks
// ---------------------------------------------------------------------------

// Base case of the inductive route: [x^1] g(fbar) = g_1 * phi_0.
inline verify_report check_base_case(const series& g, const series& f) {
    if (!is_almost_unit(f))
        throw not_almost_unit("base-case check needs an almost-unit f");
    if (std::min(g.truncation(), f.truncation()) < 1)
        throw truncation_exceeded("base-case check needs truncations >= 1");
    detail::recorder rec("base-case", 0);
    const rational lhs = compose(g, comp_inverse(f)).coeff(1);
    const rational rhs = g.coeff(1) * f.coeff(1).reciprocal();
    rec.expect(1, lhs, rhs);
    return rec.take();
}

// Induction step: [x^(n+1)] fbar^(l+1) = [x^n] fbar^l * phi(fbar), and that
// value equals ((l+1)/(n+1)) [x^(n-l)] phi^(n+1).
inline verify_report check_induction_step(const series& f, std::size_t n, std::size_t l) {
    if (n < 1)
        throw precondition_violated("induction step needs n >= 1");
    if (!is_almost_unit(f))
        throw not_almost_unit("induction step needs an almost-unit f");
    if (f.truncation() < n + 1)
        throw truncation_exceeded("induction step at n needs truncation >= n + 1");

    const series fbar = comp_inverse(f);
    const series phi = phi_from_f(f); // window >= n

    const rational top = pow(truncated(fbar, n + 1), l + 1).coeff(n + 1);

    const series fbar_n = truncated(fbar, n);
    const rational mid = (pow(fbar_n, l) * compose(truncated(phi, n), fbar_n)).coeff(n);

    rational extracted; // zero when l > n: fbar^(l+1) has order l+1 > n+1
    if (l <= n) {
        const std::size_t w = n - l;
        extracted = pow(truncated(phi, w), n + 1).coeff(w) *
                    rational(static_cast<long long>(l + 1), static_cast<long long>(n + 1));
    }

    detail::recorder rec("induction-step", 0);
    rec.expect(n + 1, top, mid);
    rec.expect(n + 1, mid, extracted);
    return rec.take();
}

// Finite form of the telescoped derivative identity:
//   sum_{i=l..N} i * [x^i]fbar^l * f^(i-1) * f' = l * x^(l-1)
// compared coefficient-wise through N-1. Terms with i > N have order > N-1
// and cannot reach the window, so the cutoff loses nothing.
inline verify_report check_eq1(const series& f, std::size_t l, std::size_t n_limit) {
    if (!is_almost_unit(f))
        throw not_almost_unit("telescoped-sum check needs an almost-unit f");
    if (l < 1 || l > n_limit)
        throw precondition_violated("telescoped-sum check needs 1 <= l <= N");
    if (f.truncation() < n_limit)
        throw truncation_exceeded("telescoped-sum check needs truncation >= N");

    const series ft = truncated(f, n_limit);
    const series fbar_l = pow(comp_inverse(ft), l);
    const std::size_t w = n_limit - 1;
    const series fw = truncated(ft, w);
    const series fprime = derivative(ft); // window N-1

    series lhs = series::zero(w);
    series fpow = pow(fw, l - 1);
    for (std::size_t i = l; i <= n_limit; ++i) {
        const rational c = rational(i) * fbar_l.coeff(i);
        if (!c.is_zero())
            lhs = lhs + c * (fpow * fprime);
        if (i < n_limit)
            fpow = fpow * fw;
    }
    const series rhs = rational(l) * series::monomial(l - 1, w);

    detail::recorder rec("eq1", 0);
    rec.expect_prefix(lhs, rhs, w);
    return rec.take();
}

// ---------------------------------------------------------------------------
// Deterministic random series
// ---------------------------------------------------------------------------

class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

// Random series with numerators in [-9, 9] and denominators in [1, 4];
// structural constraints (f0 = 0, f1 != 0, g0 != 0) by rejection.
class series_sampler {
public:
    explicit series_sampler(std::uint64_t seed) : rng_(seed) {}

    rational small_rational() {
        const long long num = static_cast<long long>(rng_.below(19)) - 9;
        const long long den = static_cast<long long>(rng_.below(4)) + 1;
        return rational(num, den);
    }

    rational nonzero_rational() {
        rational r = small_rational();
        while (r.is_zero())
            r = small_rational();
        return r;
    }

    series arbitrary(std::size_t truncation) {
        std::vector<rational> c(truncation + 1);
        for (auto& x : c)
            x = small_rational();
        return series(std::move(c));
    }

    // f0 = 0 and f1 != 0.
    series almost_unit(std::size_t truncation) {
        std::vector<rational> c(truncation + 1);
        for (std::size_t i = 1; i <= truncation; ++i)
            c[i] = small_rational();
        if (truncation >= 1) {
            while (c[1].is_zero())
                c[1] = small_rational();
        }
        return series(std::move(c));
    }

    // g0 != 0.
    series unit(std::size_t truncation) {
        std::vector<rational> c(truncation + 1);
        for (auto& x : c)
            x = small_rational();
        while (c[0].is_zero())
            c[0] = small_rational();
        return series(std::move(c));
    }

    // h0 = 0.
    series nonunit(std::size_t truncation) {
        std::vector<rational> c(truncation + 1);
        for (std::size_t i = 1; i <= truncation; ++i)
            c[i] = small_rational();
        return series(std::move(c));
    }

    std::uint64_t raw(std::uint64_t bound) { return rng_.below(bound); }

private:
    splitmix64 rng_;
};

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

struct suite_options {
    std::uint64_t seed = 0;
    std::size_t truncation = 16;
    std::size_t trials = 50;
    // Subset of check names to run; empty means all.
    std::vector<std::string> checks{};
    // Negative control: bend one coefficient of the computed compositional
    // inverse inside the Schur-Jabotinsky check, to prove the harness reports
    // failures at the right index.
    std::optional<std::size_t> corrupt_index{};
};

namespace detail {

inline std::uint64_t fnv1a(const char* text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (; *text; ++text) {
        h ^= static_cast<unsigned char>(*text);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t trial_seed(std::uint64_t suite_seed, const char* check, std::uint64_t trial) {
    return splitmix64(suite_seed ^ fnv1a(check) ^ (0x9e3779b97f4a7c15ull * (trial + 1))).next();
}

using check_fn = verify_report (*)(const suite_options&);

struct check_entry {
    const char* name;
    check_fn fn;
};

// --- differentiation and composition rules ---------------------------------

inline verify_report run_product_rule(const suite_options& o) {
    recorder rec("product-rule", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "product-rule", t));
        const series f = s.arbitrary(o.truncation);
        const series g = s.arbitrary(o.truncation);
        rec.expect_prefix(derivative(f * g), derivative(f) * g + f * derivative(g),
                          o.truncation - 1);
    }
    return rec.take();
}

inline verify_report run_power_rule(const suite_options& o) {
    recorder rec("power-rule", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "power-rule", t));
        const series f = s.arbitrary(o.truncation);
        const std::size_t k = s.raw(7); // k <= 6
        rec.expect_prefix(derivative(pow(f, k + 1)),
                          rational(k + 1) * (pow(f, k) * derivative(f)), o.truncation - 1);
    }
    return rec.take();
}

inline verify_report run_chain_rule(const suite_options& o) {
    recorder rec("chain-rule", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "chain-rule", t));
        const series f = s.arbitrary(o.truncation);
        const series h = s.nonunit(o.truncation);
        rec.expect_prefix(derivative(compose(f, h)),
                          compose(derivative(f), truncated(h, o.truncation - 1)) * derivative(h),
                          o.truncation - 1);
    }
    return rec.take();
}

inline verify_report run_term_by_term(const suite_options& o) {
    recorder rec("term-by-term", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "term-by-term", t));
        const series f = s.arbitrary(o.truncation);
        const series h = s.nonunit(o.truncation);
        const series lhs = derivative(compose(f, h));
        std::vector<series> dpow; // (h^i)'
        dpow.reserve(o.truncation + 1);
        series hp = series::monomial(0, o.truncation);
        for (std::size_t i = 0; i <= o.truncation; ++i) {
            dpow.push_back(derivative(hp));
            if (i < o.truncation)
                hp = hp * h;
        }
        for (std::size_t n = 0; n + 1 <= o.truncation && rec.ok(); ++n) {
            rational sum;
            for (std::size_t i = 0; i <= n + 1; ++i)
                sum += f.coeff(i) * dpow[i].coeff(n);
            rec.expect(n, lhs.coeff(n), sum);
        }
    }
    return rec.take();
}

inline verify_report run_distributive(const suite_options& o) {
    recorder rec("distributive", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "distributive", t));
        const series f = s.arbitrary(o.truncation);
        const series g = s.arbitrary(o.truncation);
        const series h = s.nonunit(o.truncation);
        rec.expect_prefix(compose(f * g, h), compose(f, h) * compose(g, h), o.truncation);
    }
    return rec.take();
}

// --- plumbing agreements --------------------------------------------------

inline verify_report run_phi_agreement(const suite_options& o) {
    recorder rec("phi-agreement", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "phi-agreement", t));
        const series f = s.almost_unit(o.truncation);
        rec.expect_prefix(mul_inverse(backshift(f)),
                          divide(series::monomial(1, o.truncation), f), o.truncation - 1);
    }
    return rec.take();
}

inline verify_report run_inverse_roundtrip(const suite_options& o) {
    recorder rec("inverse-roundtrip", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "inverse-roundtrip", t));
        const series f = s.almost_unit(o.truncation);
        const series fbar = comp_inverse(f);
        const series identity = series::monomial(1, o.truncation);
        rec.expect_prefix(compose(f, fbar), identity, o.truncation);
        if (rec.ok())
            rec.expect_prefix(compose(fbar, f), identity, o.truncation);
    }
    return rec.take();
}

// Order cutoff justifying finite sums: for i > n the piece x^(i-l) * h has
// order > n - l, so it cannot reach the extraction index.
inline verify_report run_order_bound(const suite_options& o) {
    recorder rec("order-bound", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "order-bound", t));
        const series h = s.arbitrary(o.truncation);
        const std::size_t n = 1 + s.raw(o.truncation);
        const std::size_t l = s.raw(n + 1);
        for (std::size_t i = n + 1; i <= o.truncation && rec.ok(); ++i)
            rec.expect(n - l, (series::monomial(i - l, o.truncation) * h).coeff(n - l),
                       rational());
    }
    return rec.take();
}

// --- delta grid and proof steps -------------------------------------------

inline verify_report run_lemma1(const suite_options& o) {
    recorder rec("lemma1", o.seed);
    const std::size_t grid = std::min<std::size_t>(12, o.truncation - 1);
    const std::uint64_t count = std::max<std::uint64_t>(1, o.trials / 5);
    for (std::uint64_t t = 0; t < count && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "lemma1", t));
        const series g = s.unit(o.truncation);
        for (std::size_t j = 0; j <= grid && rec.ok(); ++j)
            for (std::size_t ss = 0; ss <= grid && rec.ok(); ++ss)
                rec.expect(ss, lemma1_value(g, j, ss), rational(j == ss ? 1 : 0));
    }
    return rec.take();
}

inline verify_report run_eq1(const suite_options& o) {
    recorder rec("eq1", o.seed);
    const std::size_t n_limit = std::min<std::size_t>(12, o.truncation);
    const std::uint64_t count = std::max<std::uint64_t>(1, o.trials / 10);
    for (std::uint64_t t = 0; t < count && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "eq1", t));
        const series f = s.almost_unit(o.truncation);
        for (std::size_t l = 1; l <= std::min<std::size_t>(5, n_limit) && rec.ok(); ++l)
            rec.adopt(check_eq1(f, l, n_limit));
    }
    return rec.take();
}

inline verify_report run_base_case(const suite_options& o) {
    recorder rec("base-case", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "base-case", t));
        const series f = s.almost_unit(o.truncation);
        const series g = s.arbitrary(o.truncation);
        rec.adopt(check_base_case(g, f));
    }
    return rec.take();
}

inline verify_report run_induction_step(const suite_options& o) {
    recorder rec("induction-step", o.seed);
    const std::size_t n_max = std::min<std::size_t>(6, o.truncation - 1);
    const std::uint64_t count = std::max<std::uint64_t>(1, o.trials / 10);
    for (std::uint64_t t = 0; t < count && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "induction-step", t));
        const series f = s.almost_unit(o.truncation);
        for (std::size_t n = 1; n <= n_max && rec.ok(); ++n)
            for (std::size_t l = 0; l <= n && rec.ok(); ++l)
                rec.adopt(check_induction_step(f, n, l));
    }
    return rec.take();
}

// --- the theorems -----------------------------------------------------------

inline verify_report run_theorem1(const suite_options& o) {
    recorder rec("theorem1", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "theorem1", t));
        const series f = s.almost_unit(o.truncation);
        const series g = s.arbitrary(o.truncation);
        const series composed = compose(g, comp_inverse(f));
        for (std::size_t n = 1; n <= o.truncation && rec.ok(); ++n)
            rec.expect(n, lif_functional(g, f, n), composed.coeff(n));
    }
    return rec.take();
}

inline verify_report run_theorem2(const suite_options& o) {
    recorder rec("theorem2", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "theorem2", t));
        const series f = s.almost_unit(o.truncation);
        series fbar = comp_inverse(f);
        if (o.corrupt_index) {
            std::vector<rational> c = fbar.coeffs();
            c[*o.corrupt_index] += rational(1);
            fbar = series(std::move(c));
        }
        std::vector<series> fbar_pow{series::monomial(0, o.truncation)};
        for (std::size_t l = 1; l <= o.truncation; ++l)
            fbar_pow.push_back(fbar_pow.back() * fbar);
        for (std::size_t n = 1; n <= o.truncation && rec.ok(); ++n)
            for (std::size_t l = 1; l <= n && rec.ok(); ++l)
                rec.expect(n, lif_schur_jabotinsky(f, n, l), fbar_pow[l].coeff(n));
    }
    return rec.take();
}

inline verify_report run_sj_linkage(const suite_options& o) {
    recorder rec("sj-linkage", o.seed);
    for (std::uint64_t t = 0; t < o.trials && rec.ok(); ++t) {
        series_sampler s(trial_seed(o.seed, "sj-linkage", t));
        const series f = s.almost_unit(o.truncation);
        const series g = s.arbitrary(o.truncation);
        const series phi = phi_from_f(f); // window N-1
        series phi_n = series::monomial(0, o.truncation - 1);
        for (std::size_t n = 1; n <= o.truncation && rec.ok(); ++n) {
            phi_n = phi_n * phi;
            rational sum; // l = 0 term vanishes
            for (std::size_t l = 1; l <= n; ++l)
                sum += g.coeff(l) * phi_n.coeff(n - l) *
                       rational(static_cast<long long>(l), static_cast<long long>(n));
            rec.expect(n, sum, lif_functional(g, f, n));
        }
    }
    return rec.take();
}

inline const std::vector<check_entry>& registry() {
    static const std::vector<check_entry> entries{
        {"product-rule", run_product_rule},
        {"power-rule", run_power_rule},
        {"chain-rule", run_chain_rule},
        {"term-by-term", run_term_by_term},
        {"distributive", run_distributive},
        {"phi-agreement", run_phi_agreement},
        {"inverse-roundtrip", run_inverse_roundtrip},
        {"order-bound", run_order_bound},
        {"lemma1", run_lemma1},
        {"eq1", run_eq1},
        {"base-case", run_base_case},
        {"induction-step", run_induction_step},
        {"theorem1", run_theorem1},
        {"theorem2", run_theorem2},
        {"sj-linkage", run_sj_linkage},
    };
    return entries;
}

} // namespace detail

inline std::vector<std::string> suite_check_names() {
    std::vector<std::string> names;
    for (const auto& e : detail::registry())
        names.emplace_back(e.name);
    return names;
}

inline std::vector<verify_report> run_suite(const suite_options& options) {
    if (options.truncation < 4)
        throw precondition_violated("suite needs truncation >= 4");
    if (options.trials < 1)
        throw precondition_violated("suite needs at least one trial");
    if (options.corrupt_index &&
        (*options.corrupt_index < 1 || *options.corrupt_index > options.truncation))
        throw precondition_violated("corrupt index must lie in [1, truncation]");
    const auto& registry = detail::registry();
    for (const auto& wanted : options.checks) {
        const bool known = std::any_of(registry.begin(), registry.end(),
                                       [&](const auto& e) { return wanted == e.name; });
        if (!known)
            throw precondition_violated("unknown check \"" + wanted + "\"");
    }

    std::vector<verify_report> reports;
    for (const auto& entry : registry) {
        if (!options.checks.empty() &&
            std::find(options.checks.begin(), options.checks.end(), entry.name) ==
                options.checks.end())
            continue;
        reports.push_back(entry.fn(options));
    }
    return reports;
}

inline std::vector<verify_report> run_suite(std::uint64_t seed, std::size_t truncation,
                                            std::size_t trials) {
    suite_options options;
    options.seed = seed;
    options.truncation = truncation;
    options.trials = trials;
    return run_suite(options);
}

} // namespace fpsq
