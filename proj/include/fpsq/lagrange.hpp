#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fpsq/errors.hpp"
#include "fpsq/rational.hpp"
#include "fpsq/series.hpp"

// Lagrange inversion: coefficient extraction for the compositional inverse
// fbar of an almost-unit series f, through the unit series phi = x/f.
//
//   functional form:        [x^n] g(fbar) = (1/n) [x^(n-1)] g' * phi^n
//   Schur-Jabotinsky form:  [x^n] fbar^l  = (l/n) [x^(n-l)] phi^n
//
// Both are computed here from phi alone; comp_inverse is the independent
// recurrence they are tested against.

namespace fpsq {

// phi = x/f, i.e. the multiplicative inverse of f with one power of x
// cancelled. Unit because phi_0 = 1/f_1. Window shrinks by one.
inline series phi_from_f(const series& f) {
    if (!is_almost_unit(f))
        throw not_almost_unit("x/f needs f with f0 = 0 and f1 != 0");
    return mul_inverse(backshift(f));
}

// The other direction: the almost-unit f with x/f = phi, at truncation n.
inline series f_from_phi(const series& phi, std::size_t n) {
    if (phi.coeff(0).is_zero())
        throw not_invertible("phi must have a nonzero constant term");
    if (n >= 1 && phi.truncation() < n - 1)
        throw truncation_exceeded("phi stores too few coefficients for truncation " +
                                  std::to_string(n));
    const series inv = mul_inverse(phi);
    std::vector<rational> c(n + 1);
    for (std::size_t i = 1; i <= n; ++i)
        c[i] = inv.coeff(i - 1);
    return series(std::move(c));
}

// (1/n) [x^(n-1)] g'(x) phi^n(x)  ==  [x^n] g(fbar(x))
inline rational lif_functional(const series& g, const series& f, std::size_t n) {
    if (n < 1)
        throw precondition_violated("extraction index n must be >= 1");
    if (!is_almost_unit(f))
        throw not_almost_unit("functional-form extraction needs an almost-unit f");
    if (f.truncation() < n || g.truncation() < n)
        throw truncation_exceeded("extraction at n = " + std::to_string(n) +
                                  " needs both truncations >= n");
    const series phi = phi_from_f(truncated(f, n)); // window n-1
    const series gp = truncated(derivative(g), n - 1);
    return (pow(phi, n) * gp).coeff(n - 1) / rational(static_cast<long long>(n));
}

// (l/n) [x^(n-l)] phi^n(x)  ==  [x^n] fbar^l(x)
inline rational lif_schur_jabotinsky(const series& f, std::size_t n, std::size_t l) {
    if (n < 1 || l > n)
        throw precondition_violated("Schur-Jabotinsky extraction needs n >= 1 and l <= n");
    if (!is_almost_unit(f))
        throw not_almost_unit("Schur-Jabotinsky extraction needs an almost-unit f");
    if (l == 0)
        return rational(); // [x^n] fbar^0 = [x^n] x^0 = 0 for n >= 1
    if (f.truncation() < n)
        throw truncation_exceeded("extraction at n = " + std::to_string(n) +
                                  " needs truncation >= n");
    const series phi = truncated(phi_from_f(truncated(f, n)), n - l);
    return pow(phi, n).coeff(n - l) *
           rational(static_cast<long long>(l), static_cast<long long>(n));
}

namespace detail {

// g^e at the given window, with negative exponents through the
// multiplicative inverse.
inline series int_pow(const series& g, long long e, std::size_t window) {
    const series base = truncated(g, window);
    return e >= 0 ? pow(base, static_cast<std::size_t>(e))
                  : pow(mul_inverse(base), static_cast<std::size_t>(-e));
}

} // namespace detail

// [x^s] ( x^j g^(j-s) + x^(j+1) g^(j-s-1) g' )  for invertible g; always the
// Kronecker delta delta_{j,s}. The x^j factors are folded into the extraction
// index (a piece of order j cannot reach below x^j).
inline rational lemma1_value(const series& g, std::size_t j, std::size_t s) {
    if (g.coeff(0).is_zero())
        throw not_invertible("delta extraction needs an invertible g");
    if (g.truncation() < s + 1)
        throw truncation_exceeded("delta extraction at s = " + std::to_string(s) +
                                  " needs truncation >= s + 1");
    const long long jj = static_cast<long long>(j);
    const long long ss = static_cast<long long>(s);
    rational value;
    if (j <= s) {
        const std::size_t w = s - j;
        value += detail::int_pow(g, jj - ss, w).coeff(w);
    }
    if (j + 1 <= s) {
        const std::size_t w = s - j - 1;
        const series gp = truncated(derivative(g), w);
        value += (detail::int_pow(g, jj - ss - 1, w) * gp).coeff(w);
    }
    return value;
}

} // namespace fpsq
