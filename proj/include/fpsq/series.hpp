#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fpsq/errors.hpp"
#include "fpsq/rational.hpp"

namespace fpsq {

// A formal power series stored densely up to an explicit truncation order N:
// coefficient i of x^i lives at index i, for 0 <= i <= N. Every operation is
// exact on the whole stored window; operations that consume leading
// information (derivative, backshift, division by x^d) shrink the window
// instead of guessing.
class series {
public:
    explicit series(std::vector<rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty())
            throw precondition_violated("series needs at least the constant coefficient");
    }

    static series zero(std::size_t truncation) {
        return series(std::vector<rational>(truncation + 1));
    }

    static series constant(const rational& value, std::size_t truncation) {
        std::vector<rational> c(truncation + 1);
        c[0] = value;
        return series(std::move(c));
    }

    // The series x^degree.
    static series monomial(std::size_t degree, std::size_t truncation) {
        if (degree > truncation)
            throw truncation_exceeded("monomial degree " + std::to_string(degree) +
                                      " exceeds truncation " + std::to_string(truncation));
        std::vector<rational> c(truncation + 1);
        c[degree] = rational(1);
        return series(std::move(c));
    }

    std::size_t truncation() const { return c_.size() - 1; }

    const rational& coeff(std::size_t n) const {
        if (n >= c_.size())
            throw truncation_exceeded("coefficient " + std::to_string(n) +
                                      " beyond truncation " + std::to_string(truncation()));
        return c_[n];
    }

    const std::vector<rational>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const rational& r) { return r.is_zero(); });
    }

    // "c0, c1, ..., cN"
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i)
                out += ", ";
            out += c_[i].str();
        }
        return out;
    }

    friend bool operator==(const series& a, const series& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const series& f) { return os << f.str(); }

private:
    std::vector<rational> c_; // size = truncation + 1
};

// Smallest index with a nonzero coefficient; nullopt when every stored
// coefficient is zero (the true order is then > N or the series is zero --
// the window cannot tell).
inline std::optional<std::size_t> order(const series& f) {
    for (std::size_t i = 0; i <= f.truncation(); ++i)
        if (!f.coeff(i).is_zero())
            return i;
    return std::nullopt;
}

// Copy of f restricted to a smaller window.
inline series truncated(const series& f, std::size_t new_truncation) {
    if (new_truncation > f.truncation())
        throw truncation_exceeded("cannot extend truncation " + std::to_string(f.truncation()) +
                                  " to " + std::to_string(new_truncation));
    std::vector<rational> c(f.coeffs().begin(), f.coeffs().begin() + new_truncation + 1);
    return series(std::move(c));
}

inline series operator+(const series& f, const series& g) {
    const std::size_t n = std::min(f.truncation(), g.truncation());
    std::vector<rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        c[i] = f.coeff(i) + g.coeff(i);
    return series(std::move(c));
}

inline series operator-(const series& f) {
    std::vector<rational> c(f.coeffs());
    for (auto& x : c)
        x = -x;
    return series(std::move(c));
}

inline series operator-(const series& f, const series& g) {
    const std::size_t n = std::min(f.truncation(), g.truncation());
    std::vector<rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        c[i] = f.coeff(i) - g.coeff(i);
    return series(std::move(c));
}

inline series operator*(const rational& a, const series& f) {
    std::vector<rational> c(f.coeffs());
    for (auto& x : c)
        x = a * x;
    return series(std::move(c));
}

// Cauchy product, exact through min(N_f, N_g).
inline series operator*(const series& f, const series& g) {
    const std::size_t n = std::min(f.truncation(), g.truncation());
    std::vector<rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (f.coeff(i).is_zero())
            continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (g.coeff(j).is_zero())
                continue;
            c[i + j] += f.coeff(i) * g.coeff(j);
        }
    }
    return series(std::move(c));
}

// f^k by binary exponentiation; f^0 = x^0 at the truncation of f.
inline series pow(const series& f, std::size_t k) {
    series result = series::monomial(0, f.truncation());
    if (k == 0)
        return result;
    series base = f;
    while (true) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k == 0)
            break;
        base = base * base;
    }
    return result;
}

// Multiplicative inverse h of g (g*h = x^0) by the forward recurrence
// h_0 = 1/g_0, h_n = -(1/g_0) * sum_{i=1..n} g_i h_{n-i}.
inline series mul_inverse(const series& g) {
    if (g.coeff(0).is_zero())
        throw not_invertible("series with zero constant term has no multiplicative inverse");
    const std::size_t n = g.truncation();
    const rational lead = g.coeff(0).reciprocal();
    std::vector<rational> h(n + 1);
    h[0] = lead;
    for (std::size_t m = 1; m <= n; ++m) {
        rational acc;
        for (std::size_t i = 1; i <= m; ++i) {
            if (!g.coeff(i).is_zero())
                acc += g.coeff(i) * h[m - i];
        }
        h[m] = -(lead * acc);
    }
    return series(std::move(h));
}

// The unique h with h*den = num, obtained by cancelling x^d (d = ord den)
// from both sides and inverting the remaining unit. Result window shrinks
// to min(N_num, N_den) - d.
inline series divide(const series& num, const series& den) {
    const auto d = order(den);
    if (!d)
        throw not_divisible("division by a series that is zero through its truncation");
    const std::size_t m = std::min(num.truncation(), den.truncation());
    if (m < *d)
        throw truncation_exceeded("division result window is empty");
    for (std::size_t i = 0; i < *d; ++i)
        if (!num.coeff(i).is_zero())
            throw not_divisible("numerator has a nonzero coefficient below the denominator order");

    std::vector<rational> nums(num.coeffs().begin() + *d, num.coeffs().end());
    std::vector<rational> dens(den.coeffs().begin() + *d, den.coeffs().end());
    const series quotient = series(std::move(nums)) * mul_inverse(series(std::move(dens)));
    return truncated(quotient, m - *d);
}

inline series operator/(const series& num, const series& den) { return divide(num, den); }

// Term-by-term derivative; the window shrinks by one.
inline series derivative(const series& f) {
    if (f.truncation() == 0)
        throw truncation_exceeded("derivative needs truncation >= 1");
    const std::size_t n = f.truncation() - 1;
    std::vector<rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        c[i] = rational(i + 1) * f.coeff(i + 1);
    return series(std::move(c));
}

// Coefficients shifted down by one: [x^n] result = [x^(n+1)] f.
inline series backshift(const series& f) {
    if (f.truncation() == 0)
        throw truncation_exceeded("backshift needs truncation >= 1");
    std::vector<rational> c(f.coeffs().begin() + 1, f.coeffs().end());
    return series(std::move(c));
}

// g(f) for nonunit f (f_0 = 0), by Horner accumulation of the g_i at the
// common truncation. Only g_0..g_N can reach the window since ord f >= 1.
inline series compose(const series& g, const series& f) {
    if (!f.coeff(0).is_zero())
        throw composition_requires_nonunit("composition needs an inner series with zero constant term");
    const std::size_t n = std::min(g.truncation(), f.truncation());
    const series inner = truncated(f, n);
    series acc = series::constant(g.coeff(n), n);
    for (std::size_t i = n; i-- > 0;) {
        acc = acc * inner;
        acc = acc + series::constant(g.coeff(i), n);
    }
    return acc;
}

inline bool is_almost_unit(const series& f) {
    return f.truncation() >= 1 && f.coeff(0).is_zero() && !f.coeff(1).is_zero();
}

// Compositional inverse of an almost-unit f, order by order: fbar_1 = 1/f_1,
// and for n >= 2 the coefficient fbar_n is the unique solution of
// [x^n] f(fbar) = 0, which is linear in fbar_n with coefficient f_1. This is
// the transparent recurrence the extraction formulas are verified against.
inline series comp_inverse(const series& f) {
    if (!is_almost_unit(f))
        throw not_almost_unit("compositional inverse needs f with f0 = 0 and f1 != 0");
    const std::size_t n = f.truncation();
    const rational lead = f.coeff(1).reciprocal();
    std::vector<rational> fbar(n + 1);
    fbar[1] = lead;
    for (std::size_t m = 2; m <= n; ++m) {
        const series partial(std::vector<rational>(fbar.begin(), fbar.begin() + m + 1));
        const rational residue = compose(truncated(f, m), partial).coeff(m);
        fbar[m] = -(lead * residue);
    }
    return series(std::move(fbar));
}

inline bool equal_upto(const series& f, const series& g, std::size_t m) {
    if (m > std::min(f.truncation(), g.truncation()))
        throw truncation_exceeded("comparison index beyond a truncation window");
    for (std::size_t i = 0; i <= m; ++i)
        if (!(f.coeff(i) == g.coeff(i)))
            return false;
    return true;
}

// exp(x) = sum x^k / k!
inline series exp_series(std::size_t truncation) {
    std::vector<rational> c(truncation + 1);
    bigint factorial = 1;
    c[0] = rational(1);
    for (std::size_t k = 1; k <= truncation; ++k) {
        factorial *= static_cast<unsigned>(k);
        c[k] = rational(bigint(1), factorial);
    }
    return series(std::move(c));
}

// log(1 + x) = sum_{k>=1} (-1)^(k+1) x^k / k
inline series log1p_series(std::size_t truncation) {
    std::vector<rational> c(truncation + 1);
    for (std::size_t k = 1; k <= truncation; ++k) {
        c[k] = rational(k % 2 ? 1 : -1, static_cast<long long>(k));
    }
    return series(std::move(c));
}

} // namespace fpsq
