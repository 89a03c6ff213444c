#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpsq/errors.hpp"

namespace fpsq {

using bigint = boost::multiprecision::cpp_int;

// Exact rational number with arbitrary-precision numerator and denominator.
// Canonical form is maintained by every operation: denominator > 0,
// gcd(|num|, den) = 1, zero stored as 0/1.
class rational {
public:
    rational() : num_(0), den_(1) {}

    template <std::integral T>
    rational(T n) : num_(n), den_(1) {}

    rational(bigint n) : num_(std::move(n)), den_(1) {}

    rational(bigint num, bigint den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    template <std::integral T, std::integral U>
    rational(T num, U den) : num_(num), den_(den) {
        normalize();
    }

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }

    rational reciprocal() const {
        if (num_ == 0)
            throw division_by_zero("reciprocal of zero");
        return num_ < 0 ? rational(-den_, -num_, already_canonical{})
                        : rational(den_, num_, already_canonical{});
    }

    rational operator-() const { return rational(-num_, den_, already_canonical{}); }

    friend rational operator+(const rational& a, const rational& b) {
        return rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend rational operator-(const rational& a, const rational& b) {
        return rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend rational operator*(const rational& a, const rational& b) {
        return rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_ == 0)
            throw division_by_zero("division by zero");
        return rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    rational& operator+=(const rational& o) { return *this = *this + o; }
    rational& operator-=(const rational& o) { return *this = *this - o; }
    rational& operator*=(const rational& o) { return *this = *this * o; }
    rational& operator/=(const rational& o) { return *this = *this / o; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
        const bigint lhs = a.num_ * b.den_;
        const bigint rhs = b.num_ * a.den_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    // "p" when the denominator is 1, otherwise "p/q".
    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

    // Accepts an optional leading sign; rejects a zero denominator and any
    // trailing garbage.
    static rational parse(std::string_view text);

    friend std::ostream& operator<<(std::ostream& os, const rational& r) {
        return os << r.str();
    }

private:
    struct already_canonical {};

    rational(bigint num, bigint den, already_canonical)
        : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ == 0)
            throw division_by_zero("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        const bigint g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    bigint num_;
    bigint den_;
};

inline rational rational::parse(std::string_view text) {
    const std::string_view full = text;
    auto fail = [&](std::size_t at, const char* what) -> rational {
        throw syntax_error("invalid rational \"" + std::string(full) + "\"", at, what);
    };

    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    const std::size_t num_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
        ++pos;
    if (pos == num_begin)
        return fail(pos, "digit");

    bigint num(std::string(text.substr(num_begin, pos - num_begin)));
    bigint den(1);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        const std::size_t den_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
            ++pos;
        if (pos == den_begin)
            return fail(pos, "digit");
        den = bigint(std::string(text.substr(den_begin, pos - den_begin)));
        if (den == 0)
            throw division_by_zero("rational with zero denominator: \"" + std::string(full) + "\"");
    }
    if (pos != text.size())
        return fail(pos, "end of input");
    if (negative)
        num = -num;
    return rational(std::move(num), std::move(den));
}

} // namespace fpsq
