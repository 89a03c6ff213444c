#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "fpsq/errors.hpp"
#include "fpsq/lagrange.hpp"
#include "fpsq/rational.hpp"
#include "fpsq/series.hpp"

// Expression language for describing series on the command line.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? atom ('^' uint)?
//   atom   := rational | 'x' | ident '(' expr ')' | '(' expr ')'
//
// '^' binds tightest; '+','-','*','/' are left-associative. A rational
// literal "p/q" is a single token only when written without spaces;
// with spaces, '/' is series division. Exponents must be non-negative
// integer literals, so evaluation never leaves power series.

namespace fpsq {

enum class builtin_fn { exp, log1p, inverse, xoverf };

inline const char* builtin_name(builtin_fn fn) {
    switch (fn) {
    case builtin_fn::exp: return "exp";
    case builtin_fn::log1p: return "log1p";
    case builtin_fn::inverse: return "inverse";
    case builtin_fn::xoverf: return "xoverf";
    }
    return "?";
}

struct expr;
using expr_ptr = std::unique_ptr<expr>;

struct literal_node {
    rational value;
};
struct var_node {
    std::string name;
};
struct neg_node {
    expr_ptr operand;
};
struct binary_node {
    char op; // '+', '-', '*', '/'
    expr_ptr lhs;
    expr_ptr rhs;
};
struct pow_node {
    expr_ptr base;
    std::size_t exponent;
};
struct call_node {
    builtin_fn fn;
    expr_ptr arg;
};

struct expr {
    std::variant<literal_node, var_node, neg_node, binary_node, pow_node, call_node> node;
    source_span where;
};

// Structural comparison; spans are ignored.
inline bool structurally_equal(const expr& a, const expr& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* la = std::get_if<literal_node>(&a.node))
        return la->value == std::get<literal_node>(b.node).value;
    if (const auto* va = std::get_if<var_node>(&a.node))
        return va->name == std::get<var_node>(b.node).name;
    if (const auto* na = std::get_if<neg_node>(&a.node))
        return structurally_equal(*na->operand, *std::get<neg_node>(b.node).operand);
    if (const auto* ba = std::get_if<binary_node>(&a.node)) {
        const auto& bb = std::get<binary_node>(b.node);
        return ba->op == bb.op && structurally_equal(*ba->lhs, *bb.lhs) &&
               structurally_equal(*ba->rhs, *bb.rhs);
    }
    if (const auto* pa = std::get_if<pow_node>(&a.node)) {
        const auto& pb = std::get<pow_node>(b.node);
        return pa->exponent == pb.exponent && structurally_equal(*pa->base, *pb.base);
    }
    const auto& ca = std::get<call_node>(a.node);
    const auto& cb = std::get<call_node>(b.node);
    return ca.fn == cb.fn && structurally_equal(*ca.arg, *cb.arg);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct token {
    enum class kind { end, number, ident, plus, minus, star, slash, caret, lparen, rparen };
    kind k = kind::end;
    std::size_t begin = 0;
    std::size_t end = 0;
    rational value{};
    std::string text{};
};

class parser {
public:
    explicit parser(std::string_view text) : text_(text) { advance(); }

    expr_ptr run() {
        expr_ptr e = expression();
        if (cur_.k != token::kind::end)
            fail("unexpected trailing input", cur_.begin, "end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t offset,
                           const std::string& expected) const {
        throw syntax_error("syntax error at offset " + std::to_string(offset) + ": " + what +
                               " (expected " + expected + ")",
                           offset, expected);
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

    void advance() { cur_ = lex(); }

    token lex() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
        token t;
        t.begin = pos_;
        if (pos_ >= text_.size()) {
            t.end = pos_;
            return t;
        }
        const char c = text_[pos_];
        if (is_digit(c)) {
            std::size_t p = pos_;
            while (p < text_.size() && is_digit(text_[p]))
                ++p;
            std::size_t end = p;
            // "p/q" with no intervening space is one rational literal.
            if (p + 1 < text_.size() && text_[p] == '/' && is_digit(text_[p + 1])) {
                std::size_t q = p + 1;
                while (q < text_.size() && is_digit(text_[q]))
                    ++q;
                const bigint den{std::string(text_.substr(p + 1, q - p - 1))};
                if (den == 0)
                    fail("rational literal with zero denominator", p + 1, "nonzero denominator");
                t.value = rational(bigint{std::string(text_.substr(pos_, p - pos_))}, den);
                end = q;
            } else {
                t.value = rational(bigint{std::string(text_.substr(pos_, p - pos_))});
            }
            t.k = token::kind::number;
            t.end = pos_ = end;
            return t;
        }
        if (is_ident_start(c)) {
            std::size_t p = pos_;
            while (p < text_.size() && is_ident_char(text_[p]))
                ++p;
            t.k = token::kind::ident;
            t.text = std::string(text_.substr(pos_, p - pos_));
            t.end = pos_ = p;
            return t;
        }
        switch (c) {
        case '+': t.k = token::kind::plus; break;
        case '-': t.k = token::kind::minus; break;
        case '*': t.k = token::kind::star; break;
        case '/': t.k = token::kind::slash; break;
        case '^': t.k = token::kind::caret; break;
        case '(': t.k = token::kind::lparen; break;
        case ')': t.k = token::kind::rparen; break;
        default:
            fail(std::string("unexpected character '") + c + "'", pos_,
                 "a rational, 'x', a function call, '(', or an operator");
        }
        t.end = ++pos_;
        return t;
    }

    static expr_ptr make(expr&& e) { return std::make_unique<expr>(std::move(e)); }

    expr_ptr expression() {
        expr_ptr lhs = term();
        while (cur_.k == token::kind::plus || cur_.k == token::kind::minus) {
            const char op = cur_.k == token::kind::plus ? '+' : '-';
            advance();
            expr_ptr rhs = term();
            const source_span where{lhs->where.begin, rhs->where.end};
            lhs = make(expr{binary_node{op, std::move(lhs), std::move(rhs)}, where});
        }
        return lhs;
    }

    expr_ptr term() {
        expr_ptr lhs = factor();
        while (cur_.k == token::kind::star || cur_.k == token::kind::slash) {
            const char op = cur_.k == token::kind::star ? '*' : '/';
            advance();
            expr_ptr rhs = factor();
            const source_span where{lhs->where.begin, rhs->where.end};
            lhs = make(expr{binary_node{op, std::move(lhs), std::move(rhs)}, where});
        }
        return lhs;
    }

    expr_ptr factor() {
        const std::size_t begin = cur_.begin;
        bool negated = false;
        if (cur_.k == token::kind::minus) {
            negated = true;
            advance();
        }
        expr_ptr e = atom();
        if (cur_.k == token::kind::caret) {
            advance();
            if (cur_.k != token::kind::number || !cur_.value.is_integer() ||
                cur_.value < rational(0))
                fail("invalid exponent", cur_.begin, "a non-negative integer");
            if (cur_.value > rational(1000000))
                fail("exponent too large", cur_.begin, "an exponent at most 1000000");
            const auto exponent = cur_.value.num().convert_to<std::size_t>();
            const source_span where{e->where.begin, cur_.end};
            advance();
            e = make(expr{pow_node{std::move(e), exponent}, where});
        }
        if (negated) {
            const source_span where{begin, e->where.end};
            e = make(expr{neg_node{std::move(e)}, where});
        }
        return e;
    }

    expr_ptr atom() {
        if (cur_.k == token::kind::number) {
            const token t = cur_;
            advance();
            return make(expr{literal_node{t.value}, {t.begin, t.end}});
        }
        if (cur_.k == token::kind::ident) {
            const token t = cur_;
            advance();
            if (cur_.k == token::kind::lparen) {
                builtin_fn fn;
                if (t.text == "exp")
                    fn = builtin_fn::exp;
                else if (t.text == "log1p")
                    fn = builtin_fn::log1p;
                else if (t.text == "inverse")
                    fn = builtin_fn::inverse;
                else if (t.text == "xoverf")
                    fn = builtin_fn::xoverf;
                else
                    throw unknown_function("unknown function \"" + t.text + "\" at offset " +
                                               std::to_string(t.begin),
                                           t.begin, t.text);
                advance();
                expr_ptr arg = expression();
                if (cur_.k != token::kind::rparen)
                    fail("unclosed function call", cur_.begin, "')'");
                const source_span where{t.begin, cur_.end};
                advance();
                return make(expr{call_node{fn, std::move(arg)}, where});
            }
            if (t.text == "x")
                return make(expr{var_node{"x"}, {t.begin, t.end}});
            fail("unexpected identifier \"" + t.text + "\"", t.begin,
                 "'x' or a function call");
        }
        if (cur_.k == token::kind::lparen) {
            advance();
            expr_ptr inner = expression();
            if (cur_.k != token::kind::rparen)
                fail("unclosed parenthesis", cur_.begin, "')'");
            advance();
            return inner;
        }
        fail("unexpected token", cur_.begin, "a rational, 'x', a function call, or '('");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    token cur_;
};

} // namespace detail

inline expr_ptr parse(std::string_view text) { return detail::parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

// Precedence levels: '+'/'-' 1, '*'/'/' 2, unary minus 3, '^' 4, atoms 5.
inline void print_expr(std::string& out, const expr& e, int min_prec) {
    struct visitor {
        std::string& out;
        int min_prec;

        void paren(const expr& inner, int prec, int child_min) const {
            if (prec < min_prec) {
                out += '(';
                print_expr(out, inner, 1);
                out += ')';
            } else {
                print_expr(out, inner, child_min);
            }
        }

        void operator()(const literal_node& n) const { out += n.value.str(); }
        void operator()(const var_node& n) const { out += n.name; }
        void operator()(const neg_node& n) const {
            if (3 < min_prec) {
                out += '(';
                out += '-';
                print_expr(out, *n.operand, 4);
                out += ')';
            } else {
                out += '-';
                print_expr(out, *n.operand, 4);
            }
        }
        void operator()(const binary_node& n) const {
            const int prec = (n.op == '+' || n.op == '-') ? 1 : 2;
            if (prec < min_prec)
                out += '(';
            print_expr(out, *n.lhs, prec);
            out += ' ';
            out += n.op;
            out += ' ';
            print_expr(out, *n.rhs, prec + 1);
            if (prec < min_prec)
                out += ')';
        }
        void operator()(const pow_node& n) const {
            if (4 < min_prec)
                out += '(';
            print_expr(out, *n.base, 5);
            out += '^';
            out += std::to_string(n.exponent);
            if (4 < min_prec)
                out += ')';
        }
        void operator()(const call_node& n) const {
            out += builtin_name(n.fn);
            out += '(';
            print_expr(out, *n.arg, 1);
            out += ')';
        }
    };
    std::visit(visitor{out, min_prec}, e.node);
}

} // namespace detail

// Round-trips: parse(to_string(e)) is structurally equal to e for any AST the
// parser itself can produce.
inline std::string to_string(const expr& e) {
    std::string out;
    detail::print_expr(out, e, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct eval_context {
    std::size_t truncation = 16;
    // Named series for hand-built ASTs; every bound series must store at
    // least `truncation` coefficients.
    std::map<std::string, series, std::less<>> bindings{};
};

namespace detail {

template <class Fn>
series eval_guard(source_span where, Fn&& fn) {
    try {
        return fn();
    } catch (const span_carrier&) {
        throw; // already located at a deeper node
    } catch (const division_by_zero& e) {
        throw spanned_error<division_by_zero>(e.what(), where);
    } catch (const not_invertible& e) {
        throw spanned_error<not_invertible>(e.what(), where);
    } catch (const not_almost_unit& e) {
        throw spanned_error<not_almost_unit>(e.what(), where);
    } catch (const not_divisible& e) {
        throw spanned_error<not_divisible>(e.what(), where);
    } catch (const composition_requires_nonunit& e) {
        throw spanned_error<composition_requires_nonunit>(e.what(), where);
    } catch (const truncation_exceeded& e) {
        throw spanned_error<truncation_exceeded>(e.what(), where);
    } catch (const precondition_violated& e) {
        throw spanned_error<precondition_violated>(e.what(), where);
    }
}

} // namespace detail

inline series eval(const expr& e, const eval_context& ctx) {
    struct visitor {
        const expr& e;
        const eval_context& ctx;

        series operator()(const literal_node& n) const {
            return series::constant(n.value, ctx.truncation);
        }
        series operator()(const var_node& n) const {
            if (n.name == "x")
                return detail::eval_guard(e.where,
                                          [&] { return series::monomial(1, ctx.truncation); });
            const auto it = ctx.bindings.find(n.name);
            if (it == ctx.bindings.end())
                throw spanned_error<precondition_violated>(
                    "unbound series name \"" + n.name + "\"", e.where);
            return detail::eval_guard(e.where, [&] { return truncated(it->second, ctx.truncation); });
        }
        series operator()(const neg_node& n) const { return -eval(*n.operand, ctx); }
        series operator()(const binary_node& n) const {
            const series lhs = eval(*n.lhs, ctx);
            const series rhs = eval(*n.rhs, ctx);
            return detail::eval_guard(e.where, [&]() -> series {
                switch (n.op) {
                case '+': return lhs + rhs;
                case '-': return lhs - rhs;
                case '*': return lhs * rhs;
                default: return divide(lhs, rhs);
                }
            });
        }
        series operator()(const pow_node& n) const {
            const series base = eval(*n.base, ctx);
            return detail::eval_guard(e.where, [&] { return pow(base, n.exponent); });
        }
        series operator()(const call_node& n) const {
            const series arg = eval(*n.arg, ctx);
            return detail::eval_guard(e.where, [&]() -> series {
                switch (n.fn) {
                case builtin_fn::exp: return compose(exp_series(ctx.truncation), arg);
                case builtin_fn::log1p: return compose(log1p_series(ctx.truncation), arg);
                case builtin_fn::inverse: return comp_inverse(arg);
                case builtin_fn::xoverf: return phi_from_f(arg);
                }
                throw precondition_violated("unreachable builtin");
            });
        }
    };
    return std::visit(visitor{e, ctx}, e.node);
}

inline series eval(std::string_view text, const eval_context& ctx) {
    return eval(*parse(text), ctx);
}

} // namespace fpsq
