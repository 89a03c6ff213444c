#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "fpsq/expr.hpp"
#include "fpsq/verify.hpp"

using fpsq::eval_context;
using fpsq::expr;
using fpsq::expr_ptr;
using fpsq::rational;
using fpsq::series;

namespace {

series S(std::vector<rational> c) { return series(std::move(c)); }

series eval_at(const std::string& text, std::size_t order) {
    eval_context ctx;
    ctx.truncation = order;
    return fpsq::eval(*fpsq::parse(text), ctx);
}

} // namespace

TEST_CASE("parse shapes") {
    SECTION("x*(1-x)") {
        const expr_ptr e = fpsq::parse("x*(1-x)");
        const auto& mul = std::get<fpsq::binary_node>(e->node);
        CHECK(mul.op == '*');
        CHECK(std::holds_alternative<fpsq::var_node>(mul.lhs->node));
        const auto& sub = std::get<fpsq::binary_node>(mul.rhs->node);
        CHECK(sub.op == '-');
        CHECK(std::get<fpsq::literal_node>(sub.lhs->node).value == rational(1));
        CHECK(std::holds_alternative<fpsq::var_node>(sub.rhs->node));
    }
    SECTION("1/(1-x) is division") {
        const expr_ptr e = fpsq::parse("1/(1-x)");
        const auto& div = std::get<fpsq::binary_node>(e->node);
        CHECK(div.op == '/');
        CHECK(std::get<fpsq::literal_node>(div.lhs->node).value == rational(1));
    }
    SECTION("contiguous p/q is one literal, spaced is division") {
        const expr_ptr lit = fpsq::parse("1/2");
        CHECK(std::get<fpsq::literal_node>(lit->node).value == rational(1, 2));
        const expr_ptr div = fpsq::parse("1 / 2");
        CHECK(std::get<fpsq::binary_node>(div->node).op == '/');
        CHECK_FALSE(fpsq::structurally_equal(*lit, *div));
        // 2/4 normalizes at the lexer
        CHECK(std::get<fpsq::literal_node>(fpsq::parse("2/4")->node).value == rational(1, 2));
    }
    SECTION("precedence and associativity") {
        CHECK(fpsq::structurally_equal(*fpsq::parse("1+2*x"), *fpsq::parse("1+(2*x)")));
        CHECK(fpsq::structurally_equal(*fpsq::parse("1-2-x"), *fpsq::parse("(1-2)-x")));
        CHECK(fpsq::structurally_equal(*fpsq::parse("-x^2"), *fpsq::parse("-(x^2)")));
        CHECK_FALSE(fpsq::structurally_equal(*fpsq::parse("-x^2"), *fpsq::parse("(-x)^2")));
    }
}

TEST_CASE("parse errors") {
    SECTION("negative exponent") {
        CHECK_THROWS_AS(fpsq::parse("x^-1"), fpsq::syntax_error);
    }
    SECTION("fractional exponent") {
        CHECK_THROWS_AS(fpsq::parse("x^1/2"), fpsq::syntax_error);
    }
    SECTION("unknown function") {
        try {
            fpsq::parse("1 + sinh(x)");
            FAIL("expected unknown_function");
        } catch (const fpsq::unknown_function& e) {
            CHECK(e.name == "sinh");
            CHECK(e.offset == 4);
        }
    }
    SECTION("offsets point into the input") {
        const std::string text = "1/(1-x";
        try {
            fpsq::parse(text);
            FAIL("expected syntax_error");
        } catch (const fpsq::syntax_error& e) {
            CHECK(e.offset <= text.size());
            CHECK(e.expected == "')'");
        }
    }
    SECTION("trailing garbage") {
        CHECK_THROWS_AS(fpsq::parse("x x"), fpsq::syntax_error);
        CHECK_THROWS_AS(fpsq::parse(""), fpsq::syntax_error);
        CHECK_THROWS_AS(fpsq::parse("y"), fpsq::syntax_error);
        CHECK_THROWS_AS(fpsq::parse("1/0"), fpsq::syntax_error);
    }
}

TEST_CASE("evaluation") {
    CHECK(eval_at("x*(1-x)", 4) == S({0, 1, -1, 0, 0}));
    CHECK(eval_at("exp(x)", 3) == S({rational(1), rational(1), rational(1, 2), rational(1, 6)}));
    CHECK(eval_at("inverse(x - x^2)", 5) == S({0, 1, 1, 2, 5, 14}));
    CHECK(eval_at("1/(1-x)", 4) == S({1, 1, 1, 1, 1}));
    CHECK(eval_at("log1p(x)", 3) ==
          S({rational(0), rational(1), rational(-1, 2), rational(1, 3)}));
    CHECK(eval_at("xoverf(x - x^2)", 5) == S({1, 1, 1, 1, 1})); // window drops by one
    CHECK(eval_at("x/(x - x^2)", 5) == S({1, 1, 1, 1, 1}));
    CHECK(eval_at("(1+x)^3", 3) == S({1, 3, 3, 1}));
    CHECK(eval_at("3/2 * x", 2) == S({rational(0), rational(3, 2), rational(0)}));
    CHECK(eval_at("exp(log1p(x))", 6) == eval_at("1 + x", 6));
    CHECK(eval_at("log1p(exp(x) - 1)", 6) == eval_at("x", 6));
}

TEST_CASE("evaluation errors carry spans") {
    const std::string text = "1 + inverse(1+x)";
    try {
        eval_at(text, 5);
        FAIL("expected not_almost_unit");
    } catch (const fpsq::not_almost_unit& e) {
        const auto* sp = dynamic_cast<const fpsq::span_carrier*>(&e);
        REQUIRE(sp != nullptr);
        CHECK(sp->where.begin == 4);
        CHECK(sp->where.end == text.size());
    }

    try {
        eval_at("exp(1+x)", 5);
        FAIL("expected composition_requires_nonunit");
    } catch (const fpsq::composition_requires_nonunit& e) {
        const auto* sp = dynamic_cast<const fpsq::span_carrier*>(&e);
        REQUIRE(sp != nullptr);
        CHECK(sp->where.begin == 0);
        CHECK(sp->where.end == 8);
    }

    CHECK_THROWS_AS(eval_at("1/x", 4), fpsq::not_divisible);
    CHECK_THROWS_AS(eval_at("(1+x)/(x - x)", 4), fpsq::not_divisible);
}

TEST_CASE("bindings resolve hand-built variable nodes") {
    eval_context ctx;
    ctx.truncation = 3;
    ctx.bindings.emplace("f", S({0, 1, 1, 1}));
    expr e{fpsq::var_node{"f"}, {0, 1}};
    CHECK(fpsq::eval(e, ctx) == S({0, 1, 1, 1}));
    expr missing{fpsq::var_node{"g"}, {0, 1}};
    CHECK_THROWS_AS(fpsq::eval(missing, ctx), fpsq::precondition_violated);
}

// ---------------------------------------------------------------------------
// Randomized ASTs: printing round-trips and evaluation is a homomorphism.
// ---------------------------------------------------------------------------

namespace {

expr_ptr gen_expr(fpsq::series_sampler& s, int depth) {
    auto make = [](expr&& e) { return std::make_unique<expr>(std::move(e)); };
    const std::uint64_t pick = depth <= 0 ? s.raw(2) : s.raw(8);
    switch (pick) {
    case 0: {
        const long long num = static_cast<long long>(s.raw(10));
        const long long den = static_cast<long long>(s.raw(4)) + 1;
        return make(expr{fpsq::literal_node{rational(num, den)}, {}});
    }
    case 1: return make(expr{fpsq::var_node{"x"}, {}});
    case 2: return make(expr{fpsq::neg_node{gen_expr(s, depth - 1)}, {}});
    case 3:
    case 4: {
        const char ops[] = {'+', '-', '*'};
        const char op = ops[s.raw(3)];
        auto lhs = gen_expr(s, depth - 1);
        auto rhs = gen_expr(s, depth - 1);
        return make(expr{fpsq::binary_node{op, std::move(lhs), std::move(rhs)}, {}});
    }
    case 5: {
        const auto exponent = static_cast<std::size_t>(s.raw(4));
        return make(expr{fpsq::pow_node{gen_expr(s, depth - 1), exponent}, {}});
    }
    default: {
        auto lhs = gen_expr(s, depth - 1);
        auto rhs = gen_expr(s, depth - 1);
        return make(expr{fpsq::binary_node{'*', std::move(lhs), std::move(rhs)}, {}});
    }
    }
}

} // namespace

TEST_CASE("pretty-printing round-trips") {
    fpsq::series_sampler s(61);
    for (int t = 0; t < 60; ++t) {
        const expr_ptr e = gen_expr(s, 4);
        const std::string text = fpsq::to_string(*e);
        const expr_ptr reparsed = fpsq::parse(text);
        INFO(text);
        CHECK(fpsq::structurally_equal(*e, *reparsed));
        CHECK(fpsq::to_string(*reparsed) == text);
    }
    // A few fixed shapes that exercise the paren rules.
    for (const char* text : {"1/2^2", "-(-x)", "x - -x", "(-x)^2", "-(x*x)", "3 - (1 - x)",
                             "inverse(x - x^2)", "exp(x - x^2)"}) {
        const expr_ptr e = fpsq::parse(text);
        CHECK(fpsq::structurally_equal(*e, *fpsq::parse(fpsq::to_string(*e))));
    }
}

TEST_CASE("evaluation is a homomorphism") {
    fpsq::series_sampler s(62);
    eval_context ctx;
    ctx.truncation = 6;
    for (int t = 0; t < 25; ++t) {
        const expr_ptr a = gen_expr(s, 3);
        const expr_ptr b = gen_expr(s, 3);
        const std::string sa = fpsq::to_string(*a);
        const std::string sb = fpsq::to_string(*b);
        const series va = fpsq::eval(*a, ctx);
        const series vb = fpsq::eval(*b, ctx);
        CHECK(eval_at("(" + sa + ") * (" + sb + ")", 6) == va * vb);
        CHECK(eval_at("(" + sa + ") + (" + sb + ")", 6) == va + vb);
        CHECK(eval_at("(" + sa + ") - (" + sb + ")", 6) == va - vb);
        CHECK(eval_at("-(" + sa + ")", 6) == -va);
    }
}
