// Reverting f = x - x^2 three ways. The compositional inverse collects the
// Catalan numbers, and both extraction routes must reproduce the recurrence
// exactly.

#include <iostream>

#include "fpsq/fpsq.hpp"

int main() {
    const std::size_t order = 10;

    fpsq::eval_context ctx;
    ctx.truncation = order;
    const fpsq::series f = fpsq::eval("x - x^2", ctx);
    const fpsq::series fbar = fpsq::comp_inverse(f);
    const fpsq::series g = fpsq::eval("x", ctx);

    std::cout << "f    = " << f.str() << "\n";
    std::cout << "fbar = " << fbar.str() << "\n\n";
    std::cout << "n  recurrence  schur-jabotinsky  functional\n";
    for (std::size_t n = 1; n <= order; ++n) {
        std::cout << n << "  " << fbar.coeff(n).str() << "  "
                  << fpsq::lif_schur_jabotinsky(f, n, 1).str() << "  "
                  << fpsq::lif_functional(g, f, n).str() << "\n";
    }
    return 0;
}
