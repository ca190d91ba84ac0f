#include "xps/prk.hpp"

#include <cmath>
#include <stdexcept>

namespace xps {

void PRKTableau::validate() const {
    const std::size_t s = b1.size();
    if (s == 0 || b2.size() != s || a1.size() != s || a2.size() != s)
        throw std::invalid_argument("PRK tableau: inconsistent stage counts");
    for (const auto& row : a1)
        if (row.size() != s) throw std::invalid_argument("PRK tableau: ragged a1");
    for (const auto& row : a2)
        if (row.size() != s) throw std::invalid_argument("PRK tableau: ragged a2");
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        s1 += b1[i];
        s2 += b2[i];
    }
    if (std::abs(s1 - 1.0) > 1e-15 || std::abs(s2 - 1.0) > 1e-15)
        throw std::invalid_argument("PRK tableau: weights must sum to 1");
}

std::pair<Vec, Vec> prk_step(const PRKTableau& tb, const PartFieldFn& f, const PartFieldFn& g,
                             const Vec& x0, const Vec& y0, double h) {
    tb.validate();
    const std::size_t s = tb.stages();
    std::vector<Vec> k(s), l(s);
    std::vector<bool> have_k(s, false), have_l(s, false);

    // k_i needs l_j wherever a2[i][j] != 0; l_i needs k_j via a1[i][j].
    // Resolve stages until no progress; leftovers mean the tableau has
    // no explicit evaluation order.
    std::size_t resolved = 0;
    bool progress = true;
    while (progress && resolved < 2 * s) {
        progress = false;
        for (std::size_t i = 0; i < s; ++i) {
            if (!have_k[i]) {
                bool ready = true;
                for (std::size_t j = 0; j < s; ++j)
                    if (tb.a2[i][j] != 0.0 && !have_l[j]) ready = false;
                if (ready) {
                    Vec yi = y0;
                    for (std::size_t j = 0; j < s; ++j)
                        if (tb.a2[i][j] != 0.0) axpy(yi, h * tb.a2[i][j], l[j]);
                    k[i] = f(yi);
                    have_k[i] = true;
                    ++resolved;
                    progress = true;
                }
            }
            if (!have_l[i]) {
                bool ready = true;
                for (std::size_t j = 0; j < s; ++j)
                    if (tb.a1[i][j] != 0.0 && !have_k[j]) ready = false;
                if (ready) {
                    Vec xi = x0;
                    for (std::size_t j = 0; j < s; ++j)
                        if (tb.a1[i][j] != 0.0) axpy(xi, h * tb.a1[i][j], k[j]);
                    l[i] = g(xi);
                    have_l[i] = true;
                    ++resolved;
                    progress = true;
                }
            }
        }
    }
    if (resolved < 2 * s)
        throw std::invalid_argument("prk_step: tableau is not explicitly solvable");

    Vec x1 = x0, y1 = y0;
    for (std::size_t i = 0; i < s; ++i) {
        if (tb.b1[i] != 0.0) axpy(x1, h * tb.b1[i], k[i]);
        if (tb.b2[i] != 0.0) axpy(y1, h * tb.b2[i], l[i]);
    }
    return {x1, y1};
}

PRKTableau leapfrog_tableau() {
    PRKTableau tb;
    tb.a1 = {{0.0, 0.0}, {0.5, 0.5}};
    tb.b1 = {0.5, 0.5};
    tb.a2 = {{0.5, 0.0}, {0.5, 0.0}};
    tb.b2 = {0.5, 0.5};
    return tb;
}

PRKTableau extended_leapfrog_tableau(double alpha1, double alpha2) {
    const double a1 = alpha1, a2 = alpha2;
    PRKTableau tb;
    const Mat a = {{0.0, 0.0, 0.0, 0.0},
                   {0.5, 0.0, 0.0, 0.0},
                   {0.5 * a1, 0.5 * (1.0 - a1), 0.0, 0.0},
                   {0.5 * (1.0 - a1), 0.5 * a1, 0.5, 0.0}};
    tb.a1 = a;
    tb.a2 = a;
    tb.b1 = {0.5 * (a2 * a1 + (1.0 - a2) * (1.0 - a1)),
             0.5 * (a2 * (1.0 - a1) + (1.0 - a2) * a1), 0.5 * (1.0 - a2), 0.5 * a2};
    tb.b2 = {0.5 * (a2 * (1.0 - a1) + (1.0 - a2) * a1),
             0.5 * (a2 * a1 + (1.0 - a2) * (1.0 - a1)), 0.5 * a2, 0.5 * (1.0 - a2)};
    return tb;
}

}  // namespace xps
