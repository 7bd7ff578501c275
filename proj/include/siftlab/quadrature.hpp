#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace siftlab {

namespace detail {

template <class Fn>
double adaptive_simpson_rec(const Fn& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Integrates f over [a, b] to roughly abs_tol (adaptive Simpson).
template <class Fn>
double adaptive_simpson(const Fn& f, double a, double b, double abs_tol, int max_depth = 48) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: b < a");
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Relative-tolerance wrapper: runs a coarse pass to scale the tolerance.
template <class Fn>
double adaptive_simpson_rel(const Fn& f, double a, double b, double rel_tol, int max_depth = 48) {
    double coarse = adaptive_simpson(f, a, b, 1e-4, 20);
    double scale = std::fabs(coarse);
    if (scale < 1e-12) scale = 1e-12;
    return adaptive_simpson(f, a, b, rel_tol * scale, max_depth);
}

} // namespace siftlab
