#ifndef FRACGREEN_TESTS_ORACLES_HPP
#define FRACGREEN_TESTS_ORACLES_HPP

// Test-only numerical oracles, deliberately independent of the library's
// quadrature engines: recursive adaptive Simpson and trapezoid + Richardson.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson on [a, b].
template <class F>
double simpson(F&& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Trapezoid sums with one Richardson extrapolation sweep (Romberg row 2).
template <class F>
double trapezoid_richardson(F&& f, double a, double b, int levels = 18) {
    double h = b - a;
    double t_prev = 0.5 * h * (f(a) + f(b));
    double r_prev = t_prev;
    double best = t_prev;
    long n = 1;
    for (int k = 1; k <= levels; ++k) {
        h *= 0.5;
        double s = 0.0;
        for (long i = 0; i < n; ++i) s += f(a + (2 * i + 1) * h);
        const double t = 0.5 * t_prev + h * s;
        const double r = (4.0 * t - t_prev) / 3.0;
        if (k > 3 && std::fabs(r - r_prev) < 1e-14 * (std::fabs(r) + 1e-300)) return r;
        best = r;
        r_prev = r;
        t_prev = t;
        n *= 2;
    }
    return best;
}

// Central finite difference of given order-1 derivative.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace oracle

#endif
