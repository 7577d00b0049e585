#pragma once

// Reference numerics used only by the tests, written independently of the library.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double eps = 1e-13) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 50);
}

/// Fourth-order centred first derivative.
inline double d1(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace oracle
