#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace fraccal::detail {

// Real roots of the monic cubic t^3 + a t^2 + b t + c (Cardano /
// trigonometric form).  Returns the number of real roots written.
inline int real_cubic_roots(double a, double b, double c,
                            std::array<double, 3>& out) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q + s);
        const double v = std::cbrt(-0.5 * q - s);
        out[0] = u + v + shift;
        return 1;
    }
    // Three real roots: trigonometric form (p <= 0 here).
    const double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
    if (m == 0.0) {
        out[0] = shift;
        return 1;
    }
    double arg = 3.0 * q / (p * m);
    arg = std::min(1.0, std::max(-1.0, arg));
    const double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
        out[static_cast<std::size_t>(k)] =
            m * std::cos((phi + 2.0 * 3.14159265358979323846 * k) / 3.0) +
            shift;
    }
    return 3;
}

// All four complex roots of the depressed real quartic
//   x^4 + p x^2 + q x + r = 0
// via Ferrari's factorisation into two quadratics, followed by a short
// complex Newton polish.  Roots here only seed a later refinement, so
// modest accuracy suffices; the polish keeps them well-conditioned.
inline std::array<std::complex<double>, 4> depressed_quartic_roots(
    double p, double q, double r) {
    using C = std::complex<double>;
    std::array<C, 4> roots;

    // Resolvent cubic 8m^3 - 4p m^2 - 8r m + (4pr - q^2) = 0, monic form.
    std::array<double, 3> ms{};
    const int nm = real_cubic_roots(-0.5 * p, -r, 0.5 * p * r - 0.125 * q * q, ms);
    double m = ms[0];
    for (int i = 1; i < nm; ++i) {
        if (2.0 * ms[static_cast<std::size_t>(i)] - p > 2.0 * m - p)
            m = ms[static_cast<std::size_t>(i)];
    }

    const double a2 = 2.0 * m - p;
    if (a2 > 1e-12 * (std::abs(p) + std::abs(m) + 1.0)) {
        const double A = std::sqrt(a2);
        const double B = 0.5 * q / A;
        // (x^2 + m)^2 = (A x - B)^2  ==>  two quadratics.
        const C d1 = std::sqrt(C(A * A - 4.0 * (m + B), 0.0));
        const C d2 = std::sqrt(C(A * A - 4.0 * (m - B), 0.0));
        roots[0] = 0.5 * (C(A, 0.0) + d1);
        roots[1] = 0.5 * (C(A, 0.0) - d1);
        roots[2] = 0.5 * (C(-A, 0.0) + d2);
        roots[3] = 0.5 * (C(-A, 0.0) - d2);
    } else {
        // q ~ 0: biquadratic fallback.
        const C d = std::sqrt(C(p * p - 4.0 * r, 0.0));
        const C s1 = std::sqrt(0.5 * (-p + d.real()) + C(0.0, 0.5 * d.imag()));
        const C s2 = std::sqrt(0.5 * (C(-p, 0.0) - d));
        roots[0] = s1;
        roots[1] = -s1;
        roots[2] = s2;
        roots[3] = -s2;
    }

    for (auto& x : roots) {
        for (int it = 0; it < 4; ++it) {
            const C f = ((x * x + p) * x + q) * x + r;
            const C df = (4.0 * x * x + 2.0 * p) * x + q;
            if (std::abs(df) == 0.0) break;
            x -= f / df;
        }
    }
    return roots;
}

}  // namespace fraccal::detail
