#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace fraccal::detail {

struct QuadPoint {
    double node;
    double weight;
};

// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n with
// the Chebyshev-based initial guess.  Accuracy is full double precision
// for the moderate n used here.
inline std::vector<QuadPoint> gauss_legendre(int n) {
    std::vector<QuadPoint> pts(static_cast<std::size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_n(x) and P_{n-1}(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        pts[static_cast<std::size_t>(i)] = {-x, w};
        pts[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    if (n % 2 == 1) pts[static_cast<std::size_t>(n / 2)].node = 0.0;
    return pts;
}

inline const std::vector<QuadPoint>& gl12() {
    static const std::vector<QuadPoint> rule = gauss_legendre(12);
    return rule;
}

// 15-point Kronrod extension of the 7-point Gauss rule (classic QUADPACK
// coefficients), used as the building block of the adaptive integrator.
struct GK15Result {
    double value;
    double error;
};

template <class F>
GK15Result gk15(F&& f, double a, double b) {
    static constexpr std::array<double, 8> xgk = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    static constexpr std::array<double, 8> wgk = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static constexpr std::array<double, 4> wg = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469};

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_g = wg[3] * fc;
    double result_k = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[static_cast<std::size_t>(j)];
        const double fsum = f(c - x) + f(c + x);
        result_k += wgk[static_cast<std::size_t>(j)] * fsum;
        if (j % 2 == 1) result_g += wg[static_cast<std::size_t>(j / 2)] * fsum;
    }
    result_g *= h;
    result_k *= h;
    return {result_k, std::abs(result_k - result_g)};
}

// Adaptive bisection driven by the embedded Gauss error estimate, to an
// absolute tolerance.  Depth-limited; the functions integrated here are
// smooth, so the limit is never reached in practice.
template <class F>
double adaptive_gk(F&& f, double a, double b, double abs_tol, int depth = 0) {
    const GK15Result r = gk15(f, a, b);
    if (r.error <= abs_tol || depth >= 28) return r.value;
    const double c = 0.5 * (a + b);
    return adaptive_gk(f, a, c, 0.5 * abs_tol, depth + 1) +
           adaptive_gk(f, c, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace fraccal::detail
