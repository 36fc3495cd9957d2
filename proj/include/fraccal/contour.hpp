#pragma once

// Hyperbolic integration contours enclosing the spectrum [kappa, inf) of a
// self-adjoint positive operator, written as
//
//   psi(y) = kappa * ( cosh(sigma * w) + i * theta * sinh(w) ),
//   w      = (pi / 2) * sinh(y),
//
// with sigma in {1/2, 1}, theta >= 1, kappa > 0.  The doubly-exponential
// growth of Re psi along the real axis is what gives trapezoidal sums on
// these contours their root-exponential accuracy; the distance of the
// nearest singularity preimages to the real axis (computed exactly here
// by locate_pole_preimages) governs the achievable rate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fraccal/detail/quartic.hpp"
#include "fraccal/detail/status.hpp"

namespace fraccal {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

enum class SigmaKind { Half, One };

inline double sigma_value(SigmaKind s) {
    return s == SigmaKind::Half ? 0.5 : 1.0;
}

struct ContourParams {
    SigmaKind sigma = SigmaKind::One;
    double theta = 1.0;
    double kappa = 1.0;

    void validate() const {
        if (!(theta >= 1.0))
            throw std::invalid_argument("contour: theta must be >= 1");
        if (!(kappa > 0.0))
            throw std::invalid_argument("contour: kappa must be positive");
    }
};

// psi(y).  Complex y is supported; for real y the conjugate symmetry
// psi(-y) == conj(psi(y)) holds bitwise because cosh/sinh of the real
// transform preserve exact even/odd parity.
inline Complex psi(const ContourParams& cp, Complex y) {
    const double sig = sigma_value(cp.sigma);
    const Complex w = 0.5 * pi * std::sinh(y);
    return cp.kappa * (std::cosh(sig * w) + Complex(0.0, 1.0) * cp.theta * std::sinh(w));
}

inline Complex psi(const ContourParams& cp, double y) {
    const double sig = sigma_value(cp.sigma);
    const double w = 0.5 * pi * std::sinh(y);
    return {cp.kappa * std::cosh(sig * w), cp.kappa * cp.theta * std::sinh(w)};
}

// d psi / d y.
inline Complex psi_prime(const ContourParams& cp, Complex y) {
    const double sig = sigma_value(cp.sigma);
    const Complex w = 0.5 * pi * std::sinh(y);
    return cp.kappa * 0.5 * pi * std::cosh(y) *
           (sig * std::sinh(sig * w) + Complex(0.0, 1.0) * cp.theta * std::cosh(w));
}

inline Complex psi_prime(const ContourParams& cp, double y) {
    const double sig = sigma_value(cp.sigma);
    const double w = 0.5 * pi * std::sinh(y);
    const double c = 0.5 * pi * std::cosh(y);
    return {cp.kappa * c * sig * std::sinh(sig * w),
            cp.kappa * c * cp.theta * std::cosh(w)};
}

// Checked variants: flag the point where exp overflow in the hyperbolics
// destroys the value (|w| beyond the double exponent range).
inline Evaluated<Complex> psi_checked(const ContourParams& cp, double y) {
    Evaluated<Complex> out;
    const double w = 0.5 * pi * std::sinh(y);
    if (std::abs(w) > 709.0) {
        out.status = EvalStatus::overflow;
        out.value = psi(cp, y);
        return out;
    }
    out.value = psi(cp, y);
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        out.status = EvalStatus::overflow;
    return out;
}

inline Evaluated<Complex> psi_prime_checked(const ContourParams& cp, double y) {
    Evaluated<Complex> out;
    const double w = 0.5 * pi * std::sinh(y);
    if (std::abs(w) > 700.0 || std::abs(y) > 700.0) {
        out.status = EvalStatus::overflow;
        out.value = psi_prime(cp, y);
        return out;
    }
    out.value = psi_prime(cp, y);
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        out.status = EvalStatus::overflow;
    return out;
}

// Logarithmic magnitude / argument data for real y, valid far beyond the
// overflow range of psi itself.  Used for a-priori truncation estimates.
struct ContourLogData {
    double log_abs_psi;
    double arg_psi;
    double log_abs_psi_prime;
};

inline ContourLogData psi_log_magnitude(const ContourParams& cp, double y) {
    const double sig = sigma_value(cp.sigma);
    const double u = 0.5 * pi * std::sinh(y);
    const double au = std::abs(u);
    ContourLogData out{};
    if (au <= 30.0) {
        const Complex p = psi(cp, y);
        const Complex dp = psi_prime(cp, y);
        out.log_abs_psi = std::log(std::abs(p));
        out.arg_psi = std::arg(p);
        out.log_abs_psi_prime = std::log(std::abs(dp));
        return out;
    }
    // Asymptotic regime: cosh/sinh collapse to a single exponential.
    // |psi|  = (kappa/2) e^{|u|} sqrt(theta^2 + e^{(2 sigma - 2)|u|}),
    // arg    = atan2(theta sgn u, e^{(sigma-1)|u|}),
    // |psi'| = (kappa pi/2) cosh(y) (e^{|u|}/2)
    //          sqrt(theta^2 + sigma^2 e^{(2 sigma - 2)|u|}).
    const double sgn = (u >= 0.0) ? 1.0 : -1.0;
    const double decay = std::exp((2.0 * sig - 2.0) * au);  // <= 1
    out.log_abs_psi = std::log(cp.kappa) + au - std::log(2.0) +
                      0.5 * std::log(cp.theta * cp.theta + decay);
    out.arg_psi = std::atan2(cp.theta * sgn, std::exp((sig - 1.0) * au));
    // log cosh(y) without overflow.
    const double ay = std::abs(y);
    const double log_cosh_y =
        (ay > 30.0) ? ay - std::log(2.0)
                    : std::log(std::cosh(y));
    out.log_abs_psi_prime = std::log(cp.kappa * pi / 2.0) + log_cosh_y + au -
                            std::log(2.0) +
                            0.5 * std::log(cp.theta * cp.theta + sig * sig * decay);
    return out;
}

// A preimage of the spectral point lambda under psi: psi(y) = lambda.
// These are the quadrature-rule singularities in the transformed plane;
// the smallest |Im y| over the family sets the convergence rate.
struct PolePreimage {
    Complex y;        // preimage in the trapezoidal variable
    Complex w;        // (pi/2) sinh(y), preimage in the hyperbola variable
    double lambda;    // spectral point
    double residual;  // |psi(y) - lambda|
};

namespace detail {

// Seed w-plane roots of psi(w) = lambda from closed forms, expressed in
// the scaled variable s = 2 w / pi (so the vertical period is 4 for
// sigma = 1 and 8 for sigma = 1/2).
struct ContourSeedData {
    std::vector<Complex> s0;  // base roots, one vertical period's worth
    double period;            // vertical period in s units
};

inline ContourSeedData pole_seeds(const ContourParams& cp, double lambda) {
    ContourSeedData out;
    const double cap_l = lambda / cp.kappa;
    const double th = cp.theta;
    if (cp.sigma == SigmaKind::One) {
        // kappa (cosh w + i theta sinh w) = lambda, rho = e^w:
        //   (1 + i theta)/2 rho^2 - (lambda/kappa) rho + (1 - i theta)/2 = 0.
        out.period = 4.0;
        const Complex a(0.5, 0.5 * th);
        const Complex b(-cap_l, 0.0);
        const Complex c(0.5, -0.5 * th);
        const Complex disc = std::sqrt(b * b - 4.0 * a * c);
        for (const Complex rho : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)}) {
            if (std::abs(rho) == 0.0) continue;
            const Complex w = std::log(rho);
            const Complex s = w / (0.5 * pi);
            out.s0.push_back(s);
            out.s0.push_back(-std::conj(s));
        }
    } else {
        // kappa (cosh(w/2) + i theta sinh w) = lambda with c = cosh(w/2):
        //   4 theta^2 c^4 + (1 - 4 theta^2) c^2 - 2 (lambda/kappa) c
        //     + (lambda/kappa)^2 = 0,
        // then sinh(w/2) = (lambda/kappa - c) / (2 i theta c) exactly (the
        // division restores the branch information the squaring removed).
        out.period = 8.0;
        const double t2 = 4.0 * th * th;
        const double p = (1.0 - t2) / t2;
        const double q = -2.0 * cap_l / t2;
        const double r = cap_l * cap_l / t2;
        for (const Complex& c : fraccal::detail::depressed_quartic_roots(p, q, r)) {
            if (std::abs(c) == 0.0) continue;
            const Complex sh = (Complex(cap_l, 0.0) - c) / (Complex(0.0, 2.0 * th) * c);
            const Complex half_exp = c + sh;
            if (std::abs(half_exp) == 0.0) continue;
            const Complex w = 2.0 * std::log(half_exp);
            const Complex s = w / (0.5 * pi);
            out.s0.push_back(s);
            out.s0.push_back(-std::conj(s));
        }
    }
    return out;
}

}  // namespace detail

// All solutions of psi(y) = lambda with |Im y| <= im_bound (and the
// physically relevant |Re w| > 0 half-planes), refined to residual
// |psi(y) - lambda| <= 1e-10 lambda.  Closed-form seeds in the hyperbola
// variable are lifted through both branches of asinh and polished by
// Newton iteration on psi itself, so no root within the strip is missed.
inline std::vector<PolePreimage> locate_pole_preimages(const ContourParams& cp,
                                                       double lambda,
                                                       double im_bound) {
    cp.validate();
    if (!(lambda > 0.0))
        throw std::invalid_argument("locate_pole_preimages: lambda must be positive");
    if (!(im_bound > 0.0) || im_bound >= 0.5 * pi)
        throw std::invalid_argument(
            "locate_pole_preimages: im_bound must lie in (0, pi/2)");

    const auto seeds = detail::pole_seeds(cp, lambda);

    // Any root with |Im y| < pi/2 has |Re y| bounded by where |psi| first
    // exceeds lambda; pad generously.
    const double reach =
        std::asinh(2.0 * std::log(2.0 * lambda * (1.0 + cp.theta) / cp.kappa) / pi) + 1.0;
    const long max_shift =
        static_cast<long>(std::cosh(reach) / seeds.period) + 2;

    std::vector<PolePreimage> found;
    const Complex i_unit(0.0, 1.0);
    for (const Complex& s0 : seeds.s0) {
        for (long ell = -max_shift; ell <= max_shift; ++ell) {
            const Complex s = s0 + i_unit * (seeds.period * static_cast<double>(ell));
            const Complex y_main = std::asinh(s);
            for (const Complex& y_seed :
                 {y_main, Complex(0.0, pi) - y_main, Complex(0.0, -pi) - y_main}) {
                if (std::abs(y_seed.imag()) > im_bound + 0.4) continue;
                if (std::abs(y_seed.real()) > reach + 1.0) continue;
                // Newton refinement on psi(y) - lambda.
                Complex y = y_seed;
                bool converged = false;
                for (int it = 0; it < 40; ++it) {
                    const Complex f = psi(cp, y) - lambda;
                    const Complex df = psi_prime(cp, y);
                    if (std::abs(df) == 0.0) break;
                    const Complex step = f / df;
                    y -= step;
                    if (std::abs(step) < 1e-14 * (1.0 + std::abs(y))) {
                        converged = true;
                        break;
                    }
                }
                if (!converged) continue;
                const double resid = std::abs(psi(cp, y) - lambda);
                if (resid > 1e-11 * lambda) continue;
                if (std::abs(y.imag()) > im_bound + 1e-12) continue;
                const Complex w = 0.5 * pi * std::sinh(y);
                if (std::abs(w.real()) <= 1e-12) continue;  // numerical artifact
                found.push_back({y, w, lambda, resid});
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const PolePreimage& a, const PolePreimage& b) {
        if (a.y.imag() != b.y.imag()) return a.y.imag() < b.y.imag();
        return a.y.real() < b.y.real();
    });
    std::vector<PolePreimage> unique;
    for (const auto& p : found) {
        bool dup = false;
        for (const auto& u : unique) {
            if (std::abs(p.y - u.y) < 1e-9 * (1.0 + std::abs(u.y))) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(p);
    }
    return unique;
}

// Distance from the real axis to the nearest preimage of lambda: the
// half-width of the strip of analyticity that controls the trapezoidal
// convergence rate for that spectral point.
inline double nearest_preimage_distance(const ContourParams& cp, double lambda,
                                        double im_bound = 1.4) {
    double best = im_bound;
    for (const auto& p : locate_pole_preimages(cp, lambda, im_bound))
        best = std::min(best, std::abs(p.y.imag()));
    return best;
}

}  // namespace fraccal
