#pragma once

// Scalar special functions used as operator symbols: the two-parameter
// Mittag-Leffler function E_{alpha,mu}, its reciprocal-gamma building
// block, principal complex powers, and the Duhamel convolution weights
// that turn an inhomogeneous evolution problem into per-node scalar
// multipliers.
//
// E_{alpha,mu} is evaluated by whichever of three methods promises the
// smallest a-priori error at the given argument: the defining Taylor
// series (small / moderate |z|), the algebraic asymptotic expansion
// (large |z| in the decay sector), or a truncated trapezoidal sum over a
// parabolic Bromwich contour (everywhere else, including the transition
// annulus where neither expansion converges well).  Every result carries
// the winning method's error estimate and a status derived from it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "fraccal/detail/gauss.hpp"
#include "fraccal/detail/status.hpp"

namespace fraccal {

using Complex = std::complex<double>;

namespace special_detail {
inline constexpr double pi_v = 3.14159265358979323846;
}

// 1 / Gamma(x) for real x, entire in x: finite everywhere, exactly zero
// at the non-positive integers.  Reflection handles the left half-line.
inline double recip_gamma(double x) {
    if (x > 0.5) {
        const double g = std::tgamma(x);
        if (!std::isfinite(g)) return 0.0;  // Gamma overflow => reciprocal 0
        return 1.0 / g;
    }
    const double n = std::nearbyint(x);
    const double r = x - n;
    if (r == 0.0 && n <= 0.0) return 0.0;  // pole of Gamma
    const double parity = (static_cast<long long>(n) % 2 == 0) ? 1.0 : -1.0;
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, with sin(pi x) reduced
    // through the nearest integer for full relative accuracy.
    const double s = std::sin(special_detail::pi_v * r) * parity / special_detail::pi_v;
    const double y = 1.0 - x;
    if (y > 170.0) {
        // Gamma(1-x) would overflow tgamma; go through logs.
        const double lg = std::lgamma(y);
        const double mag = std::exp(std::min(lg, 709.0));
        return s * mag;
    }
    return s * std::tgamma(y);
}

// z^p on the principal branch, with the conventional limits at z = 0.
inline Complex complex_power(Complex z, double p) {
    if (z == Complex(0.0, 0.0)) {
        if (p > 0.0) return {0.0, 0.0};
        if (p == 0.0) return {1.0, 0.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::exp(p * std::log(z));
}

struct MittagLefflerParams {
    double alpha = 1.0;  // must lie in (0, 2)
    double mu = 1.0;

    void validate() const {
        if (!(alpha > 0.0) || !(alpha < 2.0))
            throw std::invalid_argument("mittag_leffler: alpha must lie in (0, 2)");
        if (!std::isfinite(mu))
            throw std::invalid_argument("mittag_leffler: mu must be finite");
    }
};

namespace special_detail {

struct MethodRun {
    Complex value{};
    double est = std::numeric_limits<double>::infinity();
};

// Defining series sum_{n>=0} z^n / Gamma(mu + alpha n).  Cancellation on
// the shrinking sector near the negative axis limits it to |z| where the
// largest intermediate term stays representable; the caller gates on the
// predicted peak magnitude before running it.
inline MethodRun ml_series(double a, double m, Complex z) {
    MethodRun out;
    Complex s(0.0, 0.0);
    Complex zn(1.0, 0.0);
    double maxmag = 0.0;
    double last = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n < 400; ++n) {
        const Complex t = zn * recip_gamma(m + a * n);
        s += t;
        const double at = std::abs(t);
        maxmag = std::max(maxmag, at);
        last = at;
        // Two consecutive negligible terms terminate the sum (a single
        // small term can be an accidental zero of 1/Gamma).
        if (n > 3 && at <= 1e-17 * std::abs(s) && prev <= 1e-17 * std::abs(s)) break;
        prev = at;
        zn *= z;
        if (std::abs(zn) > 1e280) {
            // Keep the value but mark it untrustworthy; the dispatcher's
            // gate normally prevents reaching this.
            out.value = s;
            out.est = std::numeric_limits<double>::infinity();
            return out;
        }
    }
    out.value = s;
    out.est = maxmag * 5e-16 + last;
    return out;
}

// Algebraic asymptotic tail -sum_{n>=1} z^{-n} / Gamma(mu - alpha n),
// truncated at its smallest term.  Valid in the sector where the
// exponential contribution is absent or negligible.
inline MethodRun ml_asymptotic(double a, double m, Complex z, int n_opt) {
    MethodRun out;
    const Complex zi = 1.0 / z;
    Complex zp = zi;
    Complex s(0.0, 0.0);
    for (int n = 1; n <= n_opt; ++n) {
        s -= zp * recip_gamma(m - a * n);
        zp *= zi;
    }
    out.value = s;
    return out;
}

struct ParabolaPlan {
    bool available = false;
    double mu_c = 0.0;
    double h = 0.0;
    int n = 0;
    bool add_residue = false;
    double est = std::numeric_limits<double>::infinity();
};

// Plan a parabolic Bromwich contour zeta = mu_c (1 + i u)^2 whose
// trapezoidal discretisation balances truncation and strip error at
// e^{-AEXP}, while keeping the integrand pole zeta = z^{1/alpha} a safe
// distance from the contour (measured by aq, the pole's parabola
// coordinate: aq = 1 means "on the contour").
inline ParabolaPlan plan_parabola(double a, double /*m*/, Complex z) {
    constexpr double AEXP = 33.0;
    ParabolaPlan plan;
    const double r = std::abs(z);
    const double ph = std::abs(std::arg(z));
    const bool pole_on_sheet = ph < a * pi_v - 1e-12;
    double dplus = 0.9;
    double mu_c = 4.4;
    double est_pole = 0.0;
    if (pole_on_sheet) {
        const double r0 = std::pow(r, 1.0 / a);
        if (r0 * std::cos(ph / a) > 690.0) return plan;  // residue overflows
        const double cosh_half = std::cos(ph / (2.0 * a));
        const auto aq = [&](double mc) { return std::sqrt(r0 / mc) * cosh_half; };
        double mc = 4.4;
        if (std::abs(1.0 - aq(4.4)) < 0.3) {
            // Pole too close to the default contour: rescale so that its
            // parabola coordinate lands at 1.3 or 0.7, whichever moves
            // the contour scale least.
            const double c1 = r0 * cosh_half * cosh_half / 1.69;
            const double c2 = r0 * cosh_half * cosh_half / 0.49;
            mc = (std::abs(c1 - 4.4) < std::abs(c2 - 4.4)) ? c1 : c2;
        }
        if (mc > 14.0) return plan;  // e^{mu_c} error amplification too large
        mu_c = std::max(mc, 1.0);
        const double q = aq(mu_c);
        plan.add_residue = q > 1.0;  // pole enclosed => restore its residue
        dplus = std::min(1.0, std::abs(1.0 - q)) * 0.9;
        if (dplus < 0.2) return plan;
        est_pole = std::exp(std::min(r0 * std::cos(ph / a), 690.0)) * 2e-16 /
                   std::max(a, 0.1);
    }
    const double h = std::min(2.0 * pi_v * dplus / AEXP,
                              pi_v / (mu_c * (1.0 + std::sqrt(AEXP / mu_c))));
    const double cap_u = std::sqrt(1.0 + AEXP / mu_c);
    int n = static_cast<int>(std::ceil(2.0 * cap_u / h));
    plan.available = true;
    plan.mu_c = mu_c;
    plan.n = n;
    plan.h = 2.0 * cap_u / n;
    plan.est = std::exp(mu_c) * 5e-16 + std::exp(-AEXP) * 10.0 + est_pole;
    return plan;
}

inline MethodRun ml_parabola(double a, double m, Complex z, const ParabolaPlan& plan) {
    MethodRun out;
    const double cap_u = 0.5 * plan.h * plan.n;
    const Complex i_unit(0.0, 1.0);
    Complex s(0.0, 0.0);
    for (int k = 0; k <= plan.n; ++k) {
        const double u = -cap_u + plan.h * k;
        const double wt = (k == 0 || k == plan.n) ? 0.5 : 1.0;
        const Complex base = 1.0 + i_unit * u;
        const Complex zeta = plan.mu_c * base * base;
        const Complex dzeta = 2.0 * i_unit * plan.mu_c * base;
        const Complex num = std::exp(zeta) * std::exp((a - m) * std::log(zeta));
        const Complex den = std::exp(a * std::log(zeta)) - z;
        s += wt * num / den * dzeta;
    }
    Complex v = s * plan.h / (2.0 * pi_v * i_unit);
    if (plan.add_residue) {
        // Residue of e^zeta zeta^{alpha-mu} / (zeta^alpha - z) at
        // zeta = z^{1/alpha}.
        const Complex root = complex_power(z, 1.0 / a);
        v += (1.0 / a) * complex_power(z, (1.0 - m) / a) * std::exp(root);
    }
    out.value = v;
    out.est = plan.est;
    return out;
}

}  // namespace special_detail

// E_{alpha,mu}(z) with a per-call error estimate and status.  Relative
// accuracy is ~1e-12 or better away from zeros of E; near a zero the
// estimate is honest and the status degrades to loss_of_accuracy.
inline Evaluated<Complex> mittag_leffler(const MittagLefflerParams& mp, Complex z) {
    using namespace special_detail;
    mp.validate();
    const double a = mp.alpha;
    const double m = mp.mu;
    Evaluated<Complex> out;

    if (z == Complex(0.0, 0.0)) {
        out.value = Complex(recip_gamma(m), 0.0);
        out.error_estimate = 1e-16 * std::abs(out.value);
        return out;
    }
    if (a == 1.0 && m == 1.0) {
        out.value = std::exp(z);
        out.error_estimate = 5e-16 * std::abs(out.value);
        if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
            out.status = EvalStatus::overflow;
        return out;
    }

    const double r = std::abs(z);
    const double ph = std::abs(std::arg(z));
    const bool in_sector = ph >= 0.75 * a * pi_v - 1e-14;
    const double ln10 = std::log(10.0);

    // A-priori error estimates for the three candidate methods.
    double est_series = std::numeric_limits<double>::infinity();
    const double n_conv = std::pow(r, 1.0 / a) / a + 40.0;
    if (n_conv < 400.0) {
        const double n_star = std::pow(r, 1.0 / a) / a;
        double max_log10 = 0.0;
        if (n_star >= 1.0) {
            const double peak =
                n_star * std::log(r) - std::lgamma(m + a * n_star);
            max_log10 = std::max(0.0, peak / ln10);
        }
        est_series = std::pow(10.0, std::min(max_log10, 290.0)) * 5e-16;
    }

    double est_asym = std::numeric_limits<double>::infinity();
    int n_asym = 0;
    if (a < 2.0 && in_sector && r > 1.0) {
        double best = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 40; ++n) {
            const double val = std::lgamma(a * n) - (n + 1) * std::log(r);
            if (val < best) {
                best = val;
                n_asym = n;
            }
        }
        est_asym = std::exp(std::min(best + ln10, 700.0));
    }

    const ParabolaPlan plan = plan_parabola(a, m, z);

    MethodRun run;
    if (est_series <= est_asym && est_series <= plan.est) {
        run = ml_series(a, m, z);
    } else if (est_asym <= plan.est) {
        run = ml_asymptotic(a, m, z, n_asym);
        run.est = est_asym;
    } else if (plan.available) {
        run = ml_parabola(a, m, z, plan);
    } else {
        run = ml_series(a, m, z);  // last resort, flagged by its estimate
    }

    out.value = run.value;
    out.error_estimate = run.est;
    const double denom = std::max(std::abs(run.value), 1e-270);
    if (run.est <= 1e-10 * denom || run.est < 1e-280) {
        out.status = EvalStatus::ok;
    } else if (!in_sector && r > 12.0) {
        out.status = EvalStatus::domain_warning;
    } else {
        out.status = EvalStatus::loss_of_accuracy;
    }
    return out;
}

inline Evaluated<Complex> mittag_leffler(double alpha, double mu, Complex z) {
    return mittag_leffler(MittagLefflerParams{alpha, mu}, z);
}

// ---------------------------------------------------------------------------
// Operator symbols g(z): the scalar functions applied to the spectrum.

enum class SymbolKind { Power, MittagLeffler };

struct ScalarSymbol {
    SymbolKind kind = SymbolKind::Power;
    double beta = 0.5;            // spectral exponent: g acts on z^beta
    MittagLefflerParams ml{};     // evolution parameters (MittagLeffler only)
    double t_scale = 1.0;         // time in the evolution symbol

    static ScalarSymbol power(double beta) {
        ScalarSymbol s;
        s.kind = SymbolKind::Power;
        s.beta = beta;
        return s;
    }
    // g(z) = E_{alpha,mu}(-t^alpha z^beta)
    static ScalarSymbol mittag_leffler_evolution(MittagLefflerParams p, double t,
                                                 double beta) {
        ScalarSymbol s;
        s.kind = SymbolKind::MittagLeffler;
        s.ml = p;
        s.t_scale = t;
        s.beta = beta;
        return s;
    }

    void validate() const {
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("symbol: beta must lie in (0, 1]");
        if (kind == SymbolKind::MittagLeffler) {
            ml.validate();
            if (!(t_scale >= 0.0))
                throw std::invalid_argument("symbol: t must be nonnegative");
        }
    }
};

// Evaluate the symbol at a (generally complex) spectral parameter z.  A
// value of magnitude > 1 far outside the spectral interval (|z| beyond
// growth_ref) signals that the symbol is growing where it must decay for
// the contour representation to hold, and is flagged.
inline Evaluated<Complex> evaluate_symbol(const ScalarSymbol& sym, Complex z,
                                          double growth_ref = 30.0) {
    Evaluated<Complex> out;
    switch (sym.kind) {
        case SymbolKind::Power: {
            if (z == Complex(0.0, 0.0)) {
                out.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
                out.status = EvalStatus::domain_warning;
                return out;
            }
            out.value = complex_power(z, -sym.beta);
            out.error_estimate = 4e-16 * std::abs(out.value);
            return out;
        }
        case SymbolKind::MittagLeffler: {
            const Complex arg =
                -std::pow(sym.t_scale, sym.ml.alpha) * complex_power(z, sym.beta);
            Evaluated<Complex> ev = mittag_leffler(sym.ml, arg);
            out = ev;
            if (std::abs(out.value) > 1.0 && std::abs(z) > growth_ref &&
                is_usable(out.status)) {
                out.status = EvalStatus::domain_warning;
            }
            return out;
        }
    }
    out.status = EvalStatus::domain_warning;
    return out;
}

// Reference value g(lambda) on the real spectrum, for error measurement.
inline Evaluated<double> symbol_reference(const ScalarSymbol& sym, double lambda) {
    Evaluated<double> out;
    if (sym.kind == SymbolKind::Power) {
        out.value = std::pow(lambda, -sym.beta);
        out.error_estimate = 4e-16 * std::abs(out.value);
        return out;
    }
    const Evaluated<Complex> ev = evaluate_symbol(sym, Complex(lambda, 0.0));
    out.value = ev.value.real();
    out.status = ev.status;
    out.error_estimate = ev.error_estimate;
    return out;
}

// ---------------------------------------------------------------------------
// Time profiles phi(t) for inhomogeneous right-hand sides, with exact
// derivatives of every order (needed by the Duhamel weight's inner
// Taylor expansion).

struct TimeProfile {
    enum class Kind { Constant, Sine, Cosine, Monomial, Exponential };
    Kind kind = Kind::Constant;
    double param = 1.0;  // monomial degree or exponential rate

    static TimeProfile constant() { return {Kind::Constant, 0.0}; }
    static TimeProfile sine() { return {Kind::Sine, 0.0}; }
    static TimeProfile cosine() { return {Kind::Cosine, 0.0}; }
    static TimeProfile monomial(double degree) { return {Kind::Monomial, degree}; }
    static TimeProfile exponential(double rate) { return {Kind::Exponential, rate}; }

    double derivative(int order, double t) const {
        switch (kind) {
            case Kind::Constant:
                return order == 0 ? 1.0 : 0.0;
            case Kind::Sine:
                return std::sin(t + 0.5 * special_detail::pi_v * order);
            case Kind::Cosine:
                return std::cos(t + 0.5 * special_detail::pi_v * order);
            case Kind::Monomial: {
                const double d = param;
                if (order > d + 1e-12 && std::nearbyint(d) == d) return 0.0;
                double coeff = 1.0;
                for (int k = 0; k < order; ++k) coeff *= (d - k);
                if (coeff == 0.0) return 0.0;
                const double p = d - order;
                if (t == 0.0) return p == 0.0 ? coeff : 0.0;
                return coeff * std::pow(t, p);
            }
            case Kind::Exponential:
                return std::pow(param, order) * std::exp(param * t);
        }
        return 0.0;
    }

    double value(double t) const { return derivative(0, t); }
};

// ---------------------------------------------------------------------------
// Duhamel convolution weight
//
//   c(t; S) = int_0^t tau^{alpha-1} E_{alpha,alpha}(-tau^alpha S)
//             phi(t - tau) d tau,
//
// the scalar multiplier that the inhomogeneous term contributes at a
// spectral (or contour) point S.  The integrand's tau^{alpha-1}
// singularity is resolved on a geometrically graded panel mesh; the
// innermost panel is integrated in closed form through a double Taylor
// expansion when |S| h^alpha is small, otherwise by integration by parts
// against the exact antiderivative of the singular kernel.

namespace special_detail {

// Nodes/weights of the 12-point Gauss-Legendre rule, pulled from the
// shared generator at first use.
struct GL12Cache {
    double node[12];
    double weight[12];
};

inline const GL12Cache& gl12_cache() {
    static const GL12Cache cache = [] {
        GL12Cache c;
        const auto rule = fraccal::detail::gauss_legendre(12);
        for (int i = 0; i < 12; ++i) {
            c.node[i] = rule[static_cast<std::size_t>(i)].node;
            c.weight[i] = rule[static_cast<std::size_t>(i)].weight;
        }
        return c;
    }();
    return cache;
}

}  // namespace special_detail

inline Evaluated<Complex> ml_convolution_weight(double alpha, Complex s_point,
                                                double t, const TimeProfile& profile,
                                                int max_levels = 60) {
    using namespace special_detail;
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument("ml_convolution_weight: alpha must lie in (0, 2)");
    Evaluated<Complex> out;
    if (t <= 0.0) {
        out.value = Complex(0.0, 0.0);
        return out;
    }

    int levels = std::max(10, static_cast<int>(std::ceil(std::log2(t / 1e-12))) + 4);
    levels = std::min(levels, max_levels);
    const double h = t * std::ldexp(1.0, -(levels - 1));

    double est = 0.0;
    EvalStatus worst = EvalStatus::ok;
    const auto note = [&](const Evaluated<Complex>& ev) {
        est += ev.error_estimate;
        if (static_cast<int>(ev.status) > static_cast<int>(worst)) worst = ev.status;
    };

    Complex total(0.0, 0.0);

    // Innermost panel [0, h].
    if (std::abs(s_point) * std::pow(h, alpha) <= 0.25) {
        // Double series: expand both E_{a,a}(-tau^a S) and phi(t - tau).
        Complex acc(0.0, 0.0);
        Complex s_pow(1.0, 0.0);  // (-S)^n
        for (int n = 0; n <= 40; ++n) {
            const double rg = recip_gamma(alpha * n + alpha);
            double fact = 1.0;
            double inner_acc_real = 0.0;
            Complex inner(0.0, 0.0);
            const double base_pow = alpha + alpha * n;
            double h_pow = std::pow(h, base_pow);
            double small_streak = 0.0;
            for (int mm = 0; mm <= 24; ++mm) {
                if (mm > 0) fact *= mm;
                const double dphi = profile.derivative(mm, t);
                const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
                const double term =
                    sign * dphi / fact * h_pow / (base_pow + mm);
                inner += term;
                inner_acc_real += std::abs(term);
                h_pow *= h;
                if (std::abs(term) <= 1e-18 * (std::abs(acc) + inner_acc_real + 1e-300)) {
                    small_streak += 1.0;
                    if (small_streak >= 2.0) break;
                } else {
                    small_streak = 0.0;
                }
            }
            const Complex contrib = s_pow * rg * inner;
            acc += contrib;
            if (std::abs(contrib) <= 1e-18 * std::abs(acc) && n > 2) break;
            s_pow *= -s_point;
        }
        total += acc;
        est += 1e-16 * std::abs(acc);
    } else {
        // The kernel's boundary layer sits at tau ~ |S|^{-1/alpha}, which
        // for small alpha lies many orders of magnitude inside [0, h], so
        // no fixed point rule can resolve it.  Expanding phi(t - tau)
        // about tau = h instead and applying the Riemann-Liouville
        // identity
        //   (1/m!) int_0^h (h-tau)^m tau^{alpha-1} E_{alpha,alpha}(-S tau^alpha) dtau
        //       = h^{alpha+m} E_{alpha, alpha+m+1}(-S h^alpha)
        // gives an exact series whose terms shrink like h^m and whose
        // Mittag-Leffler argument is the same for every term.
        const Complex w_arg = -std::pow(h, alpha) * s_point;
        Complex acc(0.0, 0.0);
        double h_pow = std::pow(h, alpha);
        for (int mm = 0; mm <= 24; ++mm) {
            const Evaluated<Complex> e =
                mittag_leffler(alpha, alpha + mm + 1.0, w_arg);
            const double dphi = profile.derivative(mm, t - h);
            const Complex term = dphi * h_pow * e.value;
            acc += term;
            est += std::abs(dphi) * h_pow * e.error_estimate;
            // Only a term that actually matters may degrade the status;
            // high orders are h^m-suppressed noise.
            if ((mm == 0 || std::abs(term) > 1e-14 * (std::abs(acc) + 1e-300)) &&
                static_cast<int>(e.status) > static_cast<int>(worst))
                worst = e.status;
            h_pow *= h;
            if (mm > 1 && std::abs(term) <= 1e-18 * (std::abs(acc) + 1e-300)) break;
        }
        total += acc;
        est += 1e-16 * std::abs(acc);
    }

    // Geometric panels [h 2^{j-1}, h 2^j], plain Gauss on each.
    const GL12Cache& rule = gl12_cache();
    double lo = h;
    for (int j = 1; j < levels; ++j) {
        const double hi = 2.0 * lo;
        const double mid = 0.5 * (lo + hi);
        const double rad = 0.5 * (hi - lo);
        Complex panel(0.0, 0.0);
        for (int q = 0; q < 12; ++q) {
            const double tau = mid + rad * rule.node[q];
            const Evaluated<Complex> eaa =
                mittag_leffler(alpha, alpha, -std::pow(tau, alpha) * s_point);
            note(eaa);
            panel += rad * rule.weight[q] * std::pow(tau, alpha - 1.0) * eaa.value *
                     profile.value(t - tau);
        }
        total += panel;
        lo = hi;
    }

    out.value = total;
    out.status = worst;
    out.error_estimate = est;
    return out;
}

}  // namespace fraccal
