#pragma once

// Quadrature schemes for the contour representation
//
//   g(L) = (1 / 2 pi i) int g(z) (z - L)^{-1} dz
//
// discretised along the hyperbolic contours of contour.hpp.  Three node
// families are provided:
//
//  * DoubleExponential - trapezoid in y after z = psi(y) (the sinh-of-sinh
//    map); root-exponential accuracy, step 0.9 ln(N)/N.
//  * Sinc - trapezoid directly in the hyperbola variable w (single
//    exponential); the classical comparator with step ~ 1/sqrt(N).
//  * Balakrishnan - exponential substitution in the classical integral
//    lambda^{-beta} = (sin(pi beta)/pi) int_0^inf s^{-beta}/(s+lambda) ds,
//    nodes on the negative real axis; fractional powers only.
//
// The contour runs clockwise around the spectrum, so with weights
// w_j = k psi'(jk) / (2 pi i) the sum  Q(lambda) = sum w_j g(z_j) /
// (lambda - z_j)  reproduces +g(lambda).

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraccal/contour.hpp"
#include "fraccal/detail/status.hpp"
#include "fraccal/detail/summation.hpp"
#include "fraccal/special.hpp"

namespace fraccal {

enum class SchemeFamily { DoubleExponential, Sinc, Balakrishnan };

struct SchemeSpec {
    SchemeFamily family = SchemeFamily::DoubleExponential;
    ContourParams contour{};  // used by DoubleExponential and Sinc
    std::string name = "DE";  // display / CSV label

    void validate() const {
        if (family != SchemeFamily::Balakrishnan) contour.validate();
    }
};

// Step laws. ----------------------------------------------------------------

// Double-exponential trapezoid step for 2 n_q + 1 nodes.
inline double de_default_step(int n_q) {
    if (n_q < 2)
        throw std::invalid_argument("de_default_step: need n_q >= 2");
    return 0.9 * std::log(static_cast<double>(n_q)) / n_q;
}

// Single-exponential (sinc) step balancing the strip half-width pi/5
// against the symbol decay exponent beta.
inline double sinc_default_step(double beta, int n_q) {
    if (n_q < 1)
        throw std::invalid_argument("sinc_default_step: need n_q >= 1");
    if (!(beta > 0.0))
        throw std::invalid_argument("sinc_default_step: need beta > 0");
    return std::sqrt(2.0 * pi * (pi / 5.0) / (beta * n_q));
}

struct BalakrishnanParams {
    double step;
    int n_pos;
    int n_neg;
};

// Step and truncation indices balancing the e^{-pi^2/k} discretisation
// error against the e^{-(1-beta) n_neg k} and e^{-beta n_pos k} tails.
inline BalakrishnanParams balakrishnan_params(double beta, int n_q) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument(
            "balakrishnan_params: beta must lie strictly in (0, 1)");
    if (n_q < 2)
        throw std::invalid_argument("balakrishnan_params: need n_q >= 2");
    const double k = std::sqrt(pi * pi / (1.8 * beta * n_q));
    // The (1 - 1e-12) factor keeps exactly-integral quotients from being
    // rounded up by ceil (they occur for simple rational beta).
    const int n_neg = static_cast<int>(
        std::ceil(pi * pi / (2.0 * (1.0 - beta) * k * k) * (1.0 - 1e-12)));
    return {k, n_q, n_neg};
}

// Node sets. ----------------------------------------------------------------

struct NodeSet {
    SchemeSpec spec{};
    int n_q = 0;
    double step = 0.0;
    // When symmetric_half is set, nodes[0] is the real-axis centre node and
    // nodes[j], j >= 1, stand for the conjugate pair (z_j, conj z_j) with
    // weights (w_j, conj w_j); consumers double the real part.  Otherwise
    // the arrays list every node explicitly.
    bool symmetric_half = false;
    std::vector<Complex> nodes;
    std::vector<Complex> weights;
    // Balakrishnan bakes the symbol into the weights; no g(z_j) factor.
    bool symbol_in_weights = false;
    // Far nodes whose contour point overflowed the double range.  They may
    // be dropped only when the symbol is a fractional power (whose decay
    // certifies the tail); for evolution symbols they are counted here and
    // the evaluation is flagged instead of silently truncated.
    int dropped = 0;
    int invalid = 0;
};

inline NodeSet build_nodes(const SchemeSpec& spec, const ScalarSymbol& symbol,
                           int n_q) {
    spec.validate();
    symbol.validate();
    NodeSet out;
    out.spec = spec;
    out.n_q = n_q;

    const bool power_symbol = symbol.kind == SymbolKind::Power;

    switch (spec.family) {
        case SchemeFamily::DoubleExponential:
        case SchemeFamily::Sinc: {
            const double k = spec.family == SchemeFamily::DoubleExponential
                                 ? de_default_step(n_q)
                                 : sinc_default_step(symbol.beta, n_q);
            out.step = k;
            out.symmetric_half = true;
            out.nodes.reserve(static_cast<std::size_t>(n_q) + 1);
            out.weights.reserve(static_cast<std::size_t>(n_q) + 1);
            for (int j = 0; j <= n_q; ++j) {
                Complex z, dz;
                bool over = false;
                if (spec.family == SchemeFamily::DoubleExponential) {
                    const double y = j * k;
                    const Evaluated<Complex> pz = psi_checked(spec.contour, y);
                    const Evaluated<Complex> pd = psi_prime_checked(spec.contour, y);
                    z = pz.value;
                    dz = pd.value;
                    over = pz.status == EvalStatus::overflow ||
                           pd.status == EvalStatus::overflow;
                } else {
                    // Single-exponential: same hyperbola, identity map in w.
                    const double w = j * k;
                    const double sig = sigma_value(spec.contour.sigma);
                    if (std::abs(w) > 709.0) {
                        over = true;
                        z = dz = Complex(std::numeric_limits<double>::infinity(), 0.0);
                    } else {
                        z = Complex(spec.contour.kappa * std::cosh(sig * w),
                                    spec.contour.kappa * spec.contour.theta *
                                        std::sinh(w));
                        dz = Complex(spec.contour.kappa * sig * std::sinh(sig * w),
                                     spec.contour.kappa * spec.contour.theta *
                                         std::cosh(w));
                    }
                }
                if (over) {
                    if (power_symbol) {
                        // z^{-beta} decays along the contour; the remaining
                        // tail is below double precision, drop it.
                        out.dropped = n_q - j + 1;
                        break;
                    }
                    ++out.invalid;
                }
                // w_j = k dz / (2 pi i).
                out.nodes.push_back(z);
                out.weights.push_back(
                    (k / (2.0 * pi)) * Complex(dz.imag(), -dz.real()));
            }
            break;
        }
        case SchemeFamily::Balakrishnan: {
            if (!power_symbol)
                throw std::invalid_argument(
                    "build_nodes: the Balakrishnan scheme represents fractional "
                    "powers only");
            const BalakrishnanParams bp = balakrishnan_params(symbol.beta, n_q);
            out.step = bp.step;
            out.symmetric_half = false;
            out.symbol_in_weights = true;
            const double front = std::sin(pi * symbol.beta) / pi * bp.step;
            out.nodes.reserve(static_cast<std::size_t>(bp.n_neg + bp.n_pos) + 1);
            out.weights.reserve(out.nodes.capacity());
            for (int j = -bp.n_neg; j <= bp.n_pos; ++j) {
                const double y = j * bp.step;
                out.nodes.emplace_back(-std::exp(y), 0.0);
                out.weights.emplace_back(front * std::exp((1.0 - symbol.beta) * y),
                                         0.0);
            }
            break;
        }
    }
    return out;
}

// Prepared quadrature: node set plus the symbol evaluated once per node.
// Preparing is the expensive part for evolution symbols; applying to a
// spectral point or vector afterwards costs one resolvent per node.
struct PreparedQuadrature {
    NodeSet node_set;
    ScalarSymbol symbol;
    std::vector<Complex> coeff;  // w_j * g(z_j)   (w_j alone if baked)
    EvalStatus prep_status = EvalStatus::ok;
    double prep_estimate = 0.0;
};

namespace quad_detail {

// The sigma = 1/2 contour squeezes the decay of an exponential-type
// symbol (alpha = beta = 1) to single-exponential on the real line while
// the analytic continuation into every neighbouring strip blows up
// doubly-exponentially: the trapezoid then converges to a wrong value
// with no runtime symptom.  Reject the combination outright.
inline bool excluded_combination(const SchemeSpec& spec, const ScalarSymbol& sym) {
    return spec.family == SchemeFamily::DoubleExponential &&
           spec.contour.sigma == SigmaKind::Half &&
           sym.kind == SymbolKind::MittagLeffler && sym.ml.alpha == 1.0 &&
           sym.beta == 1.0;
}

}  // namespace quad_detail

inline PreparedQuadrature prepare_quadrature(const SchemeSpec& spec,
                                             const ScalarSymbol& symbol, int n_q) {
    PreparedQuadrature prep;
    prep.symbol = symbol;
    if (quad_detail::excluded_combination(spec, symbol)) {
        prep.node_set.spec = spec;
        prep.node_set.n_q = n_q;
        prep.prep_status = EvalStatus::diverged;
        prep.prep_estimate = std::numeric_limits<double>::infinity();
        return prep;
    }
    prep.node_set = build_nodes(spec, symbol, n_q);
    const NodeSet& ns = prep.node_set;
    prep.coeff.resize(ns.nodes.size());
    if (ns.invalid > 0) prep.prep_status = EvalStatus::overflow;
    for (std::size_t j = 0; j < ns.nodes.size(); ++j) {
        if (ns.symbol_in_weights) {
            prep.coeff[j] = ns.weights[j];
            continue;
        }
        const Evaluated<Complex> g = evaluate_symbol(symbol, ns.nodes[j]);
        prep.coeff[j] = ns.weights[j] * g.value;
        prep.prep_estimate += std::abs(ns.weights[j]) * g.error_estimate *
                              (ns.symmetric_half && j > 0 ? 2.0 : 1.0);
        if (!g.usable() && prep.prep_status == EvalStatus::ok)
            prep.prep_status = g.status;
    }
    return prep;
}

// Q(lambda) = sum_j w_j g(z_j) / (lambda - z_j), summed as a fixed
// pairwise tree over the materialised per-node contributions so the
// result is independent of threading and evaluation overlap.  A growth
// monitor flags sums whose late terms dominate: the signature of a
// symbol incompatible with the contour.
inline Evaluated<double> scalar_apply(const PreparedQuadrature& prep,
                                      double lambda) {
    Evaluated<double> out;
    if (prep.prep_status == EvalStatus::diverged ||
        prep.prep_status == EvalStatus::excluded_configuration) {
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.status = EvalStatus::diverged;
        out.error_estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    const NodeSet& ns = prep.node_set;
    const std::size_t n = ns.nodes.size();
    std::vector<double> terms(n);
    double running = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    bool grew_past_sum = false;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex t = prep.coeff[j] / (lambda - ns.nodes[j]);
        const double contrib =
            (ns.symmetric_half && j > 0) ? 2.0 * t.real() : t.real();
        terms[j] = contrib;
        running += contrib;
        const double mag = std::abs(t);
        if (mag > prev_mag) {
            if (++growth_streak >= 5 && mag > 1e6 * std::abs(running))
                grew_past_sum = true;
        } else {
            growth_streak = 0;
        }
        prev_mag = mag;
    }
    out.value = detail::pairwise_sum(terms);
    out.status = prep.prep_status;
    out.error_estimate = prep.prep_estimate;
    if (grew_past_sum) {
        out.status = EvalStatus::diverged;
        out.error_estimate = std::numeric_limits<double>::infinity();
    }
    return out;
}

inline Evaluated<double> scalar_apply(const SchemeSpec& spec,
                                      const ScalarSymbol& symbol, int n_q,
                                      double lambda) {
    return scalar_apply(prepare_quadrature(spec, symbol, n_q), lambda);
}

// Error of the discrete sum against the directly evaluated symbol.
struct ScalarError {
    double absolute = std::numeric_limits<double>::quiet_NaN();
    double relative = std::numeric_limits<double>::quiet_NaN();
    double value = std::numeric_limits<double>::quiet_NaN();
    double reference = std::numeric_limits<double>::quiet_NaN();
    EvalStatus status = EvalStatus::ok;
};

inline ScalarError scalar_error(const PreparedQuadrature& prep, double lambda) {
    ScalarError err;
    const Evaluated<double> q = scalar_apply(prep, lambda);
    const Evaluated<double> ref = symbol_reference(prep.symbol, lambda);
    err.value = q.value;
    err.reference = ref.value;
    err.status = q.status;
    if (!is_usable(q.status)) return err;
    err.absolute = std::abs(q.value - ref.value);
    err.relative = err.absolute / std::abs(ref.value);
    return err;
}

inline ScalarError scalar_error(const SchemeSpec& spec, const ScalarSymbol& symbol,
                                int n_q, double lambda) {
    return scalar_error(prepare_quadrature(spec, symbol, n_q), lambda);
}

}  // namespace fraccal
