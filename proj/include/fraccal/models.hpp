#pragma once

// Model problems on the unit square: the Dirichlet Laplacian in its sine
// eigenbasis, Gaussian initial data, and the elliptic / time-fractional
// parabolic solvers built from the contour quadrature.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraccal/detail/gauss.hpp"
#include "fraccal/operator.hpp"

namespace fraccal {

// Dirichlet Laplacian on (0,1)^2 restricted to the first M x M sine
// modes: eigenpairs lambda_{mn} = pi^2 (m^2 + n^2),
// v_{mn}(x, y) = 2 sin(m pi x) sin(n pi y), stored in ascending eigenvalue
// order.  Coefficient vectors are expansions in this ordered basis; grid
// vectors sample the interior lattice x_i = i / (M + 1).
class UnitSquareLaplacian {
  public:
    explicit UnitSquareLaplacian(int modes_per_direction = 40)
        : m_(modes_per_direction) {
        if (m_ < 1)
            throw std::invalid_argument("laplacian: need at least one mode");
        pairs_.reserve(static_cast<std::size_t>(m_) * m_);
        for (int mm = 1; mm <= m_; ++mm)
            for (int nn = 1; nn <= m_; ++nn) pairs_.emplace_back(mm, nn);
        std::sort(pairs_.begin(), pairs_.end(),
                  [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                      const long ka = static_cast<long>(a.first) * a.first +
                                      static_cast<long>(a.second) * a.second;
                      const long kb = static_cast<long>(b.first) * b.first +
                                      static_cast<long>(b.second) * b.second;
                      if (ka != kb) return ka < kb;
                      return a < b;
                  });
        op_.eigenvalues.resize(pairs_.size());
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            const auto [mm, nn] = pairs_[i];
            op_.eigenvalues[i] =
                pi * pi * (static_cast<double>(mm) * mm + static_cast<double>(nn) * nn);
        }
    }

    int modes_per_direction() const { return m_; }
    std::size_t dimension() const { return pairs_.size(); }
    const SpectralOperator& op() const { return op_; }
    const std::vector<std::pair<int, int>>& mode_pairs() const { return pairs_; }

    // Interior-grid sampling <-> sine coefficients.  With G = M + 1 grid
    // intervals the discrete sine transform is exactly invertible on the
    // retained band, so the round trip is identity up to rounding.
    std::vector<double> from_coefficients(const std::vector<double>& coeffs) const {
        check_dim(coeffs.size());
        const int g = m_ + 1;
        const std::vector<double>& s = sin_table();
        // a[m][n] from the sorted coefficient vector.
        std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
        for (std::size_t idx = 0; idx < pairs_.size(); ++idx) {
            const auto [mm, nn] = pairs_[idx];
            a[static_cast<std::size_t>(mm - 1) * m_ + (nn - 1)] = coeffs[idx];
        }
        // u(x_i, y_j) = sum_{m,n} a_{mn} 2 sin(m pi x_i) sin(n pi y_j),
        // evaluated separably.
        std::vector<double> half(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int mm = 1; mm <= m_; ++mm)
            for (int j = 1; j <= m_; ++j) {
                double acc = 0.0;
                for (int nn = 1; nn <= m_; ++nn)
                    acc += a[static_cast<std::size_t>(mm - 1) * m_ + (nn - 1)] *
                           s[static_cast<std::size_t>(nn - 1) * g + j];
                half[static_cast<std::size_t>(mm - 1) * m_ + (j - 1)] = acc;
            }
        std::vector<double> grid(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 1; i <= m_; ++i)
            for (int j = 1; j <= m_; ++j) {
                double acc = 0.0;
                for (int mm = 1; mm <= m_; ++mm)
                    acc += half[static_cast<std::size_t>(mm - 1) * m_ + (j - 1)] *
                           s[static_cast<std::size_t>(mm - 1) * g + i];
                grid[static_cast<std::size_t>(i - 1) * m_ + (j - 1)] = 2.0 * acc;
            }
        return grid;
    }

    std::vector<double> to_coefficients(const std::vector<double>& grid) const {
        check_dim(grid.size());
        const int g = m_ + 1;
        const std::vector<double>& s = sin_table();
        const double scale = 2.0 / (static_cast<double>(g) * g);
        std::vector<double> half(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int mm = 1; mm <= m_; ++mm)
            for (int j = 1; j <= m_; ++j) {
                double acc = 0.0;
                for (int i = 1; i <= m_; ++i)
                    acc += grid[static_cast<std::size_t>(i - 1) * m_ + (j - 1)] *
                           s[static_cast<std::size_t>(mm - 1) * g + i];
                half[static_cast<std::size_t>(mm - 1) * m_ + (j - 1)] = acc;
            }
        std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int mm = 1; mm <= m_; ++mm)
            for (int nn = 1; nn <= m_; ++nn) {
                double acc = 0.0;
                for (int j = 1; j <= m_; ++j)
                    acc += half[static_cast<std::size_t>(mm - 1) * m_ + (j - 1)] *
                           s[static_cast<std::size_t>(nn - 1) * g + j];
                a[static_cast<std::size_t>(mm - 1) * m_ + (nn - 1)] = scale * acc;
            }
        std::vector<double> coeffs(pairs_.size());
        for (std::size_t idx = 0; idx < pairs_.size(); ++idx) {
            const auto [mm, nn] = pairs_[idx];
            coeffs[idx] = a[static_cast<std::size_t>(mm - 1) * m_ + (nn - 1)];
        }
        return coeffs;
    }

  private:
    void check_dim(std::size_t n) const {
        if (n != pairs_.size())
            throw std::invalid_argument("laplacian: dimension mismatch");
    }

    // sin(m pi i / G) for m = 1..M (row) and i = 1..M (column), built on
    // first use; the grid transforms are the only consumers.
    const std::vector<double>& sin_table() const {
        if (sin_.empty()) {
            const int g = m_ + 1;
            sin_.assign(static_cast<std::size_t>(m_) * g, 0.0);
            for (int mm = 1; mm <= m_; ++mm)
                for (int i = 1; i <= m_; ++i)
                    sin_[static_cast<std::size_t>(mm - 1) * g + i] =
                        std::sin(pi * mm * i / g);
        }
        return sin_;
    }

    int m_;
    std::vector<std::pair<int, int>> pairs_;
    SpectralOperator op_;
    mutable std::vector<double> sin_;
};

// Normalised Gaussian concentrated at the centre of the square; for
// omega -> 0 it approaches a point mass (incompatible with the Dirichlet
// conditions only through its tails, which shrink with omega).
struct GaussianBump {
    double omega = 1.0;

    double value(double x, double y) const {
        const double dx = x - 0.5;
        const double dy = y - 0.5;
        return std::exp(-dx * dx / omega) * std::exp(-dy * dy / omega) / omega;
    }
};

// One-dimensional sine factors of the bump,
// K_m = int_0^1 e^{-(x-1/2)^2/omega} sin(m pi x) dx, m = 1..max_m.
// K_m vanishes identically for even m (odd symmetry about the centre);
// the odd ones are integrated adaptively.
inline std::vector<double> bump_sine_factors(const GaussianBump& bump, int max_m,
                                             double abs_tol = 1e-13) {
    std::vector<double> k_factor(static_cast<std::size_t>(max_m) + 1, 0.0);
    for (int mm = 1; mm <= max_m; mm += 2) {
        const double omega = bump.omega;
        k_factor[static_cast<std::size_t>(mm)] = detail::adaptive_gk(
            [omega, mm](double x) {
                const double dx = x - 0.5;
                return std::exp(-dx * dx / omega) * std::sin(mm * pi * x);
            },
            0.0, 1.0, abs_tol);
    }
    return k_factor;
}

// Sine coefficients of the bump.  The x/y factorisation gives
// (u0, v_mn) = (2 / omega) K_m K_n.
inline std::vector<double> bump_coefficients(const UnitSquareLaplacian& lap,
                                             const GaussianBump& bump,
                                             double abs_tol = 1e-13) {
    const std::vector<double> k_factor =
        bump_sine_factors(bump, lap.modes_per_direction(), abs_tol);
    std::vector<double> coeffs(lap.dimension());
    const auto& pairs = lap.mode_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [mm, nn] = pairs[i];
        coeffs[i] = 2.0 / bump.omega * k_factor[static_cast<std::size_t>(mm)] *
                    k_factor[static_cast<std::size_t>(nn)];
    }
    return coeffs;
}

// Sine coefficients of f(x, y) = 1:
// (1, v_mn) = 2 (1 - (-1)^m)(1 - (-1)^n) / (m n pi^2).
inline std::vector<double> constant_one_coefficients(const UnitSquareLaplacian& lap) {
    std::vector<double> coeffs(lap.dimension());
    const auto& pairs = lap.mode_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [mm, nn] = pairs[i];
        if (mm % 2 == 0 || nn % 2 == 0) {
            coeffs[i] = 0.0;
        } else {
            coeffs[i] = 8.0 / (static_cast<double>(mm) * nn * pi * pi);
        }
    }
    return coeffs;
}

// ---------------------------------------------------------------------------
// Elliptic problem: u = L^{-beta} f.

inline Evaluated<std::vector<double>> elliptic_solve(const UnitSquareLaplacian& lap,
                                                     const SchemeSpec& scheme,
                                                     double beta, int n_q,
                                                     const std::vector<double>& f_coeffs) {
    const SpectralResolvent resolvent(lap.op());
    return apply_function(resolvent, scheme, ScalarSymbol::power(beta), n_q,
                          f_coeffs);
}

// ---------------------------------------------------------------------------
// Time-fractional parabolic problem
//
//   D_t^alpha u + L^beta u = phi(t) u0,   u(0) = u0,
//
// whose mild solution at time t is
//
//   u(t) = E_{alpha,1}(-t^alpha L^beta) u0
//        + int_0^t tau^{alpha-1} E_{alpha,alpha}(-tau^alpha L^beta)
//          phi(t - tau) u0 d tau.
//
// Both terms share the same resolvent solves: per contour node the scalar
// factor is g(z_j) + c(t; z_j^beta), applied to the solved vector.

struct ParabolicProblem {
    double alpha = 0.70710678118654752440;  // 1/sqrt(2)
    double beta = 0.7;
    double t = 0.1;
    GaussianBump bump{1.0};
    bool with_forcing = true;
    TimeProfile profile = TimeProfile::sine();

    ScalarSymbol evolution_symbol() const {
        return ScalarSymbol::mittag_leffler_evolution(
            MittagLefflerParams{alpha, 1.0}, t, beta);
    }
};

// Prepared quadrature whose coefficients combine the homogeneous
// evolution factor and the Duhamel weight, ready for apply_function.
inline PreparedQuadrature parabolic_prepared(const ParabolicProblem& prob,
                                             const SchemeSpec& scheme, int n_q) {
    const ScalarSymbol symbol = prob.evolution_symbol();
    if (quad_detail::excluded_combination(scheme, symbol))
        throw std::invalid_argument(
            "parabolic_solve: this contour cannot represent the exponential "
            "evolution symbol (sigma = 1/2 with alpha = beta = 1)");
    PreparedQuadrature prep = prepare_quadrature(scheme, symbol, n_q);
    if (prob.with_forcing) {
        const NodeSet& ns = prep.node_set;
        for (std::size_t j = 0; j < ns.nodes.size(); ++j) {
            const Complex s_point = complex_power(ns.nodes[j], prob.beta);
            const Evaluated<Complex> cw =
                ml_convolution_weight(prob.alpha, s_point, prob.t, prob.profile);
            prep.coeff[j] += ns.weights[j] * cw.value;
            prep.prep_estimate += std::abs(ns.weights[j]) * cw.error_estimate *
                                  (ns.symmetric_half && j > 0 ? 2.0 : 1.0);
            if (!cw.usable() && prep.prep_status == EvalStatus::ok)
                prep.prep_status = cw.status;
        }
    }
    return prep;
}

inline Evaluated<std::vector<double>> parabolic_solve(const UnitSquareLaplacian& lap,
                                                      const ParabolicProblem& prob,
                                                      const SchemeSpec& scheme,
                                                      int n_q) {
    const SpectralResolvent resolvent(lap.op());
    const std::vector<double> u0 = bump_coefficients(lap, prob.bump);
    return apply_function(resolvent, parabolic_prepared(prob, scheme, n_q), u0);
}

// ---------------------------------------------------------------------------
// Reference solutions: the most accurate contour scheme at a finer node
// count than anything under study (finest + 8), falling back to the exact
// spectral evaluation when that scheme is incompatible with the symbol.

struct ReferenceSolution {
    std::vector<double> coeffs;
    std::string scheme_name;
    int n_q = 0;
    double step = 0.0;
    bool spectral_fallback = false;
};

namespace model_detail {
inline SchemeSpec reference_scheme() {
    SchemeSpec s;
    s.family = SchemeFamily::DoubleExponential;
    s.contour = ContourParams{SigmaKind::Half, 4.0, 3.0};
    s.name = "DE1";
    return s;
}
}  // namespace model_detail

inline ReferenceSolution reference_elliptic(const UnitSquareLaplacian& lap,
                                            double beta,
                                            const std::vector<double>& f_coeffs,
                                            int finest_n_q) {
    ReferenceSolution ref;
    const SchemeSpec scheme = model_detail::reference_scheme();
    ref.n_q = finest_n_q + 8;
    ref.scheme_name = scheme.name;
    ref.step = de_default_step(ref.n_q);
    ref.coeffs = elliptic_solve(lap, scheme, beta, ref.n_q, f_coeffs).value;
    return ref;
}

inline ReferenceSolution reference_parabolic(const UnitSquareLaplacian& lap,
                                             const ParabolicProblem& prob,
                                             int finest_n_q) {
    ReferenceSolution ref;
    const SchemeSpec scheme = model_detail::reference_scheme();
    const ScalarSymbol symbol = prob.evolution_symbol();
    if (quad_detail::excluded_combination(scheme, symbol)) {
        // alpha = beta = 1: the reference contour is unusable, but the
        // symbol is elementary; use the exact spectral evaluation.
        ref.spectral_fallback = true;
        ref.scheme_name = "spectral";
        const std::vector<double> u0 = bump_coefficients(lap, prob.bump);
        ref.coeffs = exact_apply_spectral(lap.op(), symbol, u0);
        if (prob.with_forcing) {
            for (std::size_t i = 0; i < ref.coeffs.size(); ++i) {
                const Complex s_point(std::pow(lap.op().eigenvalues[i], prob.beta),
                                      0.0);
                ref.coeffs[i] += ml_convolution_weight(prob.alpha, s_point, prob.t,
                                                       prob.profile)
                                     .value.real() *
                                 u0[i];
            }
        }
        return ref;
    }
    ref.n_q = finest_n_q + 8;
    ref.scheme_name = scheme.name;
    ref.step = de_default_step(ref.n_q);
    ref.coeffs = parabolic_solve(lap, prob, scheme, ref.n_q).value;
    return ref;
}

}  // namespace fraccal
