// Dirichlet Laplacian on the unit square (spectral form), grid/coefficient
// transforms, the Gaussian data bump, and the elliptic / time-fractional
// model drivers with their reference solutions.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fraccal/models.hpp"

using fraccal::Complex;
using fraccal::EvalStatus;
using fraccal::GaussianBump;
using fraccal::ParabolicProblem;
using fraccal::ScalarSymbol;
using fraccal::SchemeFamily;
using fraccal::SchemeSpec;
using fraccal::SigmaKind;
using fraccal::UnitSquareLaplacian;

namespace {

const SchemeSpec kDe1{SchemeFamily::DoubleExponential, {SigmaKind::Half, 4.0, 3.0}, "DE1"};
const SchemeSpec kDe2{SchemeFamily::DoubleExponential, {SigmaKind::One, 4.0, 3.0}, "DE2"};

}  // namespace

TEST_CASE("laplacian eigenvalues are sorted multiples of pi^2", "[models]") {
    const UnitSquareLaplacian lap(3);
    CHECK(lap.dimension() == 9);
    const double want[9] = {2, 5, 5, 8, 10, 10, 13, 13, 18};
    const auto& ev = lap.op().eigenvalues;
    REQUIRE(ev.size() == 9);
    for (int i = 0; i < 9; ++i)
        CHECK(ev[static_cast<std::size_t>(i)] ==
              Catch::Approx(fraccal::pi * fraccal::pi * want[i]).epsilon(1e-14));
    CHECK(lap.mode_pairs()[0] == std::make_pair(1, 1));
    CHECK_NOTHROW(lap.op().validate());
    CHECK_THROWS_AS(UnitSquareLaplacian(0), std::invalid_argument);
}

TEST_CASE("grid transforms invert each other", "[models]") {
    const UnitSquareLaplacian lap(16);
    std::vector<double> coeffs(lap.dimension());
    // Deterministic, sign-varying fill.
    unsigned state = 12345u;
    for (auto& c : coeffs) {
        state = state * 1664525u + 1013904223u;
        c = (static_cast<double>(state >> 8) / static_cast<double>(1u << 24)) - 0.5;
    }
    const auto grid = lap.from_coefficients(coeffs);
    const auto back = lap.to_coefficients(grid);
    REQUIRE(back.size() == coeffs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        worst = std::max(worst, std::abs(back[i] - coeffs[i]));
    CHECK(worst < 1e-13);

    // Single mode: the grid samples of the orthonormal basis function
    // 2 sin(pi x) sin(pi y).
    const UnitSquareLaplacian small(4);
    std::vector<double> e0(small.dimension(), 0.0);
    e0[0] = 1.0;
    const auto g0 = small.from_coefficients(e0);
    const double s1 = std::sin(fraccal::pi / 5.0);
    CHECK(g0[0] == Catch::Approx(2.0 * s1 * s1).epsilon(1e-14));

    CHECK_THROWS_AS(lap.from_coefficients({1.0}), std::invalid_argument);
}

TEST_CASE("constant-one data coefficients", "[models]") {
    const UnitSquareLaplacian lap(4);
    const auto c = fraccal::constant_one_coefficients(lap);
    const auto& pairs = lap.mode_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [m, n] = pairs[i];
        if (m % 2 == 0 || n % 2 == 0) {
            CHECK(c[i] == 0.0);
        } else {
            CHECK(c[i] == Catch::Approx(8.0 / (m * n * fraccal::pi * fraccal::pi))
                              .epsilon(1e-14));
        }
    }
}

TEST_CASE("bump coefficients: parity zeros and wide-bump limit", "[models]") {
    const UnitSquareLaplacian lap(6);
    const GaussianBump bump{1.0};
    CHECK(bump.value(0.5, 0.5) == 1.0);
    const auto c = fraccal::bump_coefficients(lap, bump);
    const auto& pairs = lap.mode_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [m, n] = pairs[i];
        if (m % 2 == 0 || n % 2 == 0) CHECK(c[i] == 0.0);
    }
    // Leading coefficient is positive (data is positive and centred).
    CHECK(c[0] > 0.0);

    // As omega -> infinity the Gaussian flattens to 1/omega, so
    // omega * coefficients approach the constant-one coefficients.
    const GaussianBump wide{1e6};
    const auto cw = fraccal::bump_coefficients(lap, wide);
    const auto ones = fraccal::constant_one_coefficients(lap);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (ones[i] == 0.0) continue;
        CHECK(cw[i] * 1e6 == Catch::Approx(ones[i]).epsilon(1e-5));
    }
}

TEST_CASE("elliptic solve matches the spectral calculus", "[models]") {
    const UnitSquareLaplacian lap(8);
    const auto f = fraccal::constant_one_coefficients(lap);
    const auto got = fraccal::elliptic_solve(lap, kDe2, 0.5, 70, f);
    REQUIRE(got.status == EvalStatus::ok);
    const auto want =
        fraccal::exact_apply_spectral(lap.op(), ScalarSymbol::power(0.5), f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(got.value[i] - want[i]));
    CHECK(worst < 1e-7 * std::abs(want[0]));
}

TEST_CASE("parabolic solve: constant forcing has a closed form", "[models]") {
    // For phi == 1 the mild solution is per-mode
    //   u_i = [ E_{a,1}(-t^a s) + (1 - E_{a,1}(-t^a s)) / s ] u0_i,
    // s = lambda_i^beta: both the evolution term and the Duhamel integral
    // are elementary.
    const UnitSquareLaplacian lap(6);
    ParabolicProblem prob;
    prob.alpha = 0.5;
    prob.beta = 0.5;
    prob.t = 0.5;
    prob.bump = GaussianBump{1.0};
    prob.with_forcing = true;
    prob.profile = fraccal::TimeProfile::constant();

    const auto got = fraccal::parabolic_solve(lap, prob, kDe2, 80);
    REQUIRE(fraccal::is_usable(got.status));

    const auto u0 = fraccal::bump_coefficients(lap, prob.bump);
    double scale = 0.0;
    for (double v : u0) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double s = std::pow(lap.op().eigenvalues[i], prob.beta);
        const double e1 = fraccal::mittag_leffler(
                              prob.alpha, 1.0,
                              Complex(-std::pow(prob.t, prob.alpha) * s, 0.0))
                              .value.real();
        const double want = (e1 + (1.0 - e1) / s) * u0[i];
        CHECK(std::abs(got.value[i] - want) < 1e-8 * scale);
    }
}

TEST_CASE("parabolic_prepared rejects the excluded contour", "[models]") {
    ParabolicProblem prob;
    prob.alpha = 1.0;
    prob.beta = 1.0;
    CHECK_THROWS_AS(fraccal::parabolic_prepared(prob, kDe1, 40), std::invalid_argument);
    CHECK_NOTHROW(fraccal::parabolic_prepared(prob, kDe2, 12));
}

TEST_CASE("reference solutions: scheme metadata and spectral fallback", "[models]") {
    const UnitSquareLaplacian lap(4);
    const auto f = fraccal::constant_one_coefficients(lap);
    const auto ell = fraccal::reference_elliptic(lap, 0.4, f, 40);
    CHECK(ell.scheme_name == "DE1");
    CHECK(ell.n_q == 48);
    CHECK(ell.step == Catch::Approx(fraccal::de_default_step(48)));
    CHECK_FALSE(ell.spectral_fallback);

    // alpha = beta = 1: the half-contour reference is excluded, so the
    // reference drops to the exact spectral form.
    ParabolicProblem prob;
    prob.alpha = 1.0;
    prob.beta = 1.0;
    prob.t = 0.1;
    prob.profile = fraccal::TimeProfile::sine();
    const auto ref = fraccal::reference_parabolic(lap, prob, 40);
    CHECK(ref.spectral_fallback);
    CHECK(ref.scheme_name == "spectral");
    const auto u0 = fraccal::bump_coefficients(lap, prob.bump);
    REQUIRE(ref.coeffs.size() == u0.size());
    for (std::size_t i : {std::size_t{0}, u0.size() - 1}) {
        const double lam = lap.op().eigenvalues[i];
        const double cw = fraccal::ml_convolution_weight(1.0, Complex(lam, 0.0),
                                                         prob.t, prob.profile)
                              .value.real();
        const double want = (std::exp(-prob.t * lam) + cw) * u0[i];
        CHECK(ref.coeffs[i] == Catch::Approx(want).epsilon(1e-10).margin(1e-18));
    }
}
