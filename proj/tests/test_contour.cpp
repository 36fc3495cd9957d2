// Contour map psi, its derivative, log-magnitude asymptotics, and the
// pole-preimage solver, checked against high-precision reference values.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fraccal/contour.hpp"

using fraccal::Complex;
using fraccal::ContourParams;
using fraccal::SigmaKind;

namespace {

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}

const ContourParams kHalf4{SigmaKind::Half, 4.0, 3.0};
const ContourParams kOne4{SigmaKind::One, 4.0, 3.0};
const ContourParams kOne1{SigmaKind::One, 1.0, 3.0};

}  // namespace

TEST_CASE("psi and psi_prime match reference values", "[contour]") {
    // sigma = 1/2, theta = 4, kappa = 3 at y = 1.0
    CHECK(rel_err(fraccal::psi(kHalf4, 1.0),
                  {4.371234990910802614936844, 37.0594490157158743927677}) < 1e-15);
    CHECK(rel_err(fraccal::psi_prime(kHalf4, 1.0),
                  {3.853049373228806584068593, 94.41889925807545808624775}) < 1e-15);

    // sigma = 1/2, theta = 4, kappa = 3 at y = 1.2
    CHECK(rel_err(fraccal::psi(kHalf4, 1.2),
                  {5.366999266734532240748798, 63.69189865322393280795719}) < 1e-15);
    CHECK(rel_err(fraccal::psi_prime(kHalf4, 1.2),
                  {6.328629231083294277203673, 184.337792022337340695683}) < 1e-15);

    // sigma = 1, theta = 4, kappa = 3 at y = 1.2
    CHECK(rel_err(fraccal::psi(kOne4, 1.2),
                  {16.20312075275267116696254, 63.69189865322393280795719}) < 1e-15);
    CHECK(rel_err(fraccal::psi_prime(kOne4, 1.2),
                  {45.28766459021168930745343, 184.337792022337340695683}) < 1e-15);

    // sigma = 1, theta = 1, kappa = 3 at y = 0.7
    CHECK(rel_err(fraccal::psi(kOne1, 0.7),
                  {5.394032019585297689159167, 4.482809546290299997188506}) < 1e-15);
    CHECK(rel_err(fraccal::psi_prime(kOne1, 0.7),
                  {8.838373931938251459293964, 10.63495370428918237833568}) < 1e-15);
}

TEST_CASE("psi has exact conjugate symmetry and real center", "[contour]") {
    for (const auto& cp : {kHalf4, kOne4, kOne1}) {
        for (double y : {0.05, 0.3, 0.9, 1.7, 2.5, 3.4}) {
            const Complex plus = fraccal::psi(cp, y);
            const Complex minus = fraccal::psi(cp, -y);
            CHECK(minus.real() == plus.real());
            CHECK(minus.imag() == -plus.imag());
            const Complex dplus = fraccal::psi_prime(cp, y);
            const Complex dminus = fraccal::psi_prime(cp, -y);
            CHECK(dminus.real() == -dplus.real());
            CHECK(dminus.imag() == dplus.imag());
        }
        const Complex center = fraccal::psi(cp, 0.0);
        CHECK(center.real() == cp.kappa);
        CHECK(center.imag() == 0.0);
        // psi'(0) = i kappa theta pi / 2 (purely imaginary for sigma = 1/2
        // and sigma = 1 alike: the sinh factor vanishes at the center).
        const Complex dc = fraccal::psi_prime(cp, 0.0);
        CHECK(dc.real() == 0.0);
        CHECK(dc.imag() == Catch::Approx(cp.kappa * cp.theta * fraccal::pi / 2.0).epsilon(1e-15));
    }
}

TEST_CASE("complex-argument psi agrees with the real overload", "[contour]") {
    for (const auto& cp : {kHalf4, kOne1}) {
        for (double y : {0.2, 1.1, 2.3}) {
            CHECK(rel_err(fraccal::psi(cp, Complex(y, 0.0)), fraccal::psi(cp, y)) < 1e-15);
            CHECK(rel_err(fraccal::psi_prime(cp, Complex(y, 0.0)), fraccal::psi_prime(cp, y)) <
                  1e-14);
        }
    }
}

TEST_CASE("checked evaluation flags overflow", "[contour]") {
    const auto ok = fraccal::psi_checked(kOne4, 2.0);
    CHECK(ok.status == fraccal::EvalStatus::ok);
    CHECK(std::isfinite(ok.value.real()));
    // sinh(7) * pi/2 ~ 861 > 709: the hyperbolics overflow.
    const auto bad = fraccal::psi_checked(kOne4, 7.0);
    CHECK(bad.status == fraccal::EvalStatus::overflow);
    const auto badp = fraccal::psi_prime_checked(kOne4, 7.0);
    CHECK(badp.status == fraccal::EvalStatus::overflow);
}

TEST_CASE("log-magnitude data agrees across the asymptotic switch", "[contour]") {
    // The switch sits at |w| = 30, i.e. y = asinh(60/pi) ~ 3.645.  Just
    // above it psi is still comfortably representable, so the direct and
    // asymptotic formulas can be compared head to head.
    for (const auto& cp : {kHalf4, kOne4, kOne1}) {
        for (double y : {3.7, 3.9, 4.2, -3.8}) {
            const auto data = fraccal::psi_log_magnitude(cp, y);
            const Complex p = fraccal::psi(cp, y);
            const Complex dp = fraccal::psi_prime(cp, y);
            CHECK(data.log_abs_psi == Catch::Approx(std::log(std::abs(p))).epsilon(1e-12));
            CHECK(data.arg_psi == Catch::Approx(std::arg(p)).margin(1e-12));
            CHECK(data.log_abs_psi_prime ==
                  Catch::Approx(std::log(std::abs(dp))).epsilon(1e-12));
        }
        // Far out: finite, and growing like (pi/2) e^{|y|} / 2 per unit y.
        const auto far1 = fraccal::psi_log_magnitude(cp, 6.0);
        const auto far2 = fraccal::psi_log_magnitude(cp, 6.5);
        CHECK(std::isfinite(far1.log_abs_psi));
        CHECK(far2.log_abs_psi > far1.log_abs_psi);
        const double growth = (far2.log_abs_psi - far1.log_abs_psi);
        const double expected =
            0.5 * fraccal::pi * (std::sinh(6.5) - std::sinh(6.0));
        CHECK(growth == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("pole preimages: sigma = 1/2, theta = 4, lambda = 100", "[contour][poles]") {
    const auto poles = fraccal::locate_pole_preimages(kHalf4, 100.0, 1.2);
    REQUIRE(poles.size() == 4);
    const Complex want[4] = {
        {-1.42632075675880190449, -0.4582176842300030985883},
        {1.42632075675880190449, -0.4582176842300030985883},
        {-1.932813587716715893941, 1.003277023654483605315},
        {1.932813587716715893941, 1.003277023654483605315},
    };
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(poles[static_cast<std::size_t>(i)].y - want[i]) < 1e-10);
        CHECK(poles[static_cast<std::size_t>(i)].residual <= 1e-10 * 100.0);
    }
}

TEST_CASE("pole preimages: sigma = 1, theta = 4, lambda = 1e4", "[contour][poles]") {
    const auto poles = fraccal::locate_pole_preimages(kOne4, 1e4, 1.2);
    REQUIRE(poles.size() == 12);
    const double im[6] = {-1.07993647755451532003, -0.7946317777428340009919,
                          -0.1738661451447185077565, 0.5838355575347634268858,
                          0.9861733094893379962085, 1.170570929743177296312};
    const double re[6] = {2.996040833156588123228, 2.60285113029392521073,
                          2.267435582026046757201, 2.430330235190478320208,
                          2.839297554388636098407, 3.185737076933079521664};
    for (int i = 0; i < 6; ++i) {
        const auto& neg = poles[static_cast<std::size_t>(2 * i)];
        const auto& pos = poles[static_cast<std::size_t>(2 * i + 1)];
        CHECK(std::abs(neg.y - Complex(-re[i], im[i])) < 1e-9);
        CHECK(std::abs(pos.y - Complex(re[i], im[i])) < 1e-9);
        CHECK(pos.residual <= 1e-10 * 1e4);
    }
}

TEST_CASE("pole preimages: sigma = 1, theta = 1 reference point", "[contour][poles]") {
    // lambda = sqrt(2) cosh(1) on the unit contour (kappa = 1).
    const ContourParams cp{SigmaKind::One, 1.0, 1.0};
    const double lam = std::sqrt(2.0) * std::cosh(1.0);
    const auto poles = fraccal::locate_pole_preimages(cp, lam, 1.2);
    REQUIRE(!poles.empty());
    const Complex want(0.65101412508977891, -0.42245836615880467);
    double best = 1e9;
    double min_im = 1e9;
    for (const auto& p : poles) {
        best = std::min(best, std::abs(p.y - want));
        min_im = std::min(min_im, std::abs(p.y.imag()));
    }
    CHECK(best < 1e-10);
    // That pair is the nearest one to the real axis.
    CHECK(min_im == Catch::Approx(0.42245836615880467).epsilon(1e-10));
    CHECK(fraccal::nearest_preimage_distance(cp, lam) ==
          Catch::Approx(0.42245836615880467).epsilon(1e-10));
}

TEST_CASE("pole preimage residual contract across the parameter grid", "[contour][poles]") {
    for (SigmaKind sig : {SigmaKind::Half, SigmaKind::One}) {
        for (double theta : {1.0, 4.0}) {
            const ContourParams cp{sig, theta, 3.0};
            for (double lam : {1e2, 1e4, 1e8}) {
                const auto poles = fraccal::locate_pole_preimages(cp, lam, 1.2);
                CHECK(poles.size() >= 2);
                for (const auto& p : poles) {
                    CHECK(p.residual <= 1e-10 * lam);
                    // conjugate-pair structure: the mirrored root is present.
                    bool mirrored = false;
                    for (const auto& q : poles)
                        if (std::abs(q.y - Complex(-p.y.real(), p.y.imag())) <
                            1e-8 * (1.0 + std::abs(p.y)))
                            mirrored = true;
                    CHECK(mirrored);
                }
            }
        }
    }
}

TEST_CASE("strip half-width tracks atan(theta) for sigma = 1", "[contour][poles]") {
    // For the sharp contour the nearest preimage obeys
    // |Im y| ~ atan(theta) / ln(lambda / kappa); frozen products at theta = 4:
    const double prods[3][2] = {
        {1e4, 1.410355}, {1e6, 1.388484}, {1e8, 1.374596}};
    for (const auto& row : prods) {
        const double lam = row[0];
        const double d = fraccal::nearest_preimage_distance(kOne4, lam, 1.2);
        CHECK(d * std::log(lam / 3.0) == Catch::Approx(row[1]).margin(1e-3));
    }
}

TEST_CASE("contour input validation", "[contour]") {
    CHECK_THROWS_AS(fraccal::locate_pole_preimages({SigmaKind::One, 0.5, 3.0}, 10.0, 1.2),
                    std::invalid_argument);
    CHECK_THROWS_AS(fraccal::locate_pole_preimages(kOne4, -5.0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(fraccal::locate_pole_preimages(kOne4, 10.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(fraccal::locate_pole_preimages(kOne4, 10.0, 0.0), std::invalid_argument);
}
