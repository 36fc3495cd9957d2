// Experiment harness: scheme presets, sample generators, rate fitting,
// CSV rendering, config parsing, and smoke runs of every experiment kind.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fraccal/harness.hpp"

using fraccal::ExperimentConfig;
using fraccal::ExperimentKind;
using fraccal::ExperimentResult;
using fraccal::ResultRow;
using fraccal::SchemeFamily;
using fraccal::SigmaKind;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("named schemes", "[harness]") {
    const auto de1 = fraccal::make_scheme("DE1");
    CHECK(de1.family == SchemeFamily::DoubleExponential);
    CHECK(de1.contour.sigma == SigmaKind::Half);
    CHECK(de1.contour.theta == 4.0);
    CHECK(de1.contour.kappa == 3.0);
    CHECK(fraccal::make_scheme("DE2").contour.sigma == SigmaKind::One);
    CHECK(fraccal::make_scheme("DE3").contour.theta == 1.0);
    CHECK(fraccal::make_scheme("sinc").family == SchemeFamily::Sinc);
    CHECK(fraccal::make_scheme("balakrishnan").family == SchemeFamily::Balakrishnan);
    CHECK_THROWS_AS(fraccal::make_scheme("DE9"), std::invalid_argument);
}

TEST_CASE("lambda sample set", "[harness]") {
    const auto lams = fraccal::lambda_samples(0.6, 120);
    REQUIRE(lams.size() >= 100);
    for (std::size_t i = 0; i < lams.size(); ++i) {
        CHECK(lams[i] > 5.0);
        if (i > 0) CHECK(lams[i] > lams[i - 1]);
    }
    // Largest sample tracks exp(beta / k(n_q_max)).
    CHECK(lams.back() > 1.5e7);
    CHECK(lams.back() < 2.0e7);
}

TEST_CASE("rate_fit recovers an exact exponential law", "[harness]") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> err(5);
    for (int i = 0; i < 5; ++i) err[static_cast<std::size_t>(i)] = std::exp(3.0 - 2.0 * x[static_cast<std::size_t>(i)]);
    const auto fit = fraccal::rate_fit(x, err, 1e-30, 1e30);
    CHECK(fit.count == 5);
    CHECK(fit.slope == Catch::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.intercept == Catch::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual_rms < 1e-12);

    // The error window excludes saturated points: err(5) = e^{-7} ~ 9e-4.
    const auto windowed = fraccal::rate_fit(x, err, 1e-3, 1e30);
    CHECK(windowed.count == 4);

    // Degenerate inputs yield NaN slope, no throw.
    const auto degenerate = fraccal::rate_fit({1.0}, {0.5}, 0.0, 1.0);
    CHECK(degenerate.count == 1);
    CHECK(std::isnan(degenerate.slope));
}

TEST_CASE("pearson correlation", "[harness]") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double v : x) y.push_back(-2.0 * v + 1.0);
    CHECK(fraccal::pearson_correlation(x, y) == Catch::Approx(-1.0).epsilon(1e-14));
    CHECK(fraccal::pearson_correlation(x, {1.0, 1.0, 1.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(fraccal::pearson_correlation({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("predicted decay constants", "[harness]") {
    const double half = fraccal::predicted_decay_constant(
        {SigmaKind::Half, 4.0, 3.0}, 1.2);
    CHECK(half == Catch::Approx(std::sqrt(2.0 * fraccal::pi * fraccal::pi * 1.2)));
    const double sharp = fraccal::predicted_decay_constant(
        {SigmaKind::One, 1.0, 3.0}, 1.2);
    CHECK(sharp ==
          Catch::Approx(std::sqrt(4.0 * fraccal::pi * std::atan(1.0) * 1.2)));
}

TEST_CASE("CSV rendering is exact and stable", "[harness]") {
    ExperimentResult result;
    result.name = "unit";
    result.rows.push_back(ResultRow{"DE1", 10, 0.25, "max_abs_error", 0.5, false});
    result.rows.push_back(ResultRow{"DE1", 20, 0.0, "max_abs_error", 3.0, true});
    const std::string want =
        "scheme,n_q,k,param,value\n"
        "DE1,10,2.5000000000000000e-01,max_abs_error,5.0000000000000000e-01\n"
        "DE1,20,0.0000000000000000e+00,max_abs_error,diverged\n";
    CHECK(fraccal::render_csv(result) == want);
}

TEST_CASE("emit_outputs writes the CSV and plot script", "[harness]") {
    ExperimentResult result;
    result.name = "tmp";
    result.rows.push_back(ResultRow{"DE2", 10, 0.2, "l2_error", 1e-3, false});
    result.rows.push_back(ResultRow{"DE2", 20, 0.13, "l2_error", 1e-6, false});
    const std::string csv_path = "test_harness_tmp.csv";
    fraccal::emit_outputs(result, csv_path, true);
    CHECK(slurp(csv_path) == fraccal::render_csv(result));
    const std::string script = slurp("test_harness_tmp_plot.py");
    CHECK(script.find("test_harness_tmp.csv") != std::string::npos);
    CHECK(script.find("test_harness_tmp.png") != std::string::npos);
    CHECK(script.find("matplotlib") != std::string::npos);
    std::remove("test_harness_tmp.csv");
    std::remove("test_harness_tmp_plot.py");

    ExperimentResult empty;
    CHECK_THROWS_AS(fraccal::emit_outputs(empty, "x.csv", false), std::invalid_argument);
}

TEST_CASE("experiment config: overrides and validation", "[harness]") {
    ExperimentConfig c;
    c.sigma_override = 0.5;
    c.theta_override = 7.0;
    const auto s = c.scheme("DE2");
    CHECK(s.contour.sigma == SigmaKind::Half);
    CHECK(s.contour.theta == 7.0);
    c.sigma_override = 0.7;
    CHECK_THROWS_AS(c.scheme("DE2"), std::invalid_argument);

    ExperimentConfig bad;
    bad.schemes.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    ExperimentConfig bala_ml;
    bala_ml.kind = ExperimentKind::ScalarML;
    bala_ml.alpha = 0.5;
    bala_ml.beta = 0.5;
    bala_ml.schemes = {"balakrishnan"};
    CHECK_THROWS_AS(bala_ml.validate(), std::invalid_argument);

    ExperimentConfig bala_beta1;
    bala_beta1.beta = 1.0;
    bala_beta1.schemes = {"balakrishnan"};
    CHECK_THROWS_AS(bala_beta1.validate(), std::invalid_argument);

    ExperimentConfig named;
    named.name = "runme";
    CHECK(named.output_path() == "runme.csv");
    named.output = "elsewhere.csv";
    CHECK(named.output_path() == "elsewhere.csv");
}

TEST_CASE("presets construct, validate, and pin their key parameters", "[harness]") {
    for (const std::string& name : fraccal::preset_names()) {
        const auto c = fraccal::make_preset(name);
        CHECK_NOTHROW(c.validate());
        CHECK(c.name == name);
    }
    const auto p06 = fraccal::make_preset("scalar-power-0p6");
    CHECK(p06.beta == 0.6);
    CHECK(p06.schemes.size() == 5);  // includes balakrishnan
    const auto ml = fraccal::make_preset("scalar-ml-classic");
    CHECK(ml.alpha == 1.0);
    CHECK(ml.beta == 1.0);
    CHECK(ml.schemes.size() == 4);  // no balakrishnan for evolution symbols
    const auto smooth = fraccal::make_preset("parabolic2d-smooth");
    CHECK(smooth.omega == 0.01);
    CHECK(smooth.kind == ExperimentKind::Parabolic);
    CHECK_THROWS_AS(fraccal::make_preset("nope"), std::invalid_argument);
}

TEST_CASE("config files parse keys, comments, and errors", "[harness]") {
    const std::string path = "test_harness_tmp.conf";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "beta = 0.45\n";
        out << "schemes = DE1, sinc\n";
        out << "nq-max = 60   ; trailing comment\n";
        out << "profile = cosine\n";
        out << "forcing = false\n";
    }
    ExperimentConfig c;
    fraccal::load_config_file(c, path);
    CHECK(c.beta == 0.45);
    REQUIRE(c.schemes.size() == 2);
    CHECK(c.schemes[0] == "DE1");
    CHECK(c.schemes[1] == "sinc");
    CHECK(c.n_q_max == 60);
    CHECK(c.profile.kind == fraccal::TimeProfile::Kind::Cosine);
    CHECK_FALSE(c.with_forcing);
    std::remove(path.c_str());

    ExperimentConfig d;
    CHECK_THROWS_AS(fraccal::apply_config_entry(d, "unknown-key", "1"),
                    std::invalid_argument);
    CHECK_THROWS_AS(fraccal::load_config_file(d, "no_such_file.conf"),
                    std::runtime_error);
}

TEST_CASE("scalar experiment: envelope rows and metadata", "[harness][runner]") {
    ExperimentConfig c;
    c.kind = ExperimentKind::ScalarPower;
    c.name = "scalar-smoke";
    c.beta = 0.6;
    c.schemes = {"DE3"};
    c.n_q_min = 10;
    c.n_q_max = 40;
    c.n_q_stride = 10;
    const auto result = fraccal::run_scalar_experiment(c);
    REQUIRE(result.rows.size() == 5);  // 4 node counts + 1 metadata row
    for (int i = 0; i < 4; ++i) {
        CHECK(result.rows[static_cast<std::size_t>(i)].param == "max_abs_error");
        CHECK_FALSE(result.rows[static_cast<std::size_t>(i)].diverged);
        CHECK(result.rows[static_cast<std::size_t>(i)].value > 0.0);
    }
    CHECK(result.rows[3].value < result.rows[0].value);
    const auto& meta = result.rows[4];
    CHECK(meta.param == "predicted_decay_per_sqrt_k");
    CHECK(meta.n_q == 0);
    CHECK(meta.value == Catch::Approx(fraccal::predicted_decay_constant(
                            {SigmaKind::One, 1.0, 3.0}, 1.2)));
}

TEST_CASE("lambda sweep rows", "[harness][runner]") {
    ExperimentConfig c;
    c.kind = ExperimentKind::LambdaSweep;
    c.beta = 0.6;
    c.schemes = {"DE2"};
    c.lambdas = {1000.0};
    c.n_q_min = 10;
    c.n_q_max = 30;
    c.n_q_stride = 10;
    const auto result = fraccal::run_lambda_sweep(c);
    REQUIRE(result.rows.size() == 3);
    for (const auto& row : result.rows) {
        CHECK(row.param == "lam=1000");
        CHECK_FALSE(row.diverged);
    }
    CHECK(result.rows[2].value < result.rows[0].value);
}

TEST_CASE("pde experiment: reference metadata and determinism", "[harness][runner]") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Elliptic;
    c.name = "elliptic-smoke";
    c.beta = 0.4;
    c.modes = 6;
    c.schemes = {"DE2"};
    c.n_q_min = 10;
    c.n_q_max = 30;
    c.n_q_stride = 10;

    ::setenv("FRACCAL_THREADS", "1", 1);
    const auto r1 = fraccal::run_pde_experiment(c);
    ::setenv("FRACCAL_THREADS", "5", 1);
    const auto r5 = fraccal::run_pde_experiment(c);
    ::unsetenv("FRACCAL_THREADS");

    REQUIRE(r1.rows.size() == 5);  // 3 errors + decay metadata + reference row
    CHECK(r1.rows[2].value < r1.rows[0].value);
    const auto& ref_row = r1.rows.back();
    CHECK(ref_row.param == "reference_scheme");
    CHECK(ref_row.scheme == "DE1");
    CHECK(ref_row.n_q == 38);

    // Byte-identical output across thread counts.
    CHECK(fraccal::render_csv(r1) == fraccal::render_csv(r5));
}

TEST_CASE("pole map rows", "[harness][runner]") {
    ExperimentConfig c;
    c.kind = ExperimentKind::PoleMap;
    c.schemes = {"DE3"};
    c.lambdas = {100.0};
    const auto result = fraccal::run_pole_map(c);
    REQUIRE(result.rows.size() >= 4);
    REQUIRE(result.rows.size() % 2 == 0);
    for (std::size_t i = 0; i < result.rows.size(); i += 2) {
        CHECK(result.rows[i].param == "pole_y_re");
        CHECK(result.rows[i + 1].param == "pole_y_im");
        CHECK(result.rows[i].step == 100.0);  // k column doubles as lambda
        CHECK(result.rows[i].n_q == static_cast<int>(i) / 2 + 1);
    }

    c.schemes = {"balakrishnan"};
    CHECK_THROWS_AS(fraccal::run_pole_map(c), std::invalid_argument);
}

TEST_CASE("run_experiment dispatches on kind", "[harness][runner]") {
    ExperimentConfig c;
    c.kind = ExperimentKind::ScalarPower;
    c.schemes = {"DE3"};
    c.n_q_min = 10;
    c.n_q_max = 20;
    c.n_q_stride = 10;
    CHECK(fraccal::run_experiment(c).rows.size() == 3);
    c.kind = ExperimentKind::PoleMap;
    c.lambdas = {100.0};
    CHECK_FALSE(fraccal::run_experiment(c).rows.empty());
}
