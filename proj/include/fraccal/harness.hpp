#pragma once

// Experiment harness: named scheme presets, spectral sample generators,
// the experiment runners behind the CLI, and deterministic CSV output.
//
// Every experiment produces rows (scheme, n_q, k, param, value); the
// writer formats values with 17 significant digits, so byte-identical
// files certify bit-identical numerics across thread counts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraccal/models.hpp"
#include "fraccal/quadrature.hpp"

namespace fraccal {

// Named contour/scheme presets used throughout the experiments:
//   DE1  - double-exponential on the sigma = 1/2 hyperbola, theta = 4
//   DE2  - double-exponential on the sigma = 1   hyperbola, theta = 4
//   DE3  - double-exponential on the sigma = 1   hyperbola, theta = 1
//   sinc - single-exponential trapezoid on the sigma = 1, theta = 1 hyperbola
//   balakrishnan - real-axis rule for fractional powers
// All contours use kappa = 3.
inline SchemeSpec make_scheme(const std::string& name) {
    SchemeSpec s;
    s.name = name;
    if (name == "DE1") {
        s.family = SchemeFamily::DoubleExponential;
        s.contour = ContourParams{SigmaKind::Half, 4.0, 3.0};
    } else if (name == "DE2") {
        s.family = SchemeFamily::DoubleExponential;
        s.contour = ContourParams{SigmaKind::One, 4.0, 3.0};
    } else if (name == "DE3") {
        s.family = SchemeFamily::DoubleExponential;
        s.contour = ContourParams{SigmaKind::One, 1.0, 3.0};
    } else if (name == "sinc") {
        s.family = SchemeFamily::Sinc;
        s.contour = ContourParams{SigmaKind::One, 1.0, 3.0};
    } else if (name == "balakrishnan") {
        s.family = SchemeFamily::Balakrishnan;
    } else {
        throw std::invalid_argument("unknown scheme '" + name +
                                    "' (expected DE1, DE2, DE3, sinc, or "
                                    "balakrishnan)");
    }
    return s;
}

// Spectral sample set covering both the preasymptotic and the asymptotic
// lambda regime of every step size in the study: for each N the two
// magnitudes where the step-size law k(N) switches behaviour.
inline std::vector<double> lambda_samples(double beta, int n_q_max) {
    std::vector<double> out;
    for (int n = 2; n <= n_q_max; ++n) {
        const double k = de_default_step(n);
        const double e_deep = beta / k;
        const double e_near = 2.0 * std::sqrt(beta / k);
        if (e_near < 690.0) out.push_back(5.0 + std::exp(e_near));
        if (e_deep < 690.0) out.push_back(5.0 + std::exp(e_deep));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Experiment configuration.

enum class ExperimentKind {
    ScalarPower,   // max-over-lambda error of Q(lambda) vs lambda^{-beta}
    ScalarML,      // same for the Mittag-Leffler evolution symbol
    LambdaSweep,   // relative error vs n_q at a list of fixed lambdas
    Elliptic,      // L^{-beta} f on the unit square, L2 error vs reference
    Parabolic,     // time-fractional evolution, L2 error vs reference
    PoleMap        // pole preimages of the contours at sample lambdas
};

inline std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ScalarPower: return "scalar-power";
        case ExperimentKind::ScalarML: return "scalar-ml";
        case ExperimentKind::LambdaSweep: return "lambda-sweep";
        case ExperimentKind::Elliptic: return "elliptic2d";
        case ExperimentKind::Parabolic: return "parabolic2d";
        case ExperimentKind::PoleMap: return "pole-map";
    }
    return "unknown";
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ScalarPower;
    std::string name = "experiment";
    std::vector<std::string> schemes{"DE1", "DE2", "DE3", "sinc"};

    int n_q_min = 10;
    int n_q_max = 120;
    int n_q_stride = 10;

    double beta = 0.6;
    double alpha = 1.0;
    double mu = 1.0;
    double t = 1.0;
    double omega = 1.0;
    int modes = 40;
    bool with_forcing = true;
    TimeProfile profile = TimeProfile::sine();

    std::vector<double> lambdas;  // LambdaSweep / PoleMap; defaults below

    // Contour overrides applied to every contour-based scheme.
    std::optional<double> theta_override;
    std::optional<double> kappa_override;
    std::optional<double> sigma_override;  // 0.5 or 1

    std::string output;  // CSV path; empty = "<name>.csv"
    bool emit_plot = false;

    std::vector<int> n_q_values() const {
        std::vector<int> out;
        for (int n = n_q_min; n <= n_q_max; n += n_q_stride) out.push_back(n);
        return out;
    }

    std::vector<double> lambda_list() const {
        if (!lambdas.empty()) return lambdas;
        if (kind == ExperimentKind::PoleMap) return {1e2, 1e4, 1e6, 1e8};
        return {1e3, 1e5, 1e7, 1e9};
    }

    ScalarSymbol symbol() const {
        switch (kind) {
            case ExperimentKind::ScalarML:
            case ExperimentKind::Parabolic:
                return ScalarSymbol::mittag_leffler_evolution(
                    MittagLefflerParams{alpha, mu}, t, beta);
            default:
                return ScalarSymbol::power(beta);
        }
    }

    SchemeSpec scheme(const std::string& scheme_name) const {
        SchemeSpec s = make_scheme(scheme_name);
        if (s.family != SchemeFamily::Balakrishnan) {
            if (sigma_override) {
                if (*sigma_override == 0.5)
                    s.contour.sigma = SigmaKind::Half;
                else if (*sigma_override == 1.0)
                    s.contour.sigma = SigmaKind::One;
                else
                    throw std::invalid_argument("sigma override must be 0.5 or 1");
            }
            if (theta_override) s.contour.theta = *theta_override;
            if (kappa_override) s.contour.kappa = *kappa_override;
        }
        return s;
    }

    void validate() const {
        if (schemes.empty())
            throw std::invalid_argument("experiment: scheme list is empty");
        if (n_q_min < 2 || n_q_max < n_q_min || n_q_stride < 1)
            throw std::invalid_argument("experiment: bad n_q range");
        const ScalarSymbol sym = symbol();
        sym.validate();
        for (const std::string& sn : schemes) {
            const SchemeSpec s = scheme(sn);  // validates name and contour
            if (s.family == SchemeFamily::Balakrishnan) {
                if (sym.kind != SymbolKind::Power)
                    throw std::invalid_argument(
                        "experiment: the Balakrishnan scheme represents "
                        "fractional powers only");
                if (!(beta < 1.0))
                    throw std::invalid_argument(
                        "experiment: the Balakrishnan scheme needs beta < 1");
            }
        }
        if (kind == ExperimentKind::Elliptic || kind == ExperimentKind::Parabolic) {
            if (modes < 1) throw std::invalid_argument("experiment: modes < 1");
        }
    }

    std::string output_path() const {
        return output.empty() ? name + ".csv" : output;
    }
};

// ---------------------------------------------------------------------------
// Result rows and CSV output.

struct ResultRow {
    std::string scheme;
    int n_q = 0;
    double step = 0.0;
    std::string param;
    double value = 0.0;
    bool diverged = false;
};

struct ExperimentResult {
    std::string name;
    std::vector<ResultRow> rows;
};

namespace harness_detail {

inline std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

inline std::string format_compact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace harness_detail

inline std::string render_csv(const ExperimentResult& result) {
    std::string out = "scheme,n_q,k,param,value\n";
    for (const ResultRow& r : result.rows) {
        out += r.scheme;
        out += ',';
        out += std::to_string(r.n_q);
        out += ',';
        out += harness_detail::format_sci(r.step);
        out += ',';
        out += r.param;
        out += ',';
        out += r.diverged ? std::string("diverged")
                          : harness_detail::format_sci(r.value);
        out += '\n';
    }
    return out;
}

// Companion plot script: semilog-y error curves per scheme, reading the
// CSV through a relative path so the pair can be moved together.
inline std::string render_plot_script(const std::string& csv_filename,
                                      const std::string& png_filename) {
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "\"\"\"Semilog-y error plot for " + csv_filename + ".\"\"\"\n";
    s += "import collections\n";
    s += "import csv\n\n";
    s += "import matplotlib\n";
    s += "matplotlib.use(\"Agg\")\n";
    s += "import matplotlib.pyplot as plt\n\n";
    s += "series = collections.defaultdict(list)\n";
    s += "with open(\"" + csv_filename + "\", newline=\"\") as fh:\n";
    s += "    for row in csv.DictReader(fh):\n";
    s += "        if int(row[\"n_q\"]) < 1:\n";
    s += "            continue  # metadata row\n";
    s += "        try:\n";
    s += "            value = float(row[\"value\"])\n";
    s += "        except ValueError:\n";
    s += "            continue  # diverged marker\n";
    s += "        series[(row[\"scheme\"], row[\"param\"])].append(\n";
    s += "            (int(row[\"n_q\"]), value))\n\n";
    s += "fig, ax = plt.subplots(figsize=(6.0, 4.5))\n";
    s += "for (scheme, param), pts in sorted(series.items()):\n";
    s += "    if len(pts) < 2:\n";
    s += "        continue\n";
    s += "    pts.sort()\n";
    s += "    label = scheme if len({k[1] for k in series}) == 1 else (\n";
    s += "        scheme + \" \" + param)\n";
    s += "    ax.semilogy([p[0] for p in pts], [p[1] for p in pts],\n";
    s += "                marker=\"o\", markersize=3, label=label)\n";
    s += "ax.set_xlabel(\"number of quadrature nodes n_q\")\n";
    s += "ax.set_ylabel(\"error\")\n";
    s += "ax.grid(True, which=\"both\", alpha=0.3)\n";
    s += "ax.legend(fontsize=8)\n";
    s += "fig.tight_layout()\n";
    s += "fig.savefig(\"" + png_filename + "\", dpi=150)\n";
    return s;
}

// Write the CSV (and optionally the plot script) for an experiment.  The
// byte stream is fully determined by the rows, independent of locale,
// platform line endings, and thread count.
inline void emit_outputs(const ExperimentResult& result, const std::string& csv_path,
                         bool emit_plot) {
    if (result.rows.empty())
        throw std::invalid_argument("emit_outputs: no rows to write");
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("emit_outputs: cannot open '" + csv_path + "'");
        out << render_csv(result);
    }
    if (emit_plot) {
        std::string stem = csv_path;
        const std::size_t dot = stem.rfind(".csv");
        if (dot != std::string::npos && dot == stem.size() - 4)
            stem = stem.substr(0, dot);
        std::string csv_filename = csv_path;
        const std::size_t slash = csv_filename.find_last_of('/');
        if (slash != std::string::npos) csv_filename = csv_filename.substr(slash + 1);
        std::string stem_filename = stem;
        const std::size_t slash2 = stem_filename.find_last_of('/');
        if (slash2 != std::string::npos)
            stem_filename = stem_filename.substr(slash2 + 1);
        std::ofstream out(stem + "_plot.py", std::ios::binary);
        if (!out)
            throw std::runtime_error("emit_outputs: cannot open plot script");
        out << render_plot_script(csv_filename, stem_filename + ".png");
    }
}

// ---------------------------------------------------------------------------
// Rate fitting: least squares on ln(err) against a caller-chosen abscissa
// (1/sqrt(k), sqrt(N), ...), restricted to an error window so saturated
// and preasymptotic points do not pollute the fit.

struct RateFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double residual_rms = std::numeric_limits<double>::quiet_NaN();
    int count = 0;
};

inline RateFit rate_fit(const std::vector<double>& x, const std::vector<double>& err,
                        double err_lo, double err_hi) {
    if (x.size() != err.size())
        throw std::invalid_argument("rate_fit: length mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(err[i]) || !(err[i] > 0.0)) continue;
        if (err[i] < err_lo || err[i] > err_hi) continue;
        xs.push_back(x[i]);
        ys.push_back(std::log(err[i]));
    }
    RateFit fit;
    fit.count = static_cast<int>(xs.size());
    if (fit.count < 2) return fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = static_cast<double>(xs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += d * d;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

inline double pearson_correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson_correlation: bad input");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double cxy = 0.0, cxx = 0.0, cyy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cxy += (x[i] - mx) * (y[i] - my);
        cxx += (x[i] - mx) * (x[i] - mx);
        cyy += (y[i] - my) * (y[i] - my);
    }
    if (cxx == 0.0 || cyy == 0.0) return 0.0;
    return cxy / std::sqrt(cxx * cyy);
}

// Predicted root-exponential decay coefficient: error ~ e^{-c / sqrt(k)}
// with c = sqrt(2 p s), where p is the contour's strip constant
// (pi^2 for sigma = 1/2; 2 pi atan(theta) for sigma = 1) and s the decay
// strength of the symbol seen through the data (2 beta for the scalar
// power; 2 beta + 1/2 once half an order of data regularity enters).
inline double predicted_decay_constant(const ContourParams& cp, double s_exponent) {
    const double p = cp.sigma == SigmaKind::Half
                         ? pi * pi
                         : 2.0 * pi * std::atan(cp.theta);
    return std::sqrt(2.0 * p * s_exponent);
}

// ---------------------------------------------------------------------------
// Experiment runners.

// Scalar experiments: for each scheme and node count, the maximum over
// the lambda sample set of |Q(lambda) - g(lambda)|.
inline ExperimentResult run_scalar_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.name = config.name;
    const ScalarSymbol sym = config.symbol();
    const std::vector<double> lambdas = lambda_samples(config.beta, config.n_q_max);
    std::vector<double> refs(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        refs[i] = symbol_reference(sym, lambdas[i]).value;

    for (const std::string& scheme_name : config.schemes) {
        const SchemeSpec spec = config.scheme(scheme_name);
        for (const int n_q : config.n_q_values()) {
            const PreparedQuadrature prep = prepare_quadrature(spec, sym, n_q);
            ResultRow row;
            row.scheme = scheme_name;
            row.n_q = n_q;
            row.step = prep.node_set.step;
            row.param = "max_abs_error";
            double worst = 0.0;
            bool diverged = prep.prep_status == EvalStatus::diverged;
            if (!diverged) {
                for (std::size_t i = 0; i < lambdas.size(); ++i) {
                    const Evaluated<double> q = scalar_apply(prep, lambdas[i]);
                    if (q.status == EvalStatus::diverged) {
                        diverged = true;
                        break;
                    }
                    worst = std::max(worst, std::abs(q.value - refs[i]));
                }
            }
            row.diverged = diverged;
            row.value = worst;
            result.rows.push_back(row);
        }
        // Metadata: predicted decay constant for contour schemes.
        if (spec.family == SchemeFamily::DoubleExponential) {
            ResultRow meta;
            meta.scheme = scheme_name;
            meta.param = "predicted_decay_per_sqrt_k";
            meta.value = predicted_decay_constant(spec.contour, 2.0 * config.beta);
            result.rows.push_back(meta);
        }
    }
    return result;
}

// Relative error against g(lambda) at fixed spectral points, for the
// lambda-dependence study.
inline ExperimentResult run_lambda_sweep(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.name = config.name;
    const ScalarSymbol sym = config.symbol();
    const std::vector<double> lambdas = config.lambda_list();

    for (const std::string& scheme_name : config.schemes) {
        const SchemeSpec spec = config.scheme(scheme_name);
        for (const double lam : lambdas) {
            const std::string param =
                "lam=" + harness_detail::format_compact(lam);
            for (const int n_q : config.n_q_values()) {
                const PreparedQuadrature prep = prepare_quadrature(spec, sym, n_q);
                const ScalarError err = scalar_error(prep, lam);
                ResultRow row;
                row.scheme = scheme_name;
                row.n_q = n_q;
                row.step = prep.node_set.step;
                row.param = param;
                row.diverged = !is_usable(err.status);
                row.value = row.diverged ? 0.0 : err.relative;
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

// Elliptic / parabolic model problems: relative L2 coefficient error
// against the reference solution; the reference protocol is recorded as
// a metadata row.
inline ExperimentResult run_pde_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.name = config.name;
    const UnitSquareLaplacian lap(config.modes);
    const SpectralResolvent resolvent(lap.op());

    std::vector<double> data;
    ReferenceSolution ref;
    ParabolicProblem prob;
    if (config.kind == ExperimentKind::Elliptic) {
        data = constant_one_coefficients(lap);
        ref = reference_elliptic(lap, config.beta, data, config.n_q_max);
    } else {
        prob.alpha = config.alpha;
        prob.beta = config.beta;
        prob.t = config.t;
        prob.bump = GaussianBump{config.omega};
        prob.with_forcing = config.with_forcing;
        prob.profile = config.profile;
        data = bump_coefficients(lap, prob.bump);
        ref = reference_parabolic(lap, prob, config.n_q_max);
    }
    const double ref_norm = h_norm(lap.op(), ref.coeffs, 0.0);

    for (const std::string& scheme_name : config.schemes) {
        const SchemeSpec spec = config.scheme(scheme_name);
        for (const int n_q : config.n_q_values()) {
            Evaluated<std::vector<double>> sol;
            if (config.kind == ExperimentKind::Elliptic) {
                sol = elliptic_solve(lap, spec, config.beta, n_q, data);
            } else {
                sol = apply_function(resolvent, parabolic_prepared(prob, spec, n_q),
                                     data);
            }
            ResultRow row;
            row.scheme = scheme_name;
            row.n_q = n_q;
            if (spec.family == SchemeFamily::DoubleExponential)
                row.step = de_default_step(n_q);
            else if (spec.family == SchemeFamily::Sinc)
                row.step = sinc_default_step(config.beta, n_q);
            else
                row.step = balakrishnan_params(config.beta, n_q).step;
            row.param = "l2_error";
            if (!is_usable(sol.status)) {
                row.diverged = true;
            } else {
                std::vector<double> diff(sol.value.size());
                for (std::size_t i = 0; i < diff.size(); ++i)
                    diff[i] = sol.value[i] - ref.coeffs[i];
                row.value = h_norm(lap.op(), diff, 0.0) / ref_norm;
            }
            result.rows.push_back(row);
        }
        if (spec.family == SchemeFamily::DoubleExponential) {
            ResultRow meta;
            meta.scheme = scheme_name;
            meta.param = "predicted_decay_per_sqrt_k";
            meta.value =
                predicted_decay_constant(spec.contour, 2.0 * config.beta + 0.5);
            result.rows.push_back(meta);
        }
    }
    // Reference protocol metadata.
    ResultRow meta;
    meta.scheme = ref.scheme_name;
    meta.n_q = ref.n_q;
    meta.step = ref.step;
    meta.param = "reference_scheme";
    meta.value = 0.0;
    result.rows.push_back(meta);
    return result;
}

// Pole preimages of each contour at the sample spectral points: one row
// pair (real / imaginary part) per preimage, n_q doubling as the pole
// index and the k column carrying lambda.
inline ExperimentResult run_pole_map(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.name = config.name;
    for (const std::string& scheme_name : config.schemes) {
        const SchemeSpec spec = config.scheme(scheme_name);
        if (spec.family == SchemeFamily::Balakrishnan)
            throw std::invalid_argument(
                "pole-map: only contour schemes have pole preimages");
        for (const double lam : config.lambda_list()) {
            const std::vector<PolePreimage> poles =
                locate_pole_preimages(spec.contour, lam, 1.4);
            int index = 0;
            for (const PolePreimage& p : poles) {
                ResultRow re_row;
                re_row.scheme = scheme_name;
                re_row.n_q = ++index;
                re_row.step = lam;
                re_row.param = "pole_y_re";
                re_row.value = p.y.real();
                result.rows.push_back(re_row);
                ResultRow im_row = re_row;
                im_row.param = "pole_y_im";
                im_row.value = p.y.imag();
                result.rows.push_back(im_row);
            }
        }
    }
    return result;
}

inline ExperimentResult run_experiment(const ExperimentConfig& config) {
    switch (config.kind) {
        case ExperimentKind::ScalarPower:
        case ExperimentKind::ScalarML:
            return run_scalar_experiment(config);
        case ExperimentKind::LambdaSweep:
            return run_lambda_sweep(config);
        case ExperimentKind::Elliptic:
        case ExperimentKind::Parabolic:
            return run_pde_experiment(config);
        case ExperimentKind::PoleMap:
            return run_pole_map(config);
    }
    throw std::logic_error("run_experiment: unhandled kind");
}

// ---------------------------------------------------------------------------
// Presets: pinned configurations for the standard comparison runs.

inline std::vector<std::string> preset_names() {
    return {"scalar-power-0p6",  "scalar-power-1",    "scalar-ml-sub",
            "scalar-ml-classic", "lambda-sweep-0p6",  "elliptic2d-0p4",
            "parabolic2d-rough", "parabolic2d-smooth", "pole-map"};
}

inline ExperimentConfig make_preset(const std::string& preset) {
    ExperimentConfig c;
    c.name = preset;
    if (preset == "scalar-power-0p6") {
        c.kind = ExperimentKind::ScalarPower;
        c.beta = 0.6;
        c.schemes = {"DE1", "DE2", "DE3", "sinc", "balakrishnan"};
        c.n_q_min = 10;
        c.n_q_max = 240;
        c.n_q_stride = 10;
    } else if (preset == "scalar-power-1") {
        c.kind = ExperimentKind::ScalarPower;
        c.beta = 1.0;
        c.schemes = {"DE1", "DE2", "DE3", "sinc"};
        c.n_q_min = 10;
        c.n_q_max = 240;
        c.n_q_stride = 10;
    } else if (preset == "scalar-ml-sub") {
        c.kind = ExperimentKind::ScalarML;
        c.alpha = 0.25;
        c.mu = 1.0;
        c.beta = 0.4;
        c.t = 1.0;
        c.schemes = {"DE1", "DE2", "DE3", "sinc"};
        c.n_q_min = 10;
        c.n_q_max = 240;
        c.n_q_stride = 10;
    } else if (preset == "scalar-ml-classic") {
        c.kind = ExperimentKind::ScalarML;
        c.alpha = 1.0;
        c.mu = 1.0;
        c.beta = 1.0;
        c.t = 1.0;
        c.schemes = {"DE1", "DE2", "DE3", "sinc"};
        c.n_q_min = 10;
        c.n_q_max = 240;
        c.n_q_stride = 10;
    } else if (preset == "lambda-sweep-0p6") {
        c.kind = ExperimentKind::LambdaSweep;
        c.beta = 0.6;
        c.schemes = {"DE1", "DE2", "DE3", "sinc"};
        c.n_q_min = 10;
        c.n_q_max = 240;
        c.n_q_stride = 10;
    } else if (preset == "elliptic2d-0p4") {
        c.kind = ExperimentKind::Elliptic;
        c.beta = 0.4;
        c.modes = 40;
        c.schemes = {"DE1", "DE2", "DE3", "sinc", "balakrishnan"};
        c.n_q_min = 10;
        c.n_q_max = 120;
        c.n_q_stride = 10;
    } else if (preset == "parabolic2d-rough" || preset == "parabolic2d-smooth") {
        c.kind = ExperimentKind::Parabolic;
        c.alpha = 0.70710678118654752440;
        c.mu = 1.0;
        c.beta = 0.7;
        c.t = 0.1;
        c.omega = preset == "parabolic2d-rough" ? 1.0 : 0.01;
        c.modes = 40;
        c.with_forcing = true;
        c.profile = TimeProfile::sine();
        c.schemes = {"DE1", "DE2", "DE3", "sinc"};
        c.n_q_min = 10;
        c.n_q_max = 120;
        c.n_q_stride = 10;
    } else if (preset == "pole-map") {
        c.kind = ExperimentKind::PoleMap;
        c.schemes = {"DE1", "DE2", "DE3"};
    } else {
        throw std::invalid_argument("unknown preset '" + preset + "'");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Minimal key = value configuration files (comments with '#' or ';').

inline void apply_config_entry(ExperimentConfig& config, const std::string& key,
                               const std::string& value) {
    const auto as_double = [&]() { return std::stod(value); };
    const auto as_int = [&]() { return std::stoi(value); };
    if (key == "schemes") {
        config.schemes.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::size_t b = item.find_first_not_of(" \t");
            const std::size_t e = item.find_last_not_of(" \t");
            if (b != std::string::npos)
                config.schemes.push_back(item.substr(b, e - b + 1));
        }
    } else if (key == "nq-max") {
        config.n_q_max = as_int();
    } else if (key == "nq-min") {
        config.n_q_min = as_int();
    } else if (key == "nq-stride") {
        config.n_q_stride = as_int();
    } else if (key == "beta") {
        config.beta = as_double();
    } else if (key == "alpha") {
        config.alpha = as_double();
    } else if (key == "mu") {
        config.mu = as_double();
    } else if (key == "t") {
        config.t = as_double();
    } else if (key == "omega") {
        config.omega = as_double();
    } else if (key == "modes") {
        config.modes = as_int();
    } else if (key == "theta") {
        config.theta_override = as_double();
    } else if (key == "kappa") {
        config.kappa_override = as_double();
    } else if (key == "sigma") {
        config.sigma_override = as_double();
    } else if (key == "output") {
        config.output = value;
    } else if (key == "emit-plot") {
        config.emit_plot = value == "1" || value == "true" || value == "yes";
    } else if (key == "name") {
        config.name = value;
    } else if (key == "lambdas") {
        config.lambdas.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) config.lambdas.push_back(std::stod(item));
    } else if (key == "forcing") {
        config.with_forcing = value == "1" || value == "true" || value == "yes";
    } else if (key == "profile") {
        if (value == "constant") config.profile = TimeProfile::constant();
        else if (value == "sine") config.profile = TimeProfile::sine();
        else if (value == "cosine") config.profile = TimeProfile::cosine();
        else throw std::invalid_argument("config: unknown profile '" + value + "'");
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

inline void load_config_file(ExperimentConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const std::size_t e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": empty key");
        apply_config_entry(config, key, value);
    }
}

}  // namespace fraccal
