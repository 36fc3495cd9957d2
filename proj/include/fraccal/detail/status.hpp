#pragma once

#include <string_view>

namespace fraccal {

// Outcome classification attached to numerical results.  `ok` means the
// value is trustworthy to the advertised accuracy; everything else tells
// the caller *how* the value degraded so downstream code can decide
// whether to keep, flag, or discard it.
enum class EvalStatus {
    ok,
    // Result carries fewer correct digits than requested, but the leading
    // digits are still meaningful (e.g. heavy cancellation).
    loss_of_accuracy,
    // Inputs lie outside the domain for which the algorithm has any
    // accuracy statement; a best-effort value is still returned.
    domain_warning,
    // The computation is known (a priori or from a runtime monitor) to
    // produce garbage: partial sums grew without bound.
    diverged,
    // An intermediate magnitude left the representable range.
    overflow,
    // The parameter combination is rejected before any arithmetic runs.
    excluded_configuration,
};

constexpr std::string_view to_string(EvalStatus s) {
    switch (s) {
        case EvalStatus::ok: return "ok";
        case EvalStatus::loss_of_accuracy: return "loss_of_accuracy";
        case EvalStatus::domain_warning: return "domain_warning";
        case EvalStatus::diverged: return "diverged";
        case EvalStatus::overflow: return "overflow";
        case EvalStatus::excluded_configuration: return "excluded_configuration";
    }
    return "unknown";
}

constexpr bool is_usable(EvalStatus s) {
    return s == EvalStatus::ok || s == EvalStatus::loss_of_accuracy;
}

// Value + status + (when available) an a-posteriori error estimate.
template <class T>
struct Evaluated {
    T value{};
    EvalStatus status = EvalStatus::ok;
    double error_estimate = 0.0;

    bool usable() const { return is_usable(status); }
};

}  // namespace fraccal
