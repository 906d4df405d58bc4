#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace crn {

/// Concave, strictly increasing utility of a time-average rate, with
/// value(0) = 0. Two families are supported: theta * ln(1 + x) and theta * x.
struct UtilitySpec {
    enum class Family { log, linear };
    Family family = Family::linear;
    double theta = 1.0;

    static UtilitySpec make_log(double theta) { return {Family::log, theta}; }
    static UtilitySpec make_linear(double theta) { return {Family::linear, theta}; }

    double value(double x) const {
        return family == Family::log ? theta * std::log1p(x) : theta * x;
    }
    /// Inverse on [0, inf).
    double inverse(double y) const {
        return family == Family::log ? std::expm1(y / theta) : y / theta;
    }
    bool is_linear() const { return family == Family::linear; }

    void check() const {
        if (!(theta > 0.0)) throw std::invalid_argument("utility weight must be positive");
    }

    friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Fallback path for controller objectives outside the closed-form families.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-9,
                               int max_iters = 200) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iters && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double mid = 0.5 * (a + b);
    // Endpoints matter for linear objectives; keep whichever is best.
    double best = mid, fbest = f(mid);
    for (double x : {lo, hi}) {
        double fx = f(x);
        if (fx < fbest) {
            fbest = fx;
            best = x;
        }
    }
    return best;
}

}  // namespace crn
