#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>

namespace autocorr {

inline constexpr double kPi = std::numbers::pi;

// Normalized sinc: sin(pi x) / (pi x).
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        const double px = kPi * x;
        return 1.0 - px * px / 6.0;
    }
    return std::sin(kPi * x) / (kPi * x);
}

// Pairwise (cascade) summation. Result depends only on the input order,
// never on how a caller partitioned the work.
double pairwise_sum(std::span<const double> values);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: bisects the worst panel until the
// summed error estimate drops below abs_tol.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, std::size_t max_panels = 4000);

// Double-exponential (tanh-sinh) rule on [a, b]; tolerates integrable endpoint
// singularities. rel_tol is relative to the L1 norm of the integrand.
QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-12);

// Bracketed root of f on [lo, hi] to full double precision; f(lo), f(hi) must differ in sign.
double find_root(const std::function<double(double)>& f, double lo, double hi);

// Golden-section minimization of a unimodal function on [lo, hi].
struct MinimizeResult {
    double argmin = 0.0;
    double value = 0.0;
    int evaluations = 0;
};
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol);

// Fixed Gauss-Kronrod 15-point panel nodes on [-1, 1]: 15 abscissae (ascending),
// Kronrod weights, and the embedded 7-point Gauss weights (zero at non-Gauss nodes).
struct PanelRule {
    std::array<double, 15> nodes;
    std::array<double, 15> kronrod;
    std::array<double, 15> gauss;
};
const PanelRule& gk15_panel();

}  // namespace autocorr
