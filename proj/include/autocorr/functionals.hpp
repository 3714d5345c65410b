#pragma once

// The four ratios bounded by the autocorrelation inequalities:
//
//   mean   \int_{-1/2}^{1/2} f*f           / (|f|_1 |f|_2)
//   gauss  (a/pi)^{1/2} \int f*f e^{-at^2} / (|f|_1 |f|_2)
//   min12  min_{[-1/2,1/2]} f*f            / (|f|_1 |f|_2)
//   min01  min_{[0,1]} f*f                 / |f|_1^2
//
// Grid functions are evaluated exactly (their correlation is piecewise linear); analytic
// families use closed forms, and the singular example uses per-t quadrature.

#include <limits>
#include <string>

#include "autocorr/correlate.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr {

enum class Functional { mean, gauss, min12, min01 };

const char* functional_label(Functional f);
// Throws PreconditionError on an unknown label.
Functional parse_functional(const std::string& label);

struct RatioResult {
    double value = 0.0;
    double numerator = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    std::string functional;
    std::string method;
    double error_estimate = 0.0;
    double fourier_numerator = std::numeric_limits<double>::quiet_NaN();
    double fourier_error = std::numeric_limits<double>::quiet_NaN();
    double argmin = std::numeric_limits<double>::quiet_NaN();
};

struct EvalOptions {
    double a = 2.0 * 3.14159265358979323846;  // Gaussian weight parameter for `gauss`
    bool fourier_side = false;                 // also evaluate the Fourier-side numerator
    double fourier_tol = 1e-9;
    bool check_ceiling = true;                 // throw InvariantViolation above the proven bound
};

// Proven upper bound of each functional (g_2(a) = (8a/(27 pi))^{1/4} for gauss).
double ceiling(Functional f, double a = 2.0 * 3.14159265358979323846);

RatioResult q_mean(const GridFunction& f, const EvalOptions& opt = {});
RatioResult q_gauss(const GridFunction& f, const EvalOptions& opt = {});
RatioResult q_min_12(const GridFunction& f, const EvalOptions& opt = {});
RatioResult q_min_01(const GridFunction& f, const EvalOptions& opt = {});

RatioResult evaluate(Functional which, const GridFunction& f, const EvalOptions& opt = {});

// Closed forms for Gaussian and Indicator, exact grids for PiecewiseConstant, and singular
// quadrature for the BS example (min01 only; the other functionals need |f|_2 < inf and
// throw DomainError).
RatioResult evaluate(Functional which, const AnalyticFamily& family, const EvalOptions& opt = {});

// \int w(t) c(t) dt for the piecewise-linear correlation c, exact for both weights.
double weighted_correlation_mean(const Correlation& c, const Weight& w);

// Throws InvariantViolation when value exceeds ceiling + error_estimate + slack.
void check_ceiling(const RatioResult& r, double ceiling_value, double slack = 1e-9);

}  // namespace autocorr
