#pragma once

// Fourier-side checks: positive-part mass of bump transforms, the spectral inequality at
// xi0 for normalized measures, and the residual of the two-atom candidate equation.

#include <string>
#include <variant>
#include <vector>

#include "autocorr/correlate.hpp"

namespace autocorr {

// exp(-1/(1-x^2)) normalized on [-1, 1].
struct StandardBump {
    double scale = 1.0;
};

// (1 + cos(pi x))/2 on [-1, 1].
struct CosineBump {
    double scale = 1.0;
};

// (1 - x^2)^k normalized on [-1, 1], k >= 2.
struct BetaPowerBump {
    int k = 2;
    double scale = 1.0;
};

// Every variant is taken through phi_s(x) = phi(x/s)/s with 0 < s <= 1.
using BumpFunction = std::variant<StandardBump, CosineBump, BetaPowerBump>;

void validate(const BumpFunction& phi);
std::string bump_label(const BumpFunction& phi);
double bump_value(const BumpFunction& phi, double x);
// Real, even transform.
double bump_transform(const BumpFunction& phi, double xi);

struct PositivePartReport {
    std::string bump;
    double positive = 0.0;      // \int (phi^)_+
    double negative = 0.0;      // \int (phi^)_-
    double phi0 = 0.0;          // phi(0)
    double cutoff = 0.0;        // Xi
    double error = 0.0;         // quadrature + tail bound on each part
    std::size_t sign_changes = 0;
    double bound = 0.0;          // 1/(2(1+theta0))
    double refined_bound = 0.0;  // bound + theta0 phi(0)/(1+theta0)
    double identity_residual = 0.0;  // |positive - negative - phi(0)|
};

PositivePartReport positive_part_mass(const BumpFunction& phi, double tol = 1e-9);

struct NegativePartReport {
    std::string bump;
    double lhs = 0.0;           // 1 - 2 phi(0)
    double time_side = 0.0;     // \int_{-1}^{1} (phi(t) - phi(0)) dt
    double intermediate = 0.0;  // \int (phi^)_- (2 - 2 sinc(2 xi))
    double bound = 0.0;         // 2 (1 + theta0) |(phi^)_-|_1
    double identity_residual = 0.0;  // |lhs - time_side|
    double slack = 0.0;              // bound - lhs
    double error = 0.0;
};

NegativePartReport negative_part_bound_check(const BumpFunction& phi, double tol = 1e-9);

struct SpectrumReport {
    double normalization_inf = 0.0;  // inf over windows W in (0,1) of mu*mu(W)/|W|
    double normalization_window_lo = 0.0;
    double min_nu_mass = 0.0;        // min over the dyadic lattice of nu(I)
    double min_nu_window_lo = 0.0;
    double min_nu_window_hi = 0.0;
    double nu_hat_xi0 = 0.0;
    double nu_hat_0 = 0.0;
    double total_variation = 0.0;
    double theta0 = 0.0;
    bool lower_ok = false;  // nu^(xi0) >= theta0 - tol
    bool upper_ok = false;  // nu^(xi0) <= nu^(0) + tol
    bool nonnegative_ok = false;
};

// inf over the 1024 windows of width 1/1024 in (0,1) of mu*mu(W)/|W|, with the end windows
// pulled in by 1e-12 so atoms of mu*mu at 0 and 1 are excluded. window_lo receives the
// worst window's left end.
double window_ratio_inf(const MixedMeasure& mu, double* window_lo = nullptr);

// mu scaled so that window_ratio_inf equals 1/2.
MixedMeasure normalize_for_spectrum(const MixedMeasure& mu);

// nu = mu*mu - (1/2) Lebesgue on [-1, 1]; nu^(xi) = |mu^(xi)|^2 - sin(2 pi xi)/(2 pi xi).
// Throws PreconditionError naming the window when the normalization is off by more than 1e-6.
SpectrumReport nu_spectrum_check(const MixedMeasure& mu, double tol = 1e-4);

double nu_transform(const MixedMeasure& mu, double xi);

// sup over a t-lattice of |1/2 1_{[-1,1]} - (2a f0(t - alpha0) + 2a f0(t + alpha0) + f0*f0(t))|
// with f0 = (1/(4a)) 1_{[-1+alpha0, 1-alpha0]}.
double case2bb_residual(double a);

struct Case2bbScan {
    std::vector<double> a;
    std::vector<double> residual;
    double min_residual = 0.0;
    double argmin_a = 0.0;
};

// Log-spaced scan of case2bb_residual over [lo, hi].
Case2bbScan case2bb_scan(double lo = 0.01, double hi = 100.0, std::size_t points = 81);

}  // namespace autocorr
