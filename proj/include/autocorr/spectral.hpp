#pragma once

// Fourier transforms with the convention f^(xi) = \int f(x) e^{-2 pi i x xi} dx, the two
// probability weights used by the mean functionals, and certified moments \int |w^|^p.

#include <complex>
#include <span>
#include <string>
#include <variant>

#include "autocorr/funcspace.hpp"

namespace autocorr {

// w = 1_{[-1/2,1/2]}, w^(xi) = sinc(xi).
struct IntervalWeight {};

// w = (a/pi)^{1/2} e^{-a t^2}, w^(xi) = e^{-pi^2 xi^2 / a}.
struct GaussianWeight {
    double a = 2.0 * 3.14159265358979323846;
};

using Weight = std::variant<IntervalWeight, GaussianWeight>;

void validate(const Weight& w);
std::string weight_label(const Weight& w);
double weight_density(const Weight& w, double t);
double weight_transform(const Weight& w, double xi);

// Exact transform of the piecewise-constant function:
// h sinc(h xi) sum_j v_j e^{-2 pi i c_j xi}, c_j the cell centers.
std::complex<double> fourier(const GridFunction& f, double xi);

// Batched form of the above through the SIMD phase kernel; out.size() == xi.size().
void fourier(const GridFunction& f, std::span<const double> xi, std::span<std::complex<double>> out);

// sum_j m_j e^{-2 pi i x_j xi} plus the density transform.
std::complex<double> fourier_measure(const MixedMeasure& mu, double xi);

struct MomentResult {
    double value = 0.0;
    double error = 0.0;       // certified bound on |value - exact|
    double truncation = 0.0;  // last explicitly integrated half-period (Interval weight)
};

// I_w(p) = \int |w^(xi)|^p dxi (not rooted).
// Interval: per-period Gauss-Kronrod up to T, Euler-Maclaurin tail beyond. Requires p > 1.
// Gaussian: (a/(pi p))^{1/2}. Requires p >= 1.
MomentResult weight_lp_moment(const Weight& w, double p, double tol = 1e-10);

struct FourierMean {
    double value = 0.0;
    double error = 0.0;   // quadrature + tail bound
    double cutoff = 0.0;  // Xi
};

// \int |f^(xi)|^2 w^(xi) dxi on [-Xi, Xi]; Xi chosen so the tail bound is below tol.
FourierMean mean_functional_fourier(const GridFunction& f, const Weight& w, double tol = 1e-10);

// \int |f^(xi)|^2 dxi. The transform of a piecewise-constant function satisfies
// \int |f^|^2 = \int_0^{1/h} |P|^2 with P the cell phase sum, which a 2n-point rule
// integrates exactly.
double plancherel_l2(const GridFunction& f);

}  // namespace autocorr
