#pragma once

// Autocorrelation f*f(t) = \int f(x) f(x+t) dx (correlation, not convolution; the two agree
// for even f). For a GridFunction with spacing h the correlation is piecewise linear with
// nodes on the lattice {k h}, so storing the node values represents it exactly.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "autocorr/funcspace.hpp"

namespace autocorr {

enum class CorrelationMethod { direct, fft, analytic, singular_quadrature };

const char* method_label(CorrelationMethod m);

class Correlation {
public:
    // values holds lags -m..m (size 2m+1) on spacing h; interpolated linearly between nodes
    // and taken as 0 beyond the outer nodes.
    Correlation(double spacing, std::vector<double> values, CorrelationMethod method);

    double spacing() const { return spacing_; }
    std::size_t max_lag() const { return (values_.size() - 1) / 2; }
    std::span<const double> values() const { return values_; }
    CorrelationMethod method() const { return method_; }

    double lag(std::ptrdiff_t k) const;
    Interval window() const;

    double value_at(double t) const;
    // Exact integral of the interpolant over [lo, hi].
    double integral(double lo, double hi) const;
    // Exact minimum of the interpolant over [lo, hi]; returns the minimizing t via argmin.
    double min_over(double lo, double hi, double* argmin = nullptr) const;
    double mass() const { return integral(window().lo, window().hi); }
    double peak() const { return lag(0); }

private:
    double spacing_;
    std::vector<double> values_;
    CorrelationMethod method_;
};

// direct: O(n^2) lag sums through the SIMD dot kernel.
// fft: zero-padded real FFT (length = next power of two >= 2n-1), scaled by h once after
// the inverse transform.
Correlation autocorrelate(const GridFunction& f, CorrelationMethod method = CorrelationMethod::direct);

// Closed-form correlation sampled on lattice {k*spacing}, |k| <= max_lag (Gaussian, Indicator,
// PiecewiseConstant). Throws PreconditionError for BSExample.
Correlation autocorrelate(const AnalyticFamily& family, double spacing, std::size_t max_lag);

// Pointwise closed-form value. BSExample routes through autocorrelate_singular.
double autocorrelate_at(const AnalyticFamily& family, double t);

struct SingularCorrelation {
    double value = 0.0;
    double error = 0.0;
};

// BS example correlation by substitution-absorbed adaptive quadrature.
// f*f(0) = +inf (f is not square integrable); |t| = 1 returns the continuous extension.
// Throws DomainError for |t| > 1.
SingularCorrelation autocorrelate_singular(const BSExample& f, double t, double abs_tol = 1e-10);

// G(x) = 1_{[-1,1]}(x) sum_n g(x - n). Requires 1/h to be an integer and the grid to be
// aligned with -1 (PreconditionError otherwise). Output spans [-1, 1] on the same spacing.
GridFunction periodize(const GridFunction& g);

// f_lambda(x) = f(lambda x).
GridFunction dilate(const GridFunction& f, double lambda);

// Cell averages of f * psi_t with psi the normalized bump exp(-1/(1-x^2)) on [-1,1] and
// psi_t(x) = psi(x/t)/t. Mass preserving; the window grows by ceil(t/h) cells per side.
GridFunction mollify(const GridFunction& f, double t);

// mollify(dilate(f, lambda), t) with lambda in (0,1) and 0 < t < (1/lambda - 1)/2.
GridFunction dilate_mollify(const GridFunction& f, double lambda, double t);

// Normalized bump exp(-1/(1-x^2)) / Z on (-1, 1).
double standard_bump(double x);
double standard_bump_normalizer();

// mu*mu(A) = \iint 1_A(x - y) dmu(x) dmu(y), queried on closed intervals.
class MeasureCorrelation {
public:
    explicit MeasureCorrelation(const MixedMeasure& mu);

    double operator()(Interval window) const;

    double atom_part(Interval window) const;
    double cross_part(Interval window) const;
    double density_part(Interval window) const;

    // Density of the absolutely continuous part at t (cross terms + density correlation).
    double ac_density(double t) const;

    const MixedMeasure& measure() const { return mu_; }

private:
    MixedMeasure mu_;
    std::vector<double> diff_locations_;  // sorted x_i - x_j
    std::vector<double> diff_prefix_;     // prefix sums of m_i m_j
    std::optional<Correlation> density_corr_;
};

double measure_autocorrelate(const MixedMeasure& mu, Interval window);

struct ConvolutionStructure {
    bool atoms_present = false;
    bool ac_part = false;
    MixedMeasure measure;  // mu * nu in the correlation convention
};

// Atom list {x_i - y_j}; absolutely continuous part from atom x density and density x density
// terms, rebinned conservatively onto the lattice {k h} of the density spacing.
// Both densities, when present, must share a spacing.
ConvolutionStructure convolution_structure(const MixedMeasure& mu, const MixedMeasure& nu);

}  // namespace autocorr
