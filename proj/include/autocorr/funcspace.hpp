#pragma once

// Test functions and finite measures.
//
// A GridFunction is the piecewise-constant function whose value on cell
// [origin + i*h, origin + (i+1)*h) is samples[i]. Every downstream engine treats it
// as exactly that function, so correlations and transforms of a GridFunction are
// exact up to rounding; only sampling an analytic family onto a grid approximates.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace autocorr {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

struct Norms {
    double l1 = 0.0;
    double l2 = 0.0;
};

class GridFunction {
public:
    // Throws PreconditionError on spacing <= 0, empty or non-finite samples.
    // Negative samples are clamped to zero; clamps larger than 1e-12 relative to
    // the largest sample are reported through warn().
    GridFunction(double origin, double spacing, std::vector<double> samples);

    double origin() const { return origin_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return samples_.size(); }
    std::span<const double> samples() const { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

    Interval support() const;
    double cell_center(std::size_t i) const;

    // Value of the piecewise-constant function (0 outside the window).
    double value_at(double x) const;

    // Integral over (-inf, x].
    double cumulative(double x) const;

    double l1() const { return l1_; }
    double l2() const { return l2_; }
    double linf() const;

    // Total variation of the function on the real line, including the jumps to 0 at the
    // window edges. Bounds |f^(xi)| <= TV / (2 pi |xi|).
    double total_variation() const;

    // Largest clamped magnitude at construction (0 if none).
    double clamped() const { return clamped_; }

    GridFunction scaled(double c) const;

private:
    double origin_;
    double spacing_;
    std::vector<double> samples_;
    std::vector<double> prefix_;  // prefix_[i] = sum of samples_[0..i)
    double l1_ = 0.0;
    double l2_ = 0.0;
    double clamped_ = 0.0;
};

Norms norms(const GridFunction& f);

// --- closed-form families --------------------------------------------------

struct GaussianFamily {
    double b = 1.0;  // e^{-b x^2}
};

struct IndicatorFamily {
    double half_width = 0.5;  // 1_{[-A, A]}
};

// Uniform cells on [-half_width, half_width] with the given nonnegative values.
struct PiecewiseConstantFamily {
    double half_width = 0.5;
    std::vector<double> values;
};

// The function 1_{[-1/2,1/2]}(x)/sqrt(1-4x^2) - 1_{[-1/4,1/4]}(x)/(4 sqrt(1-4x^2)).
// Unbounded at |x| = 1/2 and not square integrable.
struct BSExample {};

using AnalyticFamily = std::variant<GaussianFamily, IndicatorFamily, PiecewiseConstantFamily, BSExample>;

// Throws PreconditionError for non-positive b, A, S, or negative / empty cell values.
void validate(const AnalyticFamily& family);

std::string family_label(const AnalyticFamily& family);

bool is_singular(const AnalyticFamily& family);

double evaluate(const AnalyticFamily& family, double x);

// Exact integral of the family over [lo, hi] (all families have closed-form antiderivatives).
double integrate_family(const AnalyticFamily& family, double lo, double hi);

// Closed-form norms. BSExample has l2 = +inf.
Norms exact_norms(const AnalyticFamily& family);

// Gaussian: [-S, S] with S = (25/b)^{1/2} (tail mass < 1e-10 of the total);
// compact families: their own support.
Interval default_support(const AnalyticFamily& family);

// Midpoint samples of the family on `cells` uniform cells of `support`.
// BSExample and PiecewiseConstant are sampled by exact cell averages instead, which keeps
// the mass exact and never touches the singular points |x| = 1/2.
GridFunction sample(const AnalyticFamily& family, Interval support, std::size_t cells);

// The family as an exact GridFunction (PiecewiseConstant only).
GridFunction to_grid(const PiecewiseConstantFamily& family);

// --- measures --------------------------------------------------------------

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

// Finite nonnegative measure: point masses plus an absolutely continuous part.
class MixedMeasure {
public:
    MixedMeasure() = default;
    // Sorts atoms, merges coincident locations, drops zero masses.
    // Throws PreconditionError on negative or non-finite masses.
    MixedMeasure(std::vector<Atom> atoms, std::optional<GridFunction> density);

    std::span<const Atom> atoms() const { return atoms_; }
    const std::optional<GridFunction>& density() const { return density_; }

    double atom_mass() const;
    double total_variation() const;

    MixedMeasure scaled(double c) const;

private:
    std::vector<Atom> atoms_;
    std::optional<GridFunction> density_;
};

// Warning sink used for non-fatal numeric notices. Defaults to std::clog.
using WarningSink = void (*)(const std::string&);
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace autocorr
