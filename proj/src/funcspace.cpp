#include "autocorr/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"

namespace autocorr {

namespace {

WarningSink g_sink = nullptr;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double bs_antiderivative(double x) {
    const double outer = std::clamp(x, -0.5, 0.5);
    const double inner = std::clamp(x, -0.25, 0.25);
    return std::asin(2.0 * outer) / 2.0 - std::asin(2.0 * inner) / 8.0;
}

double pwc_spacing(const PiecewiseConstantFamily& f) {
    return 2.0 * f.half_width / static_cast<double>(f.values.size());
}

}  // namespace

void set_warning_sink(WarningSink sink) { g_sink = sink; }

void warn(const std::string& message) {
    if (g_sink != nullptr)
        g_sink(message);
    else
        std::clog << "warning: " << message << '\n';
}

// --- GridFunction ----------------------------------------------------------

GridFunction::GridFunction(double origin, double spacing, std::vector<double> samples)
    : origin_(origin), spacing_(spacing), samples_(std::move(samples)) {
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw PreconditionError("GridFunction: spacing must be positive and finite");
    if (!std::isfinite(origin_)) throw PreconditionError("GridFunction: origin must be finite");
    if (samples_.empty()) throw PreconditionError("GridFunction: samples must be nonempty");
    double peak = 0.0;
    for (double v : samples_) {
        if (!std::isfinite(v)) throw PreconditionError("GridFunction: non-finite sample");
        peak = std::max(peak, std::abs(v));
    }
    for (double& v : samples_) {
        if (v < 0.0) {
            clamped_ = std::max(clamped_, -v);
            v = 0.0;
        }
    }
    if (clamped_ > 1e-12 * peak) {
        std::ostringstream os;
        os << "GridFunction: clamped negative sample of magnitude " << clamped_
           << " (largest sample " << peak << ")";
        warn(os.str());
    }
    std::vector<double> sq(samples_.size());
    std::transform(samples_.begin(), samples_.end(), sq.begin(), [](double v) { return v * v; });
    l1_ = spacing_ * pairwise_sum(samples_);
    prefix_.resize(samples_.size() + 1, 0.0);
    for (std::size_t i = 0; i < samples_.size(); ++i) prefix_[i + 1] = prefix_[i] + samples_[i];
    l2_ = std::sqrt(spacing_ * pairwise_sum(sq));
}

Interval GridFunction::support() const {
    return {origin_, origin_ + spacing_ * static_cast<double>(samples_.size())};
}

double GridFunction::cell_center(std::size_t i) const {
    return origin_ + (static_cast<double>(i) + 0.5) * spacing_;
}

double GridFunction::value_at(double x) const {
    const double u = (x - origin_) / spacing_;
    if (u < 0.0 || u >= static_cast<double>(samples_.size())) return 0.0;
    return samples_[static_cast<std::size_t>(u)];
}

double GridFunction::cumulative(double x) const {
    const double u = (x - origin_) / spacing_;
    if (u <= 0.0) return 0.0;
    const auto n = samples_.size();
    if (u >= static_cast<double>(n)) return l1_;
    const auto i = static_cast<std::size_t>(u);
    return spacing_ * prefix_[i] + (u - static_cast<double>(i)) * spacing_ * samples_[i];
}

double GridFunction::linf() const { return *std::max_element(samples_.begin(), samples_.end()); }

double GridFunction::total_variation() const {
    double tv = samples_.front() + samples_.back();
    for (std::size_t i = 1; i < samples_.size(); ++i) tv += std::abs(samples_[i] - samples_[i - 1]);
    return tv;
}

GridFunction GridFunction::scaled(double c) const {
    if (!(c >= 0.0)) throw PreconditionError("GridFunction::scaled: factor must be nonnegative");
    std::vector<double> v(samples_);
    for (double& x : v) x *= c;
    return GridFunction(origin_, spacing_, std::move(v));
}

Norms norms(const GridFunction& f) { return {f.l1(), f.l2()}; }

// --- families --------------------------------------------------------------

void validate(const AnalyticFamily& family) {
    std::visit(overloaded{
                   [](const GaussianFamily& g) {
                       if (!(g.b > 0.0) || !std::isfinite(g.b))
                           throw PreconditionError("gaussian: b must be positive");
                   },
                   [](const IndicatorFamily& i) {
                       if (!(i.half_width > 0.0) || !std::isfinite(i.half_width))
                           throw PreconditionError("indicator: A must be positive");
                   },
                   [](const PiecewiseConstantFamily& p) {
                       if (!(p.half_width > 0.0) || !std::isfinite(p.half_width))
                           throw PreconditionError("piecewise: support half-width must be positive");
                       if (p.values.empty())
                           throw PreconditionError("piecewise: needs at least one cell");
                       for (double v : p.values)
                           if (!(v >= 0.0) || !std::isfinite(v))
                               throw PreconditionError("piecewise: cell values must be >= 0");
                   },
                   [](const BSExample&) {},
               },
               family);
}

std::string family_label(const AnalyticFamily& family) {
    return std::visit(overloaded{
                          [](const GaussianFamily&) { return std::string("gaussian"); },
                          [](const IndicatorFamily&) { return std::string("indicator"); },
                          [](const PiecewiseConstantFamily&) { return std::string("piecewise"); },
                          [](const BSExample&) { return std::string("bs-example"); },
                      },
                      family);
}

bool is_singular(const AnalyticFamily& family) {
    return std::holds_alternative<BSExample>(family);
}

double evaluate(const AnalyticFamily& family, double x) {
    return std::visit(
        overloaded{
            [x](const GaussianFamily& g) { return std::exp(-g.b * x * x); },
            [x](const IndicatorFamily& i) { return std::abs(x) <= i.half_width ? 1.0 : 0.0; },
            [x](const PiecewiseConstantFamily& p) {
                const double u = (x + p.half_width) / pwc_spacing(p);
                if (u < 0.0 || u >= static_cast<double>(p.values.size())) return 0.0;
                return p.values[static_cast<std::size_t>(u)];
            },
            [x](const BSExample&) {
                if (std::abs(x) > 0.5) return 0.0;
                const double base = 1.0 / std::sqrt((1.0 - 2.0 * x) * (1.0 + 2.0 * x));
                return std::abs(x) <= 0.25 ? 0.75 * base : base;
            },
        },
        family);
}

double integrate_family(const AnalyticFamily& family, double lo, double hi) {
    return std::visit(
        overloaded{
            [=](const GaussianFamily& g) {
                const double s = std::sqrt(g.b);
                return 0.5 * std::sqrt(kPi / g.b) * (std::erf(s * hi) - std::erf(s * lo));
            },
            [=](const IndicatorFamily& i) {
                const double a = std::clamp(lo, -i.half_width, i.half_width);
                const double b = std::clamp(hi, -i.half_width, i.half_width);
                return b - a;
            },
            [=](const PiecewiseConstantFamily& p) {
                const double h = pwc_spacing(p);
                double s = 0.0;
                for (std::size_t k = 0; k < p.values.size(); ++k) {
                    const double a = -p.half_width + static_cast<double>(k) * h;
                    const double overlap = std::min(hi, a + h) - std::max(lo, a);
                    if (overlap > 0.0) s += p.values[k] * overlap;
                }
                return s;
            },
            [=](const BSExample&) { return bs_antiderivative(hi) - bs_antiderivative(lo); },
        },
        family);
}

Norms exact_norms(const AnalyticFamily& family) {
    validate(family);
    return std::visit(
        overloaded{
            [](const GaussianFamily& g) {
                return Norms{std::sqrt(kPi / g.b), std::pow(kPi / (2.0 * g.b), 0.25)};
            },
            [](const IndicatorFamily& i) {
                return Norms{2.0 * i.half_width, std::sqrt(2.0 * i.half_width)};
            },
            [](const PiecewiseConstantFamily& p) {
                const double h = pwc_spacing(p);
                double s1 = 0.0, s2 = 0.0;
                for (double v : p.values) {
                    s1 += v;
                    s2 += v * v;
                }
                return Norms{h * s1, std::sqrt(h * s2)};
            },
            [](const BSExample&) {
                return Norms{11.0 * kPi / 24.0, std::numeric_limits<double>::infinity()};
            },
        },
        family);
}

Interval default_support(const AnalyticFamily& family) {
    return std::visit(overloaded{
                          [](const GaussianFamily& g) {
                              const double s = std::sqrt(25.0 / g.b);
                              return Interval{-s, s};
                          },
                          [](const IndicatorFamily& i) { return Interval{-i.half_width, i.half_width}; },
                          [](const PiecewiseConstantFamily& p) {
                              return Interval{-p.half_width, p.half_width};
                          },
                          [](const BSExample&) { return Interval{-0.5, 0.5}; },
                      },
                      family);
}

GridFunction sample(const AnalyticFamily& family, Interval support, std::size_t cells) {
    validate(family);
    if (cells < 2) throw PreconditionError("sample: need at least 2 cells");
    if (!(support.hi > support.lo)) throw PreconditionError("sample: empty support window");
    if (is_singular(family) && !(support.lo <= -0.5 && support.hi >= 0.5))
        throw PreconditionError("sample: bs-example window must contain [-1/2, 1/2]");
    const double h = support.length() / static_cast<double>(cells);
    const bool by_average =
        is_singular(family) || std::holds_alternative<PiecewiseConstantFamily>(family);
    std::vector<double> v(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = support.lo + static_cast<double>(i) * h;
        v[i] = by_average ? integrate_family(family, a, a + h) / h : evaluate(family, a + 0.5 * h);
    }
    return GridFunction(support.lo, h, std::move(v));
}

GridFunction to_grid(const PiecewiseConstantFamily& family) {
    validate(family);
    return GridFunction(-family.half_width, pwc_spacing(family), family.values);
}

// --- MixedMeasure ------------------------------------------------------------

MixedMeasure::MixedMeasure(std::vector<Atom> atoms, std::optional<GridFunction> density)
    : density_(std::move(density)) {
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location) || !std::isfinite(a.mass))
            throw PreconditionError("MixedMeasure: non-finite atom");
        if (a.mass < 0.0) throw PreconditionError("MixedMeasure: atom masses must be >= 0");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    for (const auto& a : atoms) {
        if (a.mass == 0.0) continue;
        if (!atoms_.empty() && std::abs(a.location - atoms_.back().location) <=
                                   1e-12 * std::max(1.0, std::abs(a.location)))
            atoms_.back().mass += a.mass;
        else
            atoms_.push_back(a);
    }
}

double MixedMeasure::atom_mass() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.mass;
    return s;
}

double MixedMeasure::total_variation() const {
    return atom_mass() + (density_ ? density_->l1() : 0.0);
}

MixedMeasure MixedMeasure::scaled(double c) const {
    std::vector<Atom> a(atoms_.begin(), atoms_.end());
    for (auto& x : a) x.mass *= c;
    std::optional<GridFunction> d;
    if (density_) d = density_->scaled(c);
    return MixedMeasure(std::move(a), std::move(d));
}

}  // namespace autocorr
