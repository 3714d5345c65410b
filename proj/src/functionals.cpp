#include "autocorr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "autocorr/constants.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"

namespace autocorr {

const char* functional_label(Functional f) {
    switch (f) {
        case Functional::mean: return "mean";
        case Functional::gauss: return "gauss";
        case Functional::min12: return "min12";
        case Functional::min01: return "min01";
    }
    return "unknown";
}

Functional parse_functional(const std::string& label) {
    for (auto f : {Functional::mean, Functional::gauss, Functional::min12, Functional::min01})
        if (label == functional_label(f)) return f;
    throw PreconditionError("unknown functional '" + label + "' (expected mean|gauss|min12|min01)");
}

double ceiling(Functional f, double a) {
    switch (f) {
        case Functional::mean: return 0.8641;
        case Functional::gauss:
            if (!(a > 0.0)) throw PreconditionError("ceiling: a must be positive");
            return std::pow(8.0 * a / (27.0 * kPi), 0.25);
        case Functional::min12: return 0.829604;
        case Functional::min01: return min_l1_constant().ingredients.at("half_window");
    }
    return 0.0;
}

void check_ceiling(const RatioResult& r, double ceiling_value, double slack) {
    if (r.value > ceiling_value + r.error_estimate + slack) {
        std::ostringstream os;
        os.precision(12);
        os << r.functional << " = " << r.value << " exceeds proven bound " << ceiling_value
           << " (error estimate " << r.error_estimate << ")";
        throw InvariantViolation("ceiling " + r.functional, os.str());
    }
}

double weighted_correlation_mean(const Correlation& c, const Weight& w) {
    validate(w);
    if (std::holds_alternative<IntervalWeight>(w)) return c.integral(-0.5, 0.5);
    const double a = std::get<GaussianWeight>(w).a;
    const double ra = std::sqrt(a);
    const double h = c.spacing();
    // c is even: twice the integral over t >= 0, segment by segment, with
    // \int w = erf/2 and \int t w = -e^{-a t^2} / (2 sqrt(pi a)).
    std::vector<double> parts(c.max_lag());
    for (std::size_t k = 0; k < c.max_lag(); ++k) {
        const double t0 = h * static_cast<double>(k), t1 = t0 + h;
        const double c0 = c.lag(static_cast<std::ptrdiff_t>(k));
        const double c1 = c.lag(static_cast<std::ptrdiff_t>(k + 1));
        const double m0 = 0.5 * (std::erfc(ra * t0) - std::erfc(ra * t1));
        const double m1 = (std::exp(-a * t0 * t0) - std::exp(-a * t1 * t1)) / (2.0 * std::sqrt(kPi * a));
        const double slope = (c1 - c0) / h;
        parts[k] = (c0 - slope * t0) * m0 + slope * m1;
    }
    return 2.0 * pairwise_sum(parts);
}

namespace {

RatioResult finish(Functional which, double numerator, double l1, double l2, const std::string& method,
                   double error, const EvalOptions& opt) {
    if (!(l1 > 0.0)) throw PreconditionError("undefined ratio: the function is zero");
    RatioResult r;
    r.functional = functional_label(which);
    r.method = method;
    r.numerator = numerator;
    r.l1 = l1;
    r.l2 = l2;
    const double denom = which == Functional::min01 ? l1 * l1 : l1 * l2;
    r.value = numerator / denom;
    r.error_estimate = error / denom;
    if (opt.check_ceiling) check_ceiling(r, ceiling(which, opt.a));
    return r;
}

RatioResult evaluate_grid(Functional which, const GridFunction& f, const EvalOptions& opt) {
    if (!(f.l1() > 0.0)) throw PreconditionError("undefined ratio: the function is zero");
    const Correlation c = autocorrelate(f);
    const double round_off = 1e-13 * c.peak();
    double numerator = 0.0, argmin = std::numeric_limits<double>::quiet_NaN();
    std::optional<Weight> w;
    switch (which) {
        case Functional::mean:
            w = IntervalWeight{};
            numerator = weighted_correlation_mean(c, *w);
            break;
        case Functional::gauss:
            w = GaussianWeight{opt.a};
            numerator = weighted_correlation_mean(c, *w);
            break;
        case Functional::min12: numerator = c.min_over(-0.5, 0.5, &argmin); break;
        case Functional::min01: numerator = c.min_over(0.0, 1.0, &argmin); break;
    }
    EvalOptions inner = opt;
    inner.check_ceiling = false;
    RatioResult r = finish(which, numerator, f.l1(), f.l2(), "grid-exact", round_off, inner);
    r.argmin = argmin;
    if (opt.fourier_side && w) {
        const FourierMean fm = mean_functional_fourier(f, *w, opt.fourier_tol);
        r.fourier_numerator = fm.value;
        r.fourier_error = fm.error;
    }
    if (opt.check_ceiling) check_ceiling(r, ceiling(which, opt.a));
    return r;
}

RatioResult bs_min01(const EvalOptions& opt) {
    const BSExample bs;
    auto value = [&](double t) { return autocorrelate_singular(bs, t).value; };
    constexpr int kGrid = 100;
    std::vector<double> vals(kGrid + 1, std::numeric_limits<double>::infinity());
    for (int k = 1; k <= kGrid; ++k) vals[static_cast<std::size_t>(k)] = value(static_cast<double>(k) / kGrid);
    const auto best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    double t_best = static_cast<double>(best) / kGrid;
    double v_best = vals[static_cast<std::size_t>(best)];
    // Refine between the neighbouring lattice points.
    const double lo = std::max(1.0 / kGrid, t_best - 1.0 / kGrid);
    const double hi = std::min(1.0, t_best + 1.0 / kGrid);
    const auto m = golden_section_minimize(value, lo, hi, 1e-7);
    if (m.value < v_best) {
        v_best = m.value;
        t_best = m.argmin;
    }
    const double err = autocorrelate_singular(bs, t_best).error;
    const Norms n = exact_norms(bs);
    RatioResult r = finish(Functional::min01, v_best, n.l1, n.l2, "singular-quadrature", err, opt);
    r.argmin = t_best;
    return r;
}

}  // namespace

RatioResult q_mean(const GridFunction& f, const EvalOptions& opt) { return evaluate_grid(Functional::mean, f, opt); }
RatioResult q_gauss(const GridFunction& f, const EvalOptions& opt) { return evaluate_grid(Functional::gauss, f, opt); }
RatioResult q_min_12(const GridFunction& f, const EvalOptions& opt) { return evaluate_grid(Functional::min12, f, opt); }
RatioResult q_min_01(const GridFunction& f, const EvalOptions& opt) { return evaluate_grid(Functional::min01, f, opt); }

RatioResult evaluate(Functional which, const GridFunction& f, const EvalOptions& opt) {
    return evaluate_grid(which, f, opt);
}

RatioResult evaluate(Functional which, const AnalyticFamily& family, const EvalOptions& opt) {
    validate(family);
    if (which == Functional::gauss && !(opt.a > 0.0)) throw PreconditionError("gauss: a must be positive");
    if (const auto* p = std::get_if<PiecewiseConstantFamily>(&family)) return evaluate_grid(which, to_grid(*p), opt);
    if (std::holds_alternative<BSExample>(family)) {
        if (which != Functional::min01)
            throw DomainError(std::string(functional_label(which)) +
                              ": bs-example is not square integrable; only min01 is defined");
        return bs_min01(opt);
    }
    const Norms n = exact_norms(family);
    double num = 0.0, argmin = std::numeric_limits<double>::quiet_NaN();
    if (const auto* g = std::get_if<GaussianFamily>(&family)) {
        const double b = g->b;
        auto corr = [b](double t) { return std::sqrt(kPi / (2.0 * b)) * std::exp(-b * t * t / 2.0); };
        switch (which) {
            case Functional::mean: num = kPi / b * std::erf(std::sqrt(b / 8.0)); break;
            case Functional::gauss:
                num = std::sqrt(opt.a / kPi) * std::sqrt(kPi / (2.0 * b)) * std::sqrt(kPi / (opt.a + b / 2.0));
                break;
            case Functional::min12: num = corr(0.5), argmin = 0.5; break;
            case Functional::min01: num = corr(1.0), argmin = 1.0; break;
        }
    } else {
        const double w2 = 2.0 * std::get<IndicatorFamily>(family).half_width;  // 2A
        switch (which) {
            case Functional::mean: num = w2 >= 0.5 ? w2 - 0.25 : w2 * w2; break;
            case Functional::gauss: {
                const double a = opt.a;
                num = w2 * std::erf(std::sqrt(a) * w2) - (1.0 - std::exp(-a * w2 * w2)) / std::sqrt(kPi * a);
                break;
            }
            case Functional::min12: num = std::max(0.0, w2 - 0.5), argmin = 0.5; break;
            case Functional::min01: num = std::max(0.0, w2 - 1.0), argmin = 1.0; break;
        }
    }
    RatioResult r = finish(which, num, n.l1, n.l2, "closed-form", 1e-15 * num, opt);
    r.argmin = argmin;
    return r;
}

}  // namespace autocorr
