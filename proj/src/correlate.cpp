#include "autocorr/correlate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <variant>

#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/simd/kernels.hpp"

namespace autocorr {

const char* method_label(CorrelationMethod m) {
    switch (m) {
        case CorrelationMethod::direct: return "direct";
        case CorrelationMethod::fft: return "fft";
        case CorrelationMethod::analytic: return "analytic";
        case CorrelationMethod::singular_quadrature: return "singular-quadrature";
    }
    return "unknown";
}

namespace {

// Piecewise-linear function on nodes t0 + k h, zero outside [t0, t0 + (n-1) h].
struct PiecewiseLinear {
    double t0;
    double h;
    std::vector<double> nodes;
    std::vector<double> prefix;  // prefix[k] = integral from t0 to t0 + k h

    PiecewiseLinear(double start, double spacing, std::vector<double> v)
        : t0(start), h(spacing), nodes(std::move(v)), prefix(nodes.size(), 0.0) {
        for (std::size_t k = 1; k < nodes.size(); ++k)
            prefix[k] = prefix[k - 1] + 0.5 * h * (nodes[k - 1] + nodes[k]);
    }

    double value(double t) const {
        const double u = (t - t0) / h;
        if (u < 0.0 || u > static_cast<double>(nodes.size() - 1)) return 0.0;
        auto k = static_cast<std::size_t>(u);
        if (k >= nodes.size() - 1) return nodes.back();
        const double th = u - static_cast<double>(k);
        return (1.0 - th) * nodes[k] + th * nodes[k + 1];
    }

    // Integral from t0 to t.
    double antiderivative(double t) const {
        const double u = (t - t0) / h;
        if (u <= 0.0) return 0.0;
        const auto last = static_cast<double>(nodes.size() - 1);
        if (u >= last) return prefix.back();
        const auto k = static_cast<std::size_t>(u);
        const double th = u - static_cast<double>(k);
        return prefix[k] + h * (th * nodes[k] + 0.5 * th * th * (nodes[k + 1] - nodes[k]));
    }

    double integral(double lo, double hi) const { return antiderivative(hi) - antiderivative(lo); }
};

std::mutex g_fftw_plan_mutex;

std::vector<double> lag_values_direct(const GridFunction& f) {
    const auto& k = simd::kernels();
    const std::size_t n = f.size();
    const double* v = f.samples().data();
    std::vector<double> out(2 * n + 1, 0.0);
    for (std::size_t lag = 0; lag < n; ++lag) {
        const double c = f.spacing() * k.dot(v, v + lag, n - lag);
        out[n + lag] = c;
        out[n - lag] = c;
    }
    return out;
}

std::vector<double> lag_values_fft(const GridFunction& f) {
    const std::size_t n = f.size();
    std::size_t len = 1;
    while (len < 2 * n - 1) len <<= 1;
    double* in = fftw_alloc_real(len);
    fftw_complex* spec = fftw_alloc_complex(len / 2 + 1);
    fftw_plan fwd, inv;
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(len), spec, in, FFTW_ESTIMATE);
    }
    std::fill(in, in + len, 0.0);
    std::copy(f.samples().begin(), f.samples().end(), in);
    fftw_execute(fwd);
    for (std::size_t i = 0; i < len / 2 + 1; ++i) {
        spec[i][0] = spec[i][0] * spec[i][0] + spec[i][1] * spec[i][1];
        spec[i][1] = 0.0;
    }
    fftw_execute(inv);
    const double scale = f.spacing() / static_cast<double>(len);
    std::vector<double> out(2 * n + 1, 0.0);
    for (std::size_t lag = 0; lag < n; ++lag) {
        out[n + lag] = in[lag] * scale;
        out[n - lag] = in[lag == 0 ? 0 : len - lag] * scale;
    }
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(in);
    fftw_free(spec);
    return out;
}

}  // namespace

// --- Correlation -------------------------------------------------------------

Correlation::Correlation(double spacing, std::vector<double> values, CorrelationMethod method)
    : spacing_(spacing), values_(std::move(values)), method_(method) {
    if (!(spacing_ > 0.0)) throw PreconditionError("Correlation: spacing must be positive");
    if (values_.size() % 2 == 0) throw PreconditionError("Correlation: need an odd number of lags");
}

double Correlation::lag(std::ptrdiff_t k) const {
    const auto m = static_cast<std::ptrdiff_t>(max_lag());
    if (k < -m || k > m) return 0.0;
    return values_[static_cast<std::size_t>(k + m)];
}

Interval Correlation::window() const {
    const double w = spacing_ * static_cast<double>(max_lag());
    return {-w, w};
}

double Correlation::value_at(double t) const {
    const double u = t / spacing_;
    const double fl = std::floor(u);
    const auto k = static_cast<std::ptrdiff_t>(fl);
    const double th = u - fl;
    return (1.0 - th) * lag(k) + th * lag(k + 1);
}

double Correlation::integral(double lo, double hi) const {
    const PiecewiseLinear pl(window().lo, spacing_, values_);
    return pl.integral(lo, hi);
}

double Correlation::min_over(double lo, double hi, double* argmin) const {
    if (lo > hi) std::swap(lo, hi);
    double best = value_at(lo), where = lo;
    const double vhi = value_at(hi);
    if (vhi < best) {
        best = vhi;
        where = hi;
    }
    const auto k_lo = static_cast<std::ptrdiff_t>(std::ceil(lo / spacing_));
    const auto k_hi = static_cast<std::ptrdiff_t>(std::floor(hi / spacing_));
    for (auto k = k_lo; k <= k_hi; ++k) {
        const double v = lag(k);
        if (v < best) {
            best = v;
            where = static_cast<double>(k) * spacing_;
        }
    }
    if (argmin != nullptr) *argmin = where;
    return best;
}

Correlation autocorrelate(const GridFunction& f, CorrelationMethod method) {
    switch (method) {
        case CorrelationMethod::direct:
            return Correlation(f.spacing(), lag_values_direct(f), method);
        case CorrelationMethod::fft:
            return Correlation(f.spacing(), lag_values_fft(f), method);
        default:
            throw PreconditionError("autocorrelate(GridFunction): method must be direct or fft");
    }
}

double autocorrelate_at(const AnalyticFamily& family, double t) {
    validate(family);
    if (const auto* g = std::get_if<GaussianFamily>(&family))
        return std::sqrt(kPi / (2.0 * g->b)) * std::exp(-g->b * t * t / 2.0);
    if (const auto* i = std::get_if<IndicatorFamily>(&family))
        return std::max(0.0, 2.0 * i->half_width - std::abs(t));
    if (const auto* p = std::get_if<PiecewiseConstantFamily>(&family)) {
        const GridFunction f = to_grid(*p);
        const double h = f.spacing();
        const double u = std::abs(t) / h;
        const auto k = static_cast<std::size_t>(u);
        const double th = u - static_cast<double>(k);
        const auto n = f.size();
        auto lag = [&](std::size_t j) {
            if (j >= n) return 0.0;
            double s = 0.0;
            for (std::size_t i = 0; i + j < n; ++i) s += f[i] * f[i + j];
            return h * s;
        };
        return (1.0 - th) * lag(k) + (th > 0.0 ? th * lag(k + 1) : 0.0);
    }
    return autocorrelate_singular(BSExample{}, t).value;
}

Correlation autocorrelate(const AnalyticFamily& family, double spacing, std::size_t max_lag) {
    if (is_singular(family))
        throw PreconditionError("autocorrelate: bs-example has no bounded lattice correlation");
    if (!(spacing > 0.0)) throw PreconditionError("autocorrelate: spacing must be positive");
    std::vector<double> v(2 * max_lag + 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = (static_cast<double>(i) - static_cast<double>(max_lag)) * spacing;
        v[i] = autocorrelate_at(family, t);
    }
    return Correlation(spacing, std::move(v), CorrelationMethod::analytic);
}

// --- BS example --------------------------------------------------------------

SingularCorrelation autocorrelate_singular(const BSExample&, double t, double abs_tol) {
    if (!(std::abs(t) <= 1.0)) throw DomainError("autocorrelate_singular: requires |t| <= 1");
    if (t == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    // Overlap collapses to a point; the two inverse-square-root endpoint factors integrate
    // to pi over a vanishing interval, leaving pi/4 (weights are 1 at |x| = 1/2).
    if (std::abs(t) == 1.0) return {kPi / 4.0, 0.0};

    const double lo = std::max(-0.5, -0.5 - t);
    const double hi = std::min(0.5, 0.5 - t);
    const double len = hi - lo;
    // Distances of the four linear factors 1/2 +- x, 1/2 +- (x + t) from their zeros,
    // split as constant offset + distance to the nearer overlap end.
    const double o1 = 0.5 + lo, o3 = 0.5 + lo + t;
    const double o2 = 0.5 - hi, o4 = 0.5 - hi - t;
    auto weight = [](double x) { return std::abs(x) <= 0.25 ? 0.75 : 1.0; };

    // x = lo + len sin^2(phi/2); the Jacobian len sin cos cancels both endpoint singularities.
    auto integrand = [=](double phi) {
        const double s = std::sin(0.5 * phi), c = std::cos(0.5 * phi);
        const double d_lo = len * s * s, d_hi = len * c * c;
        const double x = d_lo < d_hi ? lo + d_lo : hi - d_hi;
        const double a1 = o1 + d_lo, a3 = o3 + d_lo, a2 = o2 + d_hi, a4 = o4 + d_hi;
        const double jac = len * s * c;
        return weight(x) * weight(x + t) * jac / (4.0 * std::sqrt(a1 * a2 * a3 * a4));
    };

    std::vector<double> cuts = {0.0, kPi};
    for (double b : {-0.25, 0.25, -0.25 - t, 0.25 - t}) {
        if (b > lo && b < hi) cuts.push_back(2.0 * std::asin(std::sqrt((b - lo) / len)));
    }
    std::sort(cuts.begin(), cuts.end());
    SingularCorrelation out;
    const double piece_tol = abs_tol / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        const auto r = integrate_adaptive(integrand, cuts[i], cuts[i + 1], piece_tol, 20000);
        out.value += r.value;
        out.error += r.error;
    }
    return out;
}

// --- periodization, dilation, mollification -------------------------------------

GridFunction periodize(const GridFunction& g) {
    const double h = g.spacing();
    const double per = 1.0 / h;
    const double per_round = std::round(per);
    if (per_round < 1.0 || std::abs(per - per_round) > 1e-9 * per)
        throw PreconditionError("periodize: 1/h must be an integer");
    const double shift = (g.origin() + 1.0) / h;
    const double shift_round = std::round(shift);
    if (std::abs(shift - shift_round) > 1e-6)
        throw PreconditionError("periodize: grid must be aligned with x = -1");
    const auto period = static_cast<long long>(per_round);
    const auto offset = static_cast<long long>(shift_round);
    std::vector<double> out(static_cast<std::size_t>(2 * period), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        long long r = (offset + static_cast<long long>(i)) % period;
        if (r < 0) r += period;
        out[static_cast<std::size_t>(r)] += g[i];
        out[static_cast<std::size_t>(r + period)] += g[i];
    }
    return GridFunction(-1.0, h, std::move(out));
}

GridFunction dilate(const GridFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw PreconditionError("dilate: lambda must be positive");
    return GridFunction(f.origin() / lambda, f.spacing() / lambda,
                        std::vector<double>(f.samples().begin(), f.samples().end()));
}

double standard_bump_normalizer() {
    static const double z = [] {
        auto psi = [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
        return integrate_adaptive(psi, -1.0, 1.0, 1e-16).value;
    }();
    return z;
}

double standard_bump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x)) / standard_bump_normalizer();
}

GridFunction mollify(const GridFunction& f, double t) {
    if (!(t > 0.0)) throw PreconditionError("mollify: width must be positive");
    const double h = f.spacing();
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(t / h));
    // kernel[m] = (1/h) \int psi(u) (h - |t u - m h|)_+ du, the cell-average weight at offset m.
    std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1), 0.0);
    for (std::ptrdiff_t m = -reach; m <= reach; ++m) {
        const double center = static_cast<double>(m) * h;
        auto integrand = [=](double u) {
            return standard_bump(u) * std::max(0.0, h - std::abs(t * u - center)) / h;
        };
        std::vector<double> cuts = {-1.0, 1.0};
        for (double s : {center - h, center, center + h})
            if (s / t > -1.0 && s / t < 1.0) cuts.push_back(s / t);
        std::sort(cuts.begin(), cuts.end());
        double w = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            w += integrate_adaptive(integrand, cuts[i], cuts[i + 1], 1e-15).value;
        kernel[static_cast<std::size_t>(m + reach)] = w;
    }
    const double total = pairwise_sum(kernel);
    for (double& w : kernel) w /= total;

    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<double> out(static_cast<std::size_t>(n + 2 * reach), 0.0);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double v = f[static_cast<std::size_t>(j)];
        if (v == 0.0) continue;
        for (std::ptrdiff_t m = -reach; m <= reach; ++m)
            out[static_cast<std::size_t>(j + m + reach)] += v * kernel[static_cast<std::size_t>(m + reach)];
    }
    return GridFunction(f.origin() - static_cast<double>(reach) * h, h, std::move(out));
}

GridFunction dilate_mollify(const GridFunction& f, double lambda, double t) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw PreconditionError("dilate_mollify: lambda must lie in (0, 1)");
    if (!(t > 0.0 && t < 0.5 * (1.0 / lambda - 1.0)))
        throw PreconditionError("dilate_mollify: need 0 < t < (1/lambda - 1)/2");
    return mollify(dilate(f, lambda), t);
}

// --- measures ----------------------------------------------------------------

MeasureCorrelation::MeasureCorrelation(const MixedMeasure& mu) : mu_(mu) {
    std::vector<std::pair<double, double>> diffs;
    for (const auto& a : mu_.atoms())
        for (const auto& b : mu_.atoms()) diffs.emplace_back(a.location - b.location, a.mass * b.mass);
    std::sort(diffs.begin(), diffs.end());
    diff_prefix_.push_back(0.0);
    for (const auto& [d, m] : diffs) {
        diff_locations_.push_back(d);
        diff_prefix_.push_back(diff_prefix_.back() + m);
    }
    if (mu_.density()) density_corr_.emplace(autocorrelate(*mu_.density()));
}

double MeasureCorrelation::atom_part(Interval w) const {
    const auto first = std::lower_bound(diff_locations_.begin(), diff_locations_.end(), w.lo);
    const auto last = std::upper_bound(diff_locations_.begin(), diff_locations_.end(), w.hi);
    if (last <= first) return 0.0;
    return diff_prefix_[static_cast<std::size_t>(last - diff_locations_.begin())] -
           diff_prefix_[static_cast<std::size_t>(first - diff_locations_.begin())];
}

double MeasureCorrelation::cross_part(Interval w) const {
    if (!mu_.density()) return 0.0;
    const auto& f = *mu_.density();
    double s = 0.0;
    for (const auto& a : mu_.atoms()) {
        const double x = a.location;
        s += a.mass * ((f.cumulative(x - w.lo) - f.cumulative(x - w.hi)) +
                       (f.cumulative(w.hi + x) - f.cumulative(w.lo + x)));
    }
    return s;
}

double MeasureCorrelation::density_part(Interval w) const {
    return density_corr_ ? density_corr_->integral(w.lo, w.hi) : 0.0;
}

double MeasureCorrelation::operator()(Interval w) const {
    if (w.hi < w.lo) return 0.0;
    return atom_part(w) + cross_part(w) + density_part(w);
}

double MeasureCorrelation::ac_density(double t) const {
    if (!mu_.density()) return 0.0;
    const auto& f = *mu_.density();
    double s = density_corr_->value_at(t);
    for (const auto& a : mu_.atoms()) s += a.mass * (f.value_at(a.location - t) + f.value_at(t + a.location));
    return s;
}

double measure_autocorrelate(const MixedMeasure& mu, Interval window) {
    if (!(window.hi > window.lo)) throw PreconditionError("measure_autocorrelate: need a > b");
    return MeasureCorrelation(mu)(window);
}

ConvolutionStructure convolution_structure(const MixedMeasure& mu, const MixedMeasure& nu) {
    std::vector<Atom> atoms;
    for (const auto& a : mu.atoms())
        for (const auto& b : nu.atoms()) atoms.push_back({a.location - b.location, a.mass * b.mass});

    const auto& fd = mu.density();
    const auto& gd = nu.density();
    std::optional<GridFunction> density;
    const bool any_density = (fd && !mu.atoms().empty() && gd) || (fd && !nu.atoms().empty()) ||
                             (gd && !mu.atoms().empty()) || (fd && gd);
    if (any_density) {
        double h = fd ? fd->spacing() : gd->spacing();
        if (fd && gd && std::abs(fd->spacing() - gd->spacing()) > 1e-12 * h)
            throw PreconditionError("convolution_structure: densities must share a spacing");

        // Constant pieces [lo, hi) with a value, plus an optional piecewise-linear piece.
        struct Piece {
            double lo, hi, value;
        };
        std::vector<Piece> pieces;
        if (gd)
            for (const auto& a : mu.atoms())
                for (std::size_t k = 0; k < gd->size(); ++k) {
                    const double c = gd->origin() + static_cast<double>(k) * h;
                    pieces.push_back({a.location - c - h, a.location - c, a.mass * (*gd)[k]});
                }
        if (fd)
            for (const auto& b : nu.atoms())
                for (std::size_t k = 0; k < fd->size(); ++k) {
                    const double c = fd->origin() + static_cast<double>(k) * h;
                    pieces.push_back({c - b.location, c - b.location + h, b.mass * (*fd)[k]});
                }
        std::optional<PiecewiseLinear> dd;
        if (fd && gd) {
            // c(t) = \int f(x) g(x - t) dx at t = (o_f - o_g) + k h, k = -n_g .. n_f.
            const auto nf = static_cast<std::ptrdiff_t>(fd->size());
            const auto ng = static_cast<std::ptrdiff_t>(gd->size());
            std::vector<double> nodes;
            for (std::ptrdiff_t k = -ng; k <= nf; ++k) {
                double s = 0.0;
                for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, k);
                     i < std::min(nf, ng + k); ++i)
                    s += (*fd)[static_cast<std::size_t>(i)] * (*gd)[static_cast<std::size_t>(i - k)];
                nodes.push_back(h * s);
            }
            dd.emplace(fd->origin() - gd->origin() - static_cast<double>(ng) * h, h, std::move(nodes));
        }
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& p : pieces) {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi);
        }
        if (dd) {
            lo = std::min(lo, dd->t0);
            hi = std::max(hi, dd->t0 + h * static_cast<double>(dd->nodes.size() - 1));
        }
        const double origin = std::floor(lo / h) * h;
        const auto cells = static_cast<std::size_t>(std::ceil((hi - origin) / h - 1e-9));
        std::vector<double> out(std::max<std::size_t>(cells, 1), 0.0);
        for (const auto& p : pieces) {
            const auto first = static_cast<std::ptrdiff_t>(std::floor((p.lo - origin) / h));
            const auto last = static_cast<std::ptrdiff_t>(std::floor((p.hi - origin) / h));
            for (auto c = std::max<std::ptrdiff_t>(first, 0);
                 c <= std::min<std::ptrdiff_t>(last, static_cast<std::ptrdiff_t>(out.size()) - 1); ++c) {
                const double a = origin + static_cast<double>(c) * h;
                const double overlap = std::min(p.hi, a + h) - std::max(p.lo, a);
                if (overlap > 0.0) out[static_cast<std::size_t>(c)] += p.value * overlap / h;
            }
        }
        if (dd)
            for (std::size_t c = 0; c < out.size(); ++c) {
                const double a = origin + static_cast<double>(c) * h;
                out[c] += dd->integral(a, a + h) / h;
            }
        density.emplace(origin, h, std::move(out));
    }

    ConvolutionStructure cs;
    cs.measure = MixedMeasure(std::move(atoms), std::move(density));
    cs.atoms_present = !cs.measure.atoms().empty();
    cs.ac_part = cs.measure.density().has_value() && cs.measure.density()->l1() > 0.0;
    return cs;
}

}  // namespace autocorr
