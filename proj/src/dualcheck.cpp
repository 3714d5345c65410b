#include "autocorr/dualcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "autocorr/constants.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr {

namespace {

double scale_of(const BumpFunction& phi) {
    return std::visit([](const auto& b) { return b.scale; }, phi);
}

// Unscaled profile and transform.
double profile(const BumpFunction& phi, double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    if (std::holds_alternative<StandardBump>(phi)) return standard_bump(x);
    if (std::holds_alternative<CosineBump>(phi)) return 0.5 * (1.0 + std::cos(kPi * x));
    const int k = std::get<BetaPowerBump>(phi).k;
    const double c = std::tgamma(k + 1.5) / (std::sqrt(kPi) * std::tgamma(k + 1.0));
    return c * std::pow(1.0 - x * x, k);
}

// Composite 15-point rule on [0, 1] with 256 panels: at most half an oscillation of
// cos(2 pi eta x) per panel for eta <= 128, and psi is flat to all orders at x = 1.
struct BumpRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // include psi(x)
};

const BumpRule& bump_rule() {
    static const BumpRule rule = [] {
        constexpr int kPanels = 256;
        const auto& gk = gk15_panel();
        BumpRule r;
        for (int p = 0; p < kPanels; ++p) {
            const double c = (p + 0.5) / kPanels, half = 0.5 / kPanels;
            for (std::size_t j = 0; j < 15; ++j) {
                const double x = c + half * gk.nodes[j];
                r.nodes.push_back(x);
                r.weights.push_back(half * gk.kronrod[j] * standard_bump(x));
            }
        }
        return r;
    }();
    return rule;
}

double standard_transform(double eta) {
    const auto& rule = bump_rule();
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * std::cos(2.0 * kPi * eta * rule.nodes[i]);
    return 2.0 * s;
}

double beta_transform(int k, double eta) {
    const double w = 2.0 * kPi * std::abs(eta);
    const double nu = k + 0.5;
    if (w < 1.0) {
        // Series of Gamma(nu+1) (2/w)^nu J_nu(w).
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * w * w;
        for (int m = 1; m < 30; ++m) {
            term *= -q / (m * (m + nu));
            sum += term;
        }
        return sum;
    }
    return std::tgamma(nu + 1.0) * std::pow(2.0 / w, nu) * std::cyl_bessel_j(nu, w);
}

double transform_unscaled(const BumpFunction& phi, double eta) {
    if (std::holds_alternative<StandardBump>(phi)) return standard_transform(eta);
    if (std::holds_alternative<CosineBump>(phi))
        return sinc(2.0 * eta) + 0.5 * (sinc(2.0 * eta - 1.0) + sinc(2.0 * eta + 1.0));
    return beta_transform(std::get<BetaPowerBump>(phi).k, eta);
}

// Rigorous bound on \int_H^inf |phi^(eta)| d eta for the unscaled profile, or an envelope
// estimate for the standard bump (its transform decays faster than any power).
double tail_bound(const BumpFunction& phi, double h) {
    if (std::holds_alternative<CosineBump>(phi)) {
        // |phi^| <= 1/(2 pi eta (4 eta^2 - 1)) <= 1/(6 pi eta^3) for eta >= 1.
        return 1.0 / (12.0 * kPi * h * h);
    }
    if (const auto* b = std::get_if<BetaPowerBump>(&phi)) {
        // J_{k+1/2}(w) <= (2/(pi w))^{1/2} sum_j (k+j)!/(j!(k-j)!) (2w)^{-j}.
        const int k = b->k;
        const double w = 2.0 * kPi * h;
        double s = 0.0;
        for (int j = 0; j <= k; ++j)
            s += std::tgamma(k + j + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(k - j + 1.0)) *
                 std::pow(2.0 * w, -j);
        const double c = std::tgamma(k + 1.5) * std::pow(2.0, k + 0.5) * std::sqrt(2.0 / kPi) * s;
        return c * std::pow(w, -k) / (2.0 * kPi * k);
    }
    // |phi^(eta)| behaves like exp(-2 (pi eta)^{1/2}); integrating that profile from the
    // envelope over the last unit gives env ((h/pi)^{1/2} + 1/(2 pi)), doubled for safety.
    double env = 0.0;
    for (int i = 0; i < 64; ++i) env = std::max(env, std::abs(standard_transform(h - i / 64.0)));
    return 2.0 * env * (std::sqrt(h / kPi) + 0.5 / kPi);
}

double cutoff_for(const BumpFunction& phi, double tol) {
    if (std::holds_alternative<StandardBump>(phi)) return 64.0;
    double h = 8.0;
    while (tail_bound(phi, h) > tol && h < 1e6) h *= 1.25;
    return h;
}

struct SignedParts {
    double positive = 0.0;
    double negative = 0.0;
    double weighted_negative = 0.0;
    double error = 0.0;
    std::size_t sign_changes = 0;
};

// Integrals of the positive and negative parts of g on [0, h]; the axis is cut at sign
// changes (bisection between samples) so every piece has a constant sign.
SignedParts signed_parts(const std::function<double(double)>& g, double h, double tol,
                         const std::function<double(double)>& neg_weight) {
    constexpr double kStep = 1.0 / 31.0;
    const auto samples = static_cast<std::size_t>(std::ceil(h / kStep));
    const double step = h / static_cast<double>(samples);
    std::vector<double> cuts{0.0};
    double prev = g(0.0);
    for (std::size_t i = 1; i <= samples; ++i) {
        const double x = step * static_cast<double>(i);
        const double v = g(x);
        if ((prev < 0.0 && v > 0.0) || (prev > 0.0 && v < 0.0)) cuts.push_back(find_root(g, x - step, x));
        if (v != 0.0) prev = v;
    }
    cuts.push_back(h);
    SignedParts out;
    out.sign_changes = cuts.size() - 2;
    const double piece_tol = tol / static_cast<double>(cuts.size());
    std::vector<double> pos, neg, wneg;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a) continue;
        const auto r = integrate_adaptive(g, a, b, piece_tol);
        out.error += r.error;
        if (r.value >= 0.0) {
            pos.push_back(r.value);
        } else {
            neg.push_back(-r.value);
            const auto rw = integrate_adaptive([&](double x) { return -g(x) * neg_weight(x); }, a, b, piece_tol);
            wneg.push_back(rw.value);
        }
    }
    out.positive = pairwise_sum(pos);
    out.negative = pairwise_sum(neg);
    out.weighted_negative = pairwise_sum(wneg);
    return out;
}

}  // namespace

void validate(const BumpFunction& phi) {
    const double s = scale_of(phi);
    if (!(s > 0.0 && s <= 1.0)) throw PreconditionError("bump: scale must lie in (0, 1]");
    if (const auto* b = std::get_if<BetaPowerBump>(&phi))
        if (b->k < 2 || b->k > 40) throw PreconditionError("bump: beta power k must lie in [2, 40]");
}

std::string bump_label(const BumpFunction& phi) {
    std::ostringstream os;
    if (std::holds_alternative<StandardBump>(phi)) os << "standard";
    else if (std::holds_alternative<CosineBump>(phi)) os << "cosine";
    else os << "beta" << std::get<BetaPowerBump>(phi).k;
    const double s = scale_of(phi);
    if (s != 1.0) os << "(s=" << s << ")";
    return os.str();
}

double bump_value(const BumpFunction& phi, double x) {
    validate(phi);
    const double s = scale_of(phi);
    return profile(phi, x / s) / s;
}

double bump_transform(const BumpFunction& phi, double xi) {
    validate(phi);
    return transform_unscaled(phi, scale_of(phi) * xi);
}

PositivePartReport positive_part_mass(const BumpFunction& phi, double tol) {
    validate(phi);
    if (!(tol > 0.0)) throw PreconditionError("positive_part_mass: tol must be positive");
    const double s = scale_of(phi);
    // Work in eta = s xi: phi_s^(xi) = phi^(eta) and d xi = d eta / s. Both signs are doubled
    // for xi < 0.
    const double h = cutoff_for(phi, 0.125 * tol * s);
    const double tail = tail_bound(phi, h);
    auto g = [&](double eta) { return transform_unscaled(phi, eta); };
    const auto parts = signed_parts(g, h, 0.25 * tol * s, [](double) { return 1.0; });
    const auto& roots = sinc_min_roots();
    PositivePartReport r;
    r.bump = bump_label(phi);
    r.positive = 2.0 * parts.positive / s;
    r.negative = 2.0 * parts.negative / s;
    r.phi0 = profile(phi, 0.0) / s;
    r.cutoff = h / s;
    r.error = 2.0 * (parts.error + tail) / s;
    r.sign_changes = parts.sign_changes;
    r.bound = 0.5 / (1.0 + roots.theta0);
    r.refined_bound = r.bound + roots.theta0 / (1.0 + roots.theta0) * r.phi0;
    r.identity_residual = std::abs(r.positive - r.negative - r.phi0);
    return r;
}

NegativePartReport negative_part_bound_check(const BumpFunction& phi, double tol) {
    validate(phi);
    const double s = scale_of(phi);
    const double h = cutoff_for(phi, 0.125 * tol * s);
    const double tail = tail_bound(phi, h);
    auto g = [&](double eta) { return transform_unscaled(phi, eta); };
    // 2 - 2 sinc(2 xi) with xi = eta / s.
    auto weight = [s](double eta) { return 2.0 - 2.0 * sinc(2.0 * eta / s); };
    const auto parts = signed_parts(g, h, 0.25 * tol * s, weight);
    const double phi0 = profile(phi, 0.0) / s;

    auto centred = [&](double t) { return profile(phi, t / s) / s - phi0; };
    const auto inner = integrate_adaptive(centred, 0.0, s, 0.25 * tol);
    const double outer = -phi0 * (1.0 - s);

    NegativePartReport r;
    r.bump = bump_label(phi);
    r.lhs = 1.0 - 2.0 * phi0;
    r.time_side = 2.0 * (inner.value + outer);
    r.intermediate = 2.0 * parts.weighted_negative / s;
    r.bound = 2.0 * (1.0 + sinc_min_roots().theta0) * 2.0 * parts.negative / s;
    r.identity_residual = std::abs(r.lhs - r.time_side);
    r.slack = r.bound - r.lhs;
    r.error = 2.0 * inner.error + 4.0 * 2.0 * (parts.error + tail) / s;
    return r;
}

double window_ratio_inf(const MixedMeasure& mu, double* window_lo) {
    const MeasureCorrelation corr(mu);
    constexpr int kWindows = 1024;
    double best = std::numeric_limits<double>::infinity(), where = 0.0;
    for (int i = 0; i < kWindows; ++i) {
        double lo = static_cast<double>(i) / kWindows, hi = static_cast<double>(i + 1) / kWindows;
        if (i == 0) lo += 1e-12;
        if (i == kWindows - 1) hi -= 1e-12;
        const double ratio = corr(Interval{lo, hi}) / (hi - lo);
        if (ratio < best) best = ratio, where = lo;
    }
    if (window_lo != nullptr) *window_lo = where;
    return best;
}

MixedMeasure normalize_for_spectrum(const MixedMeasure& mu) {
    const double r = window_ratio_inf(mu);
    if (!(r > 0.0)) throw PreconditionError("normalize_for_spectrum: mu*mu vanishes on a window of (0,1)");
    return mu.scaled(std::sqrt(0.5 / r));
}

double nu_transform(const MixedMeasure& mu, double xi) {
    const double z = 2.0 * kPi * xi;
    const double lebesgue = std::abs(z) < 1e-12 ? 1.0 : std::sin(z) / z;
    return std::norm(fourier_measure(mu, xi)) - lebesgue;
}

SpectrumReport nu_spectrum_check(const MixedMeasure& mu, double tol) {
    SpectrumReport r;
    r.normalization_inf = window_ratio_inf(mu, &r.normalization_window_lo);
    if (std::abs(r.normalization_inf - 0.5) > 1e-6) {
        std::ostringstream os;
        os.precision(12);
        os << "nu_spectrum_check: inf of mu*mu(W)/|W| is " << r.normalization_inf
           << ", expected 1/2 (worst window starts at " << r.normalization_window_lo << ")";
        throw PreconditionError(os.str());
    }
    const MeasureCorrelation corr(mu);
    r.min_nu_mass = std::numeric_limits<double>::infinity();
    for (int level = 0; level <= 11; ++level) {
        const int count = 1 << level;
        const double width = 2.0 / count;
        for (int i = 0; i < count; ++i) {
            const double lo = -1.0 + width * i, hi = lo + width;
            const double nu = corr(Interval{lo, hi}) - 0.5 * width;
            if (nu < r.min_nu_mass) {
                r.min_nu_mass = nu;
                r.min_nu_window_lo = lo;
                r.min_nu_window_hi = hi;
            }
        }
    }
    const auto& roots = sinc_min_roots();
    r.theta0 = roots.theta0;
    r.total_variation = mu.total_variation();
    r.nu_hat_xi0 = nu_transform(mu, roots.xi0);
    r.nu_hat_0 = nu_transform(mu, 0.0);
    r.nonnegative_ok = r.min_nu_mass >= -1e-9;
    r.lower_ok = r.nu_hat_xi0 >= roots.theta0 - tol;
    r.upper_ok = r.nu_hat_xi0 <= r.nu_hat_0 + tol;
    return r;
}

double case2bb_residual(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("case2bb_residual: a must be positive");
    const double alpha = sinc_min_roots().alpha0;
    const double beta = 1.0 - alpha;  // f0 is supported on [-beta, beta]
    const double height = 1.0 / (4.0 * a);
    auto f0 = [&](double t) { return std::abs(t) <= beta ? height : 0.0; };
    auto f0f0 = [&](double t) { return height * height * std::max(0.0, 2.0 * beta - std::abs(t)); };
    constexpr int kPoints = 25001;
    double sup = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double t = -1.25 + 2.5 * i / (kPoints - 1);
        const double lhs = std::abs(t) <= 1.0 ? 0.5 : 0.0;
        const double rhs = 2.0 * a * f0(t - alpha) + 2.0 * a * f0(t + alpha) + f0f0(t);
        sup = std::max(sup, std::abs(lhs - rhs));
    }
    return sup;
}

Case2bbScan case2bb_scan(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw PreconditionError("case2bb_scan: bad range");
    Case2bbScan s;
    s.min_residual = std::numeric_limits<double>::infinity();
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double a = lo * std::exp(step * static_cast<double>(i));
        const double r = case2bb_residual(a);
        s.a.push_back(a);
        s.residual.push_back(r);
        if (r < s.min_residual) s.min_residual = r, s.argmin_a = a;
    }
    return s;
}

}  // namespace autocorr
