#include "autocorr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/simd/kernels.hpp"

namespace autocorr {

void validate(const Weight& w) {
    if (const auto* g = std::get_if<GaussianWeight>(&w)) {
        if (!(g->a > 0.0) || !std::isfinite(g->a))
            throw PreconditionError("gaussian weight: a must be positive");
    }
}

std::string weight_label(const Weight& w) {
    return std::holds_alternative<IntervalWeight>(w) ? "interval" : "gaussian";
}

double weight_density(const Weight& w, double t) {
    if (const auto* g = std::get_if<GaussianWeight>(&w))
        return std::sqrt(g->a / kPi) * std::exp(-g->a * t * t);
    return std::abs(t) <= 0.5 ? 1.0 : 0.0;
}

double weight_transform(const Weight& w, double xi) {
    if (const auto* g = std::get_if<GaussianWeight>(&w)) return std::exp(-kPi * kPi * xi * xi / g->a);
    return sinc(xi);
}

void fourier(const GridFunction& f, std::span<const double> xi, std::span<std::complex<double>> out) {
    if (out.size() != xi.size()) throw PreconditionError("fourier: output size mismatch");
    const std::size_t m = xi.size();
    std::vector<double> re(m), im(m);
    simd::kernels().phase_sum(f.samples().data(), f.size(), f.cell_center(0), f.spacing(), xi.data(),
                              m, re.data(), im.data());
    const double h = f.spacing();
    for (std::size_t k = 0; k < m; ++k) {
        const double s = h * sinc(h * xi[k]);
        out[k] = {s * re[k], s * im[k]};
    }
}

std::complex<double> fourier(const GridFunction& f, double xi) {
    std::complex<double> out;
    fourier(f, std::span<const double>(&xi, 1), std::span<std::complex<double>>(&out, 1));
    return out;
}

std::complex<double> fourier_measure(const MixedMeasure& mu, double xi) {
    std::complex<double> s = mu.density() ? fourier(*mu.density(), xi) : std::complex<double>{};
    for (const auto& a : mu.atoms()) {
        const double ph = -2.0 * kPi * a.location * xi;
        s += a.mass * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return s;
}

namespace {

// Sum over k >= n of a(k), a(x) = \int_0^1 s(u) (x + u)^{-p} du, s(u) = |sin(pi u)|^p / pi^p,
// by Euler-Maclaurin through the third derivative. The last correction bounds the error.
QuadResult sinc_tail(double p, double n, double tol) {
    auto s = [p](double u) { return std::pow(std::abs(std::sin(kPi * u)) / kPi, p); };
    auto moment = [&](double power) {
        return integrate_adaptive([&](double u) { return s(u) * std::pow(n + u, -power); }, 0.0, 1.0,
                                  tol * 1e-3)
            .value;
    };
    const double integral = moment(p - 1.0) / (p - 1.0);
    const double a0 = moment(p);
    const double a1 = -p * moment(p + 1.0);
    const double a3 = -p * (p + 1.0) * (p + 2.0) * moment(p + 3.0);
    const double last = a3 / 720.0;
    return {integral + a0 / 2.0 - a1 / 12.0 + last, std::abs(last)};
}

}  // namespace

MomentResult weight_lp_moment(const Weight& w, double p, double tol) {
    validate(w);
    if (!(tol > 0.0)) throw PreconditionError("weight_lp_moment: tol must be positive");
    if (const auto* g = std::get_if<GaussianWeight>(&w)) {
        if (!(p >= 1.0)) throw DomainError("weight_lp_moment: gaussian weight requires p >= 1");
        return {std::sqrt(g->a / (kPi * p)), 0.0, 0.0};
    }
    if (!(p > 1.0)) throw DomainError("weight_lp_moment: \\int |sinc|^p diverges for p <= 1");

    std::size_t periods = 50;
    QuadResult tail = sinc_tail(p, static_cast<double>(periods), tol);
    while (tail.error > tol / 4.0 && periods < (1u << 16)) {
        periods *= 2;
        tail = sinc_tail(p, static_cast<double>(periods), tol);
    }
    auto integrand = [p](double x) { return std::pow(std::abs(sinc(x)), p); };
    std::vector<double> pieces(periods);
    double err = 0.0;
    const double piece_tol = tol / (8.0 * static_cast<double>(periods));
    for (std::size_t k = 0; k < periods; ++k) {
        const auto r = integrate_adaptive(integrand, static_cast<double>(k), static_cast<double>(k + 1),
                                          piece_tol);
        pieces[k] = r.value;
        err += r.error;
    }
    MomentResult out;
    out.value = 2.0 * (pairwise_sum(pieces) + tail.value);
    out.error = 2.0 * (err + tail.error);
    out.truncation = static_cast<double>(periods);
    return out;
}

FourierMean mean_functional_fourier(const GridFunction& f, const Weight& w, double tol) {
    validate(w);
    if (!(tol > 0.0)) throw PreconditionError("mean_functional_fourier: tol must be positive");
    const double l1 = f.l1();
    const double budget = 0.5 * tol * std::max(l1 * f.l2(), 1e-300);

    // Cutoff from the tail majorant of |f^|^2 |w^| on |xi| > Xi.
    double cutoff;
    if (std::holds_alternative<IntervalWeight>(w)) {
        // |f^| <= TV/(2 pi xi), |w^| <= 1/(pi xi).
        const double tv = f.total_variation();
        cutoff = std::max(64.0, std::sqrt(tv * tv / (4.0 * kPi * kPi * kPi * budget)));
    } else {
        const double a = std::get<GaussianWeight>(w).a;
        auto tail = [&](double x) { return l1 * l1 * a / (kPi * kPi * x) * std::exp(-kPi * kPi * x * x / a); };
        cutoff = 1.0;
        while (tail(cutoff) > budget) cutoff *= 1.1;
    }
    double tail_bound;
    if (std::holds_alternative<IntervalWeight>(w)) {
        const double tv = f.total_variation();
        tail_bound = tv * tv / (4.0 * kPi * kPi * kPi * cutoff * cutoff);
    } else {
        const double a = std::get<GaussianWeight>(w).a;
        tail_bound = l1 * l1 * a / (kPi * kPi * cutoff) * std::exp(-kPi * kPi * cutoff * cutoff / a);
    }

    // Panels short enough that each holds under a quarter oscillation of the phase sum.
    const double width_panel = 1.0 / (2.0 * (f.support().length() + 1.0));
    const auto panels = static_cast<std::size_t>(std::ceil(cutoff / width_panel));
    const double step = cutoff / static_cast<double>(panels);
    const auto& rule = gk15_panel();

    constexpr std::size_t kChunk = 256;
    std::vector<double> values(panels), errors(panels);
    std::vector<double> xi(kChunk * 15);
    std::vector<std::complex<double>> ft(kChunk * 15);
    for (std::size_t first = 0; first < panels; first += kChunk) {
        const std::size_t count = std::min(kChunk, panels - first);
        for (std::size_t i = 0; i < count; ++i) {
            const double c = (static_cast<double>(first + i) + 0.5) * step;
            for (std::size_t j = 0; j < 15; ++j) xi[i * 15 + j] = c + 0.5 * step * rule.nodes[j];
        }
        const std::size_t m = count * 15;
        fourier(f, std::span<const double>(xi.data(), m), std::span<std::complex<double>>(ft.data(), m));
        for (std::size_t i = 0; i < count; ++i) {
            double k = 0.0, g = 0.0;
            for (std::size_t j = 0; j < 15; ++j) {
                const double y = std::norm(ft[i * 15 + j]) * weight_transform(w, xi[i * 15 + j]);
                k += rule.kronrod[j] * y;
                g += rule.gauss[j] * y;
            }
            values[first + i] = 0.5 * step * k;
            errors[first + i] = 0.5 * step * std::abs(k - g);
        }
    }
    FourierMean out;
    out.value = 2.0 * pairwise_sum(values);
    out.error = 2.0 * pairwise_sum(errors) + tail_bound;
    out.cutoff = cutoff;
    return out;
}

double plancherel_l2(const GridFunction& f) {
    // |P|^2 is a trigonometric polynomial of degree < n in h xi; a uniform rule with 2n
    // nodes over one period integrates it exactly.
    const std::size_t nodes = 2 * f.size();
    const double h = f.spacing();
    std::vector<double> xi(nodes), re(nodes), im(nodes);
    for (std::size_t k = 0; k < nodes; ++k) xi[k] = static_cast<double>(k) / (h * static_cast<double>(nodes));
    simd::kernels().phase_sum(f.samples().data(), f.size(), f.cell_center(0), h, xi.data(), nodes,
                              re.data(), im.data());
    std::vector<double> sq(nodes);
    for (std::size_t k = 0; k < nodes; ++k) sq[k] = re[k] * re[k] + im[k] * im[k];
    return h * pairwise_sum(sq) / static_cast<double>(nodes);
}

}  // namespace autocorr
