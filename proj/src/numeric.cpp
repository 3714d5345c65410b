#include "autocorr/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "autocorr/errors.hpp"

namespace autocorr {

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kBlock = 16;
    if (values.size() <= kBlock) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

const PanelRule& gk15_panel() {
    // QUADPACK qk15 constants.
    static const PanelRule rule = [] {
        constexpr std::array<double, 8> xgk = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.0};
        constexpr std::array<double, 8> wgk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> wg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
        PanelRule r{};
        for (int i = 0; i < 7; ++i) {
            r.nodes[i] = -xgk[i];
            r.nodes[14 - i] = xgk[i];
            r.kronrod[i] = r.kronrod[14 - i] = wgk[i];
            const double g = (i % 2 == 1) ? wg[i / 2] : 0.0;
            r.gauss[i] = r.gauss[14 - i] = g;
        }
        r.nodes[7] = 0.0;
        r.kronrod[7] = wgk[7];
        r.gauss[7] = wg[3];
        return r;
    }();
    return rule;
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gk15_panel();
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
        const double y = f(c + r * rule.nodes[i]);
        k += rule.kronrod[i] * y;
        g += rule.gauss[i] * y;
    }
    return {a, b, k * r, std::abs((k - g) * r)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, std::size_t max_panels) {
    if (a == b) return {};
    std::priority_queue<Panel> heap;
    heap.push(gk15(f, a, b));
    double total_err = heap.top().error;
    while (total_err > abs_tol && heap.size() < max_panels) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Sum in interval order so the result does not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> values, errors;
    for (const auto& p : panels) {
        values.push_back(p.value);
        errors.push_back(p.error);
    }
    return {pairwise_sum(values), pairwise_sum(errors)};
}

QuadResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                               double rel_tol) {
    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0, l1 = 0.0;
    const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
    return {value, error * l1};
}

double find_root(const std::function<double(double)>& f, double lo, double hi) {
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw PreconditionError("find_root: bracket does not change sign");
    std::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (bracket.first + bracket.second);
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    int evals = 2;
    while (b - a > x_tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc <= fd ? MinimizeResult{c, fc, evals} : MinimizeResult{d, fd, evals};
}

}  // namespace autocorr
