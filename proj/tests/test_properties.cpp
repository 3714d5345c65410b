#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "autocorr/correlate.hpp"
#include "autocorr/functionals.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/spectral.hpp"

using namespace autocorr;

namespace {

constexpr int kCases = 60;

struct Gen {
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

    // Mix of shapes: flat-ish, spiky, edge-heavy (BS-like), sparse.
    GridFunction function() {
        const std::size_t n = index(1, 80);
        std::vector<double> v(n);
        const int shape = static_cast<int>(index(0, 3));
        for (std::size_t i = 0; i < n; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 0.5;
            switch (shape) {
                case 0: v[i] = uniform(0.5, 1.0); break;
                case 1: v[i] = std::pow(uniform(0.0, 1.0), 6.0); break;
                case 2: v[i] = 1.0 / std::sqrt(std::max(1e-3, 1.0 - 4.0 * x * x)); break;
                default: v[i] = uniform(0.0, 1.0) < 0.7 ? 0.0 : uniform(0.0, 1.0); break;
            }
        }
        v[index(0, n - 1)] += 1.0;
        return GridFunction(uniform(-2.0, 1.0), uniform(0.2, 2.0) / static_cast<double>(n), v);
    }

    std::mt19937_64 rng;
};

}  // namespace

TEST(Properties, CeilingsHoldOnRandomShapes) {
    Gen g(101);
    EvalOptions opt;
    opt.check_ceiling = false;
    for (int i = 0; i < kCases; ++i) {
        const GridFunction f = g.function();
        opt.a = g.uniform(0.5, 60.0);
        EXPECT_LE(q_mean(f, opt).value, 0.8641 + 1e-4) << i;
        EXPECT_LE(q_gauss(f, opt).value, ceiling(Functional::gauss, opt.a) + 1e-4) << i;
        EXPECT_LE(q_min_12(f, opt).value, 0.829604 + 1e-4) << i;
        EXPECT_LE(q_min_01(f, opt).value, 0.410767 + 1e-4) << i;
    }
}

TEST(Properties, CorrelationIsEvenPeakedAndHasMassSquared) {
    Gen g(202);
    for (int i = 0; i < kCases; ++i) {
        const GridFunction f = g.function();
        const Correlation c = autocorrelate(f);
        EXPECT_NEAR(c.mass(), f.l1() * f.l1(), 1e-12 * f.l1() * f.l1());
        EXPECT_NEAR(c.peak(), f.l2() * f.l2(), 1e-12 * c.peak());
        for (int j = 0; j < 10; ++j) {
            const double t = g.uniform(-3.0, 3.0);
            EXPECT_NEAR(c.value_at(t), c.value_at(-t), 1e-13 * c.peak());
            EXPECT_LE(c.value_at(t), c.peak() * (1.0 + 1e-13));
        }
    }
}

TEST(Properties, FourierIsBoundedByMassAndPlancherelHolds) {
    Gen g(303);
    for (int i = 0; i < kCases; ++i) {
        const GridFunction f = g.function();
        EXPECT_NEAR(fourier(f, 0.0).real(), f.l1(), 1e-13 * f.l1());
        for (int j = 0; j < 10; ++j) EXPECT_LE(std::abs(fourier(f, g.uniform(-50.0, 50.0))), f.l1() * (1.0 + 1e-12));
        EXPECT_NEAR(plancherel_l2(f), f.l2() * f.l2(), 1e-6 * f.l2() * f.l2());
    }
}

TEST(Properties, MeasureCorrelationTotalIsSquaredVariation) {
    Gen g(404);
    for (int i = 0; i < kCases; ++i) {
        std::vector<Atom> atoms;
        for (std::size_t k = g.index(0, 5); k > 0; --k) atoms.push_back({g.uniform(-1.0, 1.0), g.uniform(0.0, 2.0)});
        const MixedMeasure mu(atoms, g.index(0, 1) ? std::optional<GridFunction>(g.function()) : std::nullopt);
        const double tv = mu.total_variation();
        if (tv == 0.0) continue;
        EXPECT_NEAR(measure_autocorrelate(mu, {-20.0, 20.0}), tv * tv, 1e-12 * tv * tv) << i;
        const double lo = g.uniform(-1.0, 1.0), hi = lo + g.uniform(0.0, 1.0);
        EXPECT_NEAR(measure_autocorrelate(mu, {lo, hi}), measure_autocorrelate(mu, {-hi, -lo}), 1e-12 * tv * tv);
    }
}

TEST(Properties, PeriodizationDominatesOnUnitInterval) {
    Gen g(505);
    for (int i = 0; i < 30; ++i) {
        const std::size_t m = std::size_t{1} << g.index(1, 4);
        const double h = 1.0 / static_cast<double>(m);
        std::vector<double> v(g.index(1, 4 * m));
        for (auto& x : v) x = g.uniform(0.0, 1.0);
        const double shift = static_cast<double>(g.index(0, 4 * m)) - 2.0 * static_cast<double>(m);
        const GridFunction f(-1.0 + shift * h, h, v);
        const Correlation cf = autocorrelate(f), cG = autocorrelate(periodize(f));
        for (std::size_t k = 0; k <= m; ++k) {
            const double t = h * static_cast<double>(k);
            EXPECT_GE(cG.value_at(t), cf.value_at(t) - 1e-12 * cf.peak()) << i << ' ' << t;
        }
    }
}

TEST(Properties, DilationCovariance) {
    Gen g(606);
    for (int i = 0; i < kCases; ++i) {
        const GridFunction f = g.function();
        const double lambda = g.uniform(0.1, 10.0);
        const GridFunction d = dilate(f, lambda);
        const Correlation c = autocorrelate(f), cd = autocorrelate(d);
        for (int j = 0; j < 5; ++j) {
            const double t = g.uniform(-1.0, 1.0);
            EXPECT_NEAR(cd.value_at(t) * lambda, c.value_at(lambda * t), 1e-9 * c.peak());
        }
        EXPECT_NEAR(d.l1() * lambda, f.l1(), 1e-12 * f.l1());
    }
}
