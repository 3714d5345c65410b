#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "autocorr/correlate.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"

using namespace autocorr;

namespace {

// \int f(x) f(x+t) dx for a step function by merging breakpoints of f and f(. + t).
double brute_correlation(const GridFunction& f, double t) {
    std::vector<double> cuts;
    for (std::size_t i = 0; i <= f.size(); ++i) {
        const double x = f.origin() + f.spacing() * static_cast<double>(i);
        cuts.push_back(x);
        cuts.push_back(x - t);
    }
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a) continue;
        const double m = 0.5 * (a + b);
        s += (b - a) * f.value_at(m) * f.value_at(m + t);
    }
    return s;
}

GridFunction random_grid(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng) < 0.25 ? 0.0 : u(rng);
    v[0] = 1.0;
    return GridFunction(-0.3 * u(rng), 0.9 / static_cast<double>(n), v);
}

// BS example correlation by tanh-sinh between the breakpoints of the integrand. Boost's
// two-argument form hands over the distance to the nearer endpoint, so the edge factors
// 1 - 2|x| are formed without cancellation.
double bs_oracle(double t) {
    t = std::abs(t);
    const double lo = -0.5, hi = 0.5 - t;
    auto inner = [](double x) { return std::abs(x) < 0.25 ? 0.75 : 1.0; };
    // f(x) f(x+t) with u = x + 1/2 and v = 1/2 - t - x measured from the singular edges.
    auto g = [&](double x, double u, double v) {
        const double fx = inner(x) / std::sqrt(2.0 * u * (2.0 - 2.0 * u));
        const double fy = inner(x + t) / std::sqrt(2.0 * v * (2.0 - 2.0 * v));
        return fx * fy;
    };
    std::vector<double> cuts = {lo, hi, -0.25, 0.25, -0.25 - t, 0.25 - t};
    std::sort(cuts.begin(), cuts.end());
    boost::math::quadrature::tanh_sinh<double> ts;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = std::max(cuts[i], lo), b = std::min(cuts[i + 1], hi);
        if (!(b > a)) continue;
        auto piece = [&](double x, double xc) {
            // xc is a - x near a and b - x near b.
            const double u = (a == lo && xc <= 0.0) ? -xc : x - lo;
            const double v = (b == hi && xc > 0.0) ? xc : hi - x;
            return g(x, u, v);
        };
        s += ts.integrate(piece, a, b, 1e-14);
    }
    return s;
}

}  // namespace

TEST(Correlate, LatticeAndOffLatticeValuesMatchBruteForce) {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 7u, 33u}) {
        const GridFunction f = random_grid(rng, n);
        const Correlation c = autocorrelate(f);
        for (double t : {0.0, 0.013, -0.2, 0.31, 0.5, -0.77, 0.9}) EXPECT_NEAR(c.value_at(t), brute_correlation(f, t), 1e-13) << n << ' ' << t;
    }
}

TEST(Correlate, FftMatchesDirect) {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 5u, 64u, 301u, 1024u}) {
        const GridFunction f = random_grid(rng, n);
        const Correlation d = autocorrelate(f, CorrelationMethod::direct);
        const Correlation q = autocorrelate(f, CorrelationMethod::fft);
        ASSERT_EQ(d.values().size(), q.values().size());
        for (std::size_t k = 0; k < d.values().size(); ++k) EXPECT_NEAR(d.values()[k], q.values()[k], 1e-13 * d.peak());
        EXPECT_EQ(q.method(), CorrelationMethod::fft);
    }
}

TEST(Correlate, IntegralAndMinimumOfInterpolantAreExact) {
    const Correlation c(0.5, {0.0, 1.0, 2.0, 1.0, 0.0}, CorrelationMethod::direct);
    EXPECT_DOUBLE_EQ(c.mass(), 2.0);
    EXPECT_DOUBLE_EQ(c.integral(-0.5, 0.5), 1.5);
    double at = 0.0;
    EXPECT_DOUBLE_EQ(c.min_over(0.25, 0.75, &at), 0.5);
    EXPECT_DOUBLE_EQ(at, 0.75);
    EXPECT_DOUBLE_EQ(c.value_at(1.5), 0.0);
}

TEST(Correlate, AnalyticFamiliesMatchClosedForms) {
    const double b = 3.0;
    const Correlation g = autocorrelate(AnalyticFamily{GaussianFamily{b}}, 0.01, 200);
    for (int k = -200; k <= 200; k += 37) {
        const double t = 0.01 * k;
        EXPECT_NEAR(g.lag(k), std::sqrt(kPi / (2.0 * b)) * std::exp(-b * t * t / 2.0), 1e-14);
    }
    EXPECT_NEAR(autocorrelate_at(AnalyticFamily{IndicatorFamily{0.75}}, 0.5), 1.0, 1e-15);
    EXPECT_NEAR(autocorrelate_at(AnalyticFamily{IndicatorFamily{0.75}}, 2.0), 0.0, 1e-15);
    EXPECT_THROW(autocorrelate(AnalyticFamily{BSExample{}}, 0.01, 10), PreconditionError);
}

TEST(Correlate, SampledGaussianConvergesToClosedForm) {
    const AnalyticFamily fam{GaussianFamily{2.0}};
    const GridFunction f = sample(fam, default_support(fam), 4000);
    const Correlation c = autocorrelate(f, CorrelationMethod::fft);
    EXPECT_NEAR(c.value_at(0.4), autocorrelate_at(fam, 0.4), 1e-5);
}

TEST(Correlate, BSExampleAgreesWithIndependentQuadrature) {
    const BSExample bs;
    for (double t : {0.05, 0.3, 0.61, 0.9, 0.999}) {
        const auto r = autocorrelate_singular(bs, t);
        EXPECT_NEAR(r.value, bs_oracle(t), 1e-8) << t;
        EXPECT_NEAR(r.value, autocorrelate_singular(bs, -t).value, 1e-12);
    }
    EXPECT_NEAR(autocorrelate_singular(bs, 0.3).value, 0.94345535, 1e-8);
    EXPECT_NEAR(autocorrelate_singular(bs, 0.61).value, 0.78727542, 1e-8);
    EXPECT_NEAR(autocorrelate_singular(bs, 1.0).value, kPi / 4.0, 1e-10);
    EXPECT_TRUE(std::isinf(autocorrelate_singular(bs, 0.0).value));
    EXPECT_THROW(autocorrelate_singular(bs, 1.2), DomainError);
}

TEST(Correlate, PeriodizationSumsTranslates) {
    const GridFunction g(-1.5, 0.25, {1.0, 2.0, 0.0, 3.0, 1.0, 0.5, 4.0, 1.0, 2.0, 0.25});
    const GridFunction G = periodize(g);
    EXPECT_DOUBLE_EQ(G.support().lo, -1.0);
    EXPECT_DOUBLE_EQ(G.support().hi, 1.0);
    EXPECT_NEAR(G.l1(), 2.0 * g.l1(), 1e-13);
    for (double x : {-0.9, -0.4, 0.1, 0.6, 0.95}) {
        double s = 0.0;
        for (int n = -4; n <= 4; ++n) s += g.value_at(x - n);
        EXPECT_NEAR(G.value_at(x), s, 1e-14) << x;
    }
    EXPECT_THROW(periodize(GridFunction(-1.0, 0.3, {1.0})), PreconditionError);
    EXPECT_THROW(periodize(GridFunction(-0.9, 0.25, {1.0})), PreconditionError);
}

TEST(Correlate, DilationScalesNormsAndCorrelation) {
    const GridFunction f(-0.5, 0.1, {1.0, 0.0, 2.0, 1.0, 3.0, 0.5, 0.5, 1.0, 0.0, 2.0});
    const double lambda = 2.5;
    const GridFunction d = dilate(f, lambda);
    EXPECT_NEAR(d.l1(), f.l1() / lambda, 1e-14);
    EXPECT_NEAR(d.l2(), f.l2() / std::sqrt(lambda), 1e-14);
    const Correlation c = autocorrelate(f), cd = autocorrelate(d);
    for (double t : {0.0, 0.07, 0.2, 0.33}) EXPECT_NEAR(cd.value_at(t), c.value_at(lambda * t) / lambda, 1e-13);
}

TEST(Correlate, BumpIsNormalizedAndMollificationPreservesMass) {
    EXPECT_NEAR(integrate_tanh_sinh(standard_bump, -1.0, 1.0).value, 1.0, 1e-12);
    EXPECT_NEAR(standard_bump_normalizer(), 0.443993816168, 1e-11);
    const GridFunction f(-0.5, 0.05, std::vector<double>(20, 1.0));
    const GridFunction m = mollify(f, 0.12);
    EXPECT_NEAR(m.l1(), f.l1(), 1e-10);
    EXPECT_GT(m.size(), f.size());
    EXPECT_NEAR(m.value_at(0.0), 1.0, 1e-10);
    EXPECT_LE(m.linf(), 1.0 + 1e-12);
    const GridFunction dm = dilate_mollify(f, 0.5, 0.2);
    EXPECT_NEAR(dm.l1(), 2.0 * f.l1(), 1e-10);
    EXPECT_THROW(dilate_mollify(f, 0.5, 0.6), PreconditionError);
}

TEST(MeasureCorrelation, AtomsAndDensities) {
    const MixedMeasure atoms({{0.0, 1.0}, {0.5, 1.0}}, std::nullopt);
    EXPECT_DOUBLE_EQ(measure_autocorrelate(atoms, {-0.1, 0.1}), 2.0);
    EXPECT_DOUBLE_EQ(measure_autocorrelate(atoms, {0.4, 0.6}), 1.0);
    EXPECT_DOUBLE_EQ(measure_autocorrelate(atoms, {-1.0, 1.0}), 4.0);

    const MixedMeasure mixed({{0.0, 1.0}}, GridFunction(0.0, 0.25, {1.0, 1.0, 1.0, 1.0}));
    const MeasureCorrelation mc(mixed);
    EXPECT_NEAR(mc({0.0, 0.5}), 1.0 + 0.5 + (0.5 - 0.125), 1e-14);
    EXPECT_NEAR(mc({-3.0, 3.0}), 4.0, 1e-14);
    EXPECT_NEAR(mc.ac_density(0.25), 1.0 + 0.75, 1e-14);
}

TEST(MeasureCorrelation, ConvolutionStructureOfAtoms) {
    const MixedMeasure mu({{0.25, 2.0}}, std::nullopt);
    const MixedMeasure nu({{-0.5, 3.0}, {0.5, 1.0}}, std::nullopt);
    const ConvolutionStructure s = convolution_structure(mu, nu);
    EXPECT_TRUE(s.atoms_present);
    EXPECT_FALSE(s.ac_part);
    ASSERT_EQ(s.measure.atoms().size(), 2u);
    EXPECT_DOUBLE_EQ(s.measure.atoms()[0].location, -0.25);
    EXPECT_DOUBLE_EQ(s.measure.atoms()[0].mass, 2.0);
    EXPECT_DOUBLE_EQ(s.measure.atoms()[1].location, 0.75);
    EXPECT_DOUBLE_EQ(s.measure.atoms()[1].mass, 6.0);
    EXPECT_DOUBLE_EQ(s.measure.total_variation(), 8.0);

    const MixedMeasure dens({}, GridFunction(0.0, 0.5, {1.0, 1.0}));
    const ConvolutionStructure t = convolution_structure(mu, dens);
    EXPECT_TRUE(t.ac_part);
    EXPECT_NEAR(t.measure.total_variation(), 2.0, 1e-14);
}
