#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "autocorr/errors.hpp"
#include "autocorr/functionals.hpp"
#include "autocorr/numeric.hpp"

using namespace autocorr;

namespace {
const Functional kAll[] = {Functional::mean, Functional::gauss, Functional::min12, Functional::min01};
}

TEST(Functionals, LabelsRoundTrip) {
    for (Functional f : kAll) EXPECT_EQ(parse_functional(functional_label(f)), f);
    EXPECT_THROW(parse_functional("max"), PreconditionError);
}

TEST(Functionals, IndicatorClosedFormsMatchExactGrid) {
    for (double A : {0.2, 0.3, 0.75, 1.1}) {
        const GridFunction g(-A, 2.0 * A / 40.0, std::vector<double>(40, 1.0));
        for (Functional f : kAll) {
            const double closed = evaluate(f, AnalyticFamily{IndicatorFamily{A}}).value;
            EXPECT_NEAR(evaluate(f, g).value, closed, 1e-12) << A << ' ' << functional_label(f);
        }
    }
}

TEST(Functionals, GaussianClosedFormsMatchSampledGrid) {
    const AnalyticFamily fam{GaussianFamily{5.0}};
    const GridFunction g = sample(fam, default_support(fam), 6000);
    for (Functional f : kAll) EXPECT_NEAR(evaluate(f, g).value, evaluate(f, fam).value, 2e-5) << functional_label(f);
}

TEST(Functionals, WeightedMeanIsExactForPiecewiseLinear) {
    const Correlation c(0.1, {0.0, 0.5, 2.0, 3.0, 2.0, 0.5, 0.0}, CorrelationMethod::direct);
    const GaussianWeight w{4.0};
    const double numeric =
        integrate_adaptive([&](double t) { return weight_density(w, t) * c.value_at(t); }, -0.3, 0.3, 1e-15).value;
    // Kinks at the nodes: split the quadrature there for the oracle.
    double split = 0.0;
    for (int k = -3; k < 3; ++k)
        split += integrate_adaptive([&](double t) { return weight_density(w, t) * c.value_at(t); }, 0.1 * k,
                                    0.1 * (k + 1), 1e-16)
                     .value;
    EXPECT_NEAR(weighted_correlation_mean(c, w), split, 1e-14);
    EXPECT_NEAR(numeric, split, 1e-10);
    EXPECT_NEAR(weighted_correlation_mean(c, IntervalWeight{}), c.integral(-0.5, 0.5), 1e-15);
}

TEST(Functionals, InvariantUnderScalingAndTranslation) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> v(3 + i);
        for (auto& x : v) x = u(rng);
        const GridFunction f(-0.3, 0.04, v);
        const GridFunction g = f.scaled(7.5);
        const GridFunction s(-0.3 + 2.5, 0.04, v);
        for (Functional fn : kAll) {
            const double r = evaluate(fn, f).value;
            EXPECT_NEAR(evaluate(fn, g).value, r, 1e-12 * r);
            EXPECT_NEAR(evaluate(fn, s).value, r, 1e-12 * r);
        }
    }
}

TEST(Functionals, BSExampleMinIsAtOne) {
    const RatioResult r = evaluate(Functional::min01, AnalyticFamily{BSExample{}});
    EXPECT_NEAR(r.value, 0.37881507, 1e-8);
    EXPECT_NEAR(r.value, (kPi / 4.0) / std::pow(11.0 * kPi / 24.0, 2.0), 1e-10);
    EXPECT_NEAR(r.argmin, 1.0, 1e-6);
    EXPECT_THROW(evaluate(Functional::mean, AnalyticFamily{BSExample{}}), DomainError);
}

TEST(Functionals, PiecewiseFamilyRoutesThroughExactGrid) {
    const PiecewiseConstantFamily p{0.5, {1.0, 3.0, 2.0, 0.5}};
    for (Functional f : kAll) EXPECT_DOUBLE_EQ(evaluate(f, AnalyticFamily{p}).value, evaluate(f, to_grid(p)).value);
}

TEST(Functionals, ZeroFunctionIsRejected) {
    const GridFunction z(0.0, 0.1, {0.0, 0.0});
    EXPECT_THROW(q_mean(z), PreconditionError);
}

TEST(Functionals, CeilingBreachThrows) {
    RatioResult r;
    r.functional = "min01";
    r.value = 0.5;
    EXPECT_THROW(check_ceiling(r, ceiling(Functional::min01)), InvariantViolation);
    r.value = 0.41;
    EXPECT_NO_THROW(check_ceiling(r, ceiling(Functional::min01)));
    EXPECT_NEAR(ceiling(Functional::gauss, 2.0 * kPi), std::pow(16.0 / 27.0, 0.25), 1e-15);
    EXPECT_THROW(ceiling(Functional::gauss, 0.0), PreconditionError);
}

TEST(Functionals, FourierSideMatchesTimeSide) {
    const GridFunction f(-0.5, 1.0 / 64.0, std::vector<double>(64, 1.0));
    EvalOptions opt;
    opt.fourier_side = true;
    const RatioResult r = q_mean(f, opt);
    EXPECT_NEAR(r.fourier_numerator, r.numerator, 1e-9);
    EXPECT_NEAR(r.value, 0.75, 1e-14);
}
