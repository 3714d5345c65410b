#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "autocorr/errors.hpp"
#include "autocorr/funcspace.hpp"
#include "autocorr/numeric.hpp"

using namespace autocorr;

namespace {
std::vector<std::string> warnings;
void capture(const std::string& m) { warnings.push_back(m); }
}  // namespace

TEST(GridFunction, NormsAndSupport) {
    const GridFunction f(-0.5, 0.25, {1.0, 2.0, 0.0, 3.0});
    EXPECT_DOUBLE_EQ(f.l1(), 1.5);
    EXPECT_DOUBLE_EQ(f.l2(), std::sqrt(0.25 * 14.0));
    EXPECT_DOUBLE_EQ(f.support().lo, -0.5);
    EXPECT_DOUBLE_EQ(f.support().hi, 0.5);
    EXPECT_DOUBLE_EQ(f.linf(), 3.0);
    EXPECT_DOUBLE_EQ(f.value_at(-0.3), 1.0);
    EXPECT_DOUBLE_EQ(f.value_at(-0.2), 2.0);
    EXPECT_DOUBLE_EQ(f.value_at(0.7), 0.0);
    EXPECT_DOUBLE_EQ(f.cumulative(0.0), 0.75);
    EXPECT_DOUBLE_EQ(f.total_variation(), 1.0 + 1.0 + 2.0 + 3.0 + 3.0);
}

TEST(GridFunction, RejectsBadInput) {
    EXPECT_THROW(GridFunction(0.0, 0.0, {1.0}), PreconditionError);
    EXPECT_THROW(GridFunction(0.0, 0.1, {}), PreconditionError);
    EXPECT_THROW(GridFunction(0.0, 0.1, {1.0, NAN}), PreconditionError);
}

TEST(GridFunction, ClampsNegativesAndWarnsOnlyAboveRoundOff) {
    warnings.clear();
    set_warning_sink(capture);
    const GridFunction tiny(0.0, 1.0, {1.0, -1e-15});
    EXPECT_TRUE(warnings.empty());
    const GridFunction big(0.0, 1.0, {1.0, -0.1});
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_DOUBLE_EQ(big[1], 0.0);
    EXPECT_DOUBLE_EQ(big.clamped(), 0.1);
    set_warning_sink(nullptr);
}

TEST(Families, ValidateRejectsNonPositiveParameters) {
    EXPECT_THROW(validate(AnalyticFamily{GaussianFamily{0.0}}), PreconditionError);
    EXPECT_THROW(validate(AnalyticFamily{IndicatorFamily{-1.0}}), PreconditionError);
    EXPECT_THROW(validate(AnalyticFamily{PiecewiseConstantFamily{0.5, {}}}), PreconditionError);
    EXPECT_THROW(validate(AnalyticFamily{PiecewiseConstantFamily{0.5, {1.0, -1.0}}}), PreconditionError);
    EXPECT_NO_THROW(validate(AnalyticFamily{BSExample{}}));
}

TEST(Families, ExactNormsMatchQuadrature) {
    const AnalyticFamily g{GaussianFamily{3.0}};
    const Norms n = exact_norms(g);
    EXPECT_NEAR(n.l1, std::sqrt(kPi / 3.0), 1e-14);
    EXPECT_NEAR(n.l2 * n.l2, std::sqrt(kPi / 6.0), 1e-14);

    const AnalyticFamily bs{BSExample{}};
    // x = sin(u)/2 absorbs the edge singularity: f dx = (1 - [|x| < 1/4]/4) du / 2.
    auto du = [&](double u) { return 0.5 * (std::abs(std::sin(u)) < 0.5 ? 0.75 : 1.0); };
    const double l1 = integrate_adaptive(du, -kPi / 2.0, -kPi / 6.0, 1e-14).value +
                      integrate_adaptive(du, -kPi / 6.0, kPi / 6.0, 1e-14).value +
                      integrate_adaptive(du, kPi / 6.0, kPi / 2.0, 1e-14).value;
    EXPECT_NEAR(exact_norms(bs).l1, l1, 1e-12);
    EXPECT_NEAR(l1, 11.0 * kPi / 24.0, 1e-12);
    EXPECT_TRUE(std::isinf(exact_norms(bs).l2));
    EXPECT_NEAR(integrate_family(bs, -0.5, 0.5), 11.0 * kPi / 24.0, 1e-12);
}

TEST(Families, SamplingPreservesMassForCellAverages) {
    const GridFunction s = sample(AnalyticFamily{BSExample{}}, Interval{-0.5, 0.5}, 64);
    EXPECT_NEAR(s.l1(), 11.0 * kPi / 24.0, 1e-12);
    const GridFunction ind = sample(AnalyticFamily{IndicatorFamily{0.25}}, Interval{-0.5, 0.5}, 64);
    EXPECT_NEAR(ind.l1(), 0.5, 1e-12);
    const Interval sup = default_support(AnalyticFamily{GaussianFamily{2.0}});
    EXPECT_NEAR(sup.hi, std::sqrt(25.0 / 2.0), 1e-12);
}

TEST(Families, PiecewiseToGridIsExact) {
    const PiecewiseConstantFamily p{0.5, {1.0, 2.0, 3.0, 4.0}};
    const GridFunction g = to_grid(p);
    EXPECT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g.origin(), -0.5);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
    EXPECT_DOUBLE_EQ(g.l1(), 2.5);
    EXPECT_DOUBLE_EQ(evaluate(AnalyticFamily{p}, 0.1), 3.0);
}

TEST(MixedMeasure, MergesSortsAndScales) {
    const MixedMeasure mu({{0.5, 1.0}, {-0.5, 2.0}, {0.5, 0.5}, {0.0, 0.0}}, GridFunction(-0.5, 0.5, {1.0, 1.0}));
    ASSERT_EQ(mu.atoms().size(), 2u);
    EXPECT_DOUBLE_EQ(mu.atoms()[0].location, -0.5);
    EXPECT_DOUBLE_EQ(mu.atoms()[1].mass, 1.5);
    EXPECT_DOUBLE_EQ(mu.atom_mass(), 3.5);
    EXPECT_DOUBLE_EQ(mu.total_variation(), 4.5);
    EXPECT_DOUBLE_EQ(mu.scaled(2.0).total_variation(), 9.0);
    EXPECT_THROW(MixedMeasure({{0.0, -1.0}}, std::nullopt), PreconditionError);
}
