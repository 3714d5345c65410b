#include <gtest/gtest.h>

#include <cmath>

#include "autocorr/constants.hpp"
#include "autocorr/dualcheck.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/search.hpp"
#include "autocorr/spectral.hpp"

using namespace autocorr;

namespace {

// 2 \int_0^s phi(x) cos(2 pi xi x) dx by quadrature of the profile.
double transform_oracle(const BumpFunction& phi, double xi, double s) {
    auto g = [&](double x) { return bump_value(phi, x) * std::cos(2.0 * kPi * xi * x); };
    return 2.0 * integrate_tanh_sinh(g, 0.0, s, 1e-14).value;
}

MixedMeasure tuned_two_atom_measure() {
    const double e = 1.0 / 2048.0;
    const double c = (-1.0 + std::sqrt(1.0 + 2.0 * e)) / (2.0 * e);
    return MixedMeasure({{-0.5, 0.5}, {0.5, 0.5}},
                        sample(AnalyticFamily{IndicatorFamily{0.5}}, Interval{-0.5, 0.5}, 64).scaled(c));
}

}  // namespace

TEST(Bumps, ProfilesAreProbabilityDensities) {
    for (const BumpFunction& phi : {BumpFunction{StandardBump{}}, BumpFunction{CosineBump{0.5}},
                                    BumpFunction{BetaPowerBump{2, 1.0}}, BumpFunction{BetaPowerBump{7, 0.3}}}) {
        const double s = std::visit([](const auto& b) { return b.scale; }, phi);
        auto f = [&](double x) { return bump_value(phi, x); };
        EXPECT_NEAR(integrate_tanh_sinh(f, -s, s, 1e-14).value, 1.0, 1e-12) << bump_label(phi);
        EXPECT_NEAR(bump_transform(phi, 0.0), 1.0, 1e-12) << bump_label(phi);
    }
}

TEST(Bumps, TransformsMatchQuadrature) {
    for (const BumpFunction& phi : {BumpFunction{StandardBump{}}, BumpFunction{CosineBump{}},
                                    BumpFunction{BetaPowerBump{2, 1.0}}, BumpFunction{BetaPowerBump{5, 0.5}}}) {
        const double s = std::visit([](const auto& b) { return b.scale; }, phi);
        for (double xi : {0.05, 0.159, 0.16, 0.7, 2.3, 9.9, 31.0})
            EXPECT_NEAR(bump_transform(phi, xi), transform_oracle(phi, xi, s), 1e-11) << bump_label(phi) << ' ' << xi;
    }
}

TEST(Bumps, CosineTransformClosedForm) {
    // (1 + cos(pi x))/2 on [-1,1]: sin(2 pi xi) / (2 pi xi (1 - 4 xi^2)).
    for (double xi : {0.1, 0.3, 1.7, 4.25}) {
        const double w = 2.0 * kPi * xi;
        EXPECT_NEAR(bump_transform(CosineBump{}, xi), std::sin(w) / (w * (1.0 - 4.0 * xi * xi)), 1e-14);
    }
}

TEST(Bumps, ValidationRejectsBadParameters) {
    EXPECT_THROW(validate(BumpFunction{StandardBump{0.0}}), PreconditionError);
    EXPECT_THROW(validate(BumpFunction{CosineBump{1.5}}), PreconditionError);
    EXPECT_THROW(validate(BumpFunction{BetaPowerBump{1, 1.0}}), PreconditionError);
    EXPECT_THROW(validate(BumpFunction{BetaPowerBump{41, 1.0}}), PreconditionError);
    EXPECT_EQ(bump_label(BetaPowerBump{5, 0.5}), "beta5(s=0.5)");
}

TEST(PositivePart, IdentityAndBoundForEveryFamily) {
    const double bound = min_l1_constant().ingredients.at("half_window");
    for (const BumpFunction& phi : {BumpFunction{StandardBump{}}, BumpFunction{CosineBump{}},
                                    BumpFunction{BetaPowerBump{2, 1.0}}, BumpFunction{BetaPowerBump{5, 0.5}}}) {
        const PositivePartReport r = positive_part_mass(phi);
        EXPECT_LE(r.identity_residual, 1e-8) << r.bump;
        EXPECT_GE(r.positive, bound) << r.bump;
        EXPECT_GE(r.positive, r.refined_bound) << r.bump;
        EXPECT_NEAR(r.bound, bound, 1e-15);
        EXPECT_NEAR(r.phi0, bump_value(phi, 0.0), 1e-14);
        EXPECT_LE(r.error, 1e-7) << r.bump;
    }
    EXPECT_NEAR(positive_part_mass(CosineBump{}).positive, 1.02045077, 1e-7);
    EXPECT_NEAR(positive_part_mass(BetaPowerBump{5, 0.5}).positive, 2.71683672, 1e-7);
}

TEST(PositivePart, NegativePartChain) {
    for (const BumpFunction& phi : {BumpFunction{StandardBump{}}, BumpFunction{CosineBump{}},
                                    BumpFunction{BetaPowerBump{3, 0.7}}}) {
        const NegativePartReport n = negative_part_bound_check(phi);
        EXPECT_LE(n.identity_residual, 1e-8);
        EXPECT_LT(n.lhs, n.intermediate);
        EXPECT_LT(n.intermediate, n.bound);
        EXPECT_NEAR(n.lhs, 1.0 - 2.0 * bump_value(phi, 0.0), 1e-14);
    }
}

TEST(Spectrum, TunedTwoAtomMeasurePasses) {
    const MixedMeasure mu = tuned_two_atom_measure();
    EXPECT_NEAR(window_ratio_inf(mu), 0.5, 1e-9);
    const SpectrumReport s = nu_spectrum_check(mu);
    EXPECT_TRUE(s.lower_ok);
    EXPECT_TRUE(s.upper_ok);
    EXPECT_TRUE(s.nonnegative_ok);
    EXPECT_NEAR(s.nu_hat_xi0, 0.421565, 1e-6);
    EXPECT_NEAR(s.theta0, sinc_min_roots().theta0, 1e-15);
}

TEST(Spectrum, UnnormalizedMeasureIsRejected) {
    const MixedMeasure mu({{-0.5, 0.5}, {0.5, 0.5}},
                          sample(AnalyticFamily{IndicatorFamily{0.5}}, Interval{-0.5, 0.5}, 64).scaled(0.5));
    EXPECT_THROW(nu_spectrum_check(mu), PreconditionError);
    EXPECT_NEAR(window_ratio_inf(normalize_for_spectrum(mu)), 0.5, 1e-12);
}

TEST(Spectrum, NuTransformIsSquaredModulusMinusSinc) {
    const MixedMeasure mu = tuned_two_atom_measure();
    for (double xi : {0.0, 0.4, sinc_min_roots().xi0, 2.2}) {
        const double m = std::abs(fourier_measure(mu, xi));
        EXPECT_NEAR(nu_transform(mu, xi), m * m - sinc(2.0 * xi), 1e-13);
    }
}

TEST(Spectrum, SearchOutputSatisfiesLowerInequality) {
    const SearchFamilySpec spec{SearchFamily::piecewise, 16, 0.5, true};
    const SearchRecord rec = search({Functional::min01}, spec, 20000, 1);
    const auto fam = std::get<PiecewiseConstantFamily>(decode(spec, rec.best_theta));
    const SpectrumReport s = nu_spectrum_check(normalize_for_spectrum(MixedMeasure({}, to_grid(fam))));
    EXPECT_TRUE(s.lower_ok);
    EXPECT_TRUE(s.upper_ok);
    EXPECT_TRUE(s.nonnegative_ok);
}

TEST(Case2bb, ResidualStaysAwayFromZero) {
    EXPECT_NEAR(case2bb_residual(1.0), 0.487288, 1e-6);
    const Case2bbScan scan = case2bb_scan();
    EXPECT_EQ(scan.a.size(), 81u);
    EXPECT_NEAR(scan.a.front(), 0.01, 1e-15);
    EXPECT_NEAR(scan.a.back(), 100.0, 1e-12);
    EXPECT_GE(scan.min_residual, 0.01);
    EXPECT_NEAR(scan.min_residual, 0.253509, 1e-6);
}
