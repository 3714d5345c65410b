#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "autocorr/constants.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/search.hpp"

using namespace autocorr;

namespace {

SearchFamilySpec piecewise(std::size_t cells, bool free_support) {
    SearchFamilySpec s{SearchFamily::piecewise};
    s.cells = cells;
    s.free_support = free_support;
    return s;
}

}  // namespace

TEST(Search, IndicatorMin12ReachesClosedForm) {
    const SearchRecord r = search({Functional::min12}, {SearchFamily::indicator}, 500, 1);
    EXPECT_GE(r.best_value, indicator_min_lower().value - 1e-3);
    EXPECT_NEAR(r.best_params.at(0), 0.75, 1e-3);
    EXPECT_EQ(r.restarts, 4u);
}

TEST(Search, GaussianMaximizerIsTwiceTheWeight) {
    const double a = 2.0 * kPi;
    const SearchRecord r = search({Functional::gauss, a}, {SearchFamily::gaussian}, 500, 7);
    EXPECT_GE(r.best_value, 0.8408);
    EXPECT_NEAR(r.best_params.at(0) / (2.0 * a), 1.0, 0.01);
}

TEST(Search, GaussianMeanMatchesOneDimensionalScan) {
    const Objective obj{Functional::mean};
    const SearchFamilySpec spec{SearchFamily::gaussian};
    double best = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double b = std::exp(std::log(1e-2) + i * std::log(1e5) / 4000.0);
        best = std::max(best, evaluate(Functional::mean, AnalyticFamily{GaussianFamily{b}}).value);
    }
    const SearchRecord r = search(obj, spec, 500, 3);
    EXPECT_GE(r.best_value, best - 1e-6);
    EXPECT_NEAR(r.best_value, 0.793345, 1e-5);
}

TEST(Search, PiecewiseMin01BeatsBaseline) {
    const SearchRecord r = search({Functional::min01}, piecewise(16, true), 20000, 1);
    EXPECT_GE(r.best_value, 0.3788 - 1e-3);
    EXPECT_LE(r.best_value, min_l1_constant().ingredients.at("half_window") + 1e-4);
    EXPECT_EQ(r.dimension, 17u);
}

TEST(Search, FixedSupportPiecewiseStartsAtBaseline) {
    const SearchFamilySpec spec = piecewise(16, false);
    const Baseline b = baseline({Functional::min01}, spec);
    const SearchRecord r = search({Functional::min01}, spec, 2000, 1);
    EXPECT_GE(r.best_value, b.value);
    EXPECT_EQ(r.best_params.back(), 0.5);
}

TEST(Search, DeterministicAndIndependentOfThreadCount) {
    const SearchFamilySpec spec = piecewise(8, true);
    const SearchRecord a = search({Functional::min01}, spec, 3000, 42, 1);
    const SearchRecord b = search({Functional::min01}, spec, 3000, 42, 1);
    const SearchRecord c = search({Functional::min01}, spec, 3000, 42, 3);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.trace, c.trace);
    EXPECT_EQ(a.best_theta, c.best_theta);
    EXPECT_EQ(a.best_restart, c.best_restart);
}

TEST(Search, LargerBudgetNeverRegresses) {
    const SearchFamilySpec spec = piecewise(8, true);
    double prev = -1.0;
    for (std::size_t budget : {200u, 800u, 3000u, 9000u}) {
        const SearchRecord r = search({Functional::min01}, spec, budget, 5);
        EXPECT_GE(r.best_value, prev - 1e-12) << budget;
        prev = r.best_value;
    }
}

TEST(Search, RecordIsSelfConsistent) {
    const Objective obj{Functional::min12};
    const SearchFamilySpec spec = piecewise(6, false);
    const SearchRecord r = search(obj, spec, 1500, 9);
    EXPECT_NEAR(evaluate_objective(obj, spec, r.best_theta), r.best_value, 1e-10);
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GT(r.trace[i].second, r.trace[i - 1].second);
    EXPECT_EQ(r.trace.back().second, r.best_value);
    EXPECT_LE(r.evaluations, 1500u);
    const auto params = family_params(spec, r.best_theta);
    for (double p : params) EXPECT_GE(p, 0.0);
}

TEST(Search, PreconditionsAndLabels) {
    EXPECT_THROW(search({Functional::min01}, piecewise(4, false), 99, 1), PreconditionError);
    EXPECT_THROW(search({Functional::min01}, piecewise(0, false), 500, 1), PreconditionError);
    EXPECT_EQ(parse_search_family("gaussian"), SearchFamily::gaussian);
    EXPECT_THROW(parse_search_family("spline"), PreconditionError);
    EXPECT_EQ(objective_label({Functional::min01}), "min01");
    EXPECT_TRUE(std::isinf(evaluate_objective({Functional::min01}, piecewise(2, false), {0.0, 0.0})));
}

TEST(Search, WorkerCountHonoursEnvironment) {
    ::setenv("AUTOCORR_THREADS", "2", 1);
    EXPECT_EQ(worker_count(8), 2u);
    EXPECT_EQ(worker_count(1), 1u);
    ::setenv("AUTOCORR_THREADS", "zero", 1);
    EXPECT_THROW(worker_count(8), PreconditionError);
    ::unsetenv("AUTOCORR_THREADS");
    EXPECT_GE(worker_count(8), 1u);
}

TEST(Search, TraceCsvHasFixedHeader) {
    const SearchRecord r = search({Functional::min12}, {SearchFamily::indicator}, 100, 1);
    const std::string csv = trace_csv(r);
    EXPECT_EQ(csv.rfind("eval_index,best_value\r\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.trace.size() + 1);
}
