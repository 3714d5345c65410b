#include "autocorr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "autocorr/constants.hpp"
#include "autocorr/correlate.hpp"
#include "autocorr/dualcheck.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/functionals.hpp"
#include "autocorr/numeric.hpp"
#include "autocorr/search.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr {

const char* relation_label(Relation r) {
    switch (r) {
        case Relation::near: return "near";
        case Relation::at_least: return "at_least";
        case Relation::at_most: return "at_most";
    }
    return "unknown";
}

bool evaluate_check(Check& c) {
    const double m = c.measured;
    switch (c.relation) {
        case Relation::near: c.pass = std::abs(m - c.expected) <= c.tolerance; break;
        case Relation::at_least: c.pass = m >= c.expected - c.tolerance; break;
        case Relation::at_most: c.pass = m <= c.expected + c.tolerance; break;
    }
    if (std::isnan(m)) c.pass = false;
    return c.pass;
}

namespace {

Check make(std::string name, double measured, double expected, double tol, Relation rel,
           std::string provenance, std::string module) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.expected = expected;
    c.tolerance = tol;
    c.relation = rel;
    c.provenance = std::move(provenance);
    c.module = std::move(module);
    return c;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t stream, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    const double power = 1.0 + 2.0 * uniform01(rng);
    for (double& x : v) x = uniform01(rng) < 0.2 ? 0.0 : std::pow(uniform01(rng), power);
    v[uniform_index(rng, 0, n - 1)] = 0.5 + uniform01(rng);
    return v;
}

// --- criteria --------------------------------------------------------------

std::vector<Check> interval_constant() {
    std::vector<Check> out;
    const BoundReport inf = minimize_over_p(IntervalWeight{});
    out.push_back(make("inf_p C_p, interval weight", inf.value, 0.864, 5e-4, Relation::near, "published", inf.module));
    const BoundReport c2 = mean_upper_constant(IntervalWeight{}, 2.0);
    out.push_back(make("C_2, interval weight vs 2*3^(-3/4)", c2.value, 2.0 * std::pow(3.0, -0.75), 1e-6,
                       Relation::near, "derived", c2.module));
    return out;
}

std::vector<Check> gaussian_constants() {
    std::vector<Check> out;
    const double a = 2.0 * kPi;
    const BoundReport up = mean_upper_constant(GaussianWeight{a}, 2.0);
    out.push_back(make("upper constant, gaussian weight a=2pi", up.value, 0.8773, 5e-4, Relation::near, "published",
                       up.module));
    const BoundReport lo = gaussian_mean_lower(a);
    out.push_back(make("gaussian-family lower, a=2pi", lo.value, 0.8408, 5e-4, Relation::near, "published", lo.module));
    out.push_back(make("gaussian-family lower vs 2^(-1/4)", lo.value, std::pow(2.0, -0.25), 1e-12, Relation::near,
                       "derived", lo.module));
    const ScanResult scan = gaussian_mean_scan(a, 0.1 * a, 10.0 * a, 4001);
    out.push_back(make("scanned maximizer b / (2a)", scan.argmax / (2.0 * a), 1.0, 0.01, Relation::near, "derived",
                       "constants"));
    const RatioResult r = evaluate(Functional::gauss, AnalyticFamily{GaussianFamily{2.0 * a}});
    out.push_back(make("q_gauss(e^{-2a x^2}) vs lower constant", r.value, lo.value, 1e-12, Relation::near, "derived",
                       "functionals"));
    return out;
}

std::vector<Check> min_constants() {
    std::vector<Check> out;
    const BoundReport mixed = min_mixed_constant();
    out.push_back(make("interpolated min constant at p=pi", mixed.value, 0.829604, 5e-4, Relation::near, "published",
                       mixed.module));
    const BoundReport ind = indicator_min_lower();
    out.push_back(make("indicator min12 lower", ind.value, 0.54433, 1e-4, Relation::near, "published", ind.module));
    out.push_back(make("indicator maximizer A", ind.ingredients.at("A_numeric"), 0.75, 1e-6, Relation::near,
                       "derived", ind.module));
    const RatioResult r = evaluate(Functional::min12, AnalyticFamily{IndicatorFamily{0.75}});
    out.push_back(make("q_min12(1_[-3/4,3/4]) vs closed form", r.value, std::pow(1.5, -1.5), 1e-12, Relation::near,
                       "derived", "functionals"));
    return out;
}

std::vector<Check> roots() {
    std::vector<Check> out;
    const SincRoots& s = sinc_min_roots();
    out.push_back(make("theta0", s.theta0, 0.217234, 1e-6, Relation::near, "published", "constants"));
    out.push_back(make("xi0", s.xi0, 0.71514, 1e-5, Relation::near, "published", "constants"));
    out.push_back(make("alpha0 above 2/3", s.alpha0, 2.0 / 3.0, 0.0, Relation::at_least, "derived", "constants"));
    out.push_back(make("|y0 cos y0 - sin y0|", s.residual, 0.0, 1e-10, Relation::at_most, "derived", "constants"));
    out.push_back(make("|sinc(2 xi0) + theta0|", s.sinc_residual, 0.0, 1e-10, Relation::at_most, "derived",
                       "constants"));
    return out;
}

std::vector<Check> bs_example() {
    std::vector<Check> out;
    const BSExample bs;
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 100; ++k) worst = std::min(worst, autocorrelate_singular(bs, k / 100.0).value);
    out.push_back(make("min f*f on 101-point grid of [0,1]", worst, kPi / 4.0, 1e-4, Relation::at_least, "derived",
                       "correlate"));
    const AnalyticFamily fam{bs};
    auto f = [&](double x) { return evaluate(fam, x); };
    const double l1 = integrate_tanh_sinh(f, -0.5, -0.25).value + integrate_tanh_sinh(f, -0.25, 0.25).value +
                      integrate_tanh_sinh(f, 0.25, 0.5).value;
    out.push_back(make("|f|_1 by quadrature vs 11 pi/24", l1, 11.0 * kPi / 24.0, 1e-4, Relation::near, "derived",
                       "funcspace"));
    const RatioResult r = evaluate(Functional::min01, fam);
    out.push_back(make("q_min01(BS)", r.value, 0.3788, 1e-3, Relation::at_least, "derived", "functionals"));
    out.push_back(make("q_min01(BS) above the published floor", r.value, 0.37, 0.0, Relation::at_least, "published",
                       "functionals"));
    return out;
}

std::vector<Check> properties(const VerifyOptions& opt) {
    double worst_mean = 0.0, worst_gauss = -1.0, worst_min12 = 0.0, worst_min01 = 0.0;
    double plancherel = 0.0, fourier_mean = 0.0, fubini = 0.0, evenness = 0.0, peak = 0.0, fft = 0.0;
    double dilation = 0.0;
    for (std::size_t i = 0; i < opt.property_cases; ++i) {
        auto rng = case_rng(opt.property_seed, 1, i);
        const std::size_t n = uniform_index(rng, 1, 48);
        const double len = 0.05 + 1.45 * uniform01(rng);
        const GridFunction f(-uniform01(rng), len / static_cast<double>(n), random_values(rng, n));
        const double a = 0.5 * std::exp(uniform01(rng) * std::log(100.0));

        EvalOptions eo;
        eo.check_ceiling = false;
        worst_mean = std::max(worst_mean, q_mean(f, eo).value);
        worst_min12 = std::max(worst_min12, q_min_12(f, eo).value);
        worst_min01 = std::max(worst_min01, q_min_01(f, eo).value);
        eo.a = a;
        worst_gauss = std::max(worst_gauss, q_gauss(f, eo).value - ceiling(Functional::gauss, a));

        const double l2sq = f.l2() * f.l2();
        plancherel = std::max(plancherel, std::abs(plancherel_l2(f) - l2sq) / l2sq);
        if (i < 20) {
            const double scale = f.l1() * f.l2();
            const Weight ws[] = {IntervalWeight{}, GaussianWeight{a}};
            const Correlation c = autocorrelate(f);
            for (const Weight& w : ws) {
                const double t = weighted_correlation_mean(c, w);
                fourier_mean = std::max(fourier_mean, std::abs(mean_functional_fourier(f, w, 1e-9).value - t) / scale);
            }
        }

        const Correlation c = autocorrelate(f);
        const Correlation cf = autocorrelate(f, CorrelationMethod::fft);
        const double pk = c.peak();
        const auto m = static_cast<std::ptrdiff_t>(c.max_lag());
        fubini = std::max(fubini, std::abs(c.mass() - f.l1() * f.l1()) / (f.l1() * f.l1()));
        for (std::ptrdiff_t k = -m; k <= m; ++k) {
            evenness = std::max(evenness, std::abs(c.lag(k) - c.lag(-k)) / pk);
            peak = std::max(peak, (c.lag(k) - pk) / pk);
            fft = std::max(fft, std::abs(c.lag(k) - cf.lag(k)) / pk);
        }

        const double lambda = 0.25 + 3.75 * uniform01(rng);
        const Correlation cd = autocorrelate(dilate(f, lambda));
        for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(cd.max_lag()); ++k) {
            const double t = cd.spacing() * static_cast<double>(k);
            dilation = std::max(dilation, std::abs(cd.value_at(t) - c.value_at(lambda * t) / lambda) * lambda / pk);
        }
    }

    double domination = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < opt.periodization_cases; ++i) {
        auto rng = case_rng(opt.property_seed, 2, i);
        const std::size_t per_unit = std::size_t{1} << uniform_index(rng, 2, 4);
        const double h = 1.0 / static_cast<double>(per_unit);
        const std::size_t n = uniform_index(rng, 1, 3 * per_unit);
        const auto shift = static_cast<double>(uniform_index(rng, 0, 2 * per_unit)) - static_cast<double>(per_unit);
        const GridFunction g(-1.0 + shift * h, h, random_values(rng, n));
        const Correlation cg = autocorrelate(g);
        const Correlation cG = autocorrelate(periodize(g));
        for (std::size_t k = 0; k <= per_unit; ++k) {
            const double t = h * static_cast<double>(k);
            domination = std::min(domination, (cG.value_at(t) - cg.value_at(t)) / cg.peak());
        }
    }

    const std::string n = std::to_string(opt.property_cases);
    std::vector<Check> out;
    out.push_back(make("max q_mean over " + n + " random functions", worst_mean, 0.8641, 1e-4, Relation::at_most,
                       "property", "functionals"));
    out.push_back(make("max q_gauss(a) - g_2(a)", worst_gauss, 0.0, 1e-4, Relation::at_most, "property",
                       "functionals"));
    out.push_back(make("max q_min12", worst_min12, 0.829604, 1e-4, Relation::at_most, "property", "functionals"));
    out.push_back(make("max q_min01", worst_min01, 0.410767, 1e-4, Relation::at_most, "property", "functionals"));
    out.push_back(make("Plancherel relative gap", plancherel, 0.0, 1e-6, Relation::at_most, "property", "spectral"));
    out.push_back(make("time vs Fourier mean, scaled gap", fourier_mean, 0.0, 1e-6, Relation::at_most, "property",
                       "spectral"));
    out.push_back(make("Fubini mass relative gap", fubini, 0.0, 1e-10, Relation::at_most, "property", "correlate"));
    out.push_back(make("evenness gap / peak", evenness, 0.0, 1e-12, Relation::at_most, "property", "correlate"));
    out.push_back(make("excess over f*f(0) / peak", peak, 0.0, 1e-12, Relation::at_most, "property", "correlate"));
    out.push_back(make("direct vs FFT / peak", fft, 0.0, 1e-10, Relation::at_most, "property", "correlate"));
    out.push_back(make("min (G*G - g*g) / peak on [0,1]", domination, 0.0, 1e-12, Relation::at_least, "property",
                       "correlate"));
    out.push_back(make("dilation covariance gap / peak", dilation, 0.0, 1e-9, Relation::at_most, "property",
                       "correlate"));
    return out;
}

std::vector<Check> dual_bounds() {
    std::vector<Check> out;
    const BumpFunction bumps[] = {StandardBump{}, CosineBump{}, BetaPowerBump{2, 1.0}};
    for (const BumpFunction& phi : bumps) {
        const PositivePartReport p = positive_part_mass(phi);
        const std::string name = p.bump;
        out.push_back(make(name + ": |(phi^)_+|_1", p.positive, 0.410767, 1e-4, Relation::at_least, "published",
                           "dualcheck"));
        out.push_back(make(name + ": |(phi^)_+|_1 - refined bound", p.positive - p.refined_bound, 0.0, 1e-4,
                           Relation::at_least, "derived", "dualcheck"));
        out.push_back(make(name + ": |pos - neg - phi(0)|", p.identity_residual, 0.0, 1e-8, Relation::at_most,
                           "derived", "dualcheck"));
        const NegativePartReport n = negative_part_bound_check(phi);
        out.push_back(make(name + ": negative-part chain slack", std::min(n.intermediate - n.lhs, n.bound - n.intermediate),
                           0.0, 0.0, Relation::at_least, "derived", "dualcheck"));
        out.push_back(make(name + ": |1 - 2 phi(0) - time side|", n.identity_residual, 0.0, 1e-8, Relation::at_most,
                           "derived", "dualcheck"));
    }
    return out;
}

std::vector<Check> case2bb() {
    const Case2bbScan scan = case2bb_scan(0.01, 100.0, 81);
    return {make("min residual over 81 log-spaced a in [0.01, 100]", scan.min_residual, 0.01, 0.0, Relation::at_least,
                 "derived", "dualcheck")};
}

std::size_t trace_mismatches(const SearchRecord& x, const SearchRecord& y) {
    std::size_t bad = x.trace.size() > y.trace.size() ? x.trace.size() - y.trace.size() : y.trace.size() - x.trace.size();
    for (std::size_t i = 0; i < std::min(x.trace.size(), y.trace.size()); ++i)
        if (x.trace[i] != y.trace[i]) ++bad;
    if (x.best_value != y.best_value) ++bad;
    return bad;
}

std::vector<Check> searches(const VerifyOptions& opt) {
    std::vector<Check> out;
    const std::uint64_t seed = opt.search_seed;

    const Objective o12{Functional::min12};
    const SearchFamilySpec ind{SearchFamily::indicator};
    const SearchRecord r12 = search(o12, ind, opt.search_budget_1d, seed, opt.threads);
    out.push_back(make("indicator min12 best", r12.best_value, 0.54433, 1e-3, Relation::at_least, "derived", "search"));
    out.push_back(make("indicator min12 best A", r12.best_params.at(0), 0.75, 1e-3, Relation::near, "derived",
                       "search"));

    const Objective og{Functional::gauss, 2.0 * kPi};
    const SearchFamilySpec gau{SearchFamily::gaussian};
    const SearchRecord rg = search(og, gau, opt.search_budget_1d, seed, opt.threads);
    out.push_back(make("gaussian gauss best", rg.best_value, std::pow(2.0, -0.25), 1e-3, Relation::at_least, "derived",
                       "search"));
    out.push_back(make("gaussian gauss best b / (4 pi)", rg.best_params.at(0) / (4.0 * kPi), 1.0, 0.01,
                       Relation::near, "derived", "search"));

    const Objective o01{Functional::min01};
    SearchFamilySpec pw{SearchFamily::piecewise};
    pw.free_support = true;
    const SearchRecord r01 = search(o01, pw, opt.search_budget_piecewise, seed, opt.threads);
    out.push_back(make("piecewise(16) min01 best", r01.best_value, 0.3788, 1e-3, Relation::at_least, "derived",
                       "search"));
    out.push_back(make("piecewise(16) min01 best below ceiling", r01.best_value, 0.410767, 1e-4, Relation::at_most,
                       "derived", "search"));

    const SearchRecord again12 = search(o12, ind, opt.search_budget_1d, seed, 1);
    const SearchRecord again01 = search(o01, pw, opt.search_budget_piecewise, seed, 1);
    const double mismatches = static_cast<double>(trace_mismatches(r12, again12) + trace_mismatches(r01, again01));
    out.push_back(make("trace mismatches between identical-seed runs", mismatches, 0.0, 0.0, Relation::at_most,
                       "derived", "search"));
    return out;
}

const char* title(int id) {
    switch (id) {
        case 1: return "mean-functional constant, interval weight";
        case 2: return "gaussian-weight constants at a = 2 pi";
        case 3: return "min-functional constants";
        case 4: return "sinc minimum roots";
        case 5: return "BS example";
        case 6: return "property suite";
        case 7: return "dual positive-part bound";
        case 8: return "two-atom candidate residual";
        case 9: return "search determinism and floors";
    }
    throw PreconditionError("unknown criterion " + std::to_string(id));
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
    CriterionResult res;
    res.id = id;
    res.title = title(id);
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (id) {
            case 1: res.checks = interval_constant(); break;
            case 2: res.checks = gaussian_constants(); break;
            case 3: res.checks = min_constants(); break;
            case 4: res.checks = roots(); break;
            case 5: res.checks = bs_example(); break;
            case 6: res.checks = properties(opt); break;
            case 7: res.checks = dual_bounds(); break;
            case 8: res.checks = case2bb(); break;
            case 9: res.checks = searches(opt); break;
        }
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    if (opt.fault == id && !res.checks.empty()) {
        double& m = res.checks.front().measured;
        m += 0.01 * std::abs(m) + 0.01;
    }
    res.pass = res.error.empty() && !res.checks.empty();
    for (Check& c : res.checks) res.pass = evaluate_check(c) && res.pass;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
    std::vector<int> ids = opt.only;
    if (ids.empty())
        for (int i = 1; i <= 9; ++i) ids.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, opt));
    return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    os << std::setprecision(10);
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << "  (" << std::fixed
           << std::setprecision(2) << r.seconds << " s)\n"
           << std::defaultfloat << std::setprecision(10);
        if (!r.error.empty()) os << "      error: " << r.error << '\n';
        for (const auto& c : r.checks) {
            os << "      " << (c.pass ? "ok  " : "BAD ") << c.name << ": measured " << c.measured << ", "
               << relation_label(c.relation) << ' ' << c.expected << " +/- " << c.tolerance << " [" << c.provenance
               << ", " << c.module << "]\n";
        }
    }
    return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace autocorr
