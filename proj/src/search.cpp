#include "autocorr/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "autocorr/errors.hpp"
#include "autocorr/numeric.hpp"

namespace autocorr {

const char* search_family_label(SearchFamily f) {
    switch (f) {
        case SearchFamily::indicator: return "indicator";
        case SearchFamily::gaussian: return "gaussian";
        case SearchFamily::piecewise: return "piecewise";
    }
    return "unknown";
}

SearchFamily parse_search_family(const std::string& label) {
    for (auto f : {SearchFamily::indicator, SearchFamily::gaussian, SearchFamily::piecewise})
        if (label == search_family_label(f)) return f;
    throw PreconditionError("unknown search family '" + label + "' (expected indicator|gaussian|piecewise)");
}

std::string objective_label(const Objective& o) {
    std::string s = functional_label(o.functional);
    if (o.functional == Functional::gauss) {
        std::ostringstream os;
        os.precision(17);
        os << s << "(a=" << o.a << ")";
        s = os.str();
    }
    return s;
}

std::size_t dimension(const SearchFamilySpec& spec) {
    if (spec.kind != SearchFamily::piecewise) return 1;
    return spec.cells + (spec.free_support ? 1 : 0);
}

std::vector<double> family_params(const SearchFamilySpec& spec, const std::vector<double>& theta) {
    if (theta.size() != dimension(spec)) throw PreconditionError("family_params: wrong parameter count");
    std::vector<double> out(theta.size());
    std::transform(theta.begin(), theta.end(), out.begin(), [](double t) { return t * t; });
    if (spec.kind == SearchFamily::piecewise) {
        if (spec.free_support)
            out.back() += 0.5;
        else
            out.push_back(spec.half_width);
    }
    return out;
}

AnalyticFamily decode(const SearchFamilySpec& spec, const std::vector<double>& theta) {
    const auto p = family_params(spec, theta);
    switch (spec.kind) {
        case SearchFamily::indicator: return IndicatorFamily{p[0]};
        case SearchFamily::gaussian: return GaussianFamily{p[0]};
        case SearchFamily::piecewise:
            return PiecewiseConstantFamily{p.back(), std::vector<double>(p.begin(), p.end() - 1)};
    }
    throw PreconditionError("decode: unknown family");
}

double evaluate_objective(const Objective& obj, const SearchFamilySpec& spec,
                          const std::vector<double>& theta) {
    auto describe = [&] {
        std::ostringstream os;
        os.precision(17);
        os << "theta = [";
        for (std::size_t i = 0; i < theta.size(); ++i) os << (i ? ", " : "") << theta[i];
        os << "]";
        return os.str();
    };
    const auto p = family_params(spec, theta);
    if (std::all_of(p.begin(), p.end() - (spec.kind == SearchFamily::piecewise ? 1 : 0),
                    [](double v) { return v == 0.0; }))
        return -std::numeric_limits<double>::infinity();
    EvalOptions opt;
    opt.a = obj.a;
    try {
        const double v = evaluate(obj.functional, decode(spec, theta), opt).value;
        if (!std::isfinite(v)) throw InvariantViolation("finite objective", describe());
        return v;
    } catch (const InvariantViolation& e) {
        throw InvariantViolation(e.invariant(), std::string(e.what()) + " at " + describe());
    } catch (const PreconditionError&) {
        // Underflowed parameters (zero mass) are legitimate points with no score.
        return -std::numeric_limits<double>::infinity();
    }
}

namespace {

// Maximize a 1-D objective over x in [lo, hi]: log-spaced scan then golden refinement.
std::pair<double, double> scan_1d(const std::function<double(double)>& f, double lo, double hi) {
    constexpr std::size_t kPoints = 2001;
    const double step = std::log(hi / lo) / static_cast<double>(kPoints - 1);
    std::vector<double> xs(kPoints), vs(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i) {
        xs[i] = lo * std::exp(step * static_cast<double>(i));
        vs[i] = f(xs[i]);
    }
    const auto i = static_cast<std::size_t>(std::max_element(vs.begin(), vs.end()) - vs.begin());
    const double a = xs[i == 0 ? 0 : i - 1], b = xs[std::min(i + 1, kPoints - 1)];
    const auto m = golden_section_minimize([&](double x) { return -f(x); }, a, b, 1e-12 * b);
    if (-m.value > vs[i]) return {m.argmin, -m.value};
    return {xs[i], vs[i]};
}

}  // namespace

Baseline baseline(const Objective& obj, const SearchFamilySpec& spec) {
    Baseline out;
    if (spec.kind != SearchFamily::piecewise) {
        const SearchFamilySpec one = spec;
        auto f = [&](double x) { return evaluate_objective(obj, one, {std::sqrt(x)}); };
        const auto [x, v] = scan_1d(f, 1e-3, 1e3);
        out.value = v;
        out.theta = {std::sqrt(x)};
        out.source = std::string(search_family_label(spec.kind)) + " scan";
        return out;
    }

    const std::size_t n = spec.cells;
    if (obj.functional == Functional::min01) {
        // The BS example, by exact cell averages, stretched to the support width that scores best.
        const BSExample bs;
        std::vector<double> cells(n);
        const double h = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = -0.5 + static_cast<double>(i) * h;
            cells[i] = integrate_family(bs, a, a + h) / h;
        }
        std::vector<double> theta(dimension(spec));
        for (std::size_t i = 0; i < n; ++i) theta[i] = std::sqrt(cells[i]);
        if (spec.free_support) {
            double best = -std::numeric_limits<double>::infinity(), best_s = 0.0;
            for (int k = 1; k <= 100; ++k) {
                const double s = 0.0025 * k;
                theta.back() = std::sqrt(s);
                const double v = evaluate_objective(obj, spec, theta);
                if (v > best) best = v, best_s = s;
            }
            theta.back() = std::sqrt(best_s);
        }
        out.theta = theta;
        out.value = evaluate_objective(obj, spec, theta);
        out.source = "bs-example cell averages";
        return out;
    }
    // Indicator optimum, realized as constant cells.
    SearchFamilySpec ind{SearchFamily::indicator};
    const Baseline b = baseline(obj, ind);
    const double a_star = b.theta[0] * b.theta[0];
    out.theta.assign(dimension(spec), 1.0);
    if (spec.free_support) out.theta.back() = std::sqrt(std::max(a_star - 0.5, 1e-4));
    out.value = evaluate_objective(obj, spec, out.theta);
    out.source = "indicator scan";
    return out;
}

unsigned worker_count(std::size_t tasks) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("AUTOCORR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw PreconditionError("AUTOCORR_THREADS must be a positive integer");
        n = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

namespace {

struct RestartResult {
    std::vector<double> best_theta;
    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::size_t, double>> improvements;  // local evaluation index
    std::size_t evaluations = 0;
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

RestartResult run_restart(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, std::size_t budget) {
    const std::size_t n = x0.size();
    const double dn = static_cast<double>(n);
    // Dimension-adaptive coefficients (reflection, expansion, contraction, shrink).
    const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;
    RestartResult res;
    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        if (v > res.best_value) {
            res.best_value = v;
            res.best_theta = x;
            res.improvements.emplace_back(res.evaluations, v);
        }
        ++res.evaluations;
        return -v;  // minimize the negative
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> fv;
    // Re-initialisations cycle through step scales so a converged simplex restarts differently.
    constexpr double kScales[] = {0.2, 0.05, 0.5, 0.01};
    std::size_t inits = 0;
    auto init = [&](const std::vector<double>& centre) {
        const double scale = kScales[inits++ % 4];
        simplex.assign(1, centre);
        fv.assign(1, eval(centre));
        for (std::size_t i = 0; i < n && res.evaluations < budget; ++i) {
            auto x = centre;
            x[i] += std::max(scale * std::abs(x[i]), 0.25 * scale);
            simplex.push_back(x);
            fv.push_back(eval(x));
        }
    };
    init(x0);
    while (res.evaluations < budget) {
        if (simplex.size() < n + 1) break;
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t lo = order.front(), hi = order.back(), next = order[n - 1];

        double spread = 0.0, size = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            spread = std::max(spread, std::abs(fv[i] - fv[lo]));
            for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[lo][j]));
        }
        if (!std::isfinite(fv[lo]) || spread <= 1e-13 * std::max(1.0, std::abs(fv[lo])) || size < 1e-10) {
            init(res.best_theta.empty() ? simplex[lo] : res.best_theta);
            continue;
        }

        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != hi)
                for (std::size_t j = 0; j < n; ++j) c[j] += simplex[i][j] / dn;
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = c[j] + t * (simplex[hi][j] - c[j]);
            return x;
        };
        auto xr = along(-alpha);
        const double fr = eval(xr);
        if (fr < fv[lo]) {
            if (res.evaluations >= budget) break;
            auto xe = along(-alpha * beta);
            const double fe = eval(xe);
            if (fe < fr) simplex[hi] = xe, fv[hi] = fe;
            else simplex[hi] = xr, fv[hi] = fr;
            continue;
        }
        if (fr < fv[next]) {
            simplex[hi] = xr, fv[hi] = fr;
            continue;
        }
        if (res.evaluations >= budget) break;
        const bool outside = fr < fv[hi];
        auto xc = along(outside ? -alpha * gamma : gamma);
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[hi])) {
            simplex[hi] = xc, fv[hi] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n && res.evaluations < budget; ++i) {
            if (i == lo) continue;
            for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[lo][j] + delta * (simplex[i][j] - simplex[lo][j]);
            fv[i] = eval(simplex[i]);
        }
    }
    return res;
}

}  // namespace

SearchRecord search(const Objective& obj, const SearchFamilySpec& spec, std::size_t budget,
                    std::uint64_t seed, unsigned threads) {
    const std::size_t dim = dimension(spec);
    if (dim < 1) throw PreconditionError("search: family dimension must be >= 1");
    if (budget < 100) throw PreconditionError("search: budget must be >= 100");
    if (spec.kind == SearchFamily::piecewise && spec.cells < 1)
        throw PreconditionError("search: piecewise family needs at least one cell");

    const Baseline base = baseline(obj, spec);
    const std::size_t restarts = std::max<std::size_t>(4, dim);
    const std::size_t per = budget / restarts;

    std::vector<std::vector<double>> starts(restarts);
    starts[0] = base.theta;
    for (std::size_t r = 1; r < restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        starts[r] = base.theta;
        for (double& t : starts[r]) {
            const double u = 2.0 * uniform01(rng) - 1.0;
            t = std::max(std::abs(t), 0.05) * std::exp(u * std::log(4.0));
        }
    }

    auto f = [&](const std::vector<double>& x) { return evaluate_objective(obj, spec, x); };
    std::vector<RestartResult> results(restarts);
    std::vector<std::exception_ptr> errors(restarts);
    const unsigned workers = threads > 0 ? std::min<unsigned>(threads, static_cast<unsigned>(restarts))
                                         : worker_count(restarts);
    auto work = [&](unsigned w) {
        for (std::size_t r = w; r < restarts; r += workers) {
            try {
                results[r] = run_restart(f, starts[r], per);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SearchRecord rec;
    rec.objective = objective_label(obj);
    rec.family = search_family_label(spec.kind);
    rec.dimension = dim;
    rec.seed = seed;
    rec.restarts = restarts;
    rec.best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        const auto& res = results[r];
        rec.evaluations += res.evaluations;
        for (const auto& [k, v] : res.improvements) {
            if (v > rec.best_value) {
                rec.best_value = v;
                rec.best_restart = r;
                rec.trace.emplace_back(r * per + k, v);
            }
        }
    }
    // Ties keep the lowest restart index: only strict improvements replace the best.
    rec.best_theta = results[rec.best_restart].best_theta;
    rec.best_params = family_params(spec, rec.best_theta);
    return rec;
}

std::string trace_csv(const SearchRecord& record) {
    std::ostringstream os;
    os.precision(17);
    os << "eval_index,best_value\r\n";
    for (const auto& [k, v] : record.trace) os << k << ',' << v << "\r\n";
    return os.str();
}

}  // namespace autocorr
