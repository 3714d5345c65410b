#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ctime>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autocorr/cli.hpp"
#include "autocorr/constants.hpp"
#include "autocorr/dualcheck.hpp"
#include "autocorr/functionals.hpp"
#include "autocorr/search.hpp"
#include "autocorr/verify.hpp"

namespace autocorr::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// --- report helpers ----------------------------------------------------------

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["weight"] = c.weight;
    j["a"] = c.a;
    j["p_min"] = c.p_min;
    j["p_max"] = c.p_max;
    j["family"] = c.family;
    j["functional"] = c.functional;
    j["cells"] = c.cells;
    j["support"] = c.support;
    j["b"] = c.b;
    j["half_width"] = c.half_width;
    j["values"] = c.values;
    j["bump"] = c.bump;
    j["scale"] = c.scale;
    j["budget"] = c.budget ? json(*c.budget) : json(nullptr);
    j["seed"] = c.seed;
    j["tol"] = c.tol;
    j["criteria"] = c.criteria;
    j["threads_env"] = std::getenv("AUTOCORR_THREADS") ? std::getenv("AUTOCORR_THREADS") : "";
    return j;
}

ordered_json report_header(const RunConfig& c) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = c.command;
    j["generated_at"] = utc_now();
    j["config"] = config_json(c);
    return j;
}

ordered_json bound_json(const BoundReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["value"] = r.value;
    j["kind"] = kind_label(r.kind);
    j["tolerance"] = r.error;
    j["module"] = r.module;
    ordered_json ing = ordered_json::object();
    for (const auto& [k, v] : r.ingredients) ing[k] = v;
    j["ingredients"] = ing;
    return j;
}

ordered_json ratio_json(const RatioResult& r, const std::string& family) {
    ordered_json j;
    j["family"] = family;
    j["functional"] = r.functional;
    j["value"] = r.value;
    j["tolerance"] = r.error_estimate;
    j["module"] = "functionals";
    j["method"] = r.method;
    j["numerator"] = r.numerator;
    j["l1"] = r.l1;
    j["l2"] = r.l2;
    j["argmin"] = r.argmin;
    j["fourier_numerator"] = r.fourier_numerator;
    j["fourier_tolerance"] = r.fourier_error;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + '"';
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Outputs {
    const RunConfig& c;

    void json_report(const ordered_json& report) const {
        std::string path = c.json;
        if (path.empty() && !c.out.empty()) path = c.out + "/" + c.command + ".json";
        if (!path.empty()) write_atomic(path, report.dump(2) + "\n");
    }

    void csv(const std::string& name, const std::string& content) const {
        if (!c.out.empty()) write_atomic(c.out + "/" + name, content);
    }
};

Weight parse_weight(const RunConfig& c) {
    if (c.weight == "interval") return IntervalWeight{};
    if (c.weight == "gaussian") return GaussianWeight{c.a};
    throw ConfigError("unknown weight '" + c.weight + "' (expected interval|gaussian)", "weight", 0);
}

AnalyticFamily parse_family(const RunConfig& c) {
    if (c.family == "gaussian") return GaussianFamily{c.b};
    if (c.family == "indicator") return IndicatorFamily{c.half_width};
    if (c.family == "piecewise") {
        if (c.values.empty()) throw ConfigError("piecewise family needs --values", "values", 0);
        return PiecewiseConstantFamily{c.half_width, c.values};
    }
    if (c.family == "bs-example") return BSExample{};
    throw ConfigError("unknown family '" + c.family + "' (expected gaussian|indicator|piecewise|bs-example)",
                      "family", 0);
}

BumpFunction parse_bump(const std::string& name, double scale) {
    if (name == "standard") return StandardBump{scale};
    if (name == "cosine") return CosineBump{scale};
    if (name.rfind("beta", 0) == 0 && name.size() > 4) {
        try {
            std::size_t used = 0;
            const int k = std::stoi(name.substr(4), &used);
            if (used == name.size() - 4) return BetaPowerBump{k, scale};
        } catch (const std::logic_error&) {
        }
    }
    throw ConfigError("unknown bump '" + name + "' (expected standard|cosine|betaK)", "bump", 0);
}

// --- commands ----------------------------------------------------------------

int cmd_constants(const RunConfig& c, std::ostream& out) {
    const Weight w = parse_weight(c);
    const auto table = constants_table(w, c.p_min, c.p_max);
    check_table_consistency(table);

    out << "constants, weight " << weight_label(w) << "\n";
    out << std::setprecision(10);
    for (const auto& r : table)
        out << "  " << std::left << std::setw(26) << r.name << std::right << std::setw(16) << r.value << "  "
            << kind_label(r.kind) << "  +/- " << std::setprecision(2) << r.error << std::setprecision(10) << '\n';

    std::ostringstream csv;
    csv << "p,K_p,I_w_p,C_p\r\n";
    std::vector<double> ps;
    for (double p = c.p_min; p < c.p_max - 1e-12; p += 0.25) ps.push_back(p);
    ps.push_back(c.p_max);
    ordered_json sweep = ordered_json::array();
    for (double p : ps) {
        const BoundReport m = mixed_norm_coefficient(w, p);
        const BoundReport cp = mean_upper_constant(w, p);
        csv << num(p) << ',' << num(m.ingredients.at("K_p")) << ',' << num(m.ingredients.at("I_w_p")) << ','
            << num(cp.value) << "\r\n";
        sweep.push_back(bound_json(cp));
    }

    ordered_json report = report_header(c);
    report["weight"] = weight_label(w);
    ordered_json arr = ordered_json::array();
    for (const auto& r : table) arr.push_back(bound_json(r));
    report["constants"] = arr;
    report["sweep"] = sweep;
    const Outputs o{c};
    o.json_report(report);
    o.csv("constants_sweep.csv", csv.str());
    return kExitOk;
}

int cmd_roots(const RunConfig& c, std::ostream& out) {
    const auto reports = root_reports();
    out << std::setprecision(12);
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        out << "  " << std::left << std::setw(16) << r.name << std::right << r.value << '\n';
        arr.push_back(bound_json(r));
    }
    const SincRoots& s = sinc_min_roots();
    out << "  residual        " << s.residual << "\n  sinc residual   " << s.sinc_residual << '\n';
    ordered_json report = report_header(c);
    report["roots"] = arr;
    report["residual"] = s.residual;
    report["sinc_residual"] = s.sinc_residual;
    Outputs{c}.json_report(report);
    return kExitOk;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
    const AnalyticFamily fam = parse_family(c);
    const Functional which = parse_functional(c.functional);
    EvalOptions opt;
    opt.a = c.a;
    opt.fourier_tol = c.tol;
    opt.fourier_side = std::holds_alternative<PiecewiseConstantFamily>(fam) &&
                       (which == Functional::mean || which == Functional::gauss);
    const RatioResult r = evaluate(which, fam, opt);
    out << std::setprecision(12) << family_label(fam) << ' ' << r.functional << " = " << r.value << "  (+/- "
        << std::setprecision(2) << r.error_estimate << ", " << r.method << ")\n";
    if (!std::isnan(r.fourier_numerator)) {
        const double denom = r.l1 * r.l2;
        out << std::setprecision(12) << "  Fourier side " << r.fourier_numerator / denom << "  (+/- "
            << std::setprecision(2) << r.fourier_error / denom << ")\n";
    }
    ordered_json report = report_header(c);
    report["result"] = ratio_json(r, family_label(fam));
    report["ceiling"] = ceiling(which, c.a);
    Outputs{c}.json_report(report);
    return kExitOk;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
    Objective obj;
    obj.functional = parse_functional(c.functional);
    obj.a = c.a;
    SearchFamilySpec spec;
    spec.kind = parse_search_family(c.family);
    spec.cells = c.cells;
    if (spec.kind == SearchFamily::piecewise) {
        if (c.support == "free") {
            spec.free_support = true;
        } else {
            try {
                std::size_t used = 0;
                spec.half_width = std::stod(c.support, &used);
                if (used != c.support.size()) throw std::invalid_argument(c.support);
            } catch (const std::logic_error&) {
                throw ConfigError("support must be 'free' or a positive half-width, got '" + c.support + "'",
                                  "support", 0);
            }
        }
    }
    const Baseline base = baseline(obj, spec);
    const SearchRecord rec = search(obj, spec, *c.budget, c.seed);

    const double again = evaluate_objective(obj, spec, rec.best_theta);
    if (std::abs(again - rec.best_value) > 1e-10)
        throw InvariantViolation("search re-evaluation", "best_value " + num(rec.best_value) +
                                                             " re-evaluates to " + num(again));
    const double ceil = ceiling(obj.functional, obj.a);
    if (rec.best_value > ceil + 1e-4)
        throw InvariantViolation("ceiling " + objective_label(obj),
                                 "search reached " + num(rec.best_value) + " above " + num(ceil));

    out << std::setprecision(10) << rec.objective << " over " << rec.family << " (dimension " << rec.dimension
        << "): best " << rec.best_value << " after " << rec.evaluations << " evaluations\n"
        << "  baseline " << base.value << " (" << base.source << ")\n  params";
    for (double p : rec.best_params) out << ' ' << p;
    out << '\n';

    ordered_json report = report_header(c);
    ordered_json r;
    r["objective"] = rec.objective;
    r["family"] = rec.family;
    r["dimension"] = rec.dimension;
    r["best_value"] = rec.best_value;
    r["tolerance"] = 1e-10;
    r["module"] = "search";
    r["best_params"] = rec.best_params;
    r["best_theta"] = rec.best_theta;
    r["evaluations"] = rec.evaluations;
    r["seed"] = rec.seed;
    r["restarts"] = rec.restarts;
    r["best_restart"] = rec.best_restart;
    r["baseline"] = {{"value", base.value}, {"source", base.source}};
    r["ceiling"] = ceil;
    ordered_json trace = ordered_json::array();
    for (const auto& [k, v] : rec.trace) trace.push_back({k, v});
    r["trace"] = trace;
    report["search"] = r;
    const Outputs o{c};
    o.json_report(report);
    o.csv("search_trace.csv", trace_csv(rec));
    return kExitOk;
}

int cmd_dual(const RunConfig& c, std::ostream& out) {
    std::vector<BumpFunction> bumps;
    if (c.bump.empty()) bumps = {StandardBump{c.scale}, CosineBump{c.scale}, BetaPowerBump{2, c.scale}};
    else bumps = {parse_bump(c.bump, c.scale)};

    std::ostringstream csv;
    csv << "bump,pos_mass,bound,margin\r\n";
    ordered_json arr = ordered_json::array();
    out << std::setprecision(10);
    std::string breach;
    for (const auto& phi : bumps) {
        const PositivePartReport p = positive_part_mass(phi, c.tol);
        const NegativePartReport n = negative_part_bound_check(phi, c.tol);
        const double margin = p.positive - p.bound;
        out << "  " << std::left << std::setw(16) << p.bump << std::right << " pos " << p.positive << "  bound "
            << p.bound << "  margin " << margin << "  refined " << p.refined_bound << "  identity "
            << std::setprecision(2) << p.identity_residual << std::setprecision(10) << '\n';
        csv << csv_field(p.bump) << ',' << num(p.positive) << ',' << num(p.bound) << ',' << num(margin) << "\r\n";
        ordered_json j;
        j["bump"] = p.bump;
        j["module"] = "dualcheck";
        j["positive"] = p.positive;
        j["negative"] = p.negative;
        j["tolerance"] = p.error;
        j["phi0"] = p.phi0;
        j["cutoff"] = p.cutoff;
        j["sign_changes"] = p.sign_changes;
        j["bound"] = p.bound;
        j["refined_bound"] = p.refined_bound;
        j["margin"] = margin;
        j["identity_residual"] = p.identity_residual;
        j["negative_chain"] = {{"lhs", n.lhs},
                               {"time_side", n.time_side},
                               {"intermediate", n.intermediate},
                               {"bound", n.bound},
                               {"identity_residual", n.identity_residual},
                               {"tolerance", n.error}};
        arr.push_back(j);
        if (breach.empty()) {
            if (p.positive < p.bound - 1e-4) breach = p.bump + ": positive-part mass below the bound";
            else if (p.positive < p.refined_bound - 1e-4) breach = p.bump + ": positive-part mass below the refined bound";
            else if (p.identity_residual > 1e-8) breach = p.bump + ": pos - neg != phi(0)";
            else if (!(n.lhs <= n.intermediate && n.intermediate <= n.bound)) breach = p.bump + ": negative-part chain";
        }
    }
    const Case2bbScan scan = case2bb_scan();
    out << "  two-atom candidate: min residual " << scan.min_residual << " at a = " << scan.argmin_a << '\n';

    ordered_json report = report_header(c);
    report["bumps"] = arr;
    report["case2bb"] = {{"module", "dualcheck"},
                         {"min_residual", scan.min_residual},
                         {"argmin_a", scan.argmin_a},
                         {"a", scan.a},
                         {"residual", scan.residual}};
    const Outputs o{c};
    o.json_report(report);
    o.csv("dual.csv", csv.str());
    if (!breach.empty()) throw InvariantViolation("dual bound", breach);
    if (scan.min_residual < 0.01) throw InvariantViolation("two-atom residual", "min residual " + num(scan.min_residual));
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    VerifyOptions opt;
    opt.only = c.criteria;
    for (int id : opt.only)
        if (id < 1 || id > 9) throw ConfigError("criterion " + std::to_string(id) + " out of range 1..9", "criteria", 0);
    opt.fault = c.inject_fault;
    opt.search_seed = c.seed;
    const auto results = run_acceptance(opt);
    out << format_table(results);

    ordered_json report = report_header(c);
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
        ordered_json j;
        j["id"] = r.id;
        j["title"] = r.title;
        j["pass"] = r.pass;
        j["error"] = r.error;
        ordered_json checks = ordered_json::array();
        for (const auto& k : r.checks)
            checks.push_back({{"name", k.name},
                              {"measured", k.measured},
                              {"expected", k.expected},
                              {"tolerance", k.tolerance},
                              {"relation", relation_label(k.relation)},
                              {"provenance", k.provenance},
                              {"module", k.module},
                              {"pass", k.pass}});
        j["checks"] = checks;
        arr.push_back(j);
    }
    report["criteria"] = arr;
    report["passed"] = all_passed(results);
    Outputs{c}.json_report(report);

    if (all_passed(results)) return kExitOk;
    for (const auto& r : results)
        if (!r.pass) err << "criterion " << r.id << " failed: " << r.title << '\n';
    return kExitInvariant;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig c = resolve(config);
        if (c.command == "constants") return cmd_constants(c, out);
        if (c.command == "roots") return cmd_roots(c, out);
        if (c.command == "evaluate") return cmd_evaluate(c, out);
        if (c.command == "search") return cmd_search(c, out);
        if (c.command == "dual") return cmd_dual(c, out);
        if (c.command == "verify") return cmd_verify(c, out, err);
        err << "error: unknown command '" << c.command << "'\n";
        return kExitBadInput;
    } catch (const InvariantViolation& e) {
        err << "invariant breached: " << e.invariant() << "\n  " << e.what() << '\n';
        return kExitInvariant;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitInvariant;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constants, evaluations, searches and dual checks for autocorrelation inequalities"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig flags;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;
    auto add = [&](const std::string& name, auto RunConfig::*member, const std::string& help) {
        CLI::Option* o = app.add_option(name, flags.*member, help);
        setters.emplace_back(o, [member, &flags](RunConfig& c) { c.*member = flags.*member; });
        return o;
    };
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override its values)");
    add("--weight", &RunConfig::weight, "interval|gaussian")->capture_default_str();
    add("--a", &RunConfig::a, "Gaussian weight parameter")->capture_default_str();
    add("--p-min", &RunConfig::p_min, "lower end of the exponent range")->capture_default_str();
    add("--p-max", &RunConfig::p_max, "upper end of the exponent range")->capture_default_str();
    add("--family", &RunConfig::family, "gaussian|indicator|piecewise|bs-example");
    add("--functional", &RunConfig::functional, "mean|gauss|min12|min01");
    add("--cells", &RunConfig::cells, "piecewise search cells")->capture_default_str();
    add("--support", &RunConfig::support, "piecewise search support: free or a half-width");
    add("--b", &RunConfig::b, "Gaussian family exponent")->capture_default_str();
    add("--half-width", &RunConfig::half_width, "indicator / piecewise half-width")->capture_default_str();
    add("--values", &RunConfig::values, "piecewise cell values")->delimiter(',');
    add("--bump", &RunConfig::bump, "standard|cosine|betaK");
    add("--scale", &RunConfig::scale, "bump scale in (0, 1]")->capture_default_str();
    add("--budget", &RunConfig::budget, "search evaluations (default 500, piecewise 20000)");
    add("--seed", &RunConfig::seed, "search seed")->capture_default_str();
    add("--tol", &RunConfig::tol, "quadrature tolerance")->capture_default_str();
    add("--criteria", &RunConfig::criteria, "verify: criteria to run")->delimiter(',');
    add("--out", &RunConfig::out, "report directory");
    add("--json", &RunConfig::json, "JSON report path");
    CLI::Option* fault = add("--inject-fault", &RunConfig::inject_fault, "verify: corrupt a criterion (test mode)");

    for (const char* name : {"constants", "roots", "evaluate", "search", "dual", "verify"}) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    RunConfig c;
    try {
        if (!config_path.empty()) c = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    for (auto& [o, set] : setters)
        if (o->count() > 0) set(c);
    c.command = app.get_subcommands().front()->get_name();
    if (fault->count() > 0) {
        const char* mode = std::getenv("AUTOCORR_TEST_MODE");
        if (!mode || std::string(mode) != "1") {
            err << "error: --inject-fault requires AUTOCORR_TEST_MODE=1\n";
            return kExitBadInput;
        }
    }
    return run(c, out, err);
}

}  // namespace autocorr::cli
