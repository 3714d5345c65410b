#pragma once

// Derivative-free maximization of a functional over a parametrized nonnegative family.
//
// Nelder-Mead with dimension-adaptive coefficients on unconstrained parameters theta;
// family parameters are theta^2 (cell values, A, b) so nonnegativity is automatic.
// Restarts run concurrently and are merged deterministically.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "autocorr/functionals.hpp"

namespace autocorr {

enum class SearchFamily { indicator, gaussian, piecewise };

const char* search_family_label(SearchFamily f);
SearchFamily parse_search_family(const std::string& label);

struct SearchFamilySpec {
    SearchFamily kind = SearchFamily::piecewise;
    std::size_t cells = 16;     // piecewise only
    double half_width = 0.5;    // piecewise support [-S, S] when the support is fixed
    bool free_support = false;  // piecewise: S = 1/2 + theta_S^2 becomes a parameter
};

struct Objective {
    Functional functional = Functional::min01;
    double a = 2.0 * 3.14159265358979323846;  // gauss only
};

std::string objective_label(const Objective& o);

// Family dimension (number of theta parameters).
std::size_t dimension(const SearchFamilySpec& spec);

// The family member encoded by theta.
AnalyticFamily decode(const SearchFamilySpec& spec, const std::vector<double>& theta);

// Family parameters (A, b, or cell values followed by S) encoded by theta.
std::vector<double> family_params(const SearchFamilySpec& spec, const std::vector<double>& theta);

// Objective value of a family member; zero functions score -inf. InvariantViolation and
// numeric failures are rethrown as InvariantViolation naming the parameter vector.
double evaluate_objective(const Objective& obj, const SearchFamilySpec& spec,
                          const std::vector<double>& theta);

struct SearchRecord {
    std::string objective;
    std::string family;
    std::size_t dimension = 0;
    std::vector<double> best_params;
    std::vector<double> best_theta;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    std::size_t best_restart = 0;
    std::vector<std::pair<std::size_t, double>> trace;  // (evaluation index, best value so far)
};

struct Baseline {
    double value = 0.0;
    std::vector<double> theta;  // starting point of the first restart
    std::string source;
};

// Known floor for (objective, family): a dense 1-D scan for indicator and Gaussian. Piecewise
// families start from the BS example's cell averages (min01) or the indicator optimum, and
// the floor is the value of that start point within the family.
Baseline baseline(const Objective& obj, const SearchFamilySpec& spec);

// Precondition: budget >= 100. threads = 0 uses AUTOCORR_THREADS or the hardware count.
SearchRecord search(const Objective& obj, const SearchFamilySpec& spec, std::size_t budget,
                    std::uint64_t seed, unsigned threads = 0);

// Worker count: AUTOCORR_THREADS if set (>= 1), else hardware concurrency, capped by `tasks`.
unsigned worker_count(std::size_t tasks);

// RFC-4180 CSV with header eval_index,best_value.
std::string trace_csv(const SearchRecord& record);

}  // namespace autocorr
