#pragma once

// The acceptance suite: nine criteria, each a list of measured-vs-expected checks with the
// tolerance pinned here and the module that produced the number.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace autocorr {

enum class Relation {
    near,      // |measured - expected| <= tolerance
    at_least,  // measured >= expected - tolerance
    at_most,   // measured <= expected + tolerance
};

const char* relation_label(Relation r);

struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::near;
    std::string provenance;  // "published", "derived" or "property"
    std::string module;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    bool pass = false;
    double seconds = 0.0;
    std::string error;  // exception text when the criterion could not run
};

struct VerifyOptions {
    std::vector<int> only;                 // empty: all criteria
    int fault = 0;                         // corrupt the first measured value of this criterion
    std::uint64_t property_seed = 20240601;
    std::size_t property_cases = 200;
    std::size_t periodization_cases = 50;
    std::size_t search_budget_1d = 500;
    std::size_t search_budget_piecewise = 20000;
    std::uint64_t search_seed = 1;
    unsigned threads = 0;
};

bool evaluate_check(Check& c);

CriterionResult run_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

// One line per criterion ("PASS"/"FAIL"), followed by its checks.
std::string format_table(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace autocorr
