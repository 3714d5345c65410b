#include <chrono>
#include <iostream>

#include "autocorr/verify.hpp"

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = autocorr::run_acceptance();
    std::cout << autocorr::format_table(results);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = autocorr::all_passed(results);
    std::cout << (ok ? "ALL PASS" : "SOME FAIL") << " in " << secs << " s\n";
    return ok ? 0 : 1;
}
