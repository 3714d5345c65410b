#pragma once

// Explicit constants of the autocorrelation inequalities.
//
//   K_p   = (2p)^{1/p} (p-1)^{(p-1)/(2p)} (p+1)^{-(p+1)/(2p)}
//   c_p   = K_p I_w(p)^{1/p}                      mixed-norm coefficient
//   C_p   = c_p^{p/(2(p-1))}                      mean-functional constant
//   theta = -min_{x>0} sin(x)/x, attained at y0 = tan(y0)

#include <map>
#include <string>
#include <vector>

#include "autocorr/spectral.hpp"

namespace autocorr {

enum class BoundKind { upper_bound, lower_bound, root, constant };

const char* kind_label(BoundKind k);

struct BoundReport {
    std::string name;
    double value = 0.0;
    BoundKind kind = BoundKind::constant;
    std::map<std::string, double> ingredients;
    double error = 0.0;  // numerical error bound on value
    std::string module = "constants";
};

// Throws DomainError for p <= 1.
double hy_coefficient(double p);

// c_p(w) = K_p I_w(p)^{1/p}.
BoundReport mixed_norm_coefficient(const Weight& w, double p, double tol = 1e-11);

// C_p(w). Throws DomainError for p < 2.
BoundReport mean_upper_constant(const Weight& w, double p, double tol = 1e-11);

// inf of C_p(w) over [p_min, p_max]: coarse grid of step 0.25, then golden section to p_tol.
BoundReport minimize_over_p(const Weight& w, double p_min = 2.0, double p_max = 12.0,
                            double p_tol = 1e-6);

struct SincRoots {
    double y0 = 0.0;      // root of y cos y - sin y in (pi, 3 pi/2)
    double theta0 = 0.0;  // -sin(y0)/y0
    double xi0 = 0.0;     // y0/(2 pi)
    double alpha0 = 0.0;  // 1/(2 xi0)
    double residual = 0.0;       // |y0 cos y0 - sin y0|
    double sinc_residual = 0.0;  // |sin(2 pi xi0)/(2 pi xi0) + theta0|
};

const SincRoots& sinc_min_roots();
std::vector<BoundReport> root_reports();

// value = 1/(1+theta0) (length-2 window); ingredient "half_window" = 1/(2(1+theta0)).
BoundReport min_l1_constant();

// L^alpha c_p^{1-alpha}, alpha = (p-2)/(2(p-1)): interpolation of the l1 bound L with the
// mixed-norm coefficient at exponent p. Defaults reproduce the p = pi constant.
BoundReport min_mixed_constant(double p = 3.14159265358979323846, double l1_constant = 0.0);

// sup_{A >= 1/4} (2A - 1/2) / (2A)^{3/2}; ingredient "A" holds the maximizer.
BoundReport indicator_min_lower();

// a^{1/4} pi^{-1/4} 2^{-1/2}, the Gaussian-weight ratio of e^{-b x^2} at b = 2a.
BoundReport gaussian_mean_lower(double a);

// Closed-form Gaussian-weight ratio of e^{-b x^2}.
double gaussian_mean_ratio(double a, double b);

struct ScanResult {
    double argmax = 0.0;
    double value = 0.0;
};

// Log-spaced scan of gaussian_mean_ratio over b in [lo, hi].
ScanResult gaussian_mean_scan(double a, double lo, double hi, std::size_t points);

// Candidate readings of the printed Gaussian-weight constant.
enum class GaussianParse {
    pi_times_power,  // (4ap(p-1)^{p-1} / (pi (p+1)^{p+1}))^{1/(4(p-1))}
    pi_p_plus_one,   // (4ap(p-1)^{p-1} / (pi p + 1)^{p+1})^{1/(4(p-1))}
    pi_p_plus_pi,    // (4ap(p-1)^{p-1} / (pi (p + 1))^{p+1})^{1/(4(p-1))}
};

const char* parse_label(GaussianParse parse);
double gaussian_upper_printed(double a, double p, GaussianParse parse);

// The emitted constants table for one weight, including both printings of the
// interval-weight infimum (0.864 and 0.8641).
std::vector<BoundReport> constants_table(const Weight& w, double p_min = 2.0, double p_max = 12.0);

// Consistency pairs lower <= upper across the emitted table; throws InvariantViolation.
void check_table_consistency(const std::vector<BoundReport>& table);

}  // namespace autocorr
