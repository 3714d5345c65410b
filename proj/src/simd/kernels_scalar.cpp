#include <cmath>
#include <numbers>

#include "autocorr/simd/kernels.hpp"

namespace autocorr::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

void phase_sum_scalar(const double* values, std::size_t n, double x0, double dx, const double* xi,
                      std::size_t count, double* re, double* im) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < count; ++k) {
        const double w = two_pi * xi[k];
        const double rc = std::cos(w * dx), rs = -std::sin(w * dx);
        double acc_re = 0.0, acc_im = 0.0;
        double zc = 0.0, zs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j % kPhaseReseed == 0) {
                const double phase = w * (x0 + static_cast<double>(j) * dx);
                zc = std::cos(phase);
                zs = -std::sin(phase);
            }
            acc_re += values[j] * zc;
            acc_im += values[j] * zs;
            const double nc = zc * rc - zs * rs;
            zs = zc * rs + zs * rc;
            zc = nc;
        }
        re[k] = acc_re;
        im[k] = acc_im;
    }
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{Backend::scalar, &dot_scalar, &sum_scalar, &phase_sum_scalar};
}

}  // namespace autocorr::simd
