#pragma once

// Data-parallel inner loops shared by the correlation and Fourier engines.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2+FMA variant
// compiled in its own translation unit. The active table is chosen once at startup
// from CPUID; AUTOCORR_SIMD=scalar forces the reference path. Variants agree to a
// few ulps per accumulated term, not bitwise (they associate sums differently).

#include <cstddef>
#include <string_view>

namespace autocorr::simd {

enum class Backend { scalar, avx2 };

struct KernelTable {
    Backend backend;

    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);

    // For k < count:  re[k] + i*im[k] = sum_j values[j] * exp(-2 pi i (x0 + j*dx) * xi[k]).
    // The phase is advanced by complex recurrence and re-seeded exactly every
    // kPhaseReseed terms to bound drift.
    void (*phase_sum)(const double* values, std::size_t n, double x0, double dx, const double* xi,
                      std::size_t count, double* re, double* im);
};

inline constexpr std::size_t kPhaseReseed = 64;

bool backend_supported(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

// The table selected for this process.
const KernelTable& kernels() noexcept;

// A specific backend's table; throws PreconditionError if the CPU lacks it.
const KernelTable& kernels(Backend b);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace autocorr::simd
