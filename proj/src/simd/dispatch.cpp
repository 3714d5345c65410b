#include <cstdlib>
#include <cstring>

#include "autocorr/errors.hpp"
#include "autocorr/simd/kernels.hpp"

namespace autocorr::simd {

bool backend_supported(Backend b) noexcept {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

std::string_view backend_name(Backend b) noexcept {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

const KernelTable& kernels(Backend b) {
    if (!backend_supported(b))
        throw PreconditionError("SIMD backend '" + std::string(backend_name(b)) +
                                "' is not supported on this CPU");
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2) return detail::kAvx2Table;
#endif
    return detail::kScalarTable;
}

const KernelTable& kernels() noexcept {
    static const KernelTable& active = []() -> const KernelTable& {
        const char* forced = std::getenv("AUTOCORR_SIMD");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return detail::kScalarTable;
        if (backend_supported(Backend::avx2)) return kernels(Backend::avx2);
        return detail::kScalarTable;
    }();
    return active;
}

}  // namespace autocorr::simd
