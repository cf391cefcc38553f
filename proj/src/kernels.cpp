#include "cologic/kernels.hpp"

#include <cstdlib>
#include <string>

namespace cologic::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::expand_reach, &scalar::contact_row, &scalar::count_join_violations};

#if defined(COLOGIC_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{&avx2::expand_reach, &avx2::contact_row, &avx2::count_join_violations};
#endif

Backend detect()
{
    const char* forced = std::getenv("COLOGIC_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar") {
        return Backend::scalar;
    }
    return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

} // namespace

std::string_view backend_name(Backend b)
{
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b)
{
    if (b == Backend::scalar) {
        return true;
    }
#if defined(COLOGIC_HAVE_AVX2_KERNELS)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& table(Backend b)
{
#if defined(COLOGIC_HAVE_AVX2_KERNELS)
    if (b == Backend::avx2) {
        return kAvx2;
    }
#else
    (void)b;
#endif
    return kScalar;
}

Backend active_backend()
{
    static const Backend chosen = detect();
    return chosen;
}

const KernelTable& active()
{
    return table(active_backend());
}

} // namespace cologic::kernels
