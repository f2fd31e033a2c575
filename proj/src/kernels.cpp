#include "drt/kernels.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DRT_X86 1
#else
#define DRT_X86 0
#endif

namespace drt::kernels {

namespace scalar {

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) noexcept {
    if (c == 0) return;
    for (std::size_t j = 0; j < n; ++j) dst[j] = (dst[j] + c * src[j]) % p;
}

void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) noexcept {
    for (std::size_t j = 0; j < n; ++j) dst[j] = (c * dst[j]) % p;
}

}  // namespace scalar

#if DRT_X86
namespace avx2 {

namespace {

// x mod p for 0 <= x < p*(p+1), p < 2^15.  The float quotient is off by at
// most one in either direction, so two conditional corrections suffice.
__attribute__((target("avx2"))) inline __m256i reduce(__m256i x, __m256i pv, __m256 inv) {
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(x), inv));
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, pv));
    const __m256i zero = _mm256_setzero_si256();
    for (int k = 0; k < 2; ++k) {
        __m256i neg = _mm256_cmpgt_epi32(zero, r);
        r = _mm256_add_epi32(r, _mm256_and_si256(neg, pv));
        __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(pv, _mm256_set1_epi32(1)));
        r = _mm256_sub_epi32(r, _mm256_and_si256(big, pv));
    }
    return r;
}

}  // namespace

__attribute__((target("avx2"))) void axpy_mod(std::uint32_t* dst, const std::uint32_t* src,
                                              std::uint32_t c, std::uint32_t p,
                                              std::size_t n) noexcept {
    if (c == 0) return;
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(p));
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
        __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(cv, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), reduce(x, pv, inv));
    }
    scalar::axpy_mod(dst + j, src + j, c, p, n - j);
}

__attribute__((target("avx2"))) void scale_mod(std::uint32_t* dst, std::uint32_t c,
                                               std::uint32_t p, std::size_t n) noexcept {
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(p));
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j),
                            reduce(_mm256_mullo_epi32(cv, d), pv, inv));
    }
    scalar::scale_mod(dst + j, c, p, n - j);
}

}  // namespace avx2
#endif

namespace {

bool detect_avx2() noexcept {
#if DRT_X86
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& isa_slot() {
    static std::atomic<Isa> slot{detect_avx2() ? Isa::Avx2 : Isa::Scalar};
    return slot;
}

}  // namespace

bool avx2_available() noexcept {
    static const bool ok = detect_avx2();
    return ok;
}

Isa active_isa() noexcept { return isa_slot().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
    if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
    isa_slot().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { force_isa(avx2_available() ? Isa::Avx2 : Isa::Scalar); }

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) noexcept {
#if DRT_X86
    if (active_isa() == Isa::Avx2) return avx2::axpy_mod(dst, src, c, p, n);
#endif
    scalar::axpy_mod(dst, src, c, p, n);
}

void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) noexcept {
#if DRT_X86
    if (active_isa() == Isa::Avx2) return avx2::scale_mod(dst, c, p, n);
#endif
    scalar::scale_mod(dst, c, p, n);
}

}  // namespace drt::kernels
