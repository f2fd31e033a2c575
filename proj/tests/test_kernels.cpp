#include <doctest.h>

#include <random>
#include <vector>

#include "drt/kernels.hpp"

using namespace drt;

TEST_CASE("scalar kernels match a direct reference") {
    std::mt19937 rng(5);
    for (std::uint32_t p : {2u, 3u, 7u, 251u, 32749u}) {
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 33u}) {
            std::vector<std::uint32_t> a(n), b(n), ref(n);
            for (std::size_t j = 0; j < n; ++j) a[j] = rng() % p, b[j] = rng() % p;
            std::uint32_t c = rng() % p;
            for (std::size_t j = 0; j < n; ++j) ref[j] = std::uint32_t((a[j] + std::uint64_t(c) * b[j]) % p);
            kernels::scalar::axpy_mod(a.data(), b.data(), c, p, n);
            CHECK(a == ref);
        }
    }
}

#if defined(__x86_64__) || defined(__i386__)
TEST_CASE("avx2 kernels agree with scalar kernels") {
    if (!kernels::avx2_available()) return;
    std::mt19937 rng(9);
    for (int trial = 0; trial < 400; ++trial) {
        std::uint32_t p = trial % 4 == 0 ? 32749u : 2u + rng() % (kernels::kMaxModulus - 2);
        std::size_t n = rng() % 70;
        std::vector<std::uint32_t> a(n), b(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = rng() % p, b[j] = rng() % p;
        // extreme values exercise the reduction corrections
        if (n > 0) a[0] = p - 1, b[0] = p - 1;
        std::uint32_t c = trial % 3 == 0 ? p - 1 : rng() % p;
        auto s = a, v = a;
        kernels::scalar::axpy_mod(s.data(), b.data(), c, p, n);
        kernels::avx2::axpy_mod(v.data(), b.data(), c, p, n);
        CHECK(s == v);
        kernels::scalar::scale_mod(s.data(), c, p, n);
        kernels::avx2::scale_mod(v.data(), c, p, n);
        CHECK(s == v);
    }
}
#endif

TEST_CASE("dispatch can be pinned") {
    kernels::force_isa(kernels::Isa::Scalar);
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
    kernels::reset_isa();
    CHECK((kernels::active_isa() == kernels::Isa::Avx2) == kernels::avx2_available());
}
