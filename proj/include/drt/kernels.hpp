#pragma once

// Residue-vector kernels used by prime-field elimination and by the
// enumeration sweep.  A scalar reference implementation is always built; an
// AVX2 variant is compiled with a function-level target attribute and chosen
// at runtime when the CPU supports it.

#include <cstddef>
#include <cstdint>

namespace drt::kernels {

// Largest modulus the kernels accept: products c*x stay below 2^30 and the
// AVX2 float-quotient reduction stays within one correction step.
inline constexpr std::uint32_t kMaxModulus = 1u << 15;

enum class Isa { Scalar, Avx2 };

bool avx2_available() noexcept;

// The ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

// Pin dispatch to one ISA (tests use this to compare variants). Requesting
// Avx2 on a CPU without it falls back to Scalar.
void force_isa(Isa isa) noexcept;
void reset_isa() noexcept;

// dst[j] = (dst[j] + c * src[j]) mod p.  Entries of dst and src must be < p.
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) noexcept;

// dst[j] = (c * dst[j]) mod p.
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) noexcept;

namespace scalar {
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) noexcept;
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) noexcept;
void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace drt::kernels
