#pragma once

// Exact scalar fields: F_p, Q, and simple extensions k[z]/(m(z)) of either.
//
// Every scalar is stored as its coordinate vector over the prime subfield
// (F_p or Q) in the power basis 1, z, ..., z^(l-1); l = 1 for non-extensions.
// A Scalar keeps a raw pointer to its owning Field, so the Field (held by a
// FieldPtr somewhere) must outlive every scalar built from it.

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "drt/error.hpp"

namespace drt {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Scalar {
public:
    Scalar() = default;

    const Field* field() const noexcept { return f_; }
    bool valid() const noexcept { return f_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    std::span<const std::uint32_t> residues() const noexcept { return {r_.data(), r_.size()}; }
    const std::vector<mpq_class>& rationals() const noexcept { return q_; }

    std::string str() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);  // arbitrary total order

private:
    friend class Field;
    const Field* f_ = nullptr;
    boost::container::small_vector<std::uint32_t, 2> r_;
    std::vector<mpq_class> q_;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    enum class Kind { Prime, Rationals, Extension };

    static FieldPtr prime(std::uint32_t p);
    static FieldPtr rationals();
    // minpoly: coefficients over `base`, constant term first, leading 1 last.
    // The base must be F_p or Q (towers are flattened by the caller).
    static FieldPtr extension(const FieldPtr& base, const std::vector<Scalar>& minpoly,
                              bool assume_irreducible = false);

    Kind kind() const noexcept { return kind_; }
    bool is_extension() const noexcept { return kind_ == Kind::Extension; }
    // 0 for fields built on Q.
    std::uint32_t characteristic() const noexcept { return p_; }
    bool finite() const noexcept { return p_ != 0; }
    // Degree over the base field (1 for F_p and Q).
    std::size_t degree() const noexcept { return deg_; }
    // q for finite fields (capped at 2^63), 0 otherwise.
    std::uint64_t order() const noexcept { return order_; }
    const FieldPtr& base() const noexcept { return base_; }
    // Minimal polynomial over the base (extensions only), constant first.
    const std::vector<Scalar>& minpoly() const noexcept { return minpoly_; }

    FieldPtr ptr() const { return shared_from_this(); }
    bool same(const Field& o) const noexcept;
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar from_rational(const mpq_class& v) const;  // Q-based fields only
    Scalar generator() const;                        // z; extensions only
    Scalar embed(const Scalar& base_elem) const;     // base -> this
    Scalar from_coords(std::span<const Scalar> coords) const;  // coords over base
    std::vector<Scalar> coordinates(const Scalar& x) const;    // extensions only
    Scalar from_residues(std::span<const std::uint32_t> digits) const;  // finite only

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    Scalar pow(Scalar a, std::uint64_t e) const;
    bool is_zero(const Scalar& a) const;

    // Finite fields: bijection {0..q-1} <-> F_q via base-p digits of the coordinates.
    Scalar element(std::uint64_t index) const;
    std::uint64_t index_of(const Scalar& a) const;
    Scalar multiplicative_generator() const;

    std::string format(const Scalar& a) const;

private:
    Field() = default;
    void check_owner(const Scalar& a) const;
    Scalar blank() const;

    Kind kind_ = Kind::Prime;
    std::uint32_t p_ = 0;
    std::size_t deg_ = 1;
    std::uint64_t order_ = 0;
    FieldPtr base_;
    std::vector<Scalar> minpoly_;
    // minpoly over the prime subfield, monic, constant first (length deg_ + 1)
    std::vector<std::uint32_t> mod_r_;
    std::vector<mpq_class> mod_q_;
};

bool is_prime(std::uint64_t n);

}  // namespace drt
