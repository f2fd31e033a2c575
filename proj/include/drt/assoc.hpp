#pragma once

// Finite-dimensional associative unital algebras given by structure
// constants, and the Krull-Schmidt toolkit on top of them: Jacobson radical,
// local-ring test, primitive idempotents lifted through the radical.
//
// Endomorphism algebras of modules and complexes are fed through this layer,
// so every decomposition in the library reduces to these routines.

#include <optional>
#include <vector>

#include "drt/matrix.hpp"
#include "drt/poly.hpp"

namespace drt {

// Coordinates with respect to a fixed independent family of vectors.
class CoordMap {
public:
    CoordMap() = default;
    CoordMap(const Field& f, std::vector<Vec> basis, std::size_t ambient);

    std::size_t size() const noexcept { return basis_.size(); }
    std::size_t ambient() const noexcept { return ambient_; }
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    // Coordinates of v, assuming v lies in the span (not checked).
    Vec coords(const Vec& v) const;
    // Coordinates of v, or nullopt when v is outside the span.
    std::optional<Vec> try_coords(const Vec& v) const;
    Vec combine(const Vec& coords) const;

private:
    const Field* f_ = nullptr;
    std::vector<Vec> basis_;
    std::size_t ambient_ = 0;
    std::vector<std::size_t> rows_;  // ambient positions where the basis is invertible
    Matrix inv_;                     // inverse of the basis restricted to rows_
};

class AssocAlgebra {
public:
    AssocAlgebra() = default;
    // table[i * dim + j] = coordinates of b_i * b_j.
    AssocAlgebra(const Field& f, std::size_t dim, std::vector<Vec> table, Vec unit);

    const Field& field() const { return *f_; }
    std::size_t dim() const noexcept { return dim_; }
    const Vec& one() const noexcept { return unit_; }
    Vec zero() const { return zero_vec(*f_, dim_); }
    Vec basis(std::size_t i) const { return unit_vec(*f_, dim_, i); }
    const Vec& product_of_basis(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec mul(const Vec& a, const Vec& b) const;
    Vec pow(const Vec& a, std::size_t e) const;
    Matrix left_mult(const Vec& a) const;
    bool is_commutative() const;
    // Full check when dim <= 8, otherwise a deterministic sample of triples.
    bool check_associative() const;
    std::optional<Vec> inverse(const Vec& a) const;
    bool is_idempotent(const Vec& e) const { return mul(e, e) == e; }
    // Monic minimal polynomial of a over the base field.
    poly::Poly minimal_polynomial(const Vec& a) const;

    // Subalgebra e A e for an idempotent e, with its own coordinates.
    struct Corner;
    Corner corner(const Vec& e) const;

private:
    const Field* f_ = nullptr;
    std::size_t dim_ = 0;
    std::vector<Vec> table_;
    Vec unit_;
};

struct AssocAlgebra::Corner {
    AssocAlgebra algebra;
    CoordMap embedding;  // corner coordinates <-> ambient coordinates
};

// Basis of the Jacobson radical (trace form in characteristic 0, the
// iterated p-adic trace method over finite fields).
std::vector<Vec> jacobson_radical(const AssocAlgebra& e);

// The semisimple quotient E / rad E with a section back into E.
struct SemisimpleQuotient {
    AssocAlgebra algebra;
    std::vector<Vec> lifts;   // lifts[i] in E maps to basis vector i of the quotient
    CoordMap full;            // coordinates over [lifts..., radical...]
    std::vector<Vec> radical;
    Vec project(const Vec& x) const;  // E -> quotient coordinates
    Vec lift(const Vec& s) const;     // quotient -> E (via the section)
};
SemisimpleQuotient semisimple_quotient(const AssocAlgebra& e);

// For a semisimple algebra: a nontrivial idempotent, or nullopt when the
// algebra is a division ring.  Throws Unsupported when splitting cannot be
// decided over the field (some characteristic-0 cases).
std::optional<Vec> split_idempotent(const AssocAlgebra& s);

bool is_local(const AssocAlgebra& e);

// Complete family of primitive orthogonal idempotents of E summing to 1,
// computed in E / rad E and lifted with e <- 3e^2 - 2e^3.
std::vector<Vec> primitive_idempotents(const AssocAlgebra& e);

// Lift orthogonal idempotents of the semisimple quotient (summing to 1) to E.
std::vector<Vec> lift_idempotents(const AssocAlgebra& e, const SemisimpleQuotient& q,
                                  const std::vector<Vec>& quotient_idempotents);

}  // namespace drt
