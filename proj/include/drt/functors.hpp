#pragma once

// Base change -(x)_k K and restriction F along a finite separable extension
// K/k, on modules and on complexes of projectives.
//
// As a left A_k-module A_K = sum_i A_k z^i with z^i the power basis of K.
// Restriction of A_K f' is computed as the image of right multiplication
// by f' on that free module, so non-basic algebras that split over K are
// handled the same way as quiver algebras.

#include <string>
#include <vector>

#include "drt/complex.hpp"

namespace drt {

class ExtensionContext {
public:
    // `big` must equal `a->field()` (l = 1) or be an extension of it.
    ExtensionContext(AlgebraPtr a, FieldPtr big);

    std::size_t degree() const noexcept { return l_; }
    const AlgebraPtr& small() const noexcept { return ak_; }
    const AlgebraPtr& large() const noexcept { return aK_; }
    const Field& small_field() const { return ak_->field(); }
    const Field& large_field() const { return aK_->field(); }

    Vec embed(const Vec& a) const;  // A_k -> A_K
    // Coordinates of an A_K element over the power basis: l elements of A_k.
    std::vector<Vec> split(const Vec& b) const;
    Vec join(const std::vector<Vec>& parts) const;

    // A_k f_u (x) K as a sum of A_K projectives: the pieces of f_u.
    const std::vector<Piece>& tensor_pieces(std::size_t u) const { return up_.at(u); }
    // F(A_K f'_s) as a sum of A_k projectives.
    const std::vector<std::size_t>& restricted(std::size_t s) const { return down_.at(s).comps; }

    // Right multiplication by b on A_K, as a map of the presented free module.
    AMatrix right_mult(const Vec& b) const;
    const std::vector<std::size_t>& free_components() const noexcept { return free_; }
    // Inclusion of F(A_K f'_s) into the presented free module, and its retraction.
    const AMatrix& restricted_inclusion(std::size_t s) const { return down_.at(s).iota; }
    const AMatrix& restricted_projection(std::size_t s) const { return down_.at(s).pi; }
    // A_k f_u -> copy i of A_k inside the free module, and back.
    AMatrix copy_inclusion(std::size_t i, std::size_t u) const;
    AMatrix copy_projection(std::size_t i, std::size_t u) const;

private:
    struct Restricted {
        std::vector<std::size_t> comps;
        AMatrix iota, pi;
    };
    AlgebraPtr ak_, aK_;
    std::size_t l_ = 1;
    std::vector<std::vector<std::vector<Scalar>>> mult_;  // z^i z^s = sum_t mult_[i][s][t] z^t
    std::vector<std::size_t> free_;                      // component (i, j) at i * pieces + j
    std::vector<std::vector<Piece>> up_;
    std::vector<Restricted> down_;
};

Module tensor_module(const Module& m, const ExtensionContext& ctx);
Module restrict_module(const Module& m, const ExtensionContext& ctx);

ProjComplex tensor_complex(const ProjComplex& x, const ExtensionContext& ctx);
ProjComplex restrict_complex(const ProjComplex& y, const ExtensionContext& ctx);

// F(X (x) K) ~ X^{+l}, copies outermost.
struct UnitIso {
    ProjComplex restricted;  // F(X (x) K)
    ProjComplex copies;      // X^{+l}
    ChainMap forward;        // copies -> restricted
    ChainMap backward;
    bool verified = false;
};
UnitIso unit_iso(const ProjComplex& x, const ExtensionContext& ctx);

struct WitnessUp {
    ProjComplex y;                 // indecomposable summand of X (x) K
    std::size_t summands_up = 0;   // |decompose(X (x) K)|
    std::size_t summands_down = 0; // |decompose(F(Y))|
    IsoResult match;               // X against a summand of F(Y)
};
WitnessUp summand_witness_up(const ProjComplex& x, const ExtensionContext& ctx);

struct WitnessDown {
    ProjComplex x;                 // indecomposable summand of F(Y)
    std::size_t summands_down = 0; // |decompose(F(Y))|
    std::size_t summands_up = 0;   // |decompose(X (x) K)|
    IsoResult match;               // Y against a summand of X (x) K
};
WitnessDown summand_witness_down(const ProjComplex& y, const ExtensionContext& ctx);

struct RangeReport {
    std::string direction;  // "up" or "down"
    std::size_t l = 1, r = 0;
    std::vector<std::size_t> summand_ranges;
    bool bounds_ok = true;
    bool certificates_ok = true;
};
RangeReport range_bound_report_up(const ProjComplex& x, const ExtensionContext& ctx);
RangeReport range_bound_report_down(const ProjComplex& y, const ExtensionContext& ctx);

}  // namespace drt
