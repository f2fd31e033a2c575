#pragma once

// Bounded complexes of finitely generated projectives A f_u.
//
// X^i is a list of projective representatives; d^i : X^i -> X^{i+1} is a
// matrix of algebra elements indexed [target][source], where the entry from
// A f_s to A f_t lies in f_s A f_t and acts by right multiplication.
// Composition of such matrices: (g o f)[t][s] = sum_r f[r][s] * g[t][r].

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drt/module.hpp"

namespace drt {

struct AMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Vec> e;  // row-major, each entry an algebra element

    AMatrix() = default;
    AMatrix(const Algebra& a, std::size_t r, std::size_t c);
    Vec& operator()(std::size_t t, std::size_t s) { return e[t * cols + s]; }
    const Vec& operator()(std::size_t t, std::size_t s) const { return e[t * cols + s]; }
    bool is_zero() const;
    friend bool operator==(const AMatrix& x, const AMatrix& y) { return x.rows == y.rows && x.cols == y.cols && x.e == y.e; }
};

AMatrix compose(const Algebra& a, const AMatrix& g, const AMatrix& f);  // g o f
AMatrix add(const AMatrix& x, const AMatrix& y);
AMatrix sub(const AMatrix& x, const AMatrix& y);
AMatrix scale(const AMatrix& x, const Scalar& c);
AMatrix identity_amatrix(const Algebra& a, const std::vector<std::size_t>& comps);
// Field-level matrix of the map sum_s A f_{src_s} -> sum_t A f_{tgt_t}.
Matrix realize(const Algebra& a, const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
               const AMatrix& m);

enum class Minimality { Unknown, Yes, No };

class ProjComplex {
public:
    ProjComplex() = default;
    // comps[k] lives in degree lo + k; diffs[k] : degree lo+k -> lo+k+1.
    // Zero terms at either end are trimmed.  Validates entries and d o d = 0.
    ProjComplex(AlgebraPtr a, int lo, std::vector<std::vector<std::size_t>> comps, std::vector<AMatrix> diffs);

    static ProjComplex zero(AlgebraPtr a);
    static ProjComplex stalk(AlgebraPtr a, int degree, std::vector<std::size_t> comps);

    const Algebra& algebra() const { return *a_; }
    const AlgebraPtr& algebra_ptr() const { return a_; }
    bool empty() const noexcept { return comps_.empty(); }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(comps_.size()) - 1; }
    const std::vector<std::size_t>& components(int deg) const;
    // d^deg, a zero matrix of the right shape outside the stored range.
    AMatrix differential(int deg) const;
    std::size_t total_multiplicity() const;
    std::size_t field_dim(int deg) const;

    Minimality minimal_flag() const noexcept { return minimal_; }
    void set_minimal_flag(Minimality m) const { minimal_ = m; }

    friend bool operator==(const ProjComplex& x, const ProjComplex& y);

private:
    AlgebraPtr a_;
    int lo_ = 0;
    std::vector<std::vector<std::size_t>> comps_;
    std::vector<AMatrix> diffs_;
    mutable Minimality minimal_ = Minimality::Unknown;
};

// f[i] : X^i -> Y^{i+degree}; absent degrees are zero.
struct GradedMap {
    int degree = 0;
    std::map<int, AMatrix> parts;
};
using ChainMap = GradedMap;  // degree 0
using Homotopy = GradedMap;  // degree -1

AMatrix part(const ProjComplex& x, const ProjComplex& y, const GradedMap& f, int i);
GradedMap compose(const Algebra& a, const GradedMap& g, const GradedMap& f);  // g o f
GradedMap add(const GradedMap& f, const GradedMap& g);
GradedMap scale(const GradedMap& f, const Scalar& c);
ChainMap identity_map(const ProjComplex& x);
bool is_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& f);
bool maps_equal(const ProjComplex& x, const ProjComplex& y, const GradedMap& f, const GradedMap& g);
// d_Y h + h d_X
ChainMap homotopy_boundary(const ProjComplex& x, const ProjComplex& y, const Homotopy& h);

bool is_homotopy_minimal(const ProjComplex& x);

// G o F - id = d H + H d on X, F o G = id on the minimal complex.
struct MinimizeResult {
    ProjComplex minimal;
    ChainMap to_minimal;    // F : X -> X0
    ChainMap from_minimal;  // G : X0 -> X
    Homotopy homotopy;      // H on X
    std::size_t cancellations = 0;
};
MinimizeResult minimize(const ProjComplex& x);
bool verify_minimize(const ProjComplex& x, const MinimizeResult& r);

// dim H^i for i in [lo, hi] (empty for the zero complex).
std::map<int, std::size_t> cohomology(const ProjComplex& x);

struct RangeStats {
    std::size_t hl = 0, hw = 0, hr = 0;
    std::map<int, std::size_t> cohomology_dims;
};
RangeStats range_stats(const ProjComplex& x);

// X[n]^i = X^{i+n}, d_{X[n]} = (-1)^n d_X.
ProjComplex shift(const ProjComplex& x, int n);
ProjComplex brutal_truncate(const ProjComplex& x, int t);
ProjComplex direct_sum(const ProjComplex& x, const ProjComplex& y);

struct Resolution {
    ProjComplex complex;
    bool complete = false;
};
// Minimal projective resolution in degrees [-depth, 0].
Resolution projective_resolution(const Module& m, std::size_t depth);
Resolution projective_resolution(const ProjComplex& x, std::size_t depth);

struct HomSpace {
    std::vector<ChainMap> chain_maps;
    std::vector<ChainMap> null_homotopic;
    std::vector<Homotopy> witnesses;
    std::size_t homotopy_dim() const { return chain_maps.size() - null_homotopic.size(); }
};
HomSpace hom_space(const ProjComplex& x, const ProjComplex& y, bool with_homotopies = true);

// End(X) with product a * b = a o b.
struct ComplexEnd {
    std::vector<ChainMap> basis;
    AssocAlgebra algebra;
    CoordMap coords;  // chain-map coordinates -> End coordinates
    std::size_t null_homotopic_dim = 0;
    ChainMap to_map(const ProjComplex& x, const Vec& c) const;
    Vec coords_of(const ProjComplex& x, const ChainMap& f) const;
};
ComplexEnd complex_end(const ProjComplex& x);

struct ComplexSummand {
    ProjComplex complex;
    ChainMap inclusion;   // summand -> X
    ChainMap projection;  // X -> summand
};
// Image of an idempotent chain map.
ComplexSummand extract_summand(const ProjComplex& x, const ChainMap& e);
std::vector<ComplexSummand> decompose_complex(const ProjComplex& x);
bool is_indecomposable(const ProjComplex& x);
// Same question asked in the homotopy category: End / null-homotopic is local.
bool is_indecomposable_homotopy(const ProjComplex& x);

struct IsoResult {
    bool isomorphic = false;
    ChainMap forward, backward;  // mutually inverse when isomorphic
    std::string reason;
};
IsoResult is_isomorphic(const ProjComplex& x, const ProjComplex& y);

std::string format_complex(const ProjComplex& x);

}  // namespace drt
