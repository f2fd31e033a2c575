#pragma once

// Representation-type probes over C_m(A-proj): exhaustive enumeration of
// indecomposable minimal complexes in degrees 0..m over a finite field,
// object counts per cohomology dimension vector, range histograms, and
// one-parameter family witnesses over infinite fields.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drt/functors.hpp"

namespace drt {

struct EnumerationBounds {
    int m = 1;                         // degrees 0..m
    std::size_t max_mult = 1;          // per projective per degree
    std::size_t max_dim = 0;           // cap on the total field dimension (0 = none)
    std::uint64_t cap = 1ull << 24;    // candidate differentials, summed over shapes
    unsigned jobs = 1;
};

// Multiplicity of each projective in each degree 0..m.
using ShapeVector = std::vector<std::vector<std::size_t>>;

struct Representative {
    ProjComplex complex;
    ShapeVector shape;
    std::vector<std::size_t> cohomology;  // dims in degrees 0..m
    std::size_t hr = 0;
    std::uint64_t index = 0;              // canonical coefficient index within its shape
};

struct ClassificationReport {
    std::string algebra;
    EnumerationBounds bounds;
    std::vector<Representative> reps;
    std::map<ShapeVector, std::size_t> by_shape;
    std::map<std::vector<std::size_t>, std::size_t> by_cohomology;
    std::map<std::size_t, std::size_t> histogram;  // hr -> indecomposables
    std::uint64_t candidates = 0;
    std::size_t shapes = 0;
};

// Total number of candidate differentials (q^#radical coefficients per shape).
std::uint64_t enumeration_size(const AlgebraPtr& a, const EnumerationBounds& b);
ClassificationReport enumerate_indecomposables(const AlgebraPtr& a, const EnumerationBounds& b);

// Iso classes of all minimal complexes (direct sums of the enumerated
// indecomposables within the same shape bounds) per cohomology vector with
// every entry <= bound.
struct DiscretenessTable {
    std::size_t bound = 0;
    std::map<std::vector<std::size_t>, std::size_t> objects;
    std::map<std::vector<std::size_t>, std::size_t> indecomposables;
};
DiscretenessTable discreteness_probe(const ClassificationReport& r, std::size_t bound);

struct HistogramEntry {
    std::size_t hr = 0, count = 0;
    std::size_t at_boundary = 0;  // representatives using the full multiplicity bound somewhere
};
std::vector<HistogramEntry> range_histogram(const ClassificationReport& r);

struct FamilyReport {
    std::size_t samples = 0;
    std::vector<std::size_t> ranges;
    std::vector<std::string> degenerate;                       // per-sample problems
    std::vector<std::pair<std::size_t, std::size_t>> collisions;  // isomorphic pairs
    std::optional<std::size_t> common_hr;
    std::size_t witnesses = 0;  // pairwise non-isomorphic indecomposables
};
using FamilyTemplate = std::function<ProjComplex(const Scalar&)>;
FamilyReport family_probe(const AlgebraPtr& a, const FamilyTemplate& family, const std::vector<Scalar>& samples);

struct DichotomyLevel {
    int m = 0;
    std::size_t indecomposables = 0;
    std::map<std::size_t, std::size_t> histogram;
};
struct DichotomyReport {
    std::vector<DichotomyLevel> small, large;  // large: over K when a context is given
    bool monotone = true;
    bool coherent = true;  // summands of X (x) K found among the K-representatives, ranges in bounds
    std::optional<FamilyReport> family_small, family_large;
    bool family_ranges_ok = true;
};
DichotomyReport c_dichotomy_report(const AlgebraPtr& a, const ExtensionContext* ctx, int m_lo, int m_hi,
                                   const EnumerationBounds& b);
DichotomyReport c_dichotomy_family(const ExtensionContext& ctx, const FamilyTemplate& family,
                                   const std::vector<Scalar>& samples);

}  // namespace drt
