#pragma once

// Presentations of the small algebras used throughout the tests.

#include "drt/algebra.hpp"

namespace drt::testing {

inline Presentation quiver_presentation(const FieldPtr& f, std::vector<std::string> vertices,
                                        std::vector<Arrow> arrows) {
    Presentation p;
    p.kind = Presentation::Kind::Quiver;
    p.field = f;
    p.quiver.vertices = std::move(vertices);
    p.quiver.arrows = std::move(arrows);
    return p;
}

// k[x]/(x^2) as a one-loop quiver.
inline AlgebraPtr dual_numbers(const FieldPtr& f) {
    auto p = quiver_presentation(f, {"1"}, {{"x", 0, 0}});
    p.relations.push_back({{f->one(), {0, 0}}});
    return Algebra::build(p);
}

// 1 --a--> 2
inline AlgebraPtr a2(const FieldPtr& f) { return Algebra::build(quiver_presentation(f, {"1", "2"}, {{"a", 0, 1}})); }

// a, b: 1 -> 2
inline AlgebraPtr kronecker(const FieldPtr& f) {
    return Algebra::build(quiver_presentation(f, {"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}));
}

// One vertex, no arrows: the ground field itself.
inline AlgebraPtr ground(const FieldPtr& f) { return Algebra::build(quiver_presentation(f, {"1"}, {})); }

inline AlgebraPtr univariate(const FieldPtr& f, std::vector<long long> coeffs) {
    Presentation p;
    p.kind = Presentation::Kind::Univariate;
    p.field = f;
    for (auto c : coeffs) p.modulus.push_back(f->from_int(c));
    return Algebra::build(p);
}

inline FieldPtr gf4() {
    auto f2 = Field::prime(2);
    return Field::extension(f2, {f2->one(), f2->one(), f2->one()});
}

inline FieldPtr gf8() {
    auto f2 = Field::prime(2);
    return Field::extension(f2, {f2->one(), f2->one(), f2->zero(), f2->one()});
}

inline FieldPtr gaussian() {
    auto q = Field::rationals();
    return Field::extension(q, {q->one(), q->zero(), q->one()});
}

}  // namespace drt::testing
