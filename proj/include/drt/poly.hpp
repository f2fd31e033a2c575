#pragma once

// Dense univariate polynomials over a Field, constant term first.  The zero
// polynomial is the empty vector; every routine returns trimmed results.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drt/field.hpp"

namespace drt::poly {

using Poly = std::vector<Scalar>;

void trim(Poly& p);
long degree(const Poly& p);
Poly constant(const Field& f, const Scalar& c);
Poly monomial(const Field& f, std::size_t deg);  // x^deg

Poly add(const Field& f, const Poly& a, const Poly& b);
Poly sub(const Field& f, const Poly& a, const Poly& b);
Poly mul(const Field& f, const Poly& a, const Poly& b);
Poly scale(const Field& f, const Poly& a, const Scalar& c);
std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b);
Poly mod(const Field& f, const Poly& a, const Poly& m);
Poly monic(const Field& f, const Poly& a);
Poly gcd(const Field& f, Poly a, Poly b);  // monic (empty if both zero)
// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
std::tuple<Poly, Poly, Poly> xgcd(const Field& f, const Poly& a, const Poly& b);
Poly derivative(const Field& f, const Poly& a);
Scalar eval(const Field& f, const Poly& a, const Scalar& x);
Poly powmod(const Field& f, Poly base, mpz_class e, const Poly& m);

bool is_separable(const Field& f, const Poly& p);

enum class Irreducibility { Irreducible, Reducible, Unknown };
Irreducibility irreducibility(const Field& f, const Poly& p);

struct Roots {
    std::vector<Scalar> roots;  // distinct, sorted by the field's total order
    bool complete = true;       // false when the search could not be exhaustive
};
Roots roots(const Field& f, const Poly& p);

// Square roots where decidable: finite fields, Q, and quadratic extensions of Q.
// Returns nullopt when no square root exists; throws Unsupported elsewhere.
std::optional<Scalar> sqrt(const Field& f, const Scalar& a);

std::string format(const Field& f, const Poly& p, const std::string& var = "x");

}  // namespace drt::poly
