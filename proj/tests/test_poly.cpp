#include <doctest.h>

#include "drt/poly.hpp"

using namespace drt;

namespace {
poly::Poly P(const Field& f, std::vector<long long> c) {
    poly::Poly p;
    for (auto v : c) p.push_back(f.from_int(v));
    poly::trim(p);
    return p;
}
}  // namespace

TEST_CASE("separability") {
    auto f2 = Field::prime(2);
    CHECK(poly::is_separable(*f2, P(*f2, {1, 1, 1})));
    CHECK(!poly::is_separable(*f2, P(*f2, {1, 0, 1})));
    auto q = Field::rationals();
    CHECK(poly::is_separable(*q, P(*q, {1, 0, 1})));
    CHECK(!poly::is_separable(*q, P(*q, {1, 2, 1})));
}

TEST_CASE("irreducibility") {
    auto f2 = Field::prime(2);
    CHECK(poly::irreducibility(*f2, P(*f2, {1, 1, 1})) == poly::Irreducibility::Irreducible);
    CHECK(poly::irreducibility(*f2, P(*f2, {1, 1, 0, 1})) == poly::Irreducibility::Irreducible);
    CHECK(poly::irreducibility(*f2, P(*f2, {1, 0, 1})) == poly::Irreducibility::Reducible);
    // (x^2+x+1)^2 has no roots but is reducible
    CHECK(poly::irreducibility(*f2, P(*f2, {1, 0, 1, 0, 1})) == poly::Irreducibility::Reducible);
    auto q = Field::rationals();
    CHECK(poly::irreducibility(*q, P(*q, {1, 0, 1})) == poly::Irreducibility::Irreducible);
    CHECK(poly::irreducibility(*q, P(*q, {-2, 0, 0, 1})) == poly::Irreducibility::Irreducible);
    CHECK(poly::irreducibility(*q, P(*q, {-1, 0, 1})) == poly::Irreducibility::Reducible);
}

TEST_CASE("division and gcd") {
    auto f = Field::prime(5);
    auto a = P(*f, {1, 2, 3, 4});
    auto b = P(*f, {2, 1});
    auto [qq, r] = poly::divmod(*f, a, b);
    CHECK(poly::add(*f, poly::mul(*f, qq, b), r) == a);
    auto [g, s, t] = poly::xgcd(*f, a, b);
    CHECK(poly::add(*f, poly::mul(*f, s, a), poly::mul(*f, t, b)) == g);
}

TEST_CASE("roots") {
    auto f7 = Field::prime(7);
    auto r = poly::roots(*f7, P(*f7, {-2, 0, 1}));  // x^2 = 2: 3, 4
    CHECK(r.complete);
    CHECK(r.roots.size() == 2);
    auto q = Field::rationals();
    auto rq = poly::roots(*q, P(*q, {-6, 1, 1}));  // (x+3)(x-2)
    CHECK(rq.roots.size() == 2);
    auto qi = Field::extension(q, P(*q, {1, 0, 1}));
    auto s = poly::sqrt(*qi, qi->from_int(-1));
    REQUIRE(s.has_value());
    CHECK(*s * *s == qi->from_int(-1));
    CHECK(!poly::sqrt(*q, q->from_int(2)).has_value());
}
