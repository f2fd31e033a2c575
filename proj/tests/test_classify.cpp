#include <doctest.h>

#include "algebras.hpp"
#include "drt/classify.hpp"
#include "oracles.hpp"

using namespace drt;
using namespace drt::testing;

namespace {

std::vector<std::size_t> coh_vector(const ProjComplex& x, int m) {
    std::vector<std::size_t> v(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& [i, n] : cohomology(x)) v[static_cast<std::size_t>(i)] = n;
    return v;
}

std::map<std::vector<std::size_t>, std::size_t> brute_objects(const std::vector<ProjComplex>& all, int m,
                                                             std::size_t bound) {
    std::map<std::vector<std::size_t>, std::size_t> out;
    for (const auto& x : all) {
        auto v = coh_vector(x, m);
        if (std::all_of(v.begin(), v.end(), [&](std::size_t n) { return n <= bound; })) ++out[v];
    }
    return out;
}

// two-term complex P_s -> P_t with a given differential entry
ProjComplex arrow_complex(const AlgebraPtr& a, std::size_t s, std::size_t t, const Vec& el) {
    AMatrix d(*a, 1, 1);
    d(0, 0) = el;
    return ProjComplex(a, 0, {{s}, {t}}, {d});
}

// the pair (s, t) whose hom space is the two arrows of the Kronecker quiver
std::pair<std::size_t, std::size_t> kronecker_arrows(const Algebra& a) {
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t)
            if (a.hom(s, t).size() == 2) return {s, t};
    FAIL("no two-dimensional hom space");
    return {0, 0};
}

}  // namespace

TEST_CASE("A2 over F2, m = 1: five indecomposables") {
    auto a = a2(Field::prime(2));
    EnumerationBounds b;
    b.m = 1;
    b.max_mult = 1;
    auto r = enumerate_indecomposables(a, b);
    CHECK(r.reps.size() == 5);
    std::size_t total = 0;
    for (const auto& [hr, n] : r.histogram) total += n;
    CHECK(total == r.reps.size());
    // stalks Ae_1 (dim 2) and Ae_2 (dim 1) in two degrees, and the arrow complex with cokernel S_1
    CHECK(r.histogram == std::map<std::size_t, std::size_t>{{1, 3}, {2, 2}});

    auto brute = brute_minimal_complexes(a, 1, 1);
    std::size_t indec = 0;
    for (const auto& x : brute)
        if (!x.empty() && brute_summand_count(x) == 1) {
            ++indec;
            std::size_t hits = 0;
            for (const auto& y : r.reps)
                if (brute_isomorphic(x, y.complex)) ++hits;
            CHECK(hits == 1);
        }
    CHECK(indec == 5);

    b.jobs = 4;
    auto again = enumerate_indecomposables(a, b);
    REQUIRE(again.reps.size() == r.reps.size());
    for (std::size_t i = 0; i < r.reps.size(); ++i) {
        CHECK(again.reps[i].index == r.reps[i].index);
        CHECK(again.reps[i].complex == r.reps[i].complex);
    }

    auto h = range_histogram(r);
    REQUIRE(h.size() == 2);
    CHECK(h[0].hr == 1);
    CHECK(h[0].count == 3);
    CHECK(h[1].count == 2);
}

TEST_CASE("one vertex over F2, m = 2: only stalks") {
    auto g = ground(Field::prime(2));
    EnumerationBounds b;
    b.m = 2;
    b.max_mult = 2;
    auto r = enumerate_indecomposables(g, b);
    CHECK(r.reps.size() == 3);
    for (const auto& x : r.reps) CHECK(x.hr == 1);
}

TEST_CASE("Kronecker over F2: three complexes P -> P' with one arrow each") {
    auto k = kronecker(Field::prime(2));
    auto [s, t] = kronecker_arrows(*k);
    EnumerationBounds b;
    b.m = 1;
    b.max_mult = 1;
    auto r = enumerate_indecomposables(k, b);
    ShapeVector sh(2, std::vector<std::size_t>(2, 0));
    sh[0][s] = 1;
    sh[1][t] = 1;
    CHECK(r.by_shape[sh] == 3);  // points of P^1(F_2)
    // four stalks plus the three
    CHECK(r.reps.size() == 7);
}

TEST_CASE("search cap and field preconditions") {
    auto k = kronecker(Field::prime(2));
    EnumerationBounds b;
    b.m = 1;
    b.max_mult = 3;
    b.cap = 1000;
    CHECK(enumeration_size(k, b) > 1000);
    try {
        enumerate_indecomposables(k, b);
        FAIL("expected refusal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SearchCap);
        CHECK(std::string(e.what()).find(std::to_string(enumeration_size(k, b))) != std::string::npos);
    }
    auto q = a2(Field::rationals());
    CHECK_THROWS_AS(enumerate_indecomposables(q, EnumerationBounds{}), Error);
}

TEST_CASE("discreteness tables match brute force") {
    struct Case {
        AlgebraPtr a;
        int m;
        std::size_t mult;
    };
    auto f2 = Field::prime(2);
    std::vector<Case> cases{{dual_numbers(f2), 1, 2}, {dual_numbers(f2), 2, 1}, {kronecker(f2), 1, 1},
                            {a2(Field::prime(3)), 1, 1}};
    for (const auto& c : cases) {
        EnumerationBounds b;
        b.m = c.m;
        b.max_mult = c.mult;
        auto r = enumerate_indecomposables(c.a, b);
        auto brute = brute_minimal_complexes(c.a, c.m, c.mult);
        for (std::size_t bound = 0; bound <= 3; ++bound) {
            auto t = discreteness_probe(r, bound);
            CHECK(t.objects == brute_objects(brute, c.m, bound));
        }
    }
}

TEST_CASE("monotone in m and coherent under base change") {
    auto f2 = Field::prime(2);
    auto a = a2(f2);
    ExtensionContext ctx(a, gf4());
    EnumerationBounds b;
    b.max_mult = 1;
    auto d = c_dichotomy_report(a, &ctx, 0, 2, b);
    CHECK(d.monotone);
    CHECK(d.coherent);
    REQUIRE(d.small.size() == 3);
    CHECK(d.small[1].indecomposables == 5);
    CHECK(d.large[1].indecomposables == 5);

    auto dn = dual_numbers(f2);
    ExtensionContext c2(dn, gf4());
    auto e = c_dichotomy_report(dn, &c2, 0, 1, b);
    CHECK(e.monotone);
    CHECK(e.coherent);
}

TEST_CASE("family probe: Kronecker over Q") {
    auto k = kronecker(Field::rationals());
    const Field& q = k->field();
    auto [s, t] = kronecker_arrows(*k);
    const auto& h = k->hom(s, t);
    FamilyTemplate fam = [&, s = s, t = t](const Scalar& lam) {
        return arrow_complex(k, s, t, add(h.basis[0], scale(h.basis[1], lam)));
    };
    std::vector<Scalar> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(q.from_int(i - 50));
    auto r = family_probe(k, fam, samples);
    CHECK(r.degenerate.empty());
    CHECK(r.collisions.empty());
    CHECK(r.witnesses == 100);
    REQUIRE(r.common_hr.has_value());
    CHECK(*r.common_hr == 2);  // cokernel has dimension vector (1, 1)

    // lambda * a degenerates at 0
    FamilyTemplate bad = [&, s = s, t = t](const Scalar& lam) { return arrow_complex(k, s, t, scale(h.basis[0], lam)); };
    auto rb = family_probe(k, bad, {q.from_int(0), q.from_int(1), q.from_int(2)});
    CHECK(rb.degenerate.size() == 1);
    CHECK(rb.collisions.size() == 1);  // 1 and 2 give isomorphic complexes
    CHECK(rb.witnesses == 1);

    ExtensionContext ctx(k, gaussian());
    std::vector<Scalar> few(samples.begin(), samples.begin() + 12);
    auto d = c_dichotomy_family(ctx, fam, few);
    CHECK(d.family_ranges_ok);
    CHECK(d.family_large->witnesses == 12);
}
