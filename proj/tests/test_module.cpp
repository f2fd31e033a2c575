#include <doctest.h>

#include <random>

#include "algebras.hpp"
#include "drt/module.hpp"

using namespace drt;
using namespace drt::testing;

namespace {

Matrix mat(const Field& f, std::size_t r, std::size_t c, std::vector<long long> entries) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(entries[i * c + j]);
    return m;
}

Matrix random_f2(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rng() & 1);
    return m;
}

// Enumerate every n x n matrix over F_2 commuting with the actions.
struct EndCount {
    std::size_t endos = 0, idempotents = 0;
};

EndCount brute_end(const Module& m) {
    const Field& f = m.algebra().field();
    const std::size_t n = m.dim();
    std::vector<Matrix> gens;
    for (const auto& g : m.algebra().generators()) gens.push_back(m.action_of(g));
    EndCount out;
    for (std::uint32_t bits = 0; bits < (1u << (n * n)); ++bits) {
        Matrix x(f, n, n);
        for (std::size_t k = 0; k < n * n; ++k) x(k / n, k % n) = f.from_int((bits >> k) & 1);
        bool ok = true;
        for (const auto& g : gens)
            if (!(x * g == g * x)) { ok = false; break; }
        if (!ok) continue;
        ++out.endos;
        out.idempotents += x * x == x;
    }
    return out;
}

}  // namespace

TEST_CASE("simple and projective modules") {
    auto f = Field::prime(2);
    auto k = kronecker(f);
    auto p1 = projective_module(k, 0);
    CHECK(p1.dim() == 3);
    auto rad = radical_of_module(p1);
    CHECK(rad.radical.dim() == 2);
    CHECK(rad.top.dim() == 1);
    for (std::size_t u = 0; u < 2; ++u) {
        auto s = simple_module(k, u);
        CHECK(s.dim() == 1);
        CHECK(hom_modules(s, s).size() == 1);
        CHECK(radical_of_module(s).basis.empty());
        CHECK(is_indecomposable(s));
    }
    CHECK(p1.dimension_vector() == std::vector<std::size_t>{1, 2});

    auto a = a2(f);
    auto q = projective_module(a, 0);
    CHECK(hom_modules(q, q).size() == 1);

    auto d = dual_numbers(f);
    CHECK(radical_of_module(projective_module(d, 0)).basis.size() == 1);
}

TEST_CASE("Kronecker one-parameter modules") {
    auto f = Field::prime(3);
    auto k = kronecker(f);
    auto m0 = Module::from_quiver(k, {1, 1}, {mat(*f, 1, 1, {1}), mat(*f, 1, 1, {0})});
    auto m1 = Module::from_quiver(k, {1, 1}, {mat(*f, 1, 1, {1}), mat(*f, 1, 1, {1})});
    CHECK(hom_modules(m0, m1).empty());
    CHECK(hom_modules(m1, m0).empty());
    CHECK(!modules_isomorphic(m0, m1));
    CHECK(modules_isomorphic(m1, m1));
    CHECK(is_indecomposable(m0));
    auto mm = direct_sum(m1, m1);
    CHECK(decompose_module(mm).size() == 2);
    CHECK(!is_indecomposable(mm));
    CHECK(modules_isomorphic(direct_sum(m0, m1), direct_sum(m1, m0)));
    CHECK(!modules_isomorphic(direct_sum(m0, m0), direct_sum(m1, m0)));
}

TEST_CASE("relations are enforced") {
    auto f = Field::prime(2);
    auto d = dual_numbers(f);
    CHECK_NOTHROW(Module::from_quiver(d, {2}, {mat(*f, 2, 2, {0, 0, 1, 0})}));
    CHECK_THROWS_AS(Module::from_quiver(d, {2}, {mat(*f, 2, 2, {1, 0, 0, 0})}), Error);
    CHECK_THROWS_AS(Module::from_quiver(d, {2}, {mat(*f, 1, 2, {0, 0})}), Error);
}

TEST_CASE("non-basic: F4 over F2[t]/(t^2+t+1)") {
    auto f = Field::prime(2);
    auto u = univariate(f, {1, 1, 1});
    auto m = Module::from_t_action(u, mat(*f, 2, 2, {0, 1, 1, 1}));
    CHECK(is_indecomposable(m));
    CHECK(hom_modules(m, m).size() == 2);
    CHECK_THROWS_AS(Module::from_t_action(u, mat(*f, 2, 2, {1, 0, 0, 1})), Error);
    auto mm = direct_sum(m, m);
    CHECK(decompose_module(mm).size() == 2);
    CHECK(modules_isomorphic(mm, direct_sum(projective_module(u, 0), m)));
}

TEST_CASE("radical is additive and surjections onto projectives split") {
    auto f = Field::prime(2);
    auto k = kronecker(f);
    auto p1 = projective_module(k, 0), p2 = projective_module(k, 1);
    auto s = direct_sum(p1, p2);
    CHECK(radical_of_module(s).basis.size() ==
          radical_of_module(p1).basis.size() + radical_of_module(p2).basis.size());
    // P1 + P2 -> P1 projection admits a section
    auto homs = hom_modules(s, p1);
    auto back = hom_modules(p1, s);
    bool split = false;
    for (const auto& pi : homs)
        for (const auto& iota : back)
            split = split || (pi * iota == Matrix::identity(*f, p1.dim()));
    CHECK(split);
}

TEST_CASE("random Kronecker modules against brute-force End over F2") {
    auto f = Field::prime(2);
    auto k = kronecker(f);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d1 = rng() % 3, d2 = rng() % 3;
        if (d1 + d2 == 0) d1 = 1;
        auto m = Module::from_quiver(k, {d1, d2}, {random_f2(*f, d2, d1, rng), random_f2(*f, d2, d1, rng)});
        auto oracle = brute_end(m);
        INFO("dims " << d1 << "," << d2);
        CHECK((std::size_t{1} << hom_modules(m, m).size()) == oracle.endos);
        CHECK(is_indecomposable(m) == (oracle.idempotents == 2));
        auto parts = decompose_module(m);
        std::size_t total = 0;
        for (const auto& p : parts) {
            total += p.module.dim();
            CHECK(is_indecomposable(p.module));
        }
        CHECK(total == m.dim());
        CHECK(modules_isomorphic(m, m));
    }
}
