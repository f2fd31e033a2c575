#include <doctest.h>

#include "algebras.hpp"

using namespace drt;
using namespace drt::testing;

namespace {

// Oracle for dim A e_i: count basis elements b with b * e_i = b.
std::size_t paths_starting_at(const Algebra& a, std::size_t v) {
    std::size_t n = 0;
    Vec e = a.vertex_element(v);
    for (std::size_t i = 0; i < a.dim(); ++i) n += a.mul(a.basis(i), e) == a.basis(i);
    return n;
}

}  // namespace

TEST_CASE("dual numbers") {
    auto a = dual_numbers(Field::prime(2));
    CHECK(a->dim() == 2);
    CHECK(a->basis_labels() == std::vector<std::string>{"e1", "x"});
    CHECK(a->radical_basis().size() == 1);
    CHECK(a->num_projectives() == 1);
    CHECK(a->proj(0).basis.size() == 2);
    CHECK(a->proj(0).radical_dim == 1);
    CHECK(a->hom(0, 0).size() == 2);
    CHECK(a->hom(0, 0).unit_count == 1);
}

TEST_CASE("A2 and Kronecker path bases") {
    auto f = Field::prime(2);
    auto p = a2(f);
    CHECK(p->dim() == 3);
    CHECK(p->basis_labels() == std::vector<std::string>{"e1", "e2", "a"});
    CHECK(p->proj(0).basis.size() == paths_starting_at(*p, 0));
    CHECK(p->proj(0).basis.size() == 2);
    CHECK(p->proj(1).basis.size() == 1);
    CHECK(p->hom(0, 0).size() == 1);
    CHECK(p->hom(1, 0).size() == 1);  // e_2 A e_1 = span{a}
    CHECK(p->hom(0, 1).size() == 0);
    auto k = kronecker(f);
    CHECK(k->dim() == 4);
    CHECK(k->proj(0).basis.size() == 3);
    CHECK(k->proj(1).basis.size() == 1);
    CHECK(k->proj(0).basis.size() == paths_starting_at(*k, 0));
    CHECK(k->proj(0).top_dim == 1);
    CHECK(k->proj(0).radical_dim == 2);
    CHECK(k->hom(1, 0).size() == 2);
}

TEST_CASE("structure constants define an associative unital algebra") {
    for (auto a : {dual_numbers(Field::prime(3)), a2(Field::rationals()), kronecker(Field::prime(2))}) {
        CHECK(a->assoc().check_associative());
        Vec sum = a->zero();
        for (std::size_t v = 0; v < a->quiver().vertices.size(); ++v) sum = add(sum, a->vertex_element(v));
        CHECK(sum == a->one());
        for (std::size_t v = 0; v < a->quiver().vertices.size(); ++v)
            for (std::size_t w = 0; w < a->quiver().vertices.size(); ++w)
                CHECK(a->mul(a->vertex_element(v), a->vertex_element(w)) ==
                      (v == w ? a->vertex_element(v) : a->zero()));
    }
}

TEST_CASE("relations and admissibility") {
    auto f = Field::prime(2);
    // commutative square with a*b = c*d
    auto p = quiver_presentation(f, {"1", "2", "3", "4"}, {{"b", 0, 1}, {"a", 1, 3}, {"d", 0, 2}, {"c", 2, 3}});
    p.relations.push_back({{f->one(), {1, 0}}, {f->one(), {3, 2}}});
    auto sq = Algebra::build(p);
    CHECK(sq->dim() == 4 + 4 + 1);
    // length-one term
    auto bad = quiver_presentation(f, {"1"}, {{"x", 0, 0}});
    bad.relations.push_back({{f->one(), {0}}});
    CHECK_THROWS_WITH_AS(Algebra::build(bad), doctest::Contains("not admissible"), Error);
    // a loop without relations never becomes nilpotent
    auto loop = quiver_presentation(f, {"1"}, {{"x", 0, 0}});
    CHECK_THROWS_WITH_AS(Algebra::build(loop), doctest::Contains("cap 32"), Error);
    // cap is configurable
    auto cube = quiver_presentation(f, {"1"}, {{"x", 0, 0}});
    cube.relations.push_back({{f->one(), {0, 0, 0, 0, 0}}});
    CHECK_THROWS_AS(Algebra::build(cube, BuildOptions{3, 1000}), Error);
    CHECK(Algebra::build(cube)->dim() == 5);
}

TEST_CASE("non-homogeneous relations") {
    auto f = Field::prime(3);
    // x^2 = y^3 with x y = y x = 0 on a two-loop quiver: x^2 - y^3, xy, yx
    auto p = quiver_presentation(f, {"1"}, {{"x", 0, 0}, {"y", 0, 0}});
    p.relations.push_back({{f->one(), {0, 0}}, {f->from_int(-1), {1, 1, 1}}});
    p.relations.push_back({{f->one(), {0, 1}}});
    p.relations.push_back({{f->one(), {1, 0}}});
    auto a = Algebra::build(p);
    // basis: e, x, y, y^2, y^3 (= x^2)
    CHECK(a->dim() == 5);
    CHECK(a->assoc().check_associative());
    Vec x = a->arrow_element(0), y = a->arrow_element(1);
    CHECK(a->mul(x, x) == a->mul(y, a->mul(y, y)));
    // x^2 - x^3 generates an ideal without any power of the arrow ideal
    auto q = quiver_presentation(f, {"1"}, {{"x", 0, 0}});
    q.relations.push_back({{f->one(), {0, 0}}, {f->from_int(-1), {0, 0, 0}}});
    CHECK_THROWS_AS(Algebra::build(q, BuildOptions{8, 1000}), Error);
}

TEST_CASE("non-basic algebra through the univariate path") {
    auto f2 = Field::prime(2);
    auto a = univariate(f2, {1, 1, 1});  // F_4 as an F_2-algebra
    CHECK(a->dim() == 2);
    CHECK(a->radical_basis().empty());
    CHECK(a->num_projectives() == 1);
    CHECK(a->proj(0).basis.size() == 2);
    CHECK(a->hom(0, 0).unit_count == 2);
    // over F_4 it splits into two non-isomorphic projectives
    auto f4 = gf4();
    auto b = Algebra::build(a->presentation().extended_to(f4));
    CHECK(b->num_projectives() == 2);
    CHECK(b->pieces().size() == 2);
    CHECK(b->hom(0, 1).size() == 0);
    // Q[t]/(t^2 - 1) splits over Q; t^2 over F_2 is local
    CHECK(univariate(Field::rationals(), {-1, 0, 1})->num_projectives() == 2);
    CHECK(univariate(f2, {0, 0, 1})->num_projectives() == 1);
}

TEST_CASE("matrix algebra via a structure table") {
    auto f = Field::prime(2);
    // M_2(F_2), basis E11, E12, E21, E22
    Presentation p;
    p.kind = Presentation::Kind::Table;
    p.field = f;
    p.table_dim = 4;
    auto idx = [](int i, int j) { return static_cast<std::size_t>(2 * i + j); };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Vec v = zero_vec(*f, 4);
            int i = a / 2, j = a % 2, k = b / 2, l = b % 2;
            if (j == k) v[idx(i, l)] = f->one();
            p.table.push_back(v);
        }
    auto m = Algebra::build(p);
    CHECK(m->one() == Vec{f->one(), f->zero(), f->zero(), f->one()});
    CHECK(m->pieces().size() == 2);
    CHECK(m->num_projectives() == 1);  // both column modules are isomorphic
    CHECK(m->proj(0).basis.size() == 2);
    const auto& pc = m->pieces()[1];
    CHECK(m->mul(pc.x, pc.y) == pc.idempotent);
    CHECK(m->mul(pc.y, pc.x) == m->proj(pc.rep).idempotent);
    // non-associative table is rejected
    p.table[0] = Vec{f->zero(), f->one(), f->zero(), f->zero()};
    CHECK_THROWS_AS(Algebra::build(p), Error);
}

TEST_CASE("extension of scalars reproduces the embedded structure constants") {
    auto f4 = gf4();
    auto k = kronecker(Field::prime(2));
    auto kk = Algebra::build(k->presentation().extended_to(f4));
    REQUIRE(kk->dim() == k->dim());
    for (std::size_t i = 0; i < k->dim(); ++i)
        for (std::size_t j = 0; j < k->dim(); ++j) {
            Vec a = k->mul(k->basis(i), k->basis(j));
            Vec b = kk->mul(kk->basis(i), kk->basis(j));
            for (std::size_t t = 0; t < a.size(); ++t) CHECK(f4->embed(a[t]) == b[t]);
        }
}
