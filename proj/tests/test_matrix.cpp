#include <doctest.h>

#include <random>

#include "drt/matrix.hpp"

using namespace drt;

TEST_CASE("rank and inverse over Q") {
    auto q = Field::rationals();
    auto m = Matrix::from_rows(*q, {{q->from_int(1), q->from_int(2)}, {q->from_int(3), q->from_int(4)}}, 2);
    CHECK(rank(m) == 2);
    CHECK(inverse(m) * m == Matrix::identity(*q, 2));
    auto s = Matrix::from_rows(*q, {{q->from_int(1), q->from_int(2)}, {q->from_int(2), q->from_int(4)}}, 2);
    CHECK(rank(s) == 1);
    CHECK_THROWS_AS(inverse(s), SingularMatrixError);
}

TEST_CASE("kernel of a random F2 matrix matches an exhaustive sweep") {
    auto f = Field::prime(2);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m(*f, 6, 4);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = f->from_int(rng() & 1);
        auto ker = kernel(m);
        std::size_t count = 0;
        for (unsigned x = 0; x < 16; ++x) {
            Vec v;
            for (int j = 0; j < 4; ++j) v.push_back(f->from_int((x >> j) & 1));
            if (is_zero(m.apply(v))) ++count;
        }
        CHECK(count == (1u << ker.size()));
        for (const auto& k : ker) CHECK(is_zero(m.apply(k)));
        CHECK(rank(m) + ker.size() == 4);
    }
}

TEST_CASE("solve and coordinates") {
    auto f = Field::prime(101);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m(*f, 5, 3);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = f->from_int(rng() % 101);
        Vec x{f->from_int(rng() % 101), f->from_int(rng() % 101), f->from_int(rng() % 101)};
        auto b = m.apply(x);
        auto y = solve(m, b);
        REQUIRE(y.has_value());
        CHECK(m.apply(*y) == b);
    }
    std::vector<Vec> basis{{f->one(), f->zero(), f->one()}, {f->zero(), f->one(), f->one()}};
    auto c = coordinates_in(*f, basis, {f->from_int(2), f->from_int(3), f->from_int(5)}, 3);
    REQUIRE(c.has_value());
    CHECK((*c)[0] == f->from_int(2));
    CHECK(!coordinates_in(*f, basis, {f->one(), f->zero(), f->zero()}, 3).has_value());
}

TEST_CASE("elimination over an extension field") {
    auto f2 = Field::prime(2);
    auto f4 = Field::extension(f2, {f2->one(), f2->one(), f2->one()});
    auto a = f4->generator();
    auto m = Matrix::from_rows(*f4, {{f4->one(), a}, {a, a * a}}, 2);
    CHECK(rank(m) == 1);
    auto ker = kernel(m);
    REQUIRE(ker.size() == 1);
    CHECK(is_zero(m.apply(ker[0])));
}
