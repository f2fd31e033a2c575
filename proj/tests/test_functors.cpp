#include <doctest.h>

#include "algebras.hpp"
#include "drt/functors.hpp"
#include "random_complex.hpp"

using namespace drt;
using namespace drt::testing;

namespace {

ProjComplex arrow_complex(const AlgebraPtr& a, const Vec& el) {
    AMatrix d(*a, 1, 1);
    d(0, 0) = el;
    return ProjComplex(a, 0, {{0}, {0}}, {d});
}

std::size_t total_field_dim(const ProjComplex& x) {
    std::size_t n = 0;
    if (!x.empty())
        for (int i = x.lo(); i <= x.hi(); ++i) n += x.field_dim(i);
    return n;
}

}  // namespace

TEST_CASE("zero complexes and the trivial extension") {
    auto f = Field::prime(2);
    auto d = dual_numbers(f);
    ExtensionContext ctx(d, gf4());
    CHECK(ctx.degree() == 2);
    CHECK(tensor_complex(ProjComplex::zero(d), ctx).empty());
    CHECK(restrict_complex(ProjComplex::zero(ctx.large()), ctx).empty());
    CHECK(unit_iso(ProjComplex::zero(d), ctx).verified);

    ExtensionContext same(d, f);
    CHECK(same.degree() == 1);
    auto x = arrow_complex(d, d->path_element({0}));
    CHECK(tensor_complex(x, same) == x);
    CHECK(restrict_complex(x, same) == x);
    auto u = unit_iso(x, same);
    CHECK(u.verified);
    auto w = summand_witness_up(x, same);
    CHECK(w.y == x);
    auto rep = range_bound_report_up(x, same);
    CHECK(rep.summand_ranges == std::vector<std::size_t>{2});

    // k[z]/(z + 1) is k again
    ExtensionContext lin(d, Field::extension(f, {f->one(), f->one()}));
    CHECK(lin.degree() == 1);
    CHECK(lin.large() == d);
    CHECK(unit_iso(x, lin).verified);
}

TEST_CASE("dual numbers over F4") {
    auto f = Field::prime(2);
    auto d = dual_numbers(f);
    ExtensionContext ctx(d, gf4());
    auto x = arrow_complex(d, d->path_element({0}));
    auto y = tensor_complex(x, ctx);
    CHECK(y.components(0).size() == 1);
    CHECK(y.components(1).size() == 1);
    CHECK(is_homotopy_minimal(y));
    CHECK(range_stats(y).hr == 2);
    CHECK(is_indecomposable(y));
    auto fy = restrict_complex(y, ctx);
    CHECK(range_stats(fy).hr == 4);
    CHECK(is_isomorphic(fy, direct_sum(x, x)).isomorphic);
    auto u = unit_iso(x, ctx);
    CHECK(u.verified);

    auto w = summand_witness_up(x, ctx);
    CHECK(w.summands_up == 1);
    CHECK(w.summands_down == 2);
    CHECK(w.match.isomorphic);
    auto rep = range_bound_report_up(x, ctx);
    CHECK(rep.bounds_ok);
    CHECK(rep.summand_ranges == std::vector<std::size_t>{2});

    // restriction of the free rank-one module doubles
    auto stalk = ProjComplex::stalk(ctx.large(), 0, {0});
    auto r = restrict_complex(stalk, ctx);
    CHECK(r.components(0) == std::vector<std::size_t>{0, 0});
}

TEST_CASE("split non-basic case: F2[t]/(t^2+t+1) over F4") {
    auto f = Field::prime(2);
    auto a = univariate(f, {1, 1, 1});
    ExtensionContext ctx(a, gf4());
    REQUIRE(a->num_projectives() == 1);
    CHECK(ctx.large()->num_projectives() == 2);
    auto x = ProjComplex::stalk(a, 0, {0});
    CHECK(range_stats(x).hr == 2);
    auto y = tensor_complex(x, ctx);
    auto parts = decompose_complex(y);
    REQUIRE(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK(range_stats(p.complex).hr == 1);
        auto back = restrict_complex(p.complex, ctx);
        CHECK(is_isomorphic(back, x).isomorphic);
    }
    auto rep = range_bound_report_up(x, ctx);
    CHECK(rep.summand_ranges == std::vector<std::size_t>{1, 1});
    CHECK(rep.bounds_ok);

    auto down = summand_witness_down(parts[0].complex, ctx);
    CHECK(down.summands_down == 1);
    CHECK(is_isomorphic(down.x, x).isomorphic);
    auto rd = range_bound_report_down(parts[0].complex, ctx);
    CHECK(rd.summand_ranges == std::vector<std::size_t>{2});
    CHECK(unit_iso(x, ctx).verified);
}

TEST_CASE("Q[t]/(t^2+1) over Q(i)") {
    auto q = Field::rationals();
    auto a = univariate(q, {1, 0, 1});
    ExtensionContext ctx(a, gaussian());
    auto x = ProjComplex::stalk(a, 0, {0});
    auto y = tensor_complex(x, ctx);
    CHECK(y.components(0).size() == 2);
    CHECK(total_field_dim(y) == 2);
    CHECK(unit_iso(x, ctx).verified);
    CHECK(range_bound_report_up(x, ctx).summand_ranges == std::vector<std::size_t>{1, 1});
}

TEST_CASE("Kronecker over F4: a module with a parameter outside F2") {
    auto f = Field::prime(2);
    auto k = kronecker(f);
    auto K = gf4();
    ExtensionContext ctx(k, K);
    auto m = Module::from_quiver(ctx.large(), {1, 1},
                                 {Matrix::from_rows(*K, {{K->one()}}, 1), Matrix::from_rows(*K, {{K->generator()}}, 1)});
    auto y = projective_resolution(m, 2).complex;
    REQUIRE(is_indecomposable(y));
    auto fy = restrict_complex(y, ctx);
    CHECK(is_indecomposable(fy));
    CHECK(range_stats(fy).hr == 4);
    auto fm = restrict_module(m, ctx);
    CHECK(fm.dimension_vector() == std::vector<std::size_t>{2, 2});
    CHECK(is_indecomposable(fm));
    auto w = summand_witness_down(y, ctx);
    CHECK(w.summands_down == 1);
    CHECK(w.summands_up == 2);
    CHECK(w.match.isomorphic);
    CHECK(range_bound_report_down(y, ctx).bounds_ok);
}

TEST_CASE("modules: restriction of base change is two copies") {
    auto f = Field::prime(2);
    auto k = kronecker(f);
    ExtensionContext ctx(k, gf4());
    auto m = Module::from_quiver(k, {1, 1}, {Matrix::from_rows(*f, {{f->one()}}, 1), Matrix::from_rows(*f, {{f->one()}}, 1)});
    auto back = restrict_module(tensor_module(m, ctx), ctx);
    CHECK(modules_isomorphic(back, direct_sum(m, m)));
}

TEST_CASE("random complexes: exactness transfer and unit isomorphisms") {
    auto f = Field::prime(2);
    std::vector<AlgebraPtr> algs{dual_numbers(f), a2(f), kronecker(f)};
    std::vector<FieldPtr> exts{gf4(), gf8()};
    std::vector<std::vector<ExtensionContext>> ctxs;
    for (const auto& a : algs) {
        ctxs.emplace_back();
        for (const auto& K : exts) ctxs.back().emplace_back(a, K);
    }
    std::mt19937 rng(99);
    for (int trial = 0; trial < 24; ++trial) {
        const std::size_t ai = static_cast<std::size_t>(trial) % algs.size();
        const auto& ctx = ctxs[ai][rng() % exts.size()];
        RandomComplexSpec spec;
        spec.degrees = 1 + static_cast<int>(rng() % 3);
        spec.max_mult = 1 + rng() % 2;
        auto x = random_complex(algs[ai], rng, spec);
        INFO(format_complex(x));
        auto y = tensor_complex(x, ctx);
        CHECK(cohomology(y) == cohomology(x));
        auto fy = restrict_complex(y, ctx);
        auto cy = cohomology(y), cf = cohomology(fy);
        for (const auto& [i, n] : cy) CHECK(cf[i] == ctx.degree() * n);
        CHECK(range_stats(fy).hr == ctx.degree() * range_stats(y).hr);
        CHECK(unit_iso(x, ctx).verified);
        CHECK(is_homotopy_minimal(y));
        CHECK(is_homotopy_minimal(fy));
    }
}
