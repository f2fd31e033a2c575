#include <doctest.h>

#include "drt/spec.hpp"
#include "oracles.hpp"

using namespace drt;
using namespace drt::spec;

namespace {

const char* dual_spec = R"S(# k[x]/(x^2)
name = "dual numbers"
field = "Fp(2)"
extension = { minpoly = [1, 1, 1] }

[quiver]
vertices = ["1"]
arrows = ["x: 1 -> 1"]
relations = ["x*x"]

[complex.C]
deg0 = ["P1"]
deg1 = ["P1"]
d0 = [["x"]]

[complex.Cone]
deg0 = ["P1"]
deg1 = ["P1"]
d0 = [["e1"]]

[module.S]
simple = "P1"
)S";

std::string error_of(const std::string& text) {
    try {
        Spec::parse(text, "t.toml");
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

ErrorKind kind_of(const std::string& text) {
    try {
        Spec::parse(text, "t.toml");
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::Invariant;
}

// the same complex over an identical copy of its algebra
ProjComplex transplant(const AlgebraPtr& a, const ProjComplex& x) {
    std::vector<std::vector<std::size_t>> cs;
    std::vector<AMatrix> ds;
    for (int i = x.lo(); i <= x.hi(); ++i) cs.push_back(x.components(i));
    for (int i = x.lo(); i < x.hi(); ++i) ds.push_back(x.differential(i));
    return ProjComplex(a, x.lo(), cs, ds);
}

}  // namespace

TEST_CASE("document reader") {
    auto d = parse_document("a = 1\nb = [\"x\", [2, -3],\n  { k = true }, ] # c\n[s.t]\n\"q k\" = \"v\\\"\"\n");
    REQUIRE(d.sections.size() == 2);
    CHECK(d.sections[0].entries.size() == 2);
    CHECK(d.sections[0].entries[0].second.num == 1);
    const auto& arr = *d.sections[0].entries[1].second.arr;
    REQUIRE(arr.size() == 3);
    CHECK((*arr[1].arr)[1].num == -3);
    CHECK((*arr[2].tab)[0].second.flag);
    CHECK(d.sections[1].name == "s.t");
    CHECK(d.sections[1].entries[0].first == "q k");
    CHECK(d.sections[1].entries[0].second.str == "v\"");

    CHECK(error_of("field = \"Fp(2)\"\nx = [1, 2\n") == "t.toml:3:1: expected ']', found end of input");
    CHECK(error_of("field = \"Fp(2)\"\n\nname = oops\n") == "t.toml:3:8: unexpected 'oops' (strings need double quotes)");
    CHECK(error_of("a = 1\na = 2\n") == "t.toml:2:1: duplicate key 'a'");
    CHECK(error_of("a = \"x\n") == "t.toml:1:5: unterminated string");
    CHECK(error_of("a = 1 2\n") == "t.toml:1:7: unexpected '2' after value");
}

TEST_CASE("validate: dual numbers") {
    auto s = Spec::parse(dual_spec, "dual.toml");
    CHECK(s.name() == "dual numbers");
    CHECK(s.algebra()->dim() == 2);
    CHECK(s.algebra()->radical_basis().size() == 1);
    CHECK(s.has_extension());
    CHECK(s.extension().degree() == 2);
    CHECK(range_stats(s.complex("C")).hr == 2);
    CHECK(minimize(s.complex("Cone")).minimal.empty());
    CHECK(s.module("S").dim() == 1);
    CHECK(s.complex_names() == std::vector<std::string>{"C", "Cone"});
}

TEST_CASE("semantic errors") {
    const std::string head = "field = \"Fp(2)\"\n[quiver]\nvertices = [\"1\"]\narrows = [\"x: 1 -> 1\"]\n";
    // a relation of length 1 is not admissible
    auto e = error_of(head + "relations = [\"x\"]\n");
    CHECK(e.find("t.toml:2:1:") == 0);
    CHECK(e.find("admissible") != std::string::npos);
    // x^2 over F2 is reducible
    e = error_of("field = \"Fp(2)\"\nextension = { minpoly = [0, 0, 1] }\n[quiver]\nvertices = [\"1\"]\n");
    CHECK(e.find("t.toml:2:25:") == 0);
    CHECK(e.find("reducible") != std::string::npos);
    CHECK(error_of("field = \"Fp(4)\"\n[quiver]\nvertices = [\"1\"]\n") == "t.toml:1:9: Fp(4): 4 is not prime");
    e = error_of(head + "relations = [\"x*x\"]\n[complex.X]\ndeg0 = [\"P9\"]\n");
    CHECK(e.find("unknown projective 'P9'") != std::string::npos);
    e = error_of(head + "relations = [\"x*x\"]\n[complex.X]\ndeg0 = [\"P1\"]\ndeg1 = [\"P1\"]\nd0 = [[\"x +\"]]\n");
    CHECK(e.find("t.toml:9:8: in expression 'x +' at column 4") == 0);
    e = error_of(head + "relations = [\"x*x\"]\n[complex.X]\ndeg0 = [\"P1\"]\ndeg1 = [\"P1\"]\ndeg2 = [\"P1\"]\nd0 = [[\"e1\"]]\nd1 = [[\"e1\"]]\n");
    CHECK(e.find("d1 o d0 is not zero") != std::string::npos);
    CHECK(kind_of(head + "relations = [\"x*x\"]\n[bogus]\n") == ErrorKind::Parse);
    CHECK(kind_of("field = \"Q\"\n[quiver]\nvertices = [\"1\"]\narrows = [\"x: 1 -> 2\"]\n") == ErrorKind::Precondition);
}

TEST_CASE("element expressions") {
    auto s = Spec::parse("field = \"Q\"\n[quiver]\nvertices = [\"1\", \"2\", \"3\"]\narrows = [\"a: 1 -> 2\", \"b: 2 -> 3\"]\n");
    const Algebra& a = *s.algebra();
    // the label b*a is the path "a, then b"
    CHECK(parse_element(a, "b*a") == a.mul(a.arrow_element(1), a.arrow_element(0)));
    CHECK(parse_element(a, "b*a") == a.path_element({1, 0}));
    CHECK(parse_element(a, "2*e1 - 1/2*a + (3/4)*b") ==
          add(add(scale(a.vertex_element(0), a.field().from_int(2)), scale(a.arrow_element(0), -a.field().from_rational(mpq_class(1, 2)))),
              scale(a.arrow_element(1), a.field().from_rational(mpq_class(3, 4)))));
    CHECK(parse_element(a, "(e1 + e2)^2") == add(a.vertex_element(0), a.vertex_element(1)));
    CHECK(parse_element(a, "1") == a.one());
    CHECK(parse_element(a, "s*a", std::pair<std::string, Scalar>{"s", a.field().from_int(5)}) ==
          scale(a.arrow_element(0), a.field().from_int(5)));
    CHECK_THROWS_AS(parse_element(a, "c"), Error);
    CHECK_THROWS_AS(parse_element(a, "a/b"), Error);
    for (std::size_t i = 0; i < a.dim(); ++i) CHECK(parse_element(a, a.format_element(a.basis(i))) == a.basis(i));

    auto f4 = Spec::parse("field = { base = \"Fp(2)\", minpoly = [1, 1, 1] }\n[univariate]\nmodulus = [0, 0, 1]\n");
    const Algebra& b = *f4.algebra();
    const Field& f = b.field();
    CHECK(parse_scalar(f, "z^2 + z") == f.one());
    CHECK(parse_scalar(f, "(1,1)") == f.one() + f.generator());
    CHECK(parse_element(b, "(0,1)*t") == scale(b.generator_t(), f.generator()));
}

TEST_CASE("table and univariate presentations, modules") {
    auto s = Spec::parse(R"S(field = "Q"
extension = { base = "Q", minpoly = [1, 0, 1] }
[table]
dim = 2
labels = ["one", "i"]
products = [["one", "i"], ["i", "-one"]]
unit = "one"
[complex.X]
deg0 = ["P1"]
)S");
    CHECK(s.algebra()->dim() == 2);
    CHECK(s.algebra()->num_projectives() == 1);
    CHECK(s.extension().large()->num_projectives() == 2);

    auto u = Spec::parse(R"S(field = "Fp(3)"
[univariate]
modulus = [0, 0, 1]
[module.M]
t = [[0, 1], [0, 0]]
)S");
    CHECK(is_indecomposable(u.module("M")));

    auto k = Spec::parse(R"S(field = "Q"
[quiver]
vertices = ["1", "2"]
arrows = ["a: 1 -> 2", "b: 1 -> 2"]
[module.M]
dims = [1, 1]
actions = { a = [[1]], b = [["1/2"]] }
)S", "k.toml");
    (void)k;
}

TEST_CASE("repr round trip") {
    auto s = Spec::parse(dual_spec, "dual.toml");
    const auto& c = s.complex("C");
    auto big = direct_sum(c, shift(c, 1));
    std::string text = s.header() + "\n" + format_complex_section("B", big, false) + "\n" +
                       format_complex_section("Z", ProjComplex::zero(s.algebra()), false);
    auto back = Spec::parse(text, "repr.toml");
    CHECK(back.complex("Z").empty());
    const auto& b2 = back.complex("B");
    CHECK(b2.lo() == big.lo());
    CHECK(range_stats(b2).cohomology_dims == range_stats(big).cohomology_dims);
    CHECK(testing::brute_isomorphic(transplant(s.algebra(), b2), big));
    // header re-parses to the same algebra
    CHECK(back.algebra()->basis_labels() == s.algebra()->basis_labels());
    CHECK(back.extension().degree() == 2);
    CHECK(Spec::parse(back.header(), "again.toml").header() == back.header());
}

TEST_CASE("families") {
    auto s = Spec::parse(R"S(field = "Q"
extension = { minpoly = [1, 0, 1] }
[quiver]
vertices = ["1", "2"]
arrows = ["a: 1 -> 2", "b: 1 -> 2"]
[family.M]
parameter = "s"
samples = 5
deg0 = ["P2"]
deg1 = ["P1"]
d0 = [["a + s*b"]]
)S");
    auto samples = s.family_samples("M");
    REQUIRE(samples.size() == 5);
    auto r = family_probe(s.family_algebra("M"), s.family("M"), samples);
    CHECK(r.witnesses == 5);
    CHECK(r.degenerate.empty());
}
