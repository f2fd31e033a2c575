#pragma once

// Algebra spec files: a small TOML subset (sections, key = value, strings,
// integers, booleans, arrays, inline tables) describing a field, an optional
// extension, an algebra, and named complexes, modules and families.
// Grammar and examples: README.md.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drt/classify.hpp"
#include "drt/module.hpp"

namespace drt::spec {

// ---------------------------------------------------------------- documents

struct Pos {
    int line = 1, col = 1;
};

struct Value;
using Array = std::vector<Value>;
using Table = std::vector<std::pair<std::string, Value>>;  // insertion order

struct Value {
    enum class Kind { String, Integer, Boolean, Array, Table };
    Kind kind = Kind::String;
    Pos pos;
    std::string str;
    long long num = 0;
    bool flag = false;
    std::shared_ptr<Array> arr;
    std::shared_ptr<Table> tab;

    std::string kind_name() const;
};

struct Section {
    std::string name;  // "" for the root, otherwise dotted: "complex.X"
    Pos pos;
    Table entries;
};

struct Document {
    std::string source;
    std::vector<Section> sections;  // root first
};

Document parse_document(const std::string& text, const std::string& source = "<input>");

// ---------------------------------------------------------------- expressions

// Element expressions: sums of products of scalars, basis labels, arrows,
// vertex idempotents (e<v>), t, the extension generator z, a family
// parameter, integer powers, fractions and coordinate tuples (c0, c1, ...).
Vec parse_element(const Algebra& a, const std::string& text, const std::optional<std::pair<std::string, Scalar>>& param = {});
Scalar parse_scalar(const Field& f, const std::string& text);

// ---------------------------------------------------------------- spec files

struct LoadOptions {
    bool assume_irreducible = false;
};

struct ComplexDecl {
    std::string name;
    Pos pos;
    bool over_large = false;
    int lo = 0;
    std::vector<std::vector<std::string>> comps;  // projective names per degree
    std::map<int, std::vector<std::vector<std::pair<std::string, Pos>>>> diffs;  // degree -> rows of entries
};

struct FamilyDecl {
    ComplexDecl body;
    std::string parameter;
    std::vector<std::pair<std::string, Pos>> samples;
};

class Spec {
public:
    static Spec parse(const std::string& text, const std::string& source = "<input>", const LoadOptions& o = {});
    static Spec load(const std::string& path, const LoadOptions& o = {});

    const std::string& name() const { return name_; }
    const std::string& source() const { return source_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    bool has_extension() const { return ctx_ != nullptr; }
    const ExtensionContext& extension() const;

    const std::vector<std::string>& complex_names() const { return complex_order_; }
    bool has_complex(const std::string& n) const { return complexes_.count(n) != 0; }
    const ProjComplex& complex(const std::string& n) const;
    bool complex_over_large(const std::string& n) const;

    const std::vector<std::string>& module_names() const { return module_order_; }
    bool has_module(const std::string& n) const { return modules_.count(n) != 0; }
    const Module& module(const std::string& n) const;

    const std::vector<std::string>& family_names() const { return family_order_; }
    FamilyTemplate family(const std::string& n) const;
    const AlgebraPtr& family_algebra(const std::string& n) const;
    std::vector<Scalar> family_samples(const std::string& n) const;

    // Algebra header (field, extension, presentation) in spec syntax.
    std::string header() const;

private:
    std::string name_, source_;
    AlgebraPtr algebra_;
    std::shared_ptr<ExtensionContext> ctx_;
    std::vector<std::string> complex_order_, module_order_, family_order_;
    std::map<std::string, ProjComplex> complexes_;
    std::map<std::string, bool> complex_large_;
    std::map<std::string, Module> modules_;
    std::map<std::string, FamilyDecl> families_;
};

// A [complex.NAME] section for x; the header of its spec re-parses it.
std::string format_complex_section(const std::string& name, const ProjComplex& x, bool over_large);

}  // namespace drt::spec
