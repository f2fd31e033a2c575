#pragma once

// Finite-dimensional algebras over a Field.
//
// The main input class is a quiver with admissible relations, compiled to a
// path basis with structure constants.  Two side paths cover non-basic
// algebras: k[t]/(f) and an explicit structure-constant table.  All three
// produce the same Algebra object; projectives are A f_u for a chosen
// representative f_u of each isoclass of primitive idempotents (for quiver
// algebras these are exactly the vertex idempotents).
//
// Conventions: left modules; paths compose right to left, so the word a*b
// means "b, then a"; Hom(A f_u, A f_v) = f_u A f_v acting by right
// multiplication, hence the element of psi o phi is (elem phi) * (elem psi).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drt/assoc.hpp"

namespace drt {

struct Arrow {
    std::string name;
    std::size_t source = 0, target = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::size_t vertex(const std::string& name) const;
    std::optional<std::size_t> find_arrow(const std::string& name) const;
    void validate() const;
};

// Arrow indices, leftmost applied last: {a, b} is the path a*b.
using Word = std::vector<std::size_t>;

struct RelationTerm {
    Scalar coeff;
    Word word;
};
using Relation = std::vector<RelationTerm>;

struct Presentation {
    enum class Kind { Quiver, Univariate, Table };
    Kind kind = Kind::Quiver;
    FieldPtr field;
    // Quiver
    Quiver quiver;
    std::vector<Relation> relations;
    // Univariate: k[t]/(modulus), modulus monic, constant term first
    poly::Poly modulus;
    // Table: table[i * dim + j] = coordinates of b_i b_j; unit optional
    std::size_t table_dim = 0;
    std::vector<Vec> table;
    std::optional<Vec> table_unit;
    std::vector<std::string> table_labels;

    // The same presentation with every scalar embedded into `ext`, whose
    // base must be this presentation's field.
    Presentation extended_to(const FieldPtr& ext) const;
};

struct BuildOptions {
    std::size_t length_cap = 32;      // longest path length tried before declaring non-nilpotence
    std::size_t path_limit = 200000;  // guard against path explosions
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Basis of A f_u with a coordinate map.
struct ProjData {
    std::string name;
    Vec idempotent;
    std::vector<Vec> basis;
    CoordMap coords;
    std::size_t top_dim = 0;      // dim of A f_u / rad A f_u
    std::size_t radical_dim = 0;  // dim of rad A f_u
};

// Basis of f_u A f_v: unit lifts first (u == v only), then a radical basis
// adapted to the filtration by powers of the radical.
struct HomData {
    std::vector<Vec> basis;
    CoordMap coords;
    std::size_t unit_count = 0;
    std::vector<std::size_t> level;  // 0 for unit lifts, L for rad^L \ rad^(L+1)
    std::vector<Matrix> right_mult;  // field-level matrix A f_u -> A f_v of each basis element

    std::size_t size() const noexcept { return basis.size(); }
    std::size_t radical_count() const noexcept { return basis.size() - unit_count; }
};

// A primitive idempotent g of the regular decomposition, with an
// isomorphism A g ~ A f_rep: x in g A f_rep, y in f_rep A g, xy = g, yx = f_rep.
struct Piece {
    Vec idempotent;
    std::size_t rep = 0;
    Vec x, y;
};

class Algebra {
public:
    static AlgebraPtr build(const Presentation& pres, const BuildOptions& opts = {});

    const Field& field() const { return *pres_.field; }
    const FieldPtr& field_ptr() const { return pres_.field; }
    const Presentation& presentation() const { return pres_; }
    bool has_quiver() const { return pres_.kind == Presentation::Kind::Quiver; }
    const Quiver& quiver() const;

    std::size_t dim() const noexcept { return assoc_.dim(); }
    const AssocAlgebra& assoc() const noexcept { return assoc_; }
    const std::vector<std::string>& basis_labels() const noexcept { return labels_; }
    Vec mul(const Vec& a, const Vec& b) const { return assoc_.mul(a, b); }
    const Vec& one() const noexcept { return assoc_.one(); }
    Vec zero() const { return assoc_.zero(); }
    Vec basis(std::size_t i) const { return assoc_.basis(i); }
    Vec scalar(const Scalar& c) const { return drt::scale(one(), c); }

    // Radical and its powers.
    const std::vector<Vec>& radical_basis() const noexcept { return radical_; }
    bool in_radical(const Vec& a) const;
    // Smallest L with rad^L = 0.
    std::size_t loewy_length() const noexcept { return rad_powers_.size() + 1; }

    // Quiver-only accessors.
    Vec vertex_element(std::size_t v) const;
    Vec arrow_element(std::size_t a) const;
    Vec path_element(const Word& w) const;
    // Path word of each basis element (quiver algebras); empty word for e_v.
    const std::vector<Word>& basis_words() const noexcept { return words_; }
    const std::vector<std::size_t>& basis_vertex() const noexcept { return word_vertex_; }

    // Univariate-only: the class of t.
    Vec generator_t() const;

    // Element generators used for module actions.
    const std::vector<Vec>& generators() const noexcept { return generators_; }

    // Indecomposable projectives.
    std::size_t num_projectives() const noexcept { return proj_.size(); }
    const ProjData& proj(std::size_t u) const { return proj_.at(u); }
    std::optional<std::size_t> projective_index(const std::string& name) const;
    const HomData& hom(std::size_t u, std::size_t v) const { return hom_.at(u * proj_.size() + v); }

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    // For an arbitrary primitive idempotent g: the isomorphism A g ~ A f_rep.
    Piece match_piece(const Vec& g) const;
    // Inverse of a unit of the local ring f_u A f_u.
    Vec corner_inverse(std::size_t u, const Vec& a) const;

    std::string format_element(const Vec& a) const;
    std::string describe() const;

private:
    Algebra() = default;
    void finish();

    Presentation pres_;
    AssocAlgebra assoc_;
    std::vector<std::string> labels_;
    std::vector<Word> words_;
    std::vector<std::size_t> word_vertex_;
    std::vector<Vec> generators_;
    std::vector<Vec> radical_;
    CoordMap radical_coords_;
    std::vector<std::vector<Vec>> rad_powers_;  // rad_powers_[L-1] = basis of rad^L
    std::vector<ProjData> proj_;
    std::vector<HomData> hom_;
    std::vector<Piece> pieces_;
    std::vector<AssocAlgebra::Corner> corners_;  // f_u A f_u
};

}  // namespace drt
