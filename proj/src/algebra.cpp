#include "drt/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace drt {

// ---------------------------------------------------------------- Quiver

std::size_t Quiver::vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return i;
    fail(ErrorKind::Precondition, "unknown vertex '" + name + "'");
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return i;
    return std::nullopt;
}

void Quiver::validate() const {
    require(!vertices.empty(), "quiver has no vertices");
    std::set<std::string> names;
    for (const auto& v : vertices) require(names.insert(v).second, "duplicate vertex name '" + v + "'");
    for (const auto& a : arrows) {
        require(names.insert(a.name).second, "duplicate name '" + a.name + "' (arrow names must differ from vertices and each other)");
        require(a.source < vertices.size() && a.target < vertices.size(), "arrow '" + a.name + "' has a missing endpoint");
    }
}

Presentation Presentation::extended_to(const FieldPtr& ext) const {
    require(ext && ext->is_extension() && ext->base()->same(*field),
            "extension field must be built over the algebra's base field");
    Presentation out = *this;
    out.field = ext;
    auto lift_vec = [&](const Vec& v) {
        Vec r;
        for (const auto& x : v) r.push_back(ext->embed(x));
        return r;
    };
    for (auto& rel : out.relations)
        for (auto& t : rel) t.coeff = ext->embed(t.coeff);
    for (auto& c : out.modulus) c = ext->embed(c);
    for (auto& v : out.table) v = lift_vec(v);
    if (out.table_unit) out.table_unit = lift_vec(*out.table_unit);
    return out;
}

// ---------------------------------------------------------------- path basis

namespace {

struct QuiverCompiled {
    std::vector<Word> words;            // basis words; idempotents have empty words
    std::vector<std::size_t> vertex;    // for idempotents: the vertex; otherwise the word's source
    std::vector<Vec> table;
    Vec unit;
};

std::size_t word_source(const Quiver& q, const Word& w) { return q.arrows[w.back()].source; }
std::size_t word_target(const Quiver& q, const Word& w) { return q.arrows[w.front()].target; }

bool composable(const Quiver& q, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (q.arrows[w[i]].source != q.arrows[w[i + 1]].target) return false;
    return true;
}

std::string word_label(const Quiver& q, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += q.arrows[w[i]].name;
    }
    return s;
}

Word concat(const Word& a, const Word& b, const Word& c) {
    Word w;
    w.reserve(a.size() + b.size() + c.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
}

// Paths by length, with per-(source, target) buckets.  Length 0 is the
// trivial path at each vertex (an empty word).
class PathTable {
public:
    PathTable(const Quiver& q, std::size_t limit) : q_(q), limit_(limit) {
        levels_.emplace_back();
        for (std::size_t v = 0; v < q.vertices.size(); ++v) levels_[0].push_back({});
    }

    const std::vector<Word>& level(std::size_t L) {
        while (levels_.size() <= L) grow();
        return levels_[L];
    }

private:
    void grow() {
        const std::size_t L = levels_.size();
        std::vector<Word> next;
        if (L == 1) {
            for (std::size_t a = 0; a < q_.arrows.size(); ++a) next.push_back({a});
        } else {
            for (const auto& w : levels_[L - 1])
                for (std::size_t a = 0; a < q_.arrows.size(); ++a)
                    if (q_.arrows[a].source == word_target(q_, w)) {
                        Word nw{a};
                        nw.insert(nw.end(), w.begin(), w.end());
                        next.push_back(std::move(nw));
                    }
        }
        std::sort(next.begin(), next.end());
        total_ += next.size();
        if (total_ > limit_)
            fail(ErrorKind::SearchCap, "path enumeration exceeded " + std::to_string(limit_) +
                                           " paths; the relations do not cut the path algebra down fast enough");
        levels_.push_back(std::move(next));
    }

    const Quiver& q_;
    std::size_t limit_;
    std::size_t total_ = 0;
    std::vector<std::vector<Word>> levels_;
};

struct RelInfo {
    std::size_t source, target, minlen, maxlen;
};

RelInfo check_relation(const Quiver& q, const Relation& r, std::size_t idx) {
    const std::string tag = "relation #" + std::to_string(idx + 1);
    require(!r.empty(), tag + " is empty");
    RelInfo info{0, 0, SIZE_MAX, 0};
    bool first = true;
    for (const auto& t : r) {
        for (auto a : t.word) require(a < q.arrows.size(), tag + ": unknown arrow");
        if (t.word.size() < 2)
            fail(ErrorKind::Precondition,
                 tag + " is not admissible: term '" + (t.word.empty() ? std::string("1") : word_label(q, t.word)) +
                     "' has length " + std::to_string(t.word.size()) +
                     " < 2 (relations must lie in the square of the arrow ideal)");
        require(composable(q, t.word), tag + ": '" + word_label(q, t.word) + "' is not a path (arrows do not compose)");
        std::size_t s = word_source(q, t.word), tg = word_target(q, t.word);
        if (first) {
            info.source = s;
            info.target = tg;
            first = false;
        }
        require(s == info.source && tg == info.target, tag + ": terms are not parallel paths");
        info.minlen = std::min(info.minlen, t.word.size());
        info.maxlen = std::max(info.maxlen, t.word.size());
    }
    return info;
}

// Sparse vector over words.
using WordVec = std::map<Word, Scalar>;

void add_term(WordVec& v, const Word& w, const Scalar& c) {
    auto it = v.find(w);
    if (it == v.end()) {
        if (!c.is_zero()) v.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

// All u*r*v with |u| + |v| + minlen(r) <= total, truncated to lengths <= trunc.
std::vector<WordVec> ideal_generators(const Quiver& q, PathTable& paths, const std::vector<Relation>& rels,
                                      const std::vector<RelInfo>& info, std::size_t total, std::size_t trunc,
                                      bool exact_total) {
    std::vector<WordVec> out;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        const auto& in = info[ri];
        if (in.minlen > total) continue;
        const std::size_t slack = total - in.minlen;
        for (std::size_t lu = 0; lu <= slack; ++lu) {
            // u is applied after r: its source is r's target.
            std::vector<Word> us;
            if (lu == 0) {
                us.push_back({});
            } else {
                for (const auto& w : paths.level(lu))
                    if (word_source(q, w) == in.target) us.push_back(w);
            }
            for (std::size_t lv = 0; lu + lv <= slack; ++lv) {
                if (exact_total && lu + lv != slack) continue;
                std::vector<Word> vs;
                if (lv == 0) {
                    vs.push_back({});
                } else {
                    for (const auto& w : paths.level(lv))
                        if (word_target(q, w) == in.source) vs.push_back(w);
                }
                for (const auto& u : us)
                    for (const auto& v : vs) {
                        WordVec g;
                        for (const auto& t : rels[ri]) {
                            Word w = concat(u, t.word, v);
                            if (w.size() <= trunc) add_term(g, w, t.coeff);
                        }
                        if (!g.empty()) out.push_back(std::move(g));
                    }
            }
        }
    }
    return out;
}

// Column order used when choosing normal words: longer words first, then
// lexicographically larger first, so pivots land on the "largest" words and
// the surviving basis consists of the smallest ones.
bool pivot_order(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
}

struct Reduction {
    std::vector<Word> basis;              // surviving words (length >= 1), ascending (length, lex)
    std::map<Word, WordVec> normal_form;  // every word of length < N, over surviving words
    std::size_t nilpotency = 0;           // N: all paths of length >= N vanish
};

// Row-reduce generators over the given columns; returns the surviving words
// and normal forms for every column word.
void reduce_block(const Field& f, const std::vector<Word>& cols_in, const std::vector<WordVec>& gens,
                  Reduction& red) {
    std::vector<Word> cols = cols_in;
    std::sort(cols.begin(), cols.end(), pivot_order);
    std::map<Word, std::size_t> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) col_index[cols[i]] = i;
    Matrix m(f, gens.size(), cols.size());
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (const auto& [w, c] : gens[r]) {
            auto it = col_index.find(w);
            if (it != col_index.end()) m(r, it->second) = c;
        }
    std::vector<bool> is_pivot(cols.size(), false);
    Echelon ech;
    if (!gens.empty() && !cols.empty()) {
        ech = rref(m);
        for (auto p : ech.pivots) is_pivot[p] = true;
    }
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (!is_pivot[c]) {
            red.basis.push_back(cols[c]);
            red.normal_form[cols[c]] = WordVec{{cols[c], f.one()}};
        }
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        WordVec nf;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (c != ech.pivots[r] && !is_pivot[c] && !ech.rref(r, c).is_zero()) nf[cols[c]] = -ech.rref(r, c);
        red.normal_form[cols[ech.pivots[r]]] = std::move(nf);
    }
}

Reduction reduce_homogeneous(const Quiver& q, PathTable& paths, const std::vector<Relation>& rels,
                             const std::vector<RelInfo>& info, const Field& f, const BuildOptions& opts) {
    Reduction red;
    for (std::size_t L = 1;; ++L) {
        const auto& lvl = paths.level(L);
        if (lvl.empty()) {
            red.nilpotency = L;
            break;
        }
        std::vector<WordVec> gens;
        if (L >= 2) gens = ideal_generators(q, paths, rels, info, L, L, true);
        Reduction part;
        reduce_block(f, lvl, gens, part);
        if (part.basis.empty()) {
            red.nilpotency = L;
            break;
        }
        if (L >= opts.length_cap)
            fail(ErrorKind::Precondition, "arrow ideal is not nilpotent modulo the relations within the length cap " +
                                              std::to_string(opts.length_cap) +
                                              " (relations are not admissible, or raise the cap)");
        std::sort(part.basis.begin(), part.basis.end());
        red.basis.insert(red.basis.end(), part.basis.begin(), part.basis.end());
        red.normal_form.insert(part.normal_form.begin(), part.normal_form.end());
    }
    return red;
}

// Exact membership of every length-N path in the ideal, using products
// u*r*v whose lowest term has length at most `depth`.
bool certify_power_in_ideal(const Quiver& q, PathTable& paths, const std::vector<Relation>& rels,
                            const std::vector<RelInfo>& info, const Field& f, std::size_t N, std::size_t depth) {
    std::size_t maxlen = 0, minlen = SIZE_MAX;
    for (const auto& in : info) maxlen = std::max(maxlen, in.maxlen), minlen = std::min(minlen, in.minlen);
    const std::size_t top = depth + maxlen - minlen;
    auto gens = ideal_generators(q, paths, rels, info, depth, top, false);
    std::map<Word, std::size_t> index;
    for (const auto& g : gens)
        for (const auto& [w, c] : g) index.emplace(w, 0);
    for (const auto& w : paths.level(N)) index.emplace(w, 0);
    std::size_t k = 0;
    for (auto& [w, i] : index) i = k++;
    Matrix m(f, index.size(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (const auto& [w, c] : gens[j]) m(index[w], j) = c;
    const std::size_t r0 = rank(m);
    for (const auto& w : paths.level(N)) {
        Matrix aug(f, index.size(), gens.size() + 1);
        aug.set_block(0, 0, m);
        aug(index[w], gens.size()) = f.one();
        if (rank(aug) != r0) return false;
    }
    return true;
}

Reduction reduce_general(const Quiver& q, PathTable& paths, const std::vector<Relation>& rels,
                         const std::vector<RelInfo>& info, const Field& f, const BuildOptions& opts) {
    for (std::size_t N = 2; N <= opts.length_cap; ++N) {
        // Is every length-N path in I + J^(N+1)?
        std::vector<Word> cols;
        for (std::size_t L = 1; L <= N; ++L)
            for (const auto& w : paths.level(L)) cols.push_back(w);
        auto gens = ideal_generators(q, paths, rels, info, N, N, false);
        Reduction trial;
        reduce_block(f, cols, gens, trial);
        bool top_dies = std::none_of(trial.basis.begin(), trial.basis.end(), [&](const Word& w) { return w.size() == N; });
        if (!top_dies) continue;
        if (!certify_power_in_ideal(q, paths, rels, info, f, N, 2 * N)) continue;
        // A = kQ_{<N} / image of I.
        std::vector<Word> low;
        for (std::size_t L = 1; L < N; ++L)
            for (const auto& w : paths.level(L)) low.push_back(w);
        auto low_gens = ideal_generators(q, paths, rels, info, N - 1, N - 1, false);
        Reduction red;
        reduce_block(f, low, low_gens, red);
        std::sort(red.basis.begin(), red.basis.end(), [](const Word& a, const Word& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        red.nilpotency = N;
        return red;
    }
    fail(ErrorKind::Precondition, "could not show that the relations contain a power of the arrow ideal within the length cap " +
                                      std::to_string(opts.length_cap) + " (relations are not admissible, or raise the cap)");
}

QuiverCompiled compile_quiver(const Presentation& pres, const BuildOptions& opts) {
    const Quiver& q = pres.quiver;
    const Field& f = *pres.field;
    q.validate();
    std::vector<RelInfo> info;
    bool homogeneous = true;
    for (std::size_t i = 0; i < pres.relations.size(); ++i) {
        for (const auto& t : pres.relations[i])
            require(t.coeff.valid() && t.coeff.field()->same(f), "relation coefficient outside the base field");
        info.push_back(check_relation(q, pres.relations[i], i));
        homogeneous &= info.back().minlen == info.back().maxlen;
    }
    PathTable paths(q, opts.path_limit);
    Reduction red = homogeneous ? reduce_homogeneous(q, paths, pres.relations, info, f, opts)
                                : reduce_general(q, paths, pres.relations, info, f, opts);

    QuiverCompiled out;
    const std::size_t nv = q.vertices.size();
    for (std::size_t v = 0; v < nv; ++v) {
        out.words.push_back({});
        out.vertex.push_back(v);
    }
    std::map<Word, std::size_t> pos;
    for (const auto& w : red.basis) {
        pos[w] = out.words.size();
        out.words.push_back(w);
        out.vertex.push_back(word_source(q, w));
    }
    const std::size_t d = out.words.size();
    auto to_vec = [&](const WordVec& wv) {
        Vec v = zero_vec(f, d);
        for (const auto& [w, c] : wv) v[pos.at(w)] += c;
        return v;
    };
    out.table.assign(d * d, zero_vec(f, d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Word& a = out.words[i];
            const Word& b = out.words[j];
            Vec& cell = out.table[i * d + j];
            if (a.empty() && b.empty()) {
                if (i == j) cell[i] = f.one();
            } else if (a.empty()) {
                if (word_target(q, b) == out.vertex[i]) cell[j] = f.one();
            } else if (b.empty()) {
                if (word_source(q, a) == out.vertex[j]) cell[i] = f.one();
            } else if (word_source(q, a) == word_target(q, b)) {
                Word w = concat(a, b, {});
                if (w.size() < red.nilpotency) cell = to_vec(red.normal_form.at(w));
            }
        }
    out.unit = zero_vec(f, d);
    for (std::size_t v = 0; v < nv; ++v) out.unit[v] = f.one();
    return out;
}

std::string coeff_prefix(const Field& f, const Scalar& c) {
    if (c.is_one()) return "";
    if (c == -f.one() && !f.is_extension()) return "-";
    return f.format(c) + "*";
}

}  // namespace

// ---------------------------------------------------------------- Algebra

AlgebraPtr Algebra::build(const Presentation& pres, const BuildOptions& opts) {
    require(pres.field != nullptr, "algebra presentation has no field");
    const Field& f = *pres.field;
    std::shared_ptr<Algebra> a(new Algebra());
    a->pres_ = pres;
    switch (pres.kind) {
        case Presentation::Kind::Quiver: {
            auto c = compile_quiver(pres, opts);
            const std::size_t d = c.words.size();
            a->assoc_ = AssocAlgebra(f, d, std::move(c.table), std::move(c.unit));
            a->words_ = c.words;
            a->word_vertex_ = c.vertex;
            for (std::size_t i = 0; i < d; ++i)
                a->labels_.push_back(c.words[i].empty() ? "e" + pres.quiver.vertices[c.vertex[i]]
                                                        : word_label(pres.quiver, c.words[i]));
            for (std::size_t v = 0; v < pres.quiver.vertices.size(); ++v) a->generators_.push_back(a->basis(v));
            for (std::size_t ar = 0; ar < pres.quiver.arrows.size(); ++ar)
                a->generators_.push_back(a->path_element({ar}));
            for (std::size_t i = pres.quiver.vertices.size(); i < d; ++i) a->radical_.push_back(a->basis(i));
            break;
        }
        case Presentation::Kind::Univariate: {
            poly::Poly m = pres.modulus;
            poly::trim(m);
            require(poly::degree(m) >= 1, "k[t]/(f): f must have degree at least 1");
            require(m.back().is_one(), "k[t]/(f): f must be monic");
            const std::size_t d = static_cast<std::size_t>(poly::degree(m));
            std::vector<Vec> table;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    auto r = poly::mod(f, poly::monomial(f, i + j), m);
                    Vec v = zero_vec(f, d);
                    for (std::size_t k = 0; k < r.size(); ++k) v[k] = r[k];
                    table.push_back(std::move(v));
                }
            a->assoc_ = AssocAlgebra(f, d, std::move(table), unit_vec(f, d, 0));
            for (std::size_t i = 0; i < d; ++i)
                a->labels_.push_back(i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i));
            if (d > 1) a->generators_.push_back(a->basis(1));
            a->radical_ = jacobson_radical(a->assoc_);
            break;
        }
        case Presentation::Kind::Table: {
            const std::size_t d = pres.table_dim;
            require(d >= 1, "structure table must have dimension at least 1");
            require(pres.table.size() == d * d, "structure table must have dim^2 entries");
            for (const auto& v : pres.table) {
                require(v.size() == d, "structure table entry has wrong length");
                for (const auto& x : v) require(x.field()->same(f), "structure constant outside the base field");
            }
            Vec unit;
            if (pres.table_unit) {
                unit = *pres.table_unit;
            } else {
                // Solve u b_j = b_j = b_j u for all j.
                Matrix m(f, 2 * d * d, d);
                Vec rhs(2 * d * d, f.zero());
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t k = 0; k < d; ++k) {
                            m(j * d + k, i) = pres.table[i * d + j][k];
                            m(d * d + j * d + k, i) = pres.table[j * d + i][k];
                            if (k == j) rhs[j * d + k] = rhs[d * d + j * d + k] = f.one();
                        }
                auto u = solve(m, rhs);
                require(u.has_value(), "structure table has no unit element");
                unit = *u;
            }
            a->assoc_ = AssocAlgebra(f, d, pres.table, unit);
            require(a->assoc_.check_associative(), "structure table is not associative");
            for (std::size_t j = 0; j < d; ++j)
                require(a->assoc_.mul(unit, a->basis(j)) == a->basis(j) && a->assoc_.mul(a->basis(j), unit) == a->basis(j),
                        "structure table: given unit is not a two-sided identity");
            for (std::size_t i = 0; i < d; ++i) {
                a->labels_.push_back(i < pres.table_labels.size() ? pres.table_labels[i] : "b" + std::to_string(i));
                a->generators_.push_back(a->basis(i));
            }
            a->radical_ = jacobson_radical(a->assoc_);
            break;
        }
    }
    a->finish();
    return a;
}

void Algebra::finish() {
    const Field& f = field();
    const std::size_t d = dim();
    radical_coords_ = CoordMap(f, radical_, d);

    rad_powers_.clear();
    if (!radical_.empty()) {
        rad_powers_.push_back(radical_);
        for (;;) {
            std::vector<Vec> prod;
            for (const auto& r : radical_)
                for (const auto& x : rad_powers_.back()) prod.push_back(mul(r, x));
            auto b = span_basis(f, prod, d);
            if (b.empty()) break;
            invariant(b.size() < rad_powers_.back().size(), "radical powers do not decrease");
            rad_powers_.push_back(std::move(b));
        }
    }

    // Regular decomposition and representatives.
    std::vector<Vec> reps;
    if (has_quiver()) {
        for (std::size_t v = 0; v < pres_.quiver.vertices.size(); ++v) {
            Vec e = vertex_element(v);
            pieces_.push_back(Piece{e, v, e, e});
            reps.push_back(e);
        }
    } else {
        for (const auto& g : primitive_idempotents(assoc_)) {
            std::optional<Piece> match;
            for (std::size_t u = 0; u < reps.size() && !match; ++u) {
                std::vector<Vec> gf, fg;
                for (std::size_t j = 0; j < d; ++j) {
                    gf.push_back(mul(mul(g, basis(j)), reps[u]));
                    fg.push_back(mul(mul(reps[u], basis(j)), g));
                }
                gf = span_basis(f, gf, d);
                fg = span_basis(f, fg, d);
                for (const auto& x : gf) {
                    for (const auto& y : fg) {
                        Vec xy = mul(x, y);
                        if (in_radical(xy)) continue;
                        auto c = assoc_.corner(g);
                        auto inv = c.algebra.inverse(c.embedding.coords(xy));
                        invariant(inv.has_value(), "piece matching: corner element is not invertible");
                        match = Piece{g, u, x, mul(y, c.embedding.combine(*inv))};
                        break;
                    }
                    if (match) break;
                }
            }
            if (match) {
                pieces_.push_back(*match);
            } else {
                pieces_.push_back(Piece{g, reps.size(), g, g});
                reps.push_back(g);
            }
        }
    }

    const std::size_t np = reps.size();
    proj_.clear();
    corners_.clear();
    for (std::size_t u = 0; u < np; ++u) {
        ProjData p;
        p.name = has_quiver() ? "P" + pres_.quiver.vertices[u] : "P" + std::to_string(u + 1);
        p.idempotent = reps[u];
        std::vector<Vec> all, rad;
        for (std::size_t j = 0; j < d; ++j) all.push_back(mul(basis(j), reps[u]));
        for (const auto& r : radical_) rad.push_back(mul(r, reps[u]));
        p.basis = span_basis(f, all, d);
        p.coords = CoordMap(f, p.basis, d);
        p.radical_dim = span_basis(f, rad, d).size();
        p.top_dim = p.basis.size() - p.radical_dim;
        proj_.push_back(std::move(p));
        corners_.push_back(assoc_.corner(reps[u]));
    }

    hom_.assign(np * np, HomData{});
    for (std::size_t u = 0; u < np; ++u)
        for (std::size_t v = 0; v < np; ++v) {
            const Vec& fu = reps[u];
            const Vec& fv = reps[v];
            auto sandwich = [&](const std::vector<Vec>& xs) {
                std::vector<Vec> out;
                for (const auto& x : xs) out.push_back(mul(mul(fu, x), fv));
                return span_basis(f, out, d);
            };
            // Deepest radical layer first, then extend outward.
            std::vector<Vec> acc;
            std::vector<std::size_t> lev;
            for (std::size_t L = rad_powers_.size(); L >= 1; --L) {
                auto layer = sandwich(rad_powers_[L - 1]);
                for (const auto& x : layer) {
                    auto trial = acc;
                    trial.push_back(x);
                    if (span_basis(f, trial, d).size() > acc.size()) {
                        acc.push_back(x);
                        lev.push_back(L);
                    }
                }
            }
            std::vector<Vec> all;
            for (std::size_t j = 0; j < d; ++j) all.push_back(basis(j));
            auto whole = sandwich(all);
            std::vector<Vec> units;
            for (const auto& x : whole) {
                auto trial = acc;
                trial.insert(trial.end(), units.begin(), units.end());
                trial.push_back(x);
                if (span_basis(f, trial, d).size() == acc.size() + units.size() + 1) units.push_back(x);
            }
            invariant(u == v || units.empty(), "nonzero unit part between distinct projectives");
            HomData h;
            h.basis = units;
            h.level.assign(units.size(), 0);
            // radical part by increasing level
            std::vector<std::size_t> order(acc.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lev[a] < lev[b]; });
            for (auto i : order) {
                h.basis.push_back(acc[i]);
                h.level.push_back(lev[i]);
            }
            h.unit_count = units.size();
            h.coords = CoordMap(f, h.basis, d);
            for (const auto& b : h.basis) {
                Matrix m(f, proj_[v].basis.size(), proj_[u].basis.size());
                for (std::size_t j = 0; j < proj_[u].basis.size(); ++j) {
                    Vec c = proj_[v].coords.coords(mul(proj_[u].basis[j], b));
                    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
                }
                h.right_mult.push_back(std::move(m));
            }
            hom_[u * np + v] = std::move(h);
        }
}

const Quiver& Algebra::quiver() const {
    require(has_quiver(), "algebra has no quiver presentation");
    return pres_.quiver;
}

bool Algebra::in_radical(const Vec& a) const { return radical_coords_.try_coords(a).has_value(); }

Vec Algebra::vertex_element(std::size_t v) const {
    require(has_quiver() && v < pres_.quiver.vertices.size(), "vertex_element: not a vertex");
    return basis(v);
}

Vec Algebra::arrow_element(std::size_t a) const { return path_element({a}); }

Vec Algebra::path_element(const Word& w) const {
    require(has_quiver(), "path_element: algebra has no quiver presentation");
    if (w.empty()) return one();
    for (auto a : w) require(a < pres_.quiver.arrows.size(), "path_element: unknown arrow");
    if (!composable(pres_.quiver, w)) return zero();
    // Locate each arrow among the basis words (arrows are never killed by admissible relations).
    Vec r;
    for (std::size_t i = w.size(); i-- > 0;) {
        Word single{w[i]};
        auto it = std::find(words_.begin(), words_.end(), single);
        invariant(it != words_.end(), "arrow missing from the path basis");
        Vec e = basis(static_cast<std::size_t>(it - words_.begin()));
        r = r.empty() ? e : mul(e, r);
    }
    return r;
}

Vec Algebra::generator_t() const {
    require(pres_.kind == Presentation::Kind::Univariate, "t is only defined for k[t]/(f) algebras");
    if (dim() == 1) {
        // t = -f0 when deg f = 1
        return scale(one(), -pres_.modulus[0]);
    }
    return basis(1);
}

std::optional<std::size_t> Algebra::projective_index(const std::string& name) const {
    for (std::size_t u = 0; u < proj_.size(); ++u)
        if (proj_[u].name == name) return u;
    return std::nullopt;
}

Piece Algebra::match_piece(const Vec& g) const {
    const Field& f = field();
    const std::size_t d = dim();
    require(assoc_.is_idempotent(g) && !is_zero(g), "match_piece: not a nonzero idempotent");
    for (std::size_t u = 0; u < proj_.size(); ++u) {
        const Vec& fu = proj_[u].idempotent;
        std::vector<Vec> gf, fg;
        for (std::size_t j = 0; j < d; ++j) {
            gf.push_back(mul(mul(g, basis(j)), fu));
            fg.push_back(mul(mul(fu, basis(j)), g));
        }
        gf = span_basis(f, gf, d);
        fg = span_basis(f, fg, d);
        for (const auto& x : gf)
            for (const auto& y : fg) {
                Vec xy = mul(x, y);
                if (in_radical(xy)) continue;
                auto c = assoc_.corner(g);
                auto inv = c.algebra.inverse(c.embedding.coords(xy));
                if (!inv) continue;
                Vec yy = mul(y, c.embedding.combine(*inv));
                invariant(mul(x, yy) == g && mul(yy, x) == fu, "match_piece: isomorphism check failed");
                return Piece{g, u, x, yy};
            }
    }
    fail(ErrorKind::Invariant, "match_piece: idempotent is not primitive or matches no projective");
}

Vec Algebra::corner_inverse(std::size_t u, const Vec& a) const {
    const auto& c = corners_.at(u);
    auto inv = c.algebra.inverse(c.embedding.coords(a));
    require(inv.has_value(), "element is not a unit of the corner ring");
    return c.embedding.combine(*inv);
}

std::string Algebra::format_element(const Vec& a) const {
    const Field& f = field();
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        std::string term = coeff_prefix(f, a[i]) + labels_[i];
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

std::string Algebra::describe() const {
    std::ostringstream os;
    os << "field " << field().name() << "\n";
    os << "dim " << dim() << ", radical dim " << radical_.size() << ", loewy length " << loewy_length() << "\n";
    os << "basis:";
    for (const auto& l : labels_) os << ' ' << l;
    os << "\nprojectives:";
    for (const auto& p : proj_) os << ' ' << p.name << "(dim " << p.basis.size() << ")";
    os << "\n";
    return os.str();
}

}  // namespace drt
