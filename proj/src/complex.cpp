#include "drt/complex.hpp"

#include <algorithm>
#include <sstream>

namespace drt {

// ---- AMatrix -------------------------------------------------------------

AMatrix::AMatrix(const Algebra& a, std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c, a.zero()) {}

bool AMatrix::is_zero() const {
    for (const auto& x : e)
        if (!drt::is_zero(x)) return false;
    return true;
}

AMatrix compose(const Algebra& a, const AMatrix& g, const AMatrix& f) {
    require(g.cols == f.rows, "compose: shape mismatch");
    AMatrix out(a, g.rows, f.cols);
    for (std::size_t r = 0; r < f.rows; ++r)
        for (std::size_t s = 0; s < f.cols; ++s) {
            const Vec& fr = f(r, s);
            if (drt::is_zero(fr)) continue;
            for (std::size_t t = 0; t < g.rows; ++t) {
                const Vec& gt = g(t, r);
                if (drt::is_zero(gt)) continue;
                out(t, s) = drt::add(out(t, s), a.mul(fr, gt));
            }
        }
    return out;
}

AMatrix add(const AMatrix& x, const AMatrix& y) {
    require(x.rows == y.rows && x.cols == y.cols, "add: shape mismatch");
    AMatrix out = x;
    for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = drt::add(out.e[i], y.e[i]);
    return out;
}

AMatrix sub(const AMatrix& x, const AMatrix& y) {
    require(x.rows == y.rows && x.cols == y.cols, "sub: shape mismatch");
    AMatrix out = x;
    for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = drt::sub(out.e[i], y.e[i]);
    return out;
}

AMatrix scale(const AMatrix& x, const Scalar& c) {
    AMatrix out = x;
    for (auto& v : out.e) v = drt::scale(v, c);
    return out;
}

AMatrix identity_amatrix(const Algebra& a, const std::vector<std::size_t>& comps) {
    AMatrix out(a, comps.size(), comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out(i, i) = a.proj(comps[i]).idempotent;
    return out;
}

Matrix realize(const Algebra& a, const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
               const AMatrix& m) {
    require(m.rows == tgt.size() && m.cols == src.size(), "realize: shape mismatch");
    std::vector<std::size_t> so{0}, to{0};
    for (auto u : src) so.push_back(so.back() + a.proj(u).basis.size());
    for (auto u : tgt) to.push_back(to.back() + a.proj(u).basis.size());
    Matrix out(a.field(), to.back(), so.back());
    for (std::size_t t = 0; t < tgt.size(); ++t)
        for (std::size_t s = 0; s < src.size(); ++s) {
            const Vec& x = m(t, s);
            if (is_zero(x)) continue;
            const auto& ps = a.proj(src[s]);
            const auto& pt = a.proj(tgt[t]);
            for (std::size_t j = 0; j < ps.basis.size(); ++j) {
                Vec c = pt.coords.coords(a.mul(ps.basis[j], x));
                for (std::size_t r = 0; r < c.size(); ++r) out(to[t] + r, so[s] + j) = c[r];
            }
        }
    return out;
}

// ---- ProjComplex ---------------------------------------------------------

namespace {

const std::vector<std::size_t> kNoComponents;

bool entry_fits(const Algebra& a, std::size_t us, std::size_t ut, const Vec& x) {
    return a.mul(a.proj(us).idempotent, a.mul(x, a.proj(ut).idempotent)) == x;
}

}  // namespace

ProjComplex::ProjComplex(AlgebraPtr a, int lo, std::vector<std::vector<std::size_t>> comps, std::vector<AMatrix> diffs)
    : a_(std::move(a)), lo_(lo), comps_(std::move(comps)), diffs_(std::move(diffs)) {
    require(a_ != nullptr, "complex needs an algebra");
    const Algebra& A = *a_;
    if (comps_.empty()) {
        require(diffs_.empty(), "complex has differentials but no terms");
    } else {
        require(diffs_.size() + 1 == comps_.size(), "complex needs one differential between consecutive degrees");
    }
    for (const auto& c : comps_)
        for (auto u : c) require(u < A.num_projectives(), "unknown projective in complex");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        const auto& d = diffs_[k];
        const int deg = lo_ + static_cast<int>(k);
        require(d.rows == comps_[k + 1].size() && d.cols == comps_[k].size(),
                "differential d" + std::to_string(deg) + " has the wrong shape");
        for (std::size_t t = 0; t < d.rows; ++t)
            for (std::size_t s = 0; s < d.cols; ++s) {
                require(d(t, s).size() == A.dim(), "differential entry has the wrong length");
                require(entry_fits(A, comps_[k][s], comps_[k + 1][t], d(t, s)),
                        "entry (" + std::to_string(t + 1) + "," + std::to_string(s + 1) + ") of d" +
                            std::to_string(deg) + " is not a map " + A.proj(comps_[k][s]).name + " -> " +
                            A.proj(comps_[k + 1][t]).name);
            }
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
        require(compose(A, diffs_[k + 1], diffs_[k]).is_zero(),
                "d" + std::to_string(lo_ + static_cast<int>(k) + 1) + " o d" + std::to_string(lo_ + static_cast<int>(k)) +
                    " is not zero");
    while (!comps_.empty() && comps_.front().empty()) {
        comps_.erase(comps_.begin());
        if (!diffs_.empty()) diffs_.erase(diffs_.begin());
        ++lo_;
    }
    while (!comps_.empty() && comps_.back().empty()) {
        comps_.pop_back();
        if (!diffs_.empty()) diffs_.pop_back();
    }
    if (comps_.empty()) lo_ = 0;
}

ProjComplex ProjComplex::zero(AlgebraPtr a) { return ProjComplex(std::move(a), 0, {}, {}); }

ProjComplex ProjComplex::stalk(AlgebraPtr a, int degree, std::vector<std::size_t> comps) {
    return ProjComplex(std::move(a), degree, {std::move(comps)}, {});
}

const std::vector<std::size_t>& ProjComplex::components(int deg) const {
    if (empty() || deg < lo_ || deg > hi()) return kNoComponents;
    return comps_[static_cast<std::size_t>(deg - lo_)];
}

AMatrix ProjComplex::differential(int deg) const {
    if (!empty() && deg >= lo_ && deg < hi()) return diffs_[static_cast<std::size_t>(deg - lo_)];
    return AMatrix(*a_, components(deg + 1).size(), components(deg).size());
}

std::size_t ProjComplex::total_multiplicity() const {
    std::size_t n = 0;
    for (const auto& c : comps_) n += c.size();
    return n;
}

std::size_t ProjComplex::field_dim(int deg) const {
    std::size_t n = 0;
    for (auto u : components(deg)) n += a_->proj(u).basis.size();
    return n;
}

bool operator==(const ProjComplex& x, const ProjComplex& y) {
    return x.a_ == y.a_ && x.lo_ == y.lo_ && x.comps_ == y.comps_ && x.diffs_ == y.diffs_;
}

// ---- graded maps ---------------------------------------------------------

AMatrix part(const ProjComplex& x, const ProjComplex& y, const GradedMap& f, int i) {
    auto it = f.parts.find(i);
    if (it != f.parts.end()) return it->second;
    return AMatrix(x.algebra(), y.components(i + f.degree).size(), x.components(i).size());
}

GradedMap compose(const Algebra& a, const GradedMap& g, const GradedMap& f) {
    GradedMap out;
    out.degree = f.degree + g.degree;
    for (const auto& [i, fi] : f.parts) {
        auto it = g.parts.find(i + f.degree);
        if (it == g.parts.end()) continue;
        AMatrix c = compose(a, it->second, fi);
        if (!c.is_zero()) out.parts.emplace(i, std::move(c));
    }
    return out;
}

GradedMap add(const GradedMap& f, const GradedMap& g) {
    require(f.degree == g.degree || f.parts.empty() || g.parts.empty(), "add: degree mismatch");
    GradedMap out = f;
    if (f.parts.empty()) out.degree = g.degree;
    for (const auto& [i, gi] : g.parts) {
        auto it = out.parts.find(i);
        if (it == out.parts.end())
            out.parts.emplace(i, gi);
        else
            it->second = add(it->second, gi);
    }
    return out;
}

GradedMap scale(const GradedMap& f, const Scalar& c) {
    GradedMap out;
    out.degree = f.degree;
    if (c.is_zero()) return out;
    for (const auto& [i, fi] : f.parts) out.parts.emplace(i, scale(fi, c));
    return out;
}

ChainMap identity_map(const ProjComplex& x) {
    ChainMap id;
    if (x.empty()) return id;
    for (int i = x.lo(); i <= x.hi(); ++i) id.parts.emplace(i, identity_amatrix(x.algebra(), x.components(i)));
    return id;
}

bool is_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& f) {
    if (f.degree != 0) return false;
    const Algebra& a = x.algebra();
    for (const auto& [i, fi] : f.parts) {
        if (fi.rows != y.components(i).size() || fi.cols != x.components(i).size()) return false;
        for (std::size_t t = 0; t < fi.rows; ++t)
            for (std::size_t s = 0; s < fi.cols; ++s)
                if (!entry_fits(a, x.components(i)[s], y.components(i)[t], fi(t, s))) return false;
    }
    if (x.empty() && y.empty()) return true;
    const int lo = std::min(x.empty() ? y.lo() : x.lo(), y.empty() ? x.lo() : y.lo()) - 1;
    const int hi = std::max(x.empty() ? y.hi() : x.hi(), y.empty() ? x.hi() : y.hi());
    for (int i = lo; i <= hi; ++i) {
        AMatrix lhs = compose(a, y.differential(i), part(x, y, f, i));
        AMatrix rhs = compose(a, part(x, y, f, i + 1), x.differential(i));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool maps_equal(const ProjComplex& x, const ProjComplex& y, const GradedMap& f, const GradedMap& g) {
    if (x.empty()) return true;
    for (int i = x.lo(); i <= x.hi(); ++i)
        if (!(part(x, y, f, i) == part(x, y, g, i))) return false;
    return true;
}

ChainMap homotopy_boundary(const ProjComplex& x, const ProjComplex& y, const Homotopy& h) {
    const Algebra& a = x.algebra();
    ChainMap out;
    if (x.empty() || y.empty()) return out;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        AMatrix v = add(compose(a, y.differential(i - 1), part(x, y, h, i)),
                        compose(a, part(x, y, h, i + 1), x.differential(i)));
        if (!v.is_zero()) out.parts.emplace(i, std::move(v));
    }
    return out;
}

bool is_homotopy_minimal(const ProjComplex& x) {
    const Algebra& a = x.algebra();
    bool ok = true;
    if (!x.empty())
        for (int i = x.lo(); i < x.hi() && ok; ++i) {
            AMatrix d = x.differential(i);
            for (const auto& e : d.e)
                if (!a.in_radical(e)) {
                    ok = false;
                    break;
                }
        }
    x.set_minimal_flag(ok ? Minimality::Yes : Minimality::No);
    return ok;
}

// ---- minimize ------------------------------------------------------------

namespace {

AMatrix& slot(const Algebra& a, GradedMap& m, int deg, std::size_t rows, std::size_t cols) {
    auto it = m.parts.find(deg);
    if (it == m.parts.end()) it = m.parts.emplace(deg, AMatrix(a, rows, cols)).first;
    return it->second;
}

struct Pivot {
    std::size_t k, s, t;
};

}  // namespace

MinimizeResult minimize(const ProjComplex& x) {
    const Algebra& a = x.algebra();
    MinimizeResult res;
    res.to_minimal = identity_map(x);
    res.from_minimal = identity_map(x);
    res.homotopy.degree = -1;
    if (x.empty()) {
        res.minimal = x;
        x.set_minimal_flag(Minimality::Yes);
        res.minimal.set_minimal_flag(Minimality::Yes);
        return res;
    }
    const int lo = x.lo();
    std::vector<std::vector<std::size_t>> comps;
    std::vector<AMatrix> diffs;
    for (int i = lo; i <= x.hi(); ++i) comps.push_back(x.components(i));
    for (int i = lo; i < x.hi(); ++i) diffs.push_back(x.differential(i));
    auto xdim = [&](int deg) { return x.components(deg).size(); };

    for (;;) {
        std::optional<Pivot> pv;
        for (std::size_t k = 0; k < diffs.size() && !pv; ++k)
            for (std::size_t s = 0; s < diffs[k].cols && !pv; ++s)
                for (std::size_t t = 0; t < diffs[k].rows && !pv; ++t)
                    if (!a.in_radical(diffs[k](t, s))) pv = Pivot{k, s, t};
        if (!pv) break;
        const auto [k, s, t] = *pv;
        const int i = lo + static_cast<int>(k);
        const AMatrix d = diffs[k];
        const std::size_t u = comps[k][s];
        invariant(comps[k + 1][t] == u, "unit entry between different projectives");
        const Vec ainv = a.corner_inverse(u, d(t, s));
        const auto& src = comps[k];
        const auto& tgt = comps[k + 1];
        const std::size_t ns = src.size(), nt = tgt.size();

        // f^i: drop s;  f^{i+1}: rows r != t, column t gets -gamma alpha^-1
        AMatrix fi(a, ns - 1, ns), fi1(a, nt - 1, nt);
        for (std::size_t c = 0, r = 0; c < ns; ++c)
            if (c != s) fi(r++, c) = a.proj(src[c]).idempotent;
        for (std::size_t r = 0, rr = 0; r < nt; ++r) {
            if (r == t) continue;
            fi1(rr, r) = a.proj(tgt[r]).idempotent;
            fi1(rr, t) = drt::scale(a.mul(ainv, d(r, s)), -a.field().one());
            ++rr;
        }
        // g^i: row s gets -alpha^-1 beta;  g^{i+1}: inclusion
        AMatrix gi(a, ns, ns - 1), gi1(a, nt, nt - 1);
        for (std::size_t c = 0, cc = 0; c < ns; ++c) {
            if (c == s) continue;
            gi(c, cc) = a.proj(src[c]).idempotent;
            gi(s, cc) = drt::scale(a.mul(d(t, c), ainv), -a.field().one());
            ++cc;
        }
        for (std::size_t r = 0, rr = 0; r < nt; ++r)
            if (r != t) gi1(r, rr++) = a.proj(tgt[r]).idempotent;
        AMatrix h(a, ns, nt);
        h(s, t) = drt::scale(ainv, -a.field().one());

        // accumulate: H += G^i h F^{i+1}, then F <- f F, G <- G g
        {
            AMatrix& Fi1 = slot(a, res.to_minimal, i + 1, nt, xdim(i + 1));
            AMatrix& Gi = slot(a, res.from_minimal, i, xdim(i), ns);
            AMatrix inc = compose(a, Gi, compose(a, h, Fi1));
            AMatrix& Hi1 = slot(a, res.homotopy, i + 1, xdim(i), xdim(i + 1));
            Hi1 = add(Hi1, inc);
        }
        {
            AMatrix& Fi = slot(a, res.to_minimal, i, ns, xdim(i));
            Fi = compose(a, fi, Fi);
            AMatrix& Fi1 = slot(a, res.to_minimal, i + 1, nt, xdim(i + 1));
            Fi1 = compose(a, fi1, Fi1);
            AMatrix& Gi = slot(a, res.from_minimal, i, xdim(i), ns);
            Gi = compose(a, Gi, gi);
            AMatrix& Gi1 = slot(a, res.from_minimal, i + 1, xdim(i + 1), nt);
            Gi1 = compose(a, Gi1, gi1);
        }

        // new differentials: d' = f d g around the cancelled pair
        if (k > 0) diffs[k - 1] = compose(a, fi, diffs[k - 1]);
        diffs[k] = compose(a, fi1, compose(a, d, gi));
        if (k + 1 < diffs.size()) diffs[k + 1] = compose(a, diffs[k + 1], gi1);
        comps[k].erase(comps[k].begin() + static_cast<std::ptrdiff_t>(s));
        comps[k + 1].erase(comps[k + 1].begin() + static_cast<std::ptrdiff_t>(t));
        ++res.cancellations;
    }
    res.minimal = ProjComplex(x.algebra_ptr(), lo, std::move(comps), std::move(diffs));
    res.minimal.set_minimal_flag(Minimality::Yes);
    x.set_minimal_flag(res.cancellations == 0 ? Minimality::Yes : Minimality::No);
    return res;
}

bool verify_minimize(const ProjComplex& x, const MinimizeResult& r) {
    const Algebra& a = x.algebra();
    const ProjComplex& m = r.minimal;
    if (!is_homotopy_minimal(m)) return false;
    if (!is_chain_map(x, m, r.to_minimal) || !is_chain_map(m, x, r.from_minimal)) return false;
    if (!maps_equal(m, m, compose(a, r.to_minimal, r.from_minimal), identity_map(m))) return false;
    ChainMap gf_minus_id = add(compose(a, r.from_minimal, r.to_minimal), scale(identity_map(x), -a.field().one()));
    return maps_equal(x, x, gf_minus_id, homotopy_boundary(x, x, r.homotopy));
}

// ---- cohomology, ranges, shift, truncation, sums -------------------------

std::map<int, std::size_t> cohomology(const ProjComplex& x) {
    std::map<int, std::size_t> out;
    if (x.empty()) return out;
    const Algebra& a = x.algebra();
    std::map<int, std::size_t> rk;
    for (int i = x.lo() - 1; i <= x.hi(); ++i)
        rk[i] = (i < x.lo() || i >= x.hi()) ? 0
                                           : rank(realize(a, x.components(i), x.components(i + 1), x.differential(i)));
    for (int i = x.lo(); i <= x.hi(); ++i) {
        const std::size_t n = x.field_dim(i);
        invariant(n >= rk[i] + rk[i - 1], "cohomology: rank exceeds dimension (d o d != 0?)");
        out[i] = n - rk[i] - rk[i - 1];
    }
    return out;
}

RangeStats range_stats(const ProjComplex& x) {
    RangeStats r;
    r.cohomology_dims = cohomology(x);
    std::optional<int> bottom, top;
    for (const auto& [i, n] : r.cohomology_dims) {
        if (n == 0) continue;
        if (!bottom) bottom = i;
        top = i;
        r.hl = std::max(r.hl, n);
    }
    if (bottom) r.hw = static_cast<std::size_t>(*top - *bottom + 1);
    r.hr = r.hl * r.hw;
    invariant((r.hl == 0) == (r.hw == 0), "range: hl and hw disagree on vanishing");
    return r;
}

ProjComplex shift(const ProjComplex& x, int n) {
    if (x.empty()) return x;
    std::vector<std::vector<std::size_t>> comps;
    std::vector<AMatrix> diffs;
    const bool odd = (n % 2) != 0;
    for (int i = x.lo(); i <= x.hi(); ++i) comps.push_back(x.components(i));
    for (int i = x.lo(); i < x.hi(); ++i)
        diffs.push_back(odd ? scale(x.differential(i), -x.algebra().field().one()) : x.differential(i));
    ProjComplex out(x.algebra_ptr(), x.lo() - n, std::move(comps), std::move(diffs));
    out.set_minimal_flag(x.minimal_flag());
    return out;
}

ProjComplex brutal_truncate(const ProjComplex& x, int t) {
    if (x.empty() || t <= x.lo()) return x;
    if (t > x.hi()) return ProjComplex::zero(x.algebra_ptr());
    std::vector<std::vector<std::size_t>> comps;
    std::vector<AMatrix> diffs;
    for (int i = t; i <= x.hi(); ++i) comps.push_back(x.components(i));
    for (int i = t; i < x.hi(); ++i) diffs.push_back(x.differential(i));
    ProjComplex out(x.algebra_ptr(), t, std::move(comps), std::move(diffs));
    if (x.minimal_flag() == Minimality::Yes) out.set_minimal_flag(Minimality::Yes);
    return out;
}

ProjComplex direct_sum(const ProjComplex& x, const ProjComplex& y) {
    require(x.algebra_ptr() == y.algebra_ptr(), "direct sum of complexes over different algebras");
    if (x.empty()) return y;
    if (y.empty()) return x;
    const Algebra& a = x.algebra();
    const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    std::vector<std::vector<std::size_t>> comps;
    std::vector<AMatrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        auto c = x.components(i);
        const auto& cy = y.components(i);
        c.insert(c.end(), cy.begin(), cy.end());
        comps.push_back(std::move(c));
    }
    for (int i = lo; i < hi; ++i) {
        AMatrix dx = x.differential(i), dy = y.differential(i);
        AMatrix d(a, dx.rows + dy.rows, dx.cols + dy.cols);
        for (std::size_t t = 0; t < dx.rows; ++t)
            for (std::size_t s = 0; s < dx.cols; ++s) d(t, s) = dx(t, s);
        for (std::size_t t = 0; t < dy.rows; ++t)
            for (std::size_t s = 0; s < dy.cols; ++s) d(dx.rows + t, dx.cols + s) = dy(t, s);
        diffs.push_back(std::move(d));
    }
    return ProjComplex(x.algebra_ptr(), lo, std::move(comps), std::move(diffs));
}

// ---- resolutions ---------------------------------------------------------

namespace {

struct Generator {
    std::size_t rep;
    Vec vector;  // in f_rep M
};

// Elements of f_u M whose images span the top of M, one per simple summand.
std::vector<Generator> top_generators(const Module& m) {
    const Algebra& a = m.algebra();
    const Field& f = a.field();
    std::vector<Vec> span = radical_of_module(m).basis;
    std::size_t cur = span.size();
    std::vector<Generator> out;
    for (std::size_t u = 0; u < a.num_projectives(); ++u) {
        Matrix fu = m.action_of(a.proj(u).idempotent);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (cur == m.dim()) return out;
            Vec v = fu.col(j);
            if (is_zero(v)) continue;
            std::vector<Vec> trial = span;
            for (const auto& b : a.proj(u).basis) trial.push_back(m.action_of(b).apply(v));
            auto basis = span_basis(f, trial, m.dim());
            if (basis.size() > cur) {
                span = std::move(basis);
                cur = span.size();
                out.push_back(Generator{u, v});
            }
        }
    }
    invariant(cur == m.dim(), "projective cover: generators do not span the top");
    return out;
}

Module free_module(const AlgebraPtr& a, const std::vector<std::size_t>& reps) {
    Module out(a, 0, std::vector<Matrix>(a->dim(), Matrix(a->field(), 0, 0)));
    for (auto u : reps) out = direct_sum(out, projective_module(a, u));
    return out;
}

}  // namespace

Resolution projective_resolution(const Module& m, std::size_t depth) {
    const AlgebraPtr& ap = m.algebra_ptr();
    const Algebra& a = *ap;
    const Field& f = a.field();
    Resolution res;
    if (m.dim() == 0) {
        res.complex = ProjComplex::zero(ap);
        res.complete = true;
        return res;
    }
    // terms listed from degree 0 downwards
    std::vector<std::vector<std::size_t>> terms;
    std::vector<AMatrix> diffs;  // diffs[k] : term k+1 -> term k
    Module cur = m;
    std::optional<Matrix> embed;  // cur -> previous free module
    std::vector<std::size_t> prev_reps;
    for (std::size_t step = 0; step <= depth; ++step) {
        auto gens = top_generators(cur);
        std::vector<std::size_t> reps;
        for (const auto& g : gens) reps.push_back(g.rep);
        if (embed) {
            AMatrix d(a, prev_reps.size(), reps.size());
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Vec v = embed->apply(gens[i].vector);
                std::size_t off = 0;
                for (std::size_t t = 0; t < prev_reps.size(); ++t) {
                    const auto& p = a.proj(prev_reps[t]);
                    Vec c(v.begin() + static_cast<std::ptrdiff_t>(off),
                          v.begin() + static_cast<std::ptrdiff_t>(off + p.basis.size()));
                    d(t, i) = p.coords.combine(c);
                    off += p.basis.size();
                }
            }
            diffs.push_back(std::move(d));
        }
        terms.push_back(reps);
        // cover map: free -> cur, sending the i-th generator f_u to gens[i]
        Module free = free_module(ap, reps);
        Matrix cover(f, cur.dim(), free.dim());
        std::size_t off = 0;
        for (const auto& g : gens) {
            const auto& p = a.proj(g.rep);
            for (std::size_t j = 0; j < p.basis.size(); ++j) {
                Vec img = cur.action_of(p.basis[j]).apply(g.vector);
                for (std::size_t r = 0; r < img.size(); ++r) cover(r, off + j) = img[r];
            }
            off += p.basis.size();
        }
        auto ker = kernel(cover);
        if (ker.empty()) {
            res.complete = true;
            break;
        }
        if (step == depth) break;
        cur = submodule(free, ker);
        embed = Matrix::from_cols(f, ker, free.dim());
        prev_reps = reps;
    }
    const std::size_t n = terms.size();
    const int lo = -static_cast<int>(n) + 1;
    std::vector<std::vector<std::size_t>> comps(terms.rbegin(), terms.rend());
    std::vector<AMatrix> ds(diffs.rbegin(), diffs.rend());
    res.complex = ProjComplex(ap, lo, std::move(comps), std::move(ds));
    invariant(is_homotopy_minimal(res.complex), "resolution is not minimal");
    return res;
}

Resolution projective_resolution(const ProjComplex& x, std::size_t) {
    Resolution res;
    res.complex = minimize(x).minimal;
    res.complete = true;
    return res;
}

// ---- hom spaces ----------------------------------------------------------

namespace {

// Unknown coordinates of a graded map X^i -> Y^{i+shift}, block by block.
struct Layout {
    struct Block {
        int deg;
        std::size_t t, s, us, ut, offset;
    };
    std::vector<Block> blocks;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
    std::size_t total = 0;
    int shift = 0;
};

Layout make_layout(const ProjComplex& x, const ProjComplex& y, int shift) {
    const Algebra& a = x.algebra();
    Layout l;
    l.shift = shift;
    if (x.empty() || y.empty()) return l;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        const auto& src = x.components(i);
        const auto& tgt = y.components(i + shift);
        for (std::size_t t = 0; t < tgt.size(); ++t)
            for (std::size_t s = 0; s < src.size(); ++s) {
                l.index[{i, t, s}] = l.blocks.size();
                l.blocks.push_back({i, t, s, src[s], tgt[t], l.total});
                l.total += a.hom(src[s], tgt[t]).size();
            }
    }
    return l;
}

GradedMap to_map(const ProjComplex& x, const ProjComplex& y, const Layout& l, const Vec& v) {
    const Algebra& a = x.algebra();
    GradedMap out;
    out.degree = l.shift;
    for (const auto& b : l.blocks) {
        const auto& h = a.hom(b.us, b.ut);
        Vec el = a.zero();
        bool any = false;
        for (std::size_t k = 0; k < h.size(); ++k)
            if (!v[b.offset + k].is_zero()) {
                el = add(el, scale(h.basis[k], v[b.offset + k]));
                any = true;
            }
        if (!any) continue;
        AMatrix& m = slot(a, out, b.deg, y.components(b.deg + l.shift).size(), x.components(b.deg).size());
        m(b.t, b.s) = el;
    }
    return out;
}

Vec from_map(const ProjComplex& x, const ProjComplex&, const Layout& l, const GradedMap& f) {
    const Algebra& a = x.algebra();
    Vec v(l.total, a.field().zero());
    for (const auto& [i, m] : f.parts)
        for (std::size_t t = 0; t < m.rows; ++t)
            for (std::size_t s = 0; s < m.cols; ++s) {
                if (is_zero(m(t, s))) continue;
                auto it = l.index.find({i, t, s});
                invariant(it != l.index.end(), "map has an entry outside its degree range");
                const auto& b = l.blocks[it->second];
                auto c = a.hom(b.us, b.ut).coords.try_coords(m(t, s));
                invariant(c.has_value(), "map entry is not in the hom space of its components");
                for (std::size_t k = 0; k < c->size(); ++k) v[b.offset + k] = (*c)[k];
            }
    return v;
}

std::vector<Vec> chain_map_kernel(const ProjComplex& x, const ProjComplex& y, const Layout& l) {
    const Algebra& a = x.algebra();
    const Field& f = a.field();
    const std::size_t dimA = a.dim();
    if (l.total == 0) return {};
    // rows: E_j = d_Y^j f^j - f^{j+1} d_X^j, entries (t', s) for t' in Y^{j+1}, s in X^j
    std::map<int, std::size_t> base;
    std::size_t rows = 0;
    for (int j = x.lo() - 1; j <= x.hi(); ++j) {
        base[j] = rows;
        rows += y.components(j + 1).size() * x.components(j).size() * dimA;
    }
    auto row_of = [&](int j, std::size_t tp, std::size_t s) {
        return base.at(j) + (tp * x.components(j).size() + s) * dimA;
    };
    Matrix eq(f, rows, l.total);
    auto put = [&](std::size_t row, std::size_t col, const Vec& v, bool negate) {
        for (std::size_t c = 0; c < dimA; ++c)
            if (!v[c].is_zero()) eq(row + c, col) += negate ? -v[c] : v[c];
    };
    for (const auto& b : l.blocks) {
        const auto& h = a.hom(b.us, b.ut);
        const AMatrix dy = y.differential(b.deg);
        const AMatrix dx = x.differential(b.deg - 1);
        for (std::size_t k = 0; k < h.size(); ++k) {
            const std::size_t col = b.offset + k;
            const Vec& el = h.basis[k];
            for (std::size_t tp = 0; tp < dy.rows; ++tp)
                if (!is_zero(dy(tp, b.t))) put(row_of(b.deg, tp, b.s), col, a.mul(el, dy(tp, b.t)), false);
            for (std::size_t s2 = 0; s2 < dx.cols; ++s2)
                if (!is_zero(dx(b.s, s2))) put(row_of(b.deg - 1, b.t, s2), col, a.mul(dx(b.s, s2), el), true);
        }
    }
    return kernel(eq);
}

}  // namespace

HomSpace hom_space(const ProjComplex& x, const ProjComplex& y, bool with_homotopies) {
    require(x.algebra_ptr() == y.algebra_ptr(), "hom space of complexes over different algebras");
    const Algebra& a = x.algebra();
    HomSpace hs;
    Layout l = make_layout(x, y, 0);
    for (const auto& v : chain_map_kernel(x, y, l)) hs.chain_maps.push_back(to_map(x, y, l, v));
    if (!with_homotopies || hs.chain_maps.empty()) return hs;
    Layout lh = make_layout(x, y, -1);
    std::vector<Vec> images;
    std::vector<Homotopy> wit;
    for (const auto& b : lh.blocks) {
        const auto& h = a.hom(b.us, b.ut);
        for (std::size_t k = 0; k < h.size(); ++k) {
            Vec unit(lh.total, a.field().zero());
            unit[b.offset + k] = a.field().one();
            Homotopy hm = to_map(x, y, lh, unit);
            images.push_back(from_map(x, y, l, homotopy_boundary(x, y, hm)));
            wit.push_back(std::move(hm));
        }
    }
    for (auto idx : independent_subset(a.field(), images, l.total)) {
        hs.null_homotopic.push_back(to_map(x, y, l, images[idx]));
        hs.witnesses.push_back(wit[idx]);
    }
    return hs;
}

ChainMap ComplexEnd::to_map(const ProjComplex& x, const Vec& c) const {
    Layout l = make_layout(x, x, 0);
    return drt::to_map(x, x, l, coords.combine(c));
}

Vec ComplexEnd::coords_of(const ProjComplex& x, const ChainMap& f) const {
    Layout l = make_layout(x, x, 0);
    return coords.coords(from_map(x, x, l, f));
}

ComplexEnd complex_end(const ProjComplex& x) {
    const Algebra& a = x.algebra();
    const Field& f = a.field();
    ComplexEnd e;
    Layout l = make_layout(x, x, 0);
    auto hs = hom_space(x, x, true);
    e.basis = hs.chain_maps;
    e.null_homotopic_dim = hs.null_homotopic.size();
    std::vector<Vec> raw;
    for (const auto& b : e.basis) raw.push_back(from_map(x, x, l, b));
    e.coords = CoordMap(f, raw, l.total);
    const std::size_t d = e.basis.size();
    std::vector<Vec> table;
    table.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            table.push_back(e.coords.coords(from_map(x, x, l, compose(a, e.basis[i], e.basis[j]))));
    Vec unit = d ? e.coords.coords(from_map(x, x, l, identity_map(x))) : Vec{};
    e.algebra = AssocAlgebra(f, d, std::move(table), std::move(unit));
    return e;
}

// ---- summands and isomorphisms -------------------------------------------

namespace {

std::vector<Vec> projective_radical(const Algebra& a, std::size_t u) {
    const auto& p = a.proj(u);
    std::vector<Vec> out;
    for (const auto& r : a.radical_basis())
        for (const auto& b : p.basis) {
            Vec x = a.mul(r, b);
            if (!is_zero(x)) out.push_back(p.coords.coords(x));
        }
    return span_basis(a.field(), out, p.basis.size());
}

// Field vector of a column of algebra elements, one per component.
Vec column_vector(const Algebra& a, const std::vector<std::size_t>& comps, const AMatrix& m, std::size_t col) {
    Vec v;
    for (std::size_t t = 0; t < comps.size(); ++t) {
        Vec c = a.proj(comps[t]).coords.coords(m(t, col));
        v.insert(v.end(), c.begin(), c.end());
    }
    return v;
}

}  // namespace

ComplexSummand extract_summand(const ProjComplex& x, const ChainMap& e) {
    const Algebra& a = x.algebra();
    const Field& f = a.field();
    ComplexSummand out;
    if (x.empty()) {
        out.complex = x;
        return out;
    }
    std::map<std::size_t, std::vector<Vec>> rad_cache;
    std::vector<std::vector<std::size_t>> comps;
    std::map<int, AMatrix> iota, rho;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        const auto& ci = x.components(i);
        const AMatrix ei = part(x, x, e, i);
        const Matrix ef = realize(a, ci, ci, ei);
        const std::size_t target = rank(ef);
        const std::size_t n = ef.rows();
        // radical of X^i at field level
        std::vector<Vec> span;
        std::size_t off = 0;
        for (auto u : ci) {
            auto it = rad_cache.find(u);
            if (it == rad_cache.end()) it = rad_cache.emplace(u, projective_radical(a, u)).first;
            for (const auto& r : it->second) {
                Vec v(n, f.zero());
                for (std::size_t k = 0; k < r.size(); ++k) v[off + k] = r[k];
                span.push_back(std::move(v));
            }
            off += a.proj(u).basis.size();
        }
        std::size_t cur = span.size(), got = 0;
        std::vector<std::size_t> reps;
        std::vector<std::vector<Vec>> cols;  // chosen columns of algebra elements
        std::vector<Vec> image_cols;         // field-level images, concatenated per choice
        for (std::size_t j = 0; j < ci.size() && got < target; ++j) {
            const auto& h = a.hom(ci[j], ci[j]);
            for (std::size_t k = 0; k < h.size() && got < target; ++k) {
                AMatrix c(a, ci.size(), 1);
                for (std::size_t t = 0; t < ci.size(); ++t) c(t, 0) = a.mul(h.basis[k], ei(t, j));
                if (c.is_zero()) continue;
                Matrix cf = realize(a, {ci[j]}, ci, c);
                std::vector<Vec> trial = span;
                for (std::size_t q = 0; q < cf.cols(); ++q) trial.push_back(cf.col(q));
                auto basis = span_basis(f, trial, n);
                if (basis.size() == cur) continue;
                span = std::move(basis);
                cur = span.size();
                reps.push_back(ci[j]);
                std::vector<Vec> col;
                for (std::size_t t = 0; t < ci.size(); ++t) col.push_back(c(t, 0));
                cols.push_back(std::move(col));
                for (std::size_t q = 0; q < cf.cols(); ++q) image_cols.push_back(cf.col(q));
                got += cf.cols();
            }
        }
        invariant(got == target, "summand extraction: image is not covered by the chosen projectives");
        AMatrix io(a, ci.size(), reps.size());
        for (std::size_t k = 0; k < reps.size(); ++k)
            for (std::size_t t = 0; t < ci.size(); ++t) io(t, k) = cols[k][t];
        AMatrix ro(a, reps.size(), ci.size());
        if (!reps.empty()) {
            Matrix ifield = Matrix::from_cols(f, image_cols, n);
            for (std::size_t j = 0; j < ci.size(); ++j) {
                auto y = solve(ifield, column_vector(a, ci, ei, j));
                invariant(y.has_value(), "summand extraction: e does not land in the chosen image");
                std::size_t pos = 0;
                for (std::size_t k = 0; k < reps.size(); ++k) {
                    const auto& p = a.proj(reps[k]);
                    Vec c(y->begin() + static_cast<std::ptrdiff_t>(pos),
                          y->begin() + static_cast<std::ptrdiff_t>(pos + p.basis.size()));
                    ro(k, j) = p.coords.combine(c);
                    pos += p.basis.size();
                }
            }
        }
        comps.push_back(std::move(reps));
        iota.emplace(i, std::move(io));
        rho.emplace(i, std::move(ro));
    }
    std::vector<AMatrix> diffs;
    for (int i = x.lo(); i < x.hi(); ++i)
        diffs.push_back(compose(a, rho.at(i + 1), compose(a, x.differential(i), iota.at(i))));
    // trimming may move lo; the maps stay keyed by the degrees of X
    out.complex = ProjComplex(x.algebra_ptr(), x.lo(), std::move(comps), std::move(diffs));
    for (auto& [i, m] : iota)
        if (m.cols) out.inclusion.parts.emplace(i, std::move(m));
    for (auto& [i, m] : rho)
        if (m.rows) out.projection.parts.emplace(i, std::move(m));
    if (x.minimal_flag() == Minimality::Yes) out.complex.set_minimal_flag(Minimality::Yes);
    return out;
}

std::vector<ComplexSummand> decompose_complex(const ProjComplex& x) {
    if (x.empty()) return {};
    const Algebra& a = x.algebra();
    auto end = complex_end(x);
    std::vector<ComplexSummand> out;
    ChainMap total;
    for (const auto& e : primitive_idempotents(end.algebra)) {
        auto s = extract_summand(x, end.to_map(x, e));
        invariant(maps_equal(s.complex, s.complex, compose(a, s.projection, s.inclusion), identity_map(s.complex)),
                  "summand certificate: projection o inclusion is not the identity");
        total = add(total, compose(a, s.inclusion, s.projection));
        out.push_back(std::move(s));
    }
    invariant(maps_equal(x, x, total, identity_map(x)), "summand certificates do not sum to the identity");
    return out;
}

bool is_indecomposable(const ProjComplex& x) {
    if (x.empty()) return false;
    return is_local(complex_end(x).algebra);
}

bool is_indecomposable_homotopy(const ProjComplex& x) {
    if (x.empty()) return false;
    const Field& f = x.algebra().field();
    auto end = complex_end(x);
    const std::size_t d = end.algebra.dim();
    auto hs = hom_space(x, x, true);
    std::vector<Vec> ideal;
    for (const auto& n : hs.null_homotopic) ideal.push_back(end.coords_of(x, n));
    ideal = span_basis(f, ideal, d);
    if (ideal.size() == d) return false;
    // complement of the ideal by unit vectors, then structure constants mod the ideal
    std::vector<Vec> all = ideal;
    std::vector<std::size_t> comp;
    std::size_t r = ideal.size();
    for (std::size_t i = 0; i < d; ++i) {
        all.push_back(unit_vec(f, d, i));
        auto b = span_basis(f, all, d);
        if (b.size() > r) {
            comp.push_back(i);
            r = b.size();
        } else {
            all.pop_back();
        }
    }
    std::vector<Vec> basis;
    for (auto i : comp) basis.push_back(unit_vec(f, d, i));
    basis.insert(basis.end(), ideal.begin(), ideal.end());
    CoordMap cm(f, basis, d);
    const std::size_t q = comp.size();
    auto reduce = [&](const Vec& v) {
        Vec c = cm.coords(v);
        c.resize(q);
        return c;
    };
    std::vector<Vec> table;
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) table.push_back(reduce(end.algebra.mul(basis[i], basis[j])));
    AssocAlgebra quot(f, q, std::move(table), reduce(end.algebra.one()));
    return is_local(quot);
}

namespace {

std::vector<std::vector<std::size_t>> sorted_shape(const ProjComplex& x, int lo, int hi) {
    std::vector<std::vector<std::size_t>> out;
    for (int i = lo; i <= hi; ++i) {
        auto c = x.components(i);
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    return out;
}

// For indecomposables: f : z -> w and g : w -> z with g o f = id.
std::optional<std::pair<ChainMap, ChainMap>> match_indecomposables(const ProjComplex& z, const ProjComplex& w) {
    const Algebra& a = z.algebra();
    if (z.total_multiplicity() != w.total_multiplicity()) return std::nullopt;
    auto fwd = hom_space(z, w, false).chain_maps;
    if (fwd.empty()) return std::nullopt;
    auto back = hom_space(w, z, false).chain_maps;
    if (back.empty()) return std::nullopt;
    auto end = complex_end(z);
    CoordMap rad(a.field(), jacobson_radical(end.algebra), end.algebra.dim());
    for (const auto& f : fwd)
        for (const auto& g : back) {
            Vec c = end.coords_of(z, compose(a, g, f));
            if (rad.try_coords(c)) continue;
            auto inv = end.algebra.inverse(c);
            invariant(inv.has_value(), "non-radical endomorphism of an indecomposable is not invertible");
            return std::make_pair(f, compose(a, end.to_map(z, *inv), g));
        }
    return std::nullopt;
}

}  // namespace

IsoResult is_isomorphic(const ProjComplex& x, const ProjComplex& y) {
    require(x.algebra_ptr() == y.algebra_ptr(), "isomorphism test between complexes over different algebras");
    require(is_homotopy_minimal(x) && is_homotopy_minimal(y), "isomorphism test needs minimal complexes (minimize first)");
    const Algebra& a = x.algebra();
    IsoResult r;
    if (x.empty() || y.empty()) {
        r.isomorphic = x.empty() && y.empty();
        r.reason = r.isomorphic ? "both zero" : "one complex is zero";
        return r;
    }
    const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    if (sorted_shape(x, lo, hi) != sorted_shape(y, lo, hi)) {
        r.reason = "component multiplicities differ";
        return r;
    }
    auto xs = decompose_complex(x);
    auto ys = decompose_complex(y);
    if (xs.size() != ys.size()) {
        r.reason = "different numbers of indecomposable summands";
        return r;
    }
    std::vector<bool> used(ys.size(), false);
    ChainMap phi, psi;
    for (const auto& sx : xs) {
        bool found = false;
        for (std::size_t j = 0; j < ys.size() && !found; ++j) {
            if (used[j]) continue;
            auto m = match_indecomposables(sx.complex, ys[j].complex);
            if (!m) continue;
            used[j] = found = true;
            phi = add(phi, compose(a, ys[j].inclusion, compose(a, m->first, sx.projection)));
            psi = add(psi, compose(a, sx.inclusion, compose(a, m->second, ys[j].projection)));
        }
        if (!found) {
            r.reason = "an indecomposable summand has no partner";
            return r;
        }
    }
    invariant(is_chain_map(x, y, phi) && is_chain_map(y, x, psi), "isomorphism certificate is not a chain map");
    invariant(maps_equal(x, x, compose(a, psi, phi), identity_map(x)) &&
                  maps_equal(y, y, compose(a, phi, psi), identity_map(y)),
              "isomorphism certificate does not compose to the identity");
    r.isomorphic = true;
    r.forward = std::move(phi);
    r.backward = std::move(psi);
    r.reason = "certificate verified";
    return r;
}

std::string format_complex(const ProjComplex& x) {
    if (x.empty()) return "zero complex";
    const Algebra& a = x.algebra();
    std::ostringstream os;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        os << "deg " << i << ":";
        for (auto u : x.components(i)) os << ' ' << a.proj(u).name;
        if (x.components(i).empty()) os << " 0";
        os << '\n';
        if (i < x.hi()) {
            AMatrix d = x.differential(i);
            os << "  d" << i << " = [";
            for (std::size_t t = 0; t < d.rows; ++t) {
                os << (t ? ", [" : "[");
                for (std::size_t s = 0; s < d.cols; ++s) os << (s ? ", " : "") << a.format_element(d(t, s));
                os << ']';
            }
            os << "]\n";
        }
    }
    return os.str();
}

}  // namespace drt
