#include "drt/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "drt/error.hpp"

namespace drt {

namespace {

std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) {
    if (x != 0 && y > UINT64_MAX / x) return UINT64_MAX;
    return x * y;
}

std::uint64_t sat_pow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, b);
    return r;
}

// All shapes within the bounds, lexicographic in (degree, projective).
// Shapes with an empty degree strictly inside the support split, so they are skipped.
std::vector<ShapeVector> shapes_within(const Algebra& a, const EnumerationBounds& b) {
    const std::size_t np = a.num_projectives();
    const std::size_t deg = static_cast<std::size_t>(b.m) + 1;
    std::vector<std::size_t> flat(np * deg, 0);
    std::vector<ShapeVector> out;
    for (;;) {
        ShapeVector s(deg, std::vector<std::size_t>(np));
        std::size_t dim = 0;
        std::vector<bool> occupied(deg, false);
        for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t u = 0; u < np; ++u) {
                s[i][u] = flat[i * np + u];
                dim += s[i][u] * a.proj(u).basis.size();
                if (s[i][u]) occupied[i] = true;
            }
        auto first = std::find(occupied.begin(), occupied.end(), true);
        auto last = std::find(occupied.rbegin(), occupied.rend(), true);
        bool ok = first != occupied.end();
        if (ok) {
            auto hi = last.base();
            ok = std::find(first, hi, false) == hi;
        }
        if (ok && b.max_dim && dim > b.max_dim) ok = false;
        if (ok) out.push_back(std::move(s));
        std::size_t k = flat.size();
        while (k > 0) {
            --k;
            if (flat[k] < b.max_mult) {
                ++flat[k];
                break;
            }
            flat[k] = 0;
        }
        if (k == 0 && flat[0] == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> shape_components(const ShapeVector& s) {
    std::vector<std::vector<std::size_t>> comps;
    for (const auto& row : s) {
        std::vector<std::size_t> c;
        for (std::size_t u = 0; u < row.size(); ++u)
            for (std::size_t k = 0; k < row[u]; ++k) c.push_back(u);
        comps.push_back(std::move(c));
    }
    return comps;
}

struct Slot {
    std::size_t deg, t, s, us, ut, k;
};

// Coefficient space of the radical differentials of one shape, written over
// the prime field: coordinate (slot, j) is digit j of the slot coefficient.
class ShapeSpace {
public:
    ShapeSpace(const Algebra& a, const ShapeVector& shape)
        : a_(a), f_(a.field()), comps_(shape_components(shape)) {
        p_ = f_.characteristic();
        e_ = f_.degree();
        for (std::size_t i = 0; i + 1 < comps_.size(); ++i)
            for (std::size_t t = 0; t < comps_[i + 1].size(); ++t)
                for (std::size_t s = 0; s < comps_[i].size(); ++s) {
                    const std::size_t us = comps_[i][s], ut = comps_[i + 1][t];
                    const auto& h = a.hom(us, ut);
                    for (std::size_t k = h.unit_count; k < h.size(); ++k) slots_.push_back({i, t, s, us, ut, k});
                }
        n_ = slots_.size() * e_;
    }

    std::size_t coords() const { return n_; }
    std::uint32_t p() const { return p_; }
    const std::vector<std::vector<std::size_t>>& comps() const { return comps_; }

    std::vector<std::uint32_t> digits(std::uint64_t idx) const {
        std::vector<std::uint32_t> d(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            d[c] = static_cast<std::uint32_t>(idx % p_);
            idx /= p_;
        }
        return d;
    }
    std::uint64_t index(const std::vector<std::uint32_t>& d) const {
        std::uint64_t idx = 0;
        for (std::size_t c = n_; c-- > 0;) idx = idx * p_ + d[c];
        return idx;
    }

    std::vector<AMatrix> decode(const std::vector<std::uint32_t>& d) const {
        std::vector<AMatrix> diffs;
        for (std::size_t i = 0; i + 1 < comps_.size(); ++i) diffs.emplace_back(a_, comps_[i + 1].size(), comps_[i].size());
        for (std::size_t j = 0; j < slots_.size(); ++j) {
            std::uint64_t v = 0;
            for (std::size_t c = e_; c-- > 0;) v = v * p_ + d[j * e_ + c];
            if (v == 0) continue;
            const Slot& sl = slots_[j];
            const Vec& b = a_.hom(sl.us, sl.ut).basis[sl.k];
            Vec& entry = diffs[sl.deg](sl.t, sl.s);
            entry = add(entry, scale(b, f_.element(v)));
        }
        return diffs;
    }

    std::vector<std::uint32_t> encode(const std::vector<AMatrix>& diffs) const {
        std::vector<std::uint32_t> d(n_, 0);
        // cache coordinates per entry
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Vec> cache;
        for (std::size_t j = 0; j < slots_.size(); ++j) {
            const Slot& sl = slots_[j];
            auto key = std::make_tuple(sl.deg, sl.t, sl.s);
            auto it = cache.find(key);
            if (it == cache.end()) {
                const auto& h = a_.hom(sl.us, sl.ut);
                Vec c = h.coords.coords(diffs[sl.deg](sl.t, sl.s));
                for (std::size_t k = 0; k < h.unit_count; ++k)
                    invariant(c[k].is_zero(), "automorphism left the radical");
                it = cache.emplace(key, std::move(c)).first;
            }
            std::uint64_t v = f_.index_of(it->second[sl.k]);
            for (std::size_t c = 0; c < e_; ++c) {
                d[j * e_ + c] = static_cast<std::uint32_t>(v % p_);
                v /= p_;
            }
        }
        return d;
    }

    bool is_complex(const std::vector<AMatrix>& diffs) const {
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
            if (!compose(a_, diffs[i + 1], diffs[i]).is_zero()) return false;
        return true;
    }

    // Generators of prod_i Aut(X^i), as F_p-linear maps on the coordinates (columns).
    std::vector<std::vector<std::vector<std::uint32_t>>> generators() const {
        std::vector<std::vector<std::vector<std::uint32_t>>> out;
        std::vector<Scalar> prime_basis;
        for (std::size_t j = 0; j < e_; ++j) prime_basis.push_back(f_.element(sat_pow(p_, j)));
        auto add_gen = [&](std::size_t deg, const AMatrix& g, const AMatrix& ginv) {
            std::vector<std::vector<std::uint32_t>> cols;
            bool identity = true;
            for (std::size_t c = 0; c < n_; ++c) {
                std::vector<std::uint32_t> unit(n_, 0);
                unit[c] = 1;
                auto diffs = decode(unit);
                if (deg < diffs.size()) diffs[deg] = compose(a_, diffs[deg], ginv);
                if (deg > 0 && deg - 1 < diffs.size()) diffs[deg - 1] = compose(a_, g, diffs[deg - 1]);
                auto col = encode(diffs);
                if (col != unit) identity = false;
                cols.push_back(std::move(col));
            }
            if (!identity) out.push_back(std::move(cols));
        };
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            const auto& cs = comps_[i];
            if (cs.empty()) continue;
            const AMatrix id = identity_amatrix(a_, cs);
            for (std::size_t s = 0; s < cs.size(); ++s)
                for (std::size_t t = 0; t < cs.size(); ++t) {
                    const auto& h = a_.hom(cs[s], cs[t]);
                    if (s != t) {
                        for (std::size_t k = 0; k < h.size(); ++k)
                            for (const auto& c : prime_basis) {
                                AMatrix g = id, gi = id;
                                g(t, s) = scale(h.basis[k], c);
                                gi(t, s) = scale(h.basis[k], -c);
                                add_gen(i, g, gi);
                            }
                        continue;
                    }
                    const std::size_t u = cs[s];
                    const Vec& fu = a_.proj(u).idempotent;
                    for (std::size_t k = h.unit_count; k < h.size(); ++k)
                        for (const auto& c : prime_basis) {
                            AMatrix g = id, gi = id;
                            g(s, s) = add(fu, scale(h.basis[k], c));
                            gi(s, s) = a_.corner_inverse(u, g(s, s));
                            add_gen(i, g, gi);
                        }
                    // nonzero combinations of the unit lifts: the units of the residue field
                    const std::uint64_t q = f_.order();
                    const std::uint64_t combos = sat_pow(q, h.unit_count);
                    require(combos <= 4096, "residue field of a projective is too large to enumerate its units");
                    for (std::uint64_t idx = 2; idx < combos; ++idx) {
                        Vec lam = a_.zero();
                        std::uint64_t r = idx;
                        for (std::size_t k = 0; k < h.unit_count; ++k) {
                            lam = add(lam, scale(h.basis[k], f_.element(r % q)));
                            r /= q;
                        }
                        AMatrix g = id, gi = id;
                        g(s, s) = lam;
                        gi(s, s) = a_.corner_inverse(u, lam);
                        add_gen(i, g, gi);
                    }
                }
        }
        return out;
    }

private:
    const Algebra& a_;
    const Field& f_;
    std::vector<std::vector<std::size_t>> comps_;
    std::vector<Slot> slots_;
    std::uint32_t p_ = 2;
    std::size_t e_ = 1, n_ = 0;
};

class Bitset {
public:
    explicit Bitset(std::uint64_t n) : w_((n + 63) / 64, 0) {}
    bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }

private:
    std::vector<std::uint64_t> w_;
};

std::vector<std::size_t> cohomology_vector(const ProjComplex& x, int m) {
    std::vector<std::size_t> v(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& [i, n] : cohomology(x))
        if (i >= 0 && i <= m) v[static_cast<std::size_t>(i)] = n;
    return v;
}

ShapeVector shape_of(const ProjComplex& x, int m) {
    const std::size_t np = x.algebra().num_projectives();
    ShapeVector s(static_cast<std::size_t>(m) + 1, std::vector<std::size_t>(np, 0));
    if (x.empty()) return s;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        require(i >= 0 && i <= m, "complex is not concentrated in degrees 0..m");
        for (auto u : x.components(i)) ++s[static_cast<std::size_t>(i)][u];
    }
    return s;
}

std::vector<Representative> classify_shape(const AlgebraPtr& ap, const ShapeVector& shape, int m) {
    ShapeSpace sp(*ap, shape);
    const std::size_t n = sp.coords();
    const std::uint64_t total = sat_pow(sp.p(), n);
    auto gens = sp.generators();
    // p = 2: coordinates are bit masks, generators xor their columns
    std::vector<std::vector<std::uint64_t>> masks;
    if (sp.p() == 2)
        for (const auto& g : gens) {
            std::vector<std::uint64_t> cols;
            for (const auto& col : g) cols.push_back(sp.index(col));
            masks.push_back(std::move(cols));
        }
    auto apply = [&](std::size_t gi, std::uint64_t idx) -> std::uint64_t {
        if (sp.p() == 2) {
            std::uint64_t r = 0;
            for (std::size_t c = 0; idx; ++c, idx >>= 1)
                if (idx & 1) r ^= masks[gi][c];
            return r;
        }
        const auto d = sp.digits(idx);
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t c = 0; c < n; ++c) {
            if (!d[c]) continue;
            for (std::size_t r = 0; r < n; ++r) acc[r] += static_cast<std::uint64_t>(d[c]) * gens[gi][c][r];
        }
        std::vector<std::uint32_t> out(n);
        for (std::size_t r = 0; r < n; ++r) out[r] = static_cast<std::uint32_t>(acc[r] % sp.p());
        return sp.index(out);
    };

    std::vector<Representative> reps;
    Bitset seen(total);
    std::vector<std::uint64_t> stack;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (seen.test(idx)) continue;
        seen.set(idx);
        auto diffs = sp.decode(sp.digits(idx));
        if (!sp.is_complex(diffs)) continue;
        // the orbit minimum is the first index reached in increasing order
        stack.assign(1, idx);
        while (!stack.empty()) {
            const std::uint64_t cur = stack.back();
            stack.pop_back();
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const std::uint64_t nxt = apply(g, cur);
                if (!seen.test(nxt)) {
                    seen.set(nxt);
                    stack.push_back(nxt);
                }
            }
        }
        ProjComplex x(ap, 0, sp.comps(), std::move(diffs));
        x.set_minimal_flag(Minimality::Yes);
        if (!is_indecomposable(x)) continue;
        Representative r;
        r.shape = shape;
        r.cohomology = cohomology_vector(x, m);
        r.hr = range_stats(x).hr;
        r.index = idx;
        r.complex = std::move(x);
        reps.push_back(std::move(r));
    }
    return reps;
}

}  // namespace

std::uint64_t enumeration_size(const AlgebraPtr& a, const EnumerationBounds& b) {
    require(a->field().finite(), "exhaustive enumeration needs a finite field; use a family probe over infinite fields");
    require(b.m >= 0, "m must be non-negative");
    std::uint64_t total = 0;
    for (const auto& s : shapes_within(*a, b)) {
        ShapeSpace sp(*a, s);
        const std::uint64_t c = sat_pow(sp.p(), sp.coords());
        total = (total > UINT64_MAX - c) ? UINT64_MAX : total + c;
    }
    return total;
}

ClassificationReport enumerate_indecomposables(const AlgebraPtr& a, const EnumerationBounds& b) {
    ClassificationReport rep;
    rep.bounds = b;
    rep.algebra = a->describe();
    rep.candidates = enumeration_size(a, b);
    if (rep.candidates > b.cap)
        throw Error(ErrorKind::SearchCap, "search space of " +
                                              (rep.candidates == UINT64_MAX ? std::string("more than 2^64")
                                                                            : std::to_string(rep.candidates)) +
                                              " candidate differentials exceeds the cap of " + std::to_string(b.cap));
    const auto shapes = shapes_within(*a, b);
    rep.shapes = shapes.size();
    std::vector<std::vector<Representative>> per(shapes.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= shapes.size()) return;
            try {
                per[i] = classify_shape(a, shapes[i], b.m);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = shapes.size();
            }
        }
    };
    const unsigned jobs = std::max(1u, b.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    for (auto& v : per)
        for (auto& r : v) {
            ++rep.by_shape[r.shape];
            ++rep.by_cohomology[r.cohomology];
            ++rep.histogram[r.hr];
            rep.reps.push_back(std::move(r));
        }
    return rep;
}

DiscretenessTable discreteness_probe(const ClassificationReport& r, std::size_t bound) {
    DiscretenessTable t;
    t.bound = bound;
    const auto& b = r.bounds;
    std::vector<const Representative*> usable;
    for (const auto& x : r.reps)
        if (std::all_of(x.cohomology.begin(), x.cohomology.end(), [&](std::size_t n) { return n <= bound; })) {
            usable.push_back(&x);
            ++t.indecomposables[x.cohomology];
        }
    const std::size_t deg = static_cast<std::size_t>(b.m) + 1;
    if (r.reps.empty() && deg == 0) return t;
    const std::size_t np = r.reps.empty() ? 0 : r.reps.front().shape.front().size();
    ShapeVector shape(deg, std::vector<std::size_t>(np, 0));
    std::vector<std::size_t> coh(deg, 0);
    std::size_t dim = 0;
    std::vector<std::size_t> pdim(np, 0);
    if (!r.reps.empty()) {
        const Algebra& a = r.reps.front().complex.algebra();
        for (std::size_t u = 0; u < np; ++u) pdim[u] = a.proj(u).basis.size();
    }
    // direct sums as multisets of indecomposables (Krull-Schmidt)
    auto rec = [&](auto&& self, std::size_t start) -> void {
        ++t.objects[coh];
        for (std::size_t j = start; j < usable.size(); ++j) {
            const auto& x = *usable[j];
            bool fits = true;
            std::size_t add_dim = 0;
            for (std::size_t i = 0; i < deg && fits; ++i) {
                if (coh[i] + x.cohomology[i] > bound) fits = false;
                for (std::size_t u = 0; u < np && fits; ++u) {
                    if (shape[i][u] + x.shape[i][u] > b.max_mult) fits = false;
                    add_dim += x.shape[i][u] * pdim[u];
                }
            }
            if (fits && b.max_dim && dim + add_dim > b.max_dim) fits = false;
            if (!fits) continue;
            for (std::size_t i = 0; i < deg; ++i) {
                coh[i] += x.cohomology[i];
                for (std::size_t u = 0; u < np; ++u) shape[i][u] += x.shape[i][u];
            }
            dim += add_dim;
            self(self, j);
            dim -= add_dim;
            for (std::size_t i = 0; i < deg; ++i) {
                coh[i] -= x.cohomology[i];
                for (std::size_t u = 0; u < np; ++u) shape[i][u] -= x.shape[i][u];
            }
        }
    };
    rec(rec, 0);
    return t;
}

std::vector<HistogramEntry> range_histogram(const ClassificationReport& r) {
    std::map<std::size_t, HistogramEntry> h;
    for (const auto& x : r.reps) {
        auto& e = h[x.hr];
        e.hr = x.hr;
        ++e.count;
        bool edge = false;
        for (const auto& row : x.shape)
            for (auto k : row) edge = edge || k == r.bounds.max_mult;
        if (edge) ++e.at_boundary;
    }
    std::vector<HistogramEntry> out;
    for (auto& [k, e] : h) out.push_back(e);
    return out;
}

FamilyReport family_probe(const AlgebraPtr& a, const FamilyTemplate& family, const std::vector<Scalar>& samples) {
    FamilyReport rep;
    rep.samples = samples.size();
    std::vector<std::optional<ProjComplex>> xs;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string tag = "sample " + std::to_string(i) + " (" + samples[i].str() + ")";
        try {
            ProjComplex x = family(samples[i]);
            require(&x.algebra() == a.get(), "family instance over a different algebra");
            if (!is_homotopy_minimal(x)) {
                rep.degenerate.push_back(tag + ": not minimal");
                xs.emplace_back();
                rep.ranges.push_back(0);
                continue;
            }
            if (!is_indecomposable(x)) {
                rep.degenerate.push_back(tag + ": decomposable");
                xs.emplace_back();
                rep.ranges.push_back(range_stats(x).hr);
                continue;
            }
            rep.ranges.push_back(range_stats(x).hr);
            xs.emplace_back(std::move(x));
        } catch (const Error& e) {
            rep.degenerate.push_back(tag + ": " + e.what());
            xs.emplace_back();
            rep.ranges.push_back(0);
        }
    }
    std::set<std::size_t> hrs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i]) continue;
        hrs.insert(rep.ranges[i]);
        bool fresh = true;
        for (std::size_t j = 0; j < i; ++j) {
            if (!xs[j]) continue;
            if (is_isomorphic(*xs[j], *xs[i]).isomorphic) {
                rep.collisions.emplace_back(j, i);
                fresh = false;
            }
        }
        if (fresh) ++rep.witnesses;
    }
    if (hrs.size() == 1) rep.common_hr = *hrs.begin();
    return rep;
}

DichotomyReport c_dichotomy_report(const AlgebraPtr& a, const ExtensionContext* ctx, int m_lo, int m_hi,
                                   const EnumerationBounds& b) {
    require(m_lo >= 0 && m_lo <= m_hi, "need 0 <= m_lo <= m_hi");
    if (ctx) require(ctx->small().get() == a.get(), "extension context over a different algebra");
    DichotomyReport rep;
    std::vector<ClassificationReport> small, large;
    for (int m = m_lo; m <= m_hi; ++m) {
        EnumerationBounds bm = b;
        bm.m = m;
        small.push_back(enumerate_indecomposables(a, bm));
        rep.small.push_back({m, small.back().reps.size(), small.back().histogram});
        if (ctx) {
            large.push_back(enumerate_indecomposables(ctx->large(), bm));
            rep.large.push_back({m, large.back().reps.size(), large.back().histogram});
        }
    }
    // every class at level m reappears at level m+1 with the same range
    for (std::size_t k = 0; k + 1 < small.size(); ++k) {
        std::map<std::pair<ShapeVector, std::uint64_t>, std::size_t> next;
        for (const auto& x : small[k + 1].reps) next[{x.shape, x.index}] = x.hr;
        for (const auto& x : small[k].reps) {
            ShapeVector s = x.shape;
            s.emplace_back(s.front().size(), 0);
            auto it = next.find({s, x.index});
            if (it == next.end() || it->second != x.hr) rep.monotone = false;
        }
    }
    if (ctx) {
        for (std::size_t k = 0; k < small.size(); ++k) {
            const int m = m_lo + static_cast<int>(k);
            for (const auto& x : small[k].reps) {
                auto bounds = range_bound_report_up(x.complex, *ctx);
                if (!bounds.bounds_ok || !bounds.certificates_ok) rep.coherent = false;
                for (const auto& sum : decompose_complex(tensor_complex(x.complex, *ctx))) {
                    const ShapeVector s = shape_of(sum.complex, m);
                    bool found = false;
                    for (const auto& y : large[k].reps) {
                        if (y.shape != s) continue;
                        if (is_isomorphic(y.complex, sum.complex).isomorphic) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) rep.coherent = false;
                }
            }
        }
    }
    return rep;
}

DichotomyReport c_dichotomy_family(const ExtensionContext& ctx, const FamilyTemplate& family,
                                   const std::vector<Scalar>& samples) {
    DichotomyReport rep;
    rep.family_small = family_probe(ctx.small(), family, samples);
    rep.family_large = family_probe(
        ctx.large(), [&](const Scalar& lam) { return tensor_complex(family(lam), ctx); }, samples);
    const auto& fs = *rep.family_small;
    const auto& fl = *rep.family_large;
    rep.family_ranges_ok = fs.ranges == fl.ranges && fs.common_hr.has_value() && fl.common_hr == fs.common_hr;
    return rep;
}

}  // namespace drt
