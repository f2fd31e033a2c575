#include "drt/functors.hpp"

#include "drt/poly.hpp"

namespace drt {

ExtensionContext::ExtensionContext(AlgebraPtr a, FieldPtr big) : ak_(std::move(a)) {
    require(ak_ && big, "extension context needs an algebra and a field");
    const Field& k = ak_->field();
    // a degree 1 extension is k itself
    if (big->same(k) || (big->is_extension() && big->degree() == 1 && big->base()->same(k))) {
        aK_ = ak_;
        l_ = 1;
        mult_ = {{{k.one()}}};
    } else {
        require(big->is_extension() && big->base()->same(k),
                "field " + big->name() + " is not an extension of " + k.name());
        require(poly::is_separable(k, big->minpoly()), "extension " + big->name() + " is not separable");
        l_ = big->degree();
        aK_ = Algebra::build(ak_->presentation().extended_to(big));
        require(aK_->dim() == ak_->dim() && aK_->basis_labels() == ak_->basis_labels(),
                "algebra basis changed under base extension");
        for (std::size_t i = 0; i < ak_->dim(); ++i)
            for (std::size_t j = 0; j < ak_->dim(); ++j)
                invariant(aK_->assoc().product_of_basis(i, j) == embed(ak_->assoc().product_of_basis(i, j)),
                          "extended structure constants are not the images of the original ones");
        const Scalar z = big->generator();
        std::vector<Scalar> pw{big->one()};
        for (std::size_t i = 1; i < 2 * l_; ++i) pw.push_back(pw.back() * z);
        mult_.assign(l_, std::vector<std::vector<Scalar>>(l_));
        for (std::size_t i = 0; i < l_; ++i)
            for (std::size_t s = 0; s < l_; ++s) mult_[i][s] = big->coordinates(pw[i + s]);
    }
    const auto& pieces = ak_->pieces();
    for (std::size_t i = 0; i < l_; ++i)
        for (const auto& p : pieces) free_.push_back(p.rep);

    for (std::size_t u = 0; u < ak_->num_projectives(); ++u) {
        Vec fu = embed(ak_->proj(u).idempotent);
        auto corner = aK_->assoc().corner(fu);
        std::vector<Piece> ps;
        for (const auto& e : primitive_idempotents(corner.algebra)) ps.push_back(aK_->match_piece(corner.embedding.combine(e)));
        up_.push_back(std::move(ps));
    }
    auto free = ProjComplex::stalk(ak_, 0, free_);
    for (std::size_t s = 0; s < aK_->num_projectives(); ++s) {
        ChainMap e;
        e.parts.emplace(0, right_mult(aK_->proj(s).idempotent));
        auto sum = extract_summand(free, e);
        Restricted r;
        r.comps = sum.complex.components(0);
        r.iota = part(sum.complex, free, sum.inclusion, 0);
        r.pi = part(free, sum.complex, sum.projection, 0);
        down_.push_back(std::move(r));
    }
}

Vec ExtensionContext::embed(const Vec& a) const {
    if (l_ == 1) return a;
    const Field& K = aK_->field();
    Vec out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(K.embed(c));
    return out;
}

std::vector<Vec> ExtensionContext::split(const Vec& b) const {
    if (l_ == 1) return {b};
    const Field& K = aK_->field();
    std::vector<Vec> out(l_, Vec(b.size()));
    for (std::size_t j = 0; j < b.size(); ++j) {
        auto c = K.coordinates(b[j]);
        for (std::size_t s = 0; s < l_; ++s) out[s][j] = c[s];
    }
    return out;
}

Vec ExtensionContext::join(const std::vector<Vec>& parts) const {
    require(parts.size() == l_, "join: need one part per power of the generator");
    if (l_ == 1) return parts[0];
    const Field& K = aK_->field();
    Vec out = aK_->zero();
    Scalar zp = K.one();
    for (std::size_t s = 0; s < l_; ++s) {
        out = add(out, scale(embed(parts[s]), zp));
        zp = zp * K.generator();
    }
    return out;
}

AMatrix ExtensionContext::right_mult(const Vec& b) const {
    const Algebra& a = *ak_;
    const auto& pieces = a.pieces();
    const std::size_t J = pieces.size();
    auto parts = split(b);
    AMatrix out(a, l_ * J, l_ * J);
    for (std::size_t t = 0; t < l_; ++t)
        for (std::size_t i = 0; i < l_; ++i) {
            // R[t][i] = sum_s c^t_{is} b_s
            Vec r = a.zero();
            for (std::size_t s = 0; s < l_; ++s)
                if (!mult_[i][s][t].is_zero()) r = add(r, scale(parts[s], mult_[i][s][t]));
            if (is_zero(r)) continue;
            for (std::size_t j = 0; j < J; ++j) {
                Vec yr = a.mul(pieces[j].y, r);
                if (is_zero(yr)) continue;
                for (std::size_t jp = 0; jp < J; ++jp) out(t * J + jp, i * J + j) = a.mul(yr, pieces[jp].x);
            }
        }
    return out;
}

AMatrix ExtensionContext::copy_inclusion(std::size_t i, std::size_t u) const {
    const Algebra& a = *ak_;
    const auto& pieces = a.pieces();
    AMatrix out(a, free_.size(), 1);
    for (std::size_t j = 0; j < pieces.size(); ++j)
        out(i * pieces.size() + j, 0) = a.mul(a.proj(u).idempotent, pieces[j].x);
    return out;
}

AMatrix ExtensionContext::copy_projection(std::size_t i, std::size_t u) const {
    const Algebra& a = *ak_;
    const auto& pieces = a.pieces();
    AMatrix out(a, 1, free_.size());
    for (std::size_t j = 0; j < pieces.size(); ++j)
        out(0, i * pieces.size() + j) = a.mul(pieces[j].y, a.proj(u).idempotent);
    return out;
}

// ---- modules ---------------------------------------------------------------

Module tensor_module(const Module& m, const ExtensionContext& ctx) {
    require(m.algebra_ptr() == ctx.small(), "tensor_module: module is not over the context's algebra");
    const Field& K = ctx.large_field();
    std::vector<Matrix> acts;
    for (std::size_t b = 0; b < m.algebra().dim(); ++b) {
        const Matrix& x = m.action(b);
        Matrix y(K, x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) = ctx.degree() == 1 ? x(i, j) : K.embed(x(i, j));
        acts.push_back(std::move(y));
    }
    return Module(ctx.large(), m.dim(), std::move(acts));
}

Module restrict_module(const Module& m, const ExtensionContext& ctx) {
    require(m.algebra_ptr() == ctx.large(), "restrict_module: module is not over the extended algebra");
    const std::size_t l = ctx.degree(), n = m.dim();
    const Field& k = ctx.small_field();
    if (l == 1) return m;
    const Field& K = ctx.large_field();
    // multiplication-by-lambda on K in the power basis
    auto mult_matrix = [&](const Scalar& lam) {
        Matrix out(k, l, l);
        Scalar zi = K.one();
        for (std::size_t i = 0; i < l; ++i) {
            auto c = K.coordinates(lam * zi);
            for (std::size_t t = 0; t < l; ++t) out(t, i) = c[t];
            zi = zi * K.generator();
        }
        return out;
    };
    std::vector<Matrix> acts;
    for (std::size_t b = 0; b < m.algebra().dim(); ++b) {
        const Matrix& x = m.action(b);
        Matrix y(k, n * l, n * l);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (!x(r, c).is_zero()) y.set_block(r * l, c * l, mult_matrix(x(r, c)));
        acts.push_back(std::move(y));
    }
    return Module(ctx.small(), n * l, std::move(acts));
}

// ---- complexes -------------------------------------------------------------

ProjComplex tensor_complex(const ProjComplex& x, const ExtensionContext& ctx) {
    require(x.algebra_ptr() == ctx.small(), "tensor_complex: complex is not over the context's algebra");
    const Algebra& K = *ctx.large();
    if (x.empty()) return ProjComplex::zero(ctx.large());
    std::vector<std::vector<std::size_t>> comps;
    // per degree, the (component, piece) behind each new component
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        std::vector<std::size_t> c;
        std::vector<std::pair<std::size_t, std::size_t>> o;
        const auto& xc = x.components(i);
        for (std::size_t s = 0; s < xc.size(); ++s) {
            const auto& ps = ctx.tensor_pieces(xc[s]);
            for (std::size_t p = 0; p < ps.size(); ++p) {
                c.push_back(ps[p].rep);
                o.emplace_back(s, p);
            }
        }
        comps.push_back(std::move(c));
        origin.push_back(std::move(o));
    }
    std::vector<AMatrix> diffs;
    for (int i = x.lo(); i < x.hi(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i - x.lo());
        const AMatrix d = x.differential(i);
        const auto& src = x.components(i);
        const auto& tgt = x.components(i + 1);
        AMatrix nd(K, origin[k + 1].size(), origin[k].size());
        for (std::size_t r = 0; r < origin[k + 1].size(); ++r)
            for (std::size_t c = 0; c < origin[k].size(); ++c) {
                auto [t, pt] = origin[k + 1][r];
                auto [s, ps] = origin[k][c];
                const Vec& a = d(t, s);
                if (is_zero(a)) continue;
                const Piece& from = ctx.tensor_pieces(src[s])[ps];
                const Piece& to = ctx.tensor_pieces(tgt[t])[pt];
                nd(r, c) = K.mul(K.mul(from.y, ctx.embed(a)), to.x);
            }
        diffs.push_back(std::move(nd));
    }
    ProjComplex out(ctx.large(), x.lo(), std::move(comps), std::move(diffs));
    if (x.minimal_flag() == Minimality::Yes) out.set_minimal_flag(Minimality::Yes);
    return out;
}

ProjComplex restrict_complex(const ProjComplex& y, const ExtensionContext& ctx) {
    require(y.algebra_ptr() == ctx.large(), "restrict_complex: complex is not over the extended algebra");
    const Algebra& k = *ctx.small();
    if (y.empty()) return ProjComplex::zero(ctx.small());
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::vector<std::size_t>> offset;
    for (int i = y.lo(); i <= y.hi(); ++i) {
        std::vector<std::size_t> c, off;
        for (auto s : y.components(i)) {
            off.push_back(c.size());
            const auto& r = ctx.restricted(s);
            c.insert(c.end(), r.begin(), r.end());
        }
        comps.push_back(std::move(c));
        offset.push_back(std::move(off));
    }
    std::vector<AMatrix> diffs;
    for (int i = y.lo(); i < y.hi(); ++i) {
        const std::size_t k0 = static_cast<std::size_t>(i - y.lo());
        const AMatrix d = y.differential(i);
        const auto& src = y.components(i);
        const auto& tgt = y.components(i + 1);
        AMatrix nd(k, comps[k0 + 1].size(), comps[k0].size());
        for (std::size_t t = 0; t < tgt.size(); ++t)
            for (std::size_t s = 0; s < src.size(); ++s) {
                if (is_zero(d(t, s))) continue;
                AMatrix block = compose(k, ctx.restricted_projection(tgt[t]),
                                        compose(k, ctx.right_mult(d(t, s)), ctx.restricted_inclusion(src[s])));
                for (std::size_t r = 0; r < block.rows; ++r)
                    for (std::size_t c = 0; c < block.cols; ++c)
                        nd(offset[k0 + 1][t] + r, offset[k0][s] + c) = block(r, c);
            }
        diffs.push_back(std::move(nd));
    }
    ProjComplex out(ctx.small(), y.lo(), std::move(comps), std::move(diffs));
    if (y.minimal_flag() == Minimality::Yes) out.set_minimal_flag(Minimality::Yes);
    return out;
}

UnitIso unit_iso(const ProjComplex& x, const ExtensionContext& ctx) {
    require(x.algebra_ptr() == ctx.small(), "unit_iso: complex is not over the context's algebra");
    const Algebra& k = *ctx.small();
    const std::size_t l = ctx.degree();
    UnitIso u;
    u.restricted = restrict_complex(tensor_complex(x, ctx), ctx);
    u.copies = ProjComplex::zero(ctx.small());
    for (std::size_t i = 0; i < l; ++i) u.copies = direct_sum(u.copies, x);
    if (x.empty()) {
        u.verified = true;
        return u;
    }
    for (int d = x.lo(); d <= x.hi(); ++d) {
        const auto& xc = x.components(d);
        const std::size_t n = xc.size();
        // row offsets of each (component, piece) block inside F(X (x) K)
        std::vector<std::vector<std::size_t>> off(n);
        std::size_t rows = 0;
        for (std::size_t s = 0; s < n; ++s)
            for (const auto& p : ctx.tensor_pieces(xc[s])) {
                off[s].push_back(rows);
                rows += ctx.restricted(p.rep).size();
            }
        invariant(rows == u.restricted.components(d).size(), "unit_iso: component count mismatch");
        AMatrix fwd(k, rows, l * n), bwd(k, l * n, rows);
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t s = 0; s < n; ++s) {
                const auto& ps = ctx.tensor_pieces(xc[s]);
                AMatrix inc = ctx.copy_inclusion(i, xc[s]);
                AMatrix proj = ctx.copy_projection(i, xc[s]);
                for (std::size_t p = 0; p < ps.size(); ++p) {
                    AMatrix f = compose(k, ctx.restricted_projection(ps[p].rep), compose(k, ctx.right_mult(ps[p].x), inc));
                    AMatrix b = compose(k, proj, compose(k, ctx.right_mult(ps[p].y), ctx.restricted_inclusion(ps[p].rep)));
                    for (std::size_t r = 0; r < f.rows; ++r) fwd(off[s][p] + r, i * n + s) = f(r, 0);
                    for (std::size_t c = 0; c < b.cols; ++c) bwd(i * n + s, off[s][p] + c) = b(0, c);
                }
            }
        u.forward.parts.emplace(d, std::move(fwd));
        u.backward.parts.emplace(d, std::move(bwd));
    }
    u.verified = is_chain_map(u.copies, u.restricted, u.forward) && is_chain_map(u.restricted, u.copies, u.backward) &&
                 maps_equal(u.copies, u.copies, compose(k, u.backward, u.forward), identity_map(u.copies)) &&
                 maps_equal(u.restricted, u.restricted, compose(k, u.forward, u.backward), identity_map(u.restricted));
    invariant(u.verified, "unit isomorphism certificate failed to verify");
    return u;
}

// ---- witnesses and range reports -------------------------------------------

WitnessUp summand_witness_up(const ProjComplex& x, const ExtensionContext& ctx) {
    require(is_indecomposable(x), "summand_witness_up needs an indecomposable complex");
    auto ups = decompose_complex(tensor_complex(x, ctx));
    WitnessUp w;
    w.summands_up = ups.size();
    for (const auto& y : ups) {
        auto downs = decompose_complex(restrict_complex(y.complex, ctx));
        for (const auto& c : downs) {
            auto iso = is_isomorphic(x, c.complex);
            if (!iso.isomorphic) continue;
            w.y = y.complex;
            w.summands_down = downs.size();
            w.match = std::move(iso);
            return w;
        }
    }
    invariant(false, "no summand of X (x) K restricts back to X");
    return w;
}

WitnessDown summand_witness_down(const ProjComplex& y, const ExtensionContext& ctx) {
    require(is_indecomposable(y), "summand_witness_down needs an indecomposable complex");
    auto downs = decompose_complex(restrict_complex(y, ctx));
    invariant(downs.size() <= ctx.degree(), "F(Y) has more than l indecomposable summands");
    WitnessDown w;
    w.summands_down = downs.size();
    for (const auto& x : downs) {
        auto ups = decompose_complex(tensor_complex(x.complex, ctx));
        for (const auto& c : ups) {
            auto iso = is_isomorphic(y, c.complex);
            if (!iso.isomorphic) continue;
            w.x = x.complex;
            w.summands_up = ups.size();
            w.match = std::move(iso);
            return w;
        }
    }
    invariant(false, "no summand of F(Y) extends back to Y");
    return w;
}

RangeReport range_bound_report_up(const ProjComplex& x, const ExtensionContext& ctx) {
    require(is_indecomposable(x), "range report needs an indecomposable complex");
    RangeReport rep;
    rep.direction = "up";
    rep.l = ctx.degree();
    rep.r = range_stats(x).hr;
    for (const auto& s : decompose_complex(tensor_complex(x, ctx))) {
        const std::size_t h = range_stats(s.complex).hr;
        rep.summand_ranges.push_back(h);
        // h in [r/l, r]
        if (h * rep.l < rep.r || h > rep.r) rep.bounds_ok = false;
    }
    if (rep.summand_ranges.size() > rep.l) rep.bounds_ok = false;
    rep.certificates_ok = unit_iso(x, ctx).verified;
    invariant(rep.bounds_ok, "upward range bound violated");
    return rep;
}

RangeReport range_bound_report_down(const ProjComplex& y, const ExtensionContext& ctx) {
    require(is_indecomposable(y), "range report needs an indecomposable complex");
    RangeReport rep;
    rep.direction = "down";
    rep.l = ctx.degree();
    rep.r = range_stats(y).hr;
    for (const auto& s : decompose_complex(restrict_complex(y, ctx))) {
        const std::size_t h = range_stats(s.complex).hr;
        rep.summand_ranges.push_back(h);
        // h in [r, l r]
        if (h < rep.r || h > rep.l * rep.r) rep.bounds_ok = false;
    }
    if (rep.summand_ranges.size() > rep.l) rep.bounds_ok = false;
    invariant(rep.bounds_ok, "downward range bound violated");
    return rep;
}

}  // namespace drt
