#include "drt/assoc.hpp"

#include <random>

namespace drt {

// ---------------------------------------------------------------- CoordMap

CoordMap::CoordMap(const Field& f, std::vector<Vec> basis, std::size_t ambient)
    : f_(&f), basis_(std::move(basis)), ambient_(ambient) {
    const std::size_t k = basis_.size();
    if (k == 0) return;
    Matrix bt = Matrix::from_rows(f, basis_, ambient);
    auto ech = rref(bt);
    require(ech.pivots.size() == k, "CoordMap: basis vectors are dependent");
    rows_ = ech.pivots;
    Matrix sq(f, k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sq(i, j) = basis_[j][rows_[i]];
    inv_ = inverse(sq);
}

Vec CoordMap::coords(const Vec& v) const {
    require(v.size() == ambient_, "CoordMap: vector has wrong length");
    Vec r;
    r.reserve(rows_.size());
    for (auto i : rows_) r.push_back(v[i]);
    if (rows_.empty()) return r;
    return inv_.apply(r);
}

std::optional<Vec> CoordMap::try_coords(const Vec& v) const {
    Vec c = coords(v);
    if (basis_.empty()) {
        if (!is_zero(v)) return std::nullopt;
        return c;
    }
    if (combine(c) != v) return std::nullopt;
    return c;
}

Vec CoordMap::combine(const Vec& c) const {
    require(c.size() == basis_.size(), "CoordMap: coordinate vector has wrong length");
    Vec out = zero_vec(*f_, ambient_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!basis_[i][j].is_zero()) out[j] += c[i] * basis_[i][j];
    }
    return out;
}

// ---------------------------------------------------------------- AssocAlgebra

AssocAlgebra::AssocAlgebra(const Field& f, std::size_t dim, std::vector<Vec> table, Vec unit)
    : f_(&f), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {
    require(table_.size() == dim_ * dim_, "structure table has wrong size");
    require(unit_.size() == dim_, "unit vector has wrong length");
}

Vec AssocAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j].is_zero()) continue;
            const Vec& t = table_[i * dim_ + j];
            Scalar c = a[i] * b[j];
            for (std::size_t k = 0; k < dim_; ++k)
                if (!t[k].is_zero()) out[k] += c * t[k];
        }
    }
    return out;
}

Vec AssocAlgebra::pow(const Vec& a, std::size_t e) const {
    Vec r = unit_, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

Matrix AssocAlgebra::left_mult(const Vec& a) const {
    Matrix m(*f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec c = mul(a, basis(j));
        for (std::size_t i = 0; i < dim_; ++i) m(i, j) = c[i];
    }
    return m;
}

bool AssocAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            if (table_[i * dim_ + j] != table_[j * dim_ + i]) return false;
    return true;
}

bool AssocAlgebra::check_associative() const {
    auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
        return mul(table_[i * dim_ + j], basis(k)) == mul(basis(i), table_[j * dim_ + k]);
    };
    if (dim_ <= 8) {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!triple(i, j, k)) return false;
        return true;
    }
    std::mt19937 rng(1234);
    for (int n = 0; n < 512; ++n)
        if (!triple(rng() % dim_, rng() % dim_, rng() % dim_)) return false;
    return true;
}

std::optional<Vec> AssocAlgebra::inverse(const Vec& a) const {
    auto y = solve(left_mult(a), unit_);
    if (!y) return std::nullopt;
    return y;
}

poly::Poly AssocAlgebra::minimal_polynomial(const Vec& a) const {
    std::vector<Vec> powers{unit_};
    for (;;) {
        Vec next = mul(powers.back(), a);
        auto c = coordinates_in(*f_, powers, next, dim_);
        if (c) {
            poly::Poly m;
            for (const auto& x : *c) m.push_back(-x);
            m.push_back(f_->one());
            return m;
        }
        powers.push_back(std::move(next));
        invariant(powers.size() <= dim_ + 1, "minimal polynomial degree exceeds algebra dimension");
    }
}

AssocAlgebra::Corner AssocAlgebra::corner(const Vec& e) const {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < dim_; ++j) gens.push_back(mul(mul(e, basis(j)), e));
    CoordMap emb(*f_, span_basis(*f_, gens, dim_), dim_);
    const std::size_t k = emb.size();
    std::vector<Vec> table;
    table.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) table.push_back(emb.coords(mul(emb.basis()[i], emb.basis()[j])));
    Vec unit = emb.coords(e);
    return Corner{AssocAlgebra(*f_, k, std::move(table), std::move(unit)), std::move(emb)};
}

namespace {

Vec eval_at(const AssocAlgebra& a, const poly::Poly& p, const Vec& x) {
    Vec r = a.zero();
    for (std::size_t i = p.size(); i-- > 0;) {
        r = a.mul(r, x);
        r = add(r, scale(a.one(), p[i]));
    }
    return r;
}

// Flattened coordinates over the prime subfield.
std::vector<std::uint64_t> to_prime_digits(const Field& f, const Vec& v) {
    std::vector<std::uint64_t> out;
    out.reserve(v.size() * f.degree());
    for (const auto& x : v)
        for (auto r : x.residues()) out.push_back(r);
    return out;
}

Vec from_prime_digits(const Field& f, const std::vector<std::uint32_t>& d, std::size_t dim) {
    Vec out;
    out.reserve(dim);
    const std::size_t l = f.degree();
    for (std::size_t i = 0; i < dim; ++i)
        out.push_back(f.from_residues(std::span<const std::uint32_t>(d.data() + i * l, l)));
    return out;
}

using IntMat = std::vector<std::uint64_t>;  // n x n row-major

IntMat mat_mul_mod(const IntMat& a, const IntMat& b, std::size_t n, std::uint64_t m) {
    IntMat c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t x = a[i * n + k];
            if (!x) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % m;
        }
    return c;
}

IntMat mat_pow_mod(IntMat a, std::uint64_t e, std::size_t n, std::uint64_t m) {
    IntMat r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1 % m;
    while (e) {
        if (e & 1) r = mat_mul_mod(r, a, n, m);
        e >>= 1;
        if (e) a = mat_mul_mod(a, a, n, m);
    }
    return r;
}

std::vector<Vec> radical_trace_form(const AssocAlgebra& e) {
    const Field& f = e.field();
    const std::size_t d = e.dim();
    std::vector<Scalar> tr(d, f.zero());
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) tr[k] += e.product_of_basis(k, j)[j];
    }
    Matrix gram(f, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Scalar s = f.zero();
            const Vec& t = e.product_of_basis(i, j);
            for (std::size_t k = 0; k < d; ++k)
                if (!t[k].is_zero()) s += t[k] * tr[k];
            gram(i, j) = s;
        }
    return kernel(gram);
}

// Iterated trace method over F_p on the regular representation, applied to
// the algebra viewed over the prime field.
std::vector<Vec> radical_modular(const AssocAlgebra& e) {
    const Field& f = e.field();
    const std::uint64_t p = f.characteristic();
    const std::size_t l = f.degree(), d = e.dim(), n = d * l;
    auto fp = Field::prime(static_cast<std::uint32_t>(p));

    // F_p-basis: b_i * z^s, flattened index i*l + s.
    std::vector<Vec> fbasis;
    Scalar z = f.is_extension() ? f.generator() : f.one();
    for (std::size_t i = 0; i < d; ++i) {
        Scalar zs = f.one();
        for (std::size_t s = 0; s < l; ++s) {
            Vec v = e.zero();
            v[i] = zs;
            fbasis.push_back(std::move(v));
            zs *= z;
        }
    }
    std::vector<IntMat> reg(n, IntMat(n * n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            auto col = to_prime_digits(f, e.mul(fbasis[a], fbasis[c]));
            for (std::size_t r = 0; r < n; ++r) reg[a][r * n + c] = col[r];
        }

    std::size_t kmax = 0;
    for (std::uint64_t pk = p; pk <= n; pk *= p) ++kmax;

    // Current ideal I as F_p vectors of length n.
    std::vector<std::vector<std::uint64_t>> ideal;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::uint64_t> v(n, 0);
        v[a] = 1;
        ideal.push_back(std::move(v));
    }
    std::uint64_t pi = 1;
    for (std::size_t i = 0; i <= kmax && !ideal.empty(); ++i, pi *= p) {
        const std::uint64_t mod = pi * p;
        Matrix g(*fp, n, ideal.size());
        for (std::size_t j = 0; j < ideal.size(); ++j) {
            IntMat la(n * n, 0);
            for (std::size_t a = 0; a < n; ++a) {
                if (!ideal[j][a]) continue;
                for (std::size_t t = 0; t < n * n; ++t) la[t] = (la[t] + ideal[j][a] * reg[a][t]) % p;
            }
            for (std::size_t b = 0; b < n; ++b) {
                IntMat lab = mat_mul_mod(la, reg[b], n, p);
                IntMat pw = mat_pow_mod(lab, pi, n, mod);
                std::uint64_t trace = 0;
                for (std::size_t r = 0; r < n; ++r) trace = (trace + pw[r * n + r]) % mod;
                invariant(trace % pi == 0, "radical: trace is not divisible by the expected power of p");
                g(b, j) = fp->from_int(static_cast<long long>((trace / pi) % p));
            }
        }
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& c : kernel(g)) {
            std::vector<std::uint64_t> v(n, 0);
            for (std::size_t j = 0; j < ideal.size(); ++j) {
                auto cj = c[j].residues()[0];
                if (!cj) continue;
                for (std::size_t a = 0; a < n; ++a) v[a] = (v[a] + cj * ideal[j][a]) % p;
            }
            next.push_back(std::move(v));
        }
        ideal = std::move(next);
    }

    std::vector<Vec> out;
    for (const auto& v : ideal) {
        std::vector<std::uint32_t> digits(v.begin(), v.end());
        out.push_back(from_prime_digits(f, digits, d));
    }
    return span_basis(f, out, d);
}

Vec embed_corner(const AssocAlgebra::Corner& c, const Vec& v) { return c.embedding.combine(v); }

// Splitting of a commutative semisimple subalgebra C (basis in S coordinates,
// containing 1) over a finite field, through the Frobenius-fixed subalgebra.
std::optional<Vec> split_commutative_finite(const AssocAlgebra& s, const std::vector<Vec>& cbasis,
                                            std::size_t* fixed_dim = nullptr) {
    const Field& f = s.field();
    const std::uint64_t q = f.order();
    CoordMap cm(f, cbasis, s.dim());
    const std::size_t k = cm.size();
    Matrix frob(f, k, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec c = cm.coords(s.pow(cbasis[j], q));
        for (std::size_t i = 0; i < k; ++i) frob(i, j) = c[i] - (i == j ? f.one() : f.zero());
    }
    auto fixed = kernel(frob);
    if (fixed_dim) *fixed_dim = fixed.size();
    if (fixed.size() <= 1) return std::nullopt;
    const Vec& one = s.one();
    for (const auto& fv : fixed) {
        Vec b = cm.combine(fv);
        if (coordinates_in(f, {one}, b, s.dim())) continue;
        auto mu = s.minimal_polynomial(b);
        auto rts = poly::roots(f, mu);
        if (rts.roots.empty())
            fail(ErrorKind::Unsupported, "idempotent splitting: root search over " + f.name() + " is too large");
        Vec x = sub(b, scale(one, rts.roots.front()));
        Vec e = sub(one, s.pow(x, q - 1));
        invariant(s.is_idempotent(e), "Frobenius splitting produced a non-idempotent");
        return e;
    }
    return std::nullopt;
}

std::vector<Vec> center_basis(const AssocAlgebra& s) {
    const std::size_t d = s.dim();
    Matrix m(s.field(), d * d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            Vec c = sub(s.product_of_basis(j, i), s.product_of_basis(i, j));
            for (std::size_t k = 0; k < d; ++k) m(i * d + k, j) = c[k];
        }
    return kernel(m);
}

std::vector<Vec> power_span(const AssocAlgebra& s, const Vec& a) {
    std::vector<Vec> powers{s.one()};
    for (;;) {
        Vec next = s.mul(powers.back(), a);
        if (coordinates_in(s.field(), powers, next, s.dim())) break;
        powers.push_back(std::move(next));
    }
    return powers;
}

// Deterministic candidate elements: basis vectors, then seeded combinations.
class Candidates {
public:
    explicit Candidates(const AssocAlgebra& s) : s_(s), rng_(0x5eed) {}
    Vec next() {
        const Field& f = s_.field();
        if (i_ < s_.dim()) return s_.basis(i_++);
        Vec v = s_.zero();
        for (auto& x : v) {
            if (f.finite())
                x = f.element(rng_() % f.order());
            else
                x = f.from_int(static_cast<long long>(rng_() % 7) - 3);
        }
        ++i_;
        return v;
    }

private:
    const AssocAlgebra& s_;
    std::mt19937 rng_;
    std::size_t i_ = 0;
};

std::optional<Vec> split_by_root(const AssocAlgebra& s, const Vec& a) {
    const Field& f = s.field();
    auto mu = s.minimal_polynomial(a);
    if (poly::degree(mu) < 2) return std::nullopt;
    auto rts = poly::roots(f, mu);
    if (rts.roots.empty()) return std::nullopt;
    const Scalar& c = rts.roots.front();
    poly::Poly lin{-c, f.one()};
    auto [g, r] = poly::divmod(f, mu, lin);
    Scalar gc = poly::eval(f, g, c);
    if (gc.is_zero()) return std::nullopt;  // repeated root; not semisimple data
    Vec e = scale(eval_at(s, g, a), f.inv(gc));
    if (!s.is_idempotent(e)) return std::nullopt;
    return e;
}

std::vector<Vec> decompose_semisimple(const AssocAlgebra& s) {
    if (s.dim() == 0) return {};
    auto e = split_idempotent(s);
    if (!e) return {s.one()};
    std::vector<Vec> out;
    for (const Vec& part : {*e, sub(s.one(), *e)}) {
        auto c = s.corner(part);
        for (const auto& sub_e : decompose_semisimple(c.algebra)) out.push_back(embed_corner(c, sub_e));
    }
    return out;
}

}  // namespace

std::vector<Vec> jacobson_radical(const AssocAlgebra& e) {
    if (e.dim() == 0) return {};
    const Field& f = e.field();
    if (!f.finite() || f.characteristic() > e.dim()) return span_basis(f, radical_trace_form(e), e.dim());
    return radical_modular(e);
}

Vec SemisimpleQuotient::project(const Vec& x) const {
    Vec c = full.coords(x);
    c.resize(lifts.size());
    return c;
}

Vec SemisimpleQuotient::lift(const Vec& s) const {
    Vec c = s;
    for (std::size_t i = 0; i < radical.size(); ++i) c.push_back(algebra.field().zero());
    return full.combine(c);
}

SemisimpleQuotient semisimple_quotient(const AssocAlgebra& e) {
    const Field& f = e.field();
    SemisimpleQuotient q;
    q.radical = jacobson_radical(e);
    std::vector<bool> pivot(e.dim(), false);
    if (!q.radical.empty()) {
        auto ech = rref(Matrix::from_rows(f, q.radical, e.dim()));
        for (auto p : ech.pivots) pivot[p] = true;
    }
    for (std::size_t i = 0; i < e.dim(); ++i)
        if (!pivot[i]) q.lifts.push_back(e.basis(i));
    std::vector<Vec> all = q.lifts;
    all.insert(all.end(), q.radical.begin(), q.radical.end());
    q.full = CoordMap(f, all, e.dim());
    const std::size_t s = q.lifts.size();
    std::vector<Vec> table;
    table.reserve(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) table.push_back(q.project(e.mul(q.lifts[i], q.lifts[j])));
    Vec unit = q.project(e.one());
    q.algebra = AssocAlgebra(f, s, std::move(table), std::move(unit));
    return q;
}

std::optional<Vec> split_idempotent(const AssocAlgebra& s) {
    const Field& f = s.field();
    const std::size_t d = s.dim();
    if (d <= 1) return std::nullopt;
    std::vector<Vec> all;
    for (std::size_t i = 0; i < d; ++i) all.push_back(s.basis(i));

    if (f.finite()) {
        if (s.is_commutative()) return split_commutative_finite(s, all);
        auto z = center_basis(s);
        if (z.size() > 1)
            if (auto e = split_commutative_finite(s, z)) return e;
        // Simple and noncommutative: a full matrix algebra, so some F_q[a] splits.
        Candidates cand(s);
        for (int trial = 0; trial < 4000; ++trial) {
            Vec a = cand.next();
            if (auto e = split_commutative_finite(s, power_span(s, a))) return e;
        }
        fail(ErrorKind::Invariant, "no idempotent found in a noncommutative semisimple algebra");
    }

    Candidates cand(s);
    const bool commutative = s.is_commutative();
    for (int trial = 0; trial < 64; ++trial) {
        Vec a = cand.next();
        if (auto e = split_by_root(s, a)) return e;
        if (commutative) {
            auto mu = s.minimal_polynomial(a);
            if (static_cast<std::size_t>(poly::degree(mu)) == d &&
                poly::irreducibility(f, mu) == poly::Irreducibility::Irreducible)
                return std::nullopt;  // s = F[a] is a field
        }
    }
    fail(ErrorKind::Unsupported, "cannot decide whether a " + std::to_string(d) +
                                     "-dimensional semisimple algebra over " + f.name() + " splits");
}

bool is_local(const AssocAlgebra& e) {
    if (e.dim() == 0) return false;
    auto q = semisimple_quotient(e);
    const AssocAlgebra& s = q.algebra;
    if (s.dim() == 1) return true;
    if (s.field().finite()) {
        if (!s.is_commutative()) return false;
        std::vector<Vec> all;
        for (std::size_t i = 0; i < s.dim(); ++i) all.push_back(s.basis(i));
        std::size_t fixed = 0;
        split_commutative_finite(s, all, &fixed);
        return fixed == 1;
    }
    return !split_idempotent(s).has_value();
}

std::vector<Vec> lift_idempotents(const AssocAlgebra& e, const SemisimpleQuotient& q,
                                  const std::vector<Vec>& quotient_idempotents) {
    std::vector<Vec> out;
    if (quotient_idempotents.empty()) return out;
    Vec acc = e.zero();
    for (std::size_t j = 0; j + 1 < quotient_idempotents.size(); ++j) {
        Vec comp = sub(e.one(), acc);
        Vec x = e.mul(e.mul(comp, q.lift(quotient_idempotents[j])), comp);
        int it = 0;
        while (!e.is_idempotent(x)) {
            Vec x2 = e.mul(x, x);
            Vec x3 = e.mul(x2, x);
            x = sub(scale(x2, e.field().from_int(3)), scale(x3, e.field().from_int(2)));
            invariant(++it < 64, "idempotent lifting did not converge");
        }
        out.push_back(x);
        acc = add(acc, x);
    }
    out.push_back(sub(e.one(), acc));
    invariant(e.is_idempotent(out.back()), "lifted idempotents do not sum to an idempotent complement");
    return out;
}

std::vector<Vec> primitive_idempotents(const AssocAlgebra& e) {
    if (e.dim() == 0) return {};
    auto q = semisimple_quotient(e);
    return lift_idempotents(e, q, decompose_semisimple(q.algebra));
}

}  // namespace drt
