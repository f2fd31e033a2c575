#include "drt/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "drt/kernels.hpp"
#include "drt/poly.hpp"

namespace drt {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return static_cast<std::uint32_t>((t % p + p) % p);
}

// Solve M x = b over F_p or Q for a small square nonsingular M (row-major).
template <class T, class Ops>
std::vector<T> solve_small(std::vector<T> m, std::vector<T> b, std::size_t n, const Ops& ops) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && ops.zero(m[piv * n + col])) ++piv;
        if (piv == n) fail(ErrorKind::Precondition, "division by zero");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        T iv = ops.inv(m[col * n + col]);
        for (std::size_t j = 0; j < n; ++j) m[col * n + j] = ops.mul(m[col * n + j], iv);
        b[col] = ops.mul(b[col], iv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || ops.zero(m[r * n + col])) continue;
            T f = m[r * n + col];
            for (std::size_t j = 0; j < n; ++j)
                m[r * n + j] = ops.sub(m[r * n + j], ops.mul(f, m[col * n + j]));
            b[r] = ops.sub(b[r], ops.mul(f, b[col]));
        }
    }
    return b;
}

struct ResidueOps {
    std::uint32_t p;
    bool zero(std::uint32_t a) const { return a == 0; }
    std::uint32_t inv(std::uint32_t a) const { return inv_mod(a, p); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
};

struct RationalOps {
    bool zero(const mpq_class& a) const { return sgn(a) == 0; }
    mpq_class inv(const mpq_class& a) const { return 1 / a; }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return a * b; }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return a - b; }
};

}  // namespace

// ---------------------------------------------------------------- Scalar

bool Scalar::is_zero() const { return f_->is_zero(*this); }
bool Scalar::is_one() const { return *this == f_->one(); }
std::string Scalar::str() const { return f_ ? f_->format(*this) : std::string("<invalid>"); }

Scalar operator+(const Scalar& a, const Scalar& b) { return a.f_->add(a, b); }
Scalar operator-(const Scalar& a, const Scalar& b) { return a.f_->sub(a, b); }
Scalar operator*(const Scalar& a, const Scalar& b) { return a.f_->mul(a, b); }
Scalar operator/(const Scalar& a, const Scalar& b) { return a.f_->div(a, b); }
Scalar operator-(const Scalar& a) { return a.f_->neg(a); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.f_ != b.f_ && !(a.f_ && b.f_ && a.f_->same(*b.f_))) return false;
    return a.r_ == b.r_ && a.q_ == b.q_;
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.r_ != b.r_) return a.r_ < b.r_;
    return a.q_ < b.q_;
}

// ---------------------------------------------------------------- Field

FieldPtr Field::prime(std::uint32_t p) {
    require(is_prime(p), "Fp(" + std::to_string(p) + "): modulus is not prime");
    require(p < kernels::kMaxModulus, "Fp(" + std::to_string(p) + "): modulus must be below 32768");
    // Prime fields are interned: scalars hold raw owner pointers, and a
    // temporary Fp(p) must stay alive for them.
    static std::mutex mu;
    static std::map<std::uint32_t, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p];
    if (!slot) {
        std::shared_ptr<Field> f(new Field());
        f->kind_ = Kind::Prime;
        f->p_ = p;
        f->order_ = p;
        slot = f;
    }
    return slot;
}

FieldPtr Field::rationals() {
    static const FieldPtr q = [] {
        std::shared_ptr<Field> f(new Field());
        f->kind_ = Kind::Rationals;
        return FieldPtr(f);
    }();
    return q;
}

FieldPtr Field::extension(const FieldPtr& base, const std::vector<Scalar>& minpoly,
                          bool assume_irreducible) {
    require(base && !base->is_extension(),
            "extension base must be a prime field or Q (flatten towers first)");
    poly::Poly m = minpoly;
    for (const auto& c : m) require(c.valid() && c.field()->same(*base), "minpoly coefficient outside base field");
    poly::trim(m);
    require(poly::degree(m) >= 1, "minpoly must have degree at least 1");
    require(m.back().is_one(), "minpoly must be monic (leading coefficient 1)");
    auto irr = poly::irreducibility(*base, m);
    if (irr == poly::Irreducibility::Reducible)
        fail(ErrorKind::Precondition, "minpoly " + poly::format(*base, m, "z") + " is reducible over " + base->name());
    if (irr == poly::Irreducibility::Unknown && !assume_irreducible)
        fail(ErrorKind::Precondition, "cannot verify irreducibility of " + poly::format(*base, m, "z") +
                                          " over " + base->name() + "; pass --assume-irreducible");
    require(poly::is_separable(*base, m),
            "minpoly " + poly::format(*base, m, "z") + " is not separable: the extension must be separable");

    std::shared_ptr<Field> f(new Field());
    f->kind_ = Kind::Extension;
    f->p_ = base->p_;
    f->deg_ = static_cast<std::size_t>(poly::degree(m));
    f->base_ = base;
    f->minpoly_ = m;
    if (f->p_ != 0) {
        std::uint64_t q = 1;
        for (std::size_t i = 0; i < f->deg_; ++i) q = (q > (1ull << 62) / f->p_) ? (1ull << 63) : q * f->p_;
        f->order_ = q;
        for (const auto& c : m) f->mod_r_.push_back(c.r_[0]);
    } else {
        for (const auto& c : m) f->mod_q_.push_back(c.q_[0]);
    }
    return f;
}

bool Field::same(const Field& o) const noexcept {
    if (this == &o) return true;
    if (kind_ != o.kind_ || p_ != o.p_ || deg_ != o.deg_) return false;
    if (kind_ != Kind::Extension) return true;
    return mod_r_ == o.mod_r_ && mod_q_ == o.mod_q_;
}

std::string Field::name() const {
    switch (kind_) {
        case Kind::Prime: return "Fp(" + std::to_string(p_) + ")";
        case Kind::Rationals: return "Q";
        case Kind::Extension: return base_->name() + "[z]/(" + poly::format(*base_, minpoly_, "z") + ")";
    }
    return "?";
}

void Field::check_owner(const Scalar& a) const {
    if (a.f_ != this && !(a.f_ && same(*a.f_)))
        fail(ErrorKind::Precondition, "scalar owner mismatch: expected " + name() + ", got " +
                                          (a.f_ ? a.f_->name() : std::string("<invalid>")));
}

Scalar Field::blank() const {
    Scalar s;
    s.f_ = this;
    if (p_ != 0)
        s.r_.assign(deg_, 0u);
    else
        s.q_.assign(deg_, mpq_class(0));
    return s;
}

Scalar Field::zero() const { return blank(); }

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
    Scalar s = blank();
    if (p_ != 0) {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        s.r_[0] = static_cast<std::uint32_t>(r);
    } else {
        s.q_[0] = mpq_class(static_cast<long>(v));
    }
    return s;
}

Scalar Field::from_rational(const mpq_class& v) const {
    if (p_ != 0) {
        // Interpret a/b in characteristic p.
        mpz_class num = v.get_num() % p_, den = v.get_den() % p_;
        if (num < 0) num += p_;
        require(den != 0, "rational " + v.get_str() + " has denominator divisible by " + std::to_string(p_));
        Scalar s = blank();
        s.r_[0] = static_cast<std::uint32_t>((num.get_ui() * inv_mod(static_cast<std::uint32_t>(den.get_ui()), p_)) % p_);
        return s;
    }
    Scalar s = blank();
    s.q_[0] = v;
    s.q_[0].canonicalize();
    return s;
}

Scalar Field::generator() const {
    require(is_extension(), "generator() requires an extension field, got " + name());
    Scalar s = blank();
    if (deg_ == 1) {
        // z = -m0 when the minpoly is linear.
        return neg(embed(minpoly_[0]));
    }
    if (p_ != 0)
        s.r_[1] = 1;
    else
        s.q_[1] = 1;
    return s;
}

Scalar Field::embed(const Scalar& b) const {
    if (!is_extension()) {
        check_owner(b);
        return b;
    }
    base_->check_owner(b);
    Scalar s = blank();
    if (p_ != 0)
        s.r_[0] = b.r_[0];
    else
        s.q_[0] = b.q_[0];
    return s;
}

Scalar Field::from_coords(std::span<const Scalar> coords) const {
    require(is_extension(), "from_coords requires an extension field");
    require(coords.size() == deg_, "coordinate vector has wrong length");
    Scalar s = blank();
    for (std::size_t i = 0; i < deg_; ++i) {
        base_->check_owner(coords[i]);
        if (p_ != 0)
            s.r_[i] = coords[i].r_[0];
        else
            s.q_[i] = coords[i].q_[0];
    }
    return s;
}

std::vector<Scalar> Field::coordinates(const Scalar& x) const {
    require(is_extension(), "coordinates: " + name() + " is not an extension field");
    check_owner(x);
    std::vector<Scalar> out;
    out.reserve(deg_);
    for (std::size_t i = 0; i < deg_; ++i) {
        Scalar c = base_->blank();
        if (p_ != 0)
            c.r_[0] = x.r_[i];
        else
            c.q_[0] = x.q_[i];
        out.push_back(std::move(c));
    }
    return out;
}

Scalar Field::from_residues(std::span<const std::uint32_t> digits) const {
    require(p_ != 0 && digits.size() == deg_, "from_residues: finite field and matching length required");
    Scalar s = blank();
    for (std::size_t i = 0; i < deg_; ++i) s.r_[i] = digits[i] % p_;
    return s;
}

bool Field::is_zero(const Scalar& a) const {
    if (p_ != 0) return std::all_of(a.r_.begin(), a.r_.end(), [](std::uint32_t v) { return v == 0; });
    return std::all_of(a.q_.begin(), a.q_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    check_owner(a);
    check_owner(b);
    Scalar s = a;
    s.f_ = this;
    if (p_ != 0) {
        for (std::size_t i = 0; i < deg_; ++i) {
            std::uint32_t v = s.r_[i] + b.r_[i];
            s.r_[i] = v >= p_ ? v - p_ : v;
        }
    } else {
        for (std::size_t i = 0; i < deg_; ++i) s.q_[i] += b.q_[i];
    }
    return s;
}

Scalar Field::neg(const Scalar& a) const {
    check_owner(a);
    Scalar s = a;
    s.f_ = this;
    if (p_ != 0) {
        for (auto& v : s.r_) v = v == 0 ? 0 : p_ - v;
    } else {
        for (auto& v : s.q_) v = -v;
    }
    return s;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    check_owner(a);
    check_owner(b);
    Scalar s = blank();
    if (deg_ == 1) {
        if (p_ != 0)
            s.r_[0] = (a.r_[0] * b.r_[0]) % p_;
        else
            s.q_[0] = a.q_[0] * b.q_[0];
        return s;
    }
    const std::size_t n = deg_;
    if (p_ != 0) {
        std::vector<std::uint64_t> prod(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.r_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a.r_[i] * b.r_[j]) % p_;
        }
        for (std::size_t k = 2 * n - 2; k >= n; --k) {
            std::uint64_t c = prod[k] % p_;
            if (c == 0) continue;
            // z^n = -sum m_i z^i
            for (std::size_t i = 0; i < n; ++i)
                prod[k - n + i] = (prod[k - n + i] + (p_ - mod_r_[i]) % p_ * c) % p_;
            prod[k] = 0;
        }
        for (std::size_t i = 0; i < n; ++i) s.r_[i] = static_cast<std::uint32_t>(prod[i] % p_);
    } else {
        std::vector<mpq_class> prod(2 * n - 1, mpq_class(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(a.q_[i]) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.q_[i] * b.q_[j];
        }
        for (std::size_t k = 2 * n - 2; k >= n; --k) {
            if (sgn(prod[k]) == 0) continue;
            for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= mod_q_[i] * prod[k];
            prod[k] = 0;
        }
        for (std::size_t i = 0; i < n; ++i) s.q_[i] = prod[i];
    }
    return s;
}

Scalar Field::inv(const Scalar& a) const {
    check_owner(a);
    if (is_zero(a)) fail(ErrorKind::Precondition, "division by zero in " + name());
    Scalar s = blank();
    if (deg_ == 1) {
        if (p_ != 0)
            s.r_[0] = inv_mod(a.r_[0], p_);
        else
            s.q_[0] = 1 / a.q_[0];
        return s;
    }
    // Solve (mult-by-a) x = 1 in the power basis.
    const std::size_t n = deg_;
    Scalar zpow = one();
    Scalar z = generator();
    if (p_ != 0) {
        std::vector<std::uint32_t> m(n * n), b(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            Scalar col = mul(a, zpow);
            for (std::size_t i = 0; i < n; ++i) m[i * n + j] = col.r_[i];
            zpow = mul(zpow, z);
        }
        b[0] = 1;
        auto x = solve_small(std::move(m), std::move(b), n, ResidueOps{p_});
        for (std::size_t i = 0; i < n; ++i) s.r_[i] = x[i];
    } else {
        std::vector<mpq_class> m(n * n), b(n, mpq_class(0));
        for (std::size_t j = 0; j < n; ++j) {
            Scalar col = mul(a, zpow);
            for (std::size_t i = 0; i < n; ++i) m[i * n + j] = col.q_[i];
            zpow = mul(zpow, z);
        }
        b[0] = 1;
        auto x = solve_small(std::move(m), std::move(b), n, RationalOps{});
        for (std::size_t i = 0; i < n; ++i) s.q_[i] = x[i];
    }
    return s;
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
    Scalar r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Scalar Field::element(std::uint64_t index) const {
    require(finite(), "element(): field is infinite");
    Scalar s = blank();
    for (std::size_t i = 0; i < deg_; ++i) {
        s.r_[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return s;
}

std::uint64_t Field::index_of(const Scalar& a) const {
    check_owner(a);
    require(finite(), "index_of(): field is infinite");
    std::uint64_t idx = 0;
    for (std::size_t i = deg_; i-- > 0;) idx = idx * p_ + a.r_[i];
    return idx;
}

Scalar Field::multiplicative_generator() const {
    require(finite(), "multiplicative_generator(): field is infinite");
    const std::uint64_t n = order_ - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t idx = 1; idx < order_; ++idx) {
        Scalar g = element(idx);
        bool ok = true;
        for (auto q : primes)
            if (pow(g, n / q).is_one()) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    fail(ErrorKind::Invariant, "no multiplicative generator found in " + name());
}

std::string Field::format(const Scalar& a) const {
    check_owner(a);
    if (deg_ == 1 && !is_extension()) {
        if (p_ != 0) return std::to_string(a.r_[0]);
        return a.q_[0].get_str();
    }
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < deg_; ++i) {
        if (i) os << ',';
        if (p_ != 0)
            os << a.r_[i];
        else
            os << a.q_[i].get_str();
    }
    os << ')';
    return os.str();
}

}  // namespace drt
