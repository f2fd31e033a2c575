#include "drt/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace drt::poly {

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

long degree(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<long>(i);
    return -1;
}

Poly constant(const Field& f, const Scalar& c) {
    Poly p{c};
    (void)f;
    trim(p);
    return p;
}

Poly monomial(const Field& f, std::size_t deg) {
    Poly p(deg + 1, f.zero());
    p[deg] = f.one();
    return p;
}

Poly add(const Field& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
    trim(r);
    return r;
}

Poly sub(const Field& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly scale(const Field& f, const Poly& a, const Scalar& c) {
    Poly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(f.mul(x, c));
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b) {
    long db = degree(b);
    require(db >= 0, "polynomial division by zero");
    Poly r = a;
    trim(r);
    long dr = degree(r);
    if (dr < db) return {{}, r};
    Poly q(static_cast<std::size_t>(dr - db + 1), f.zero());
    Scalar lead_inv = f.inv(b[static_cast<std::size_t>(db)]);
    while ((dr = degree(r)) >= db) {
        Scalar c = f.mul(r[static_cast<std::size_t>(dr)], lead_inv);
        std::size_t shift = static_cast<std::size_t>(dr - db);
        q[shift] = c;
        for (long i = 0; i <= db; ++i)
            r[shift + static_cast<std::size_t>(i)] =
                f.sub(r[shift + static_cast<std::size_t>(i)], f.mul(c, b[static_cast<std::size_t>(i)]));
        trim(r);
    }
    trim(q);
    return {q, r};
}

Poly mod(const Field& f, const Poly& a, const Poly& m) { return divmod(f, a, m).second; }

Poly monic(const Field& f, const Poly& a) {
    long d = degree(a);
    if (d < 0) return {};
    return scale(f, a, f.inv(a[static_cast<std::size_t>(d)]));
}

Poly gcd(const Field& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(f, a);
}

std::tuple<Poly, Poly, Poly> xgcd(const Field& f, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b, s0{f.one()}, s1, t0, t1{f.one()};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(f, r0, r1);
        Poly s2 = sub(f, s0, mul(f, q, s1));
        Poly t2 = sub(f, t0, mul(f, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long d = degree(r0);
    if (d < 0) return {{}, {}, {}};
    Scalar li = f.inv(r0[static_cast<std::size_t>(d)]);
    return {scale(f, r0, li), scale(f, s0, li), scale(f, t0, li)};
}

Poly derivative(const Field& f, const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(f.mul(a[i], f.from_int(static_cast<long long>(i))));
    trim(r);
    return r;
}

Scalar eval(const Field& f, const Poly& a, const Scalar& x) {
    Scalar acc = f.zero();
    for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
    return acc;
}

Poly powmod(const Field& f, Poly base, mpz_class e, const Poly& m) {
    Poly result = mod(f, Poly{f.one()}, m);
    base = mod(f, base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mod(f, mul(f, result, base), m);
        base = mod(f, mul(f, base, base), m);
        e >>= 1;
    }
    return result;
}

bool is_separable(const Field& f, const Poly& p) {
    Poly d = derivative(f, p);
    if (d.empty()) return false;
    return degree(gcd(f, p, d)) == 0;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    // Desk-scale inputs: trial division is fine.
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

std::vector<mpq_class> rational_roots(const std::vector<mpq_class>& coeffs_in) {
    std::vector<mpq_class> c = coeffs_in;
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    std::vector<mpq_class> out;
    if (c.size() <= 1) return out;
    std::size_t shift = 0;
    while (shift < c.size() && sgn(c[shift]) == 0) ++shift;
    if (shift > 0) out.emplace_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(shift));
    if (c.size() <= 1) return out;
    mpz_class l = 1;
    for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    for (const auto& x : c) z.push_back(mpz_class(x * l));
    auto num_divs = divisors(z.front());
    auto den_divs = divisors(z.back());
    std::set<mpq_class> seen;
    for (const auto& a : num_divs) {
        for (const auto& b : den_divs) {
            for (int s : {1, -1}) {
                mpq_class r(a * s, b);
                r.canonicalize();
                if (seen.count(r)) continue;
                seen.insert(r);
                mpq_class acc = 0;
                for (std::size_t i = z.size(); i-- > 0;) acc = acc * r + z[i];
                if (sgn(acc) == 0) out.push_back(r);
            }
        }
    }
    return out;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& a) {
    if (sgn(a) < 0) return std::nullopt;
    if (sgn(a) == 0) return mpq_class(0);
    mpz_class n = a.get_num(), d = a.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

bool all_rational(const Field& f, const Poly& p) {
    if (!f.is_extension()) return true;
    for (const auto& c : p) {
        auto co = f.coordinates(c);
        for (std::size_t i = 1; i < co.size(); ++i)
            if (!co[i].is_zero()) return false;
    }
    return true;
}

void add_unique(std::vector<Scalar>& v, const Scalar& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

std::optional<Scalar> sqrt(const Field& f, const Scalar& a) {
    if (a.is_zero()) return f.zero();
    if (f.finite()) {
        require(f.order() <= (1u << 20), "sqrt: field too large for exhaustive search");
        for (std::uint64_t i = 0; i < f.order(); ++i) {
            Scalar x = f.element(i);
            if (f.mul(x, x) == a) return x;
        }
        return std::nullopt;
    }
    if (!f.is_extension()) {
        auto r = rational_sqrt(a.rationals()[0]);
        if (!r) return std::nullopt;
        return f.from_rational(*r);
    }
    if (f.degree() == 1) {
        auto r = rational_sqrt(a.rationals()[0]);
        if (!r) return std::nullopt;
        return f.from_rational(*r);
    }
    if (f.degree() != 2) fail(ErrorKind::Unsupported, "sqrt over " + f.name() + " is not supported (degree > 2)");
    // K = Q(delta), delta = z + c1/2, delta^2 = D.
    const auto& m = f.minpoly();
    mpq_class c0 = m[0].rationals()[0], c1 = m[1].rationals()[0];
    mpq_class D = c1 * c1 / 4 - c0;
    mpq_class g0 = a.rationals()[0], g1 = a.rationals()[1];
    mpq_class u = g0 - g1 * c1 / 2, v = g1;
    auto build = [&](const mpq_class& x, const mpq_class& y) {
        // x + y*delta = (x - y*c1/2) + y*z
        Scalar s = f.from_rational(x - y * c1 / 2);
        return f.add(s, f.mul(f.from_rational(y), f.generator()));
    };
    if (sgn(v) == 0) {
        if (auto r = rational_sqrt(u)) return build(*r, 0);
        if (auto r = rational_sqrt(u / D)) return build(0, *r);
        return std::nullopt;
    }
    auto disc = rational_sqrt(u * u - D * v * v);
    if (!disc) return std::nullopt;
    for (int s : {1, -1}) {
        mpq_class a2 = (u + s * *disc) / 2;
        auto x = rational_sqrt(a2);
        if (!x || sgn(*x) == 0) continue;
        mpq_class y = v / (2 * *x);
        if (*x * *x + D * y * y == u) return build(*x, y);
    }
    return std::nullopt;
}

Roots roots(const Field& f, const Poly& p_in) {
    Poly p = p_in;
    trim(p);
    Roots out;
    long d = degree(p);
    require(d >= 0, "roots of the zero polynomial");
    if (d == 0) return out;
    if (f.finite()) {
        if (f.order() > (1u << 20))
            fail(ErrorKind::Unsupported, "root search over " + f.name() + " exceeds the exhaustive limit");
        for (std::uint64_t i = 0; i < f.order(); ++i) {
            Scalar x = f.element(i);
            if (eval(f, p, x).is_zero()) out.roots.push_back(x);
        }
        return out;
    }
    if (d == 1) {
        out.roots.push_back(f.neg(f.div(p[0], p[1])));
        return out;
    }
    if (!f.is_extension() || all_rational(f, p)) {
        std::vector<mpq_class> c;
        for (const auto& x : p) c.push_back(x.rationals()[0]);
        for (const auto& r : rational_roots(c)) add_unique(out.roots, f.from_rational(r));
        if (!f.is_extension() || f.degree() == 1) {
            std::sort(out.roots.begin(), out.roots.end());
            return out;
        }
    }
    if (d == 2) {
        // x = (-b +- sqrt(b^2 - 4ac)) / 2a
        const Scalar &c = p[0], &b = p[1], &a = p[2];
        Scalar disc = f.sub(f.mul(b, b), f.mul(f.from_int(4), f.mul(a, c)));
        auto s = sqrt(f, disc);  // throws Unsupported for degree > 2 extensions
        if (s) {
            Scalar two_a = f.mul(f.from_int(2), a);
            add_unique(out.roots, f.div(f.add(f.neg(b), *s), two_a));
            add_unique(out.roots, f.div(f.sub(f.neg(b), *s), two_a));
        }
        std::sort(out.roots.begin(), out.roots.end());
        return out;
    }
    out.complete = false;
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

Irreducibility irreducibility(const Field& f, const Poly& p_in) {
    Poly p = monic(f, p_in);
    long d = degree(p);
    require(d >= 1, "irreducibility of a constant polynomial");
    if (d == 1) return Irreducibility::Irreducible;
    if (f.finite()) {
        // Ben-Or: p is irreducible iff gcd(p, x^(q^i) - x) = 1 for i <= d/2.
        Poly x = monomial(f, 1);
        Poly h = x;
        mpz_class q = f.order();
        for (long i = 1; i <= d / 2; ++i) {
            h = powmod(f, h, q, p);
            if (degree(gcd(f, p, sub(f, h, x))) > 0) return Irreducibility::Reducible;
        }
        return Irreducibility::Irreducible;
    }
    Roots r = roots(f, p);
    if (!r.roots.empty()) return Irreducibility::Reducible;
    if ((d == 2 || d == 3) && r.complete) return Irreducibility::Irreducible;
    return Irreducibility::Unknown;
}

std::string format(const Field& f, const Poly& p, const std::string& var) {
    (void)f;
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool one = p[i].is_one();
        if (i == 0 || !one) os << p[i].str();
        if (i > 0) {
            if (!one) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

}  // namespace drt::poly
