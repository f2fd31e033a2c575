#pragma once

// Shared helpers for the unit tests: small algebras built from matrices.

#include <random>

#include "drt/assoc.hpp"

namespace drt::testing {

// Subalgebra of M_n(F) generated by the given matrices, with structure constants.
struct MatrixAlgebra {
    std::vector<Matrix> basis;
    AssocAlgebra algebra;
};

inline Vec flatten(const Matrix& m) {
    Vec v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

inline MatrixAlgebra generated_algebra(const Field& f, std::size_t n, const std::vector<Matrix>& gens) {
    std::vector<Matrix> basis{Matrix::identity(f, n)};
    std::vector<Vec> flat{flatten(basis[0])};
    auto try_add = [&](const Matrix& m) {
        auto v = flatten(m);
        if (coordinates_in(f, flat, v, n * n)) return false;
        basis.push_back(m);
        flat.push_back(v);
        return true;
    };
    for (const auto& g : gens) try_add(g);
    for (bool grew = true; grew;) {
        grew = false;
        const auto snapshot = basis;
        for (const auto& a : snapshot)
            for (const auto& b : snapshot) grew |= try_add(a * b);
    }
    const std::size_t d = basis.size();
    std::vector<Vec> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) table.push_back(*coordinates_in(f, flat, flatten(basis[i] * basis[j]), n * n));
    return {basis, AssocAlgebra(f, d, table, unit_vec(f, d, 0))};
}

// k[t]/(f) with basis 1, t, ..., t^(deg-1).
inline AssocAlgebra truncated_polynomial_algebra(const Field& f, const poly::Poly& m) {
    const std::size_t d = static_cast<std::size_t>(poly::degree(m));
    std::vector<Vec> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto r = poly::mod(f, poly::monomial(f, i + j), m);
            Vec v = zero_vec(f, d);
            for (std::size_t k = 0; k < r.size(); ++k) v[k] = r[k];
            table.push_back(v);
        }
    return AssocAlgebra(f, d, table, unit_vec(f, d, 0));
}

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.element(rng() % f.order());
    return m;
}

// Every vector of F_q^d, by index (finite fields only, small d).
inline Vec vector_at(const Field& f, std::size_t d, std::uint64_t idx) {
    Vec v;
    for (std::size_t i = 0; i < d; ++i) {
        v.push_back(f.element(idx % f.order()));
        idx /= f.order();
    }
    return v;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace drt::testing
