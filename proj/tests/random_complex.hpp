#pragma once

// Random bounded complexes: d^0 is random, every later differential is a
// random solution of d^{k+1} d^k = 0.  With minimal_only the entries are
// drawn from the radical part of each hom space.

#include <random>

#include "drt/complex.hpp"

namespace drt::testing {

inline Scalar random_scalar(const Field& f, std::mt19937& rng) {
    if (f.finite()) return f.element(rng() % f.order());
    return f.from_int(static_cast<long long>(rng() % 7) - 3);
}

struct RandomComplexSpec {
    int degrees = 2;             // terms in degrees 0..degrees-1
    std::size_t max_mult = 1;    // per projective per degree
    bool minimal_only = true;
};

inline ProjComplex random_complex(const AlgebraPtr& ap, std::mt19937& rng, const RandomComplexSpec& spec) {
    const Algebra& a = *ap;
    const Field& f = a.field();
    std::vector<std::vector<std::size_t>> comps;
    for (int i = 0; i < spec.degrees; ++i) {
        std::vector<std::size_t> c;
        for (std::size_t u = 0; u < a.num_projectives(); ++u)
            for (std::size_t k = rng() % (spec.max_mult + 1); k > 0; --k) c.push_back(u);
        comps.push_back(std::move(c));
    }
    auto first = [&](std::size_t us, std::size_t ut) { return spec.minimal_only ? a.hom(us, ut).unit_count : 0; };
    std::vector<AMatrix> diffs;
    for (int i = 0; i + 1 < spec.degrees; ++i) {
        const auto& src = comps[static_cast<std::size_t>(i)];
        const auto& tgt = comps[static_cast<std::size_t>(i) + 1];
        // unknowns: (t, s, basis index)
        std::vector<std::tuple<std::size_t, std::size_t, Vec>> unknowns;
        for (std::size_t t = 0; t < tgt.size(); ++t)
            for (std::size_t s = 0; s < src.size(); ++s) {
                const auto& h = a.hom(src[s], tgt[t]);
                for (std::size_t k = first(src[s], tgt[t]); k < h.size(); ++k) unknowns.emplace_back(t, s, h.basis[k]);
            }
        auto unit_matrix = [&](std::size_t k) {
            AMatrix m(a, tgt.size(), src.size());
            auto& [t, s, el] = unknowns[k];
            m(t, s) = el;
            return m;
        };
        std::vector<Vec> solutions;
        if (i == 0 || unknowns.empty()) {
            for (std::size_t k = 0; k < unknowns.size(); ++k) {
                Vec v(unknowns.size(), f.zero());
                v[k] = f.one();
                solutions.push_back(std::move(v));
            }
        } else {
            const AMatrix& prev = diffs.back();
            std::vector<Vec> cols;
            for (std::size_t k = 0; k < unknowns.size(); ++k) {
                AMatrix c = compose(a, unit_matrix(k), prev);
                Vec flat;
                for (const auto& e : c.e) flat.insert(flat.end(), e.begin(), e.end());
                cols.push_back(std::move(flat));
            }
            const std::size_t rows = cols.empty() ? 0 : cols.front().size();
            solutions = kernel(Matrix::from_cols(f, cols, rows));
        }
        AMatrix d(a, tgt.size(), src.size());
        for (const auto& sol : solutions) {
            Scalar c = random_scalar(f, rng);
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < unknowns.size(); ++k) {
                if (sol[k].is_zero()) continue;
                auto& [t, s, el] = unknowns[k];
                d(t, s) = add(d(t, s), scale(el, c * sol[k]));
            }
        }
        diffs.push_back(std::move(d));
    }
    return ProjComplex(ap, 0, std::move(comps), std::move(diffs));
}

}  // namespace drt::testing
