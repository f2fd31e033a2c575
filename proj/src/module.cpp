#include "drt/module.hpp"

namespace drt {

namespace {

Vec flatten(const Matrix& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

Matrix unflatten(const Field& f, const Vec& v, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

Matrix scaled(const Matrix& m, const Scalar& c) {
    Matrix r = m;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) * c;
    return r;
}

void check_same_algebra(const Module& m, const Module& n) {
    require(m.algebra_ptr() == n.algebra_ptr(), "modules live over different algebras");
}

// Matrices with columns = given vectors.
Matrix columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows) { return Matrix::from_cols(f, cols, rows); }

}  // namespace

Module::Module(AlgebraPtr a, std::size_t dim, std::vector<Matrix> actions)
    : a_(std::move(a)), dim_(dim), act_(std::move(actions)) {
    const Algebra& A = *a_;
    const Field& f = A.field();
    require(act_.size() == A.dim(), "module needs one action matrix per algebra basis element");
    for (const auto& m : act_) require(m.rows() == dim_ && m.cols() == dim_, "module action has wrong shape");
    require(action_of(A.one()) == Matrix::identity(f, dim_), "the unit of the algebra must act as the identity");
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            require(act_[i] * act_[j] == action_of(A.assoc().product_of_basis(i, j)),
                    "module actions are not multiplicative (relations fail)");
}

Matrix Module::action_of(const Vec& element) const {
    const Field& f = a_->field();
    Matrix m(f, dim_, dim_);
    for (std::size_t i = 0; i < element.size(); ++i)
        if (!element[i].is_zero()) m = m + scaled(act_[i], element[i]);
    return m;
}

Module Module::from_quiver(AlgebraPtr a, std::vector<std::size_t> vertex_dims, std::vector<Matrix> arrow_actions) {
    const Algebra& A = *a;
    const Quiver& q = A.quiver();
    const Field& f = A.field();
    require(vertex_dims.size() == q.vertices.size(), "module needs one dimension per vertex");
    require(arrow_actions.size() == q.arrows.size(), "module needs one matrix per arrow");
    std::vector<std::size_t> offset(q.vertices.size() + 1, 0);
    for (std::size_t v = 0; v < q.vertices.size(); ++v) offset[v + 1] = offset[v] + vertex_dims[v];
    const std::size_t n = offset.back();
    std::vector<Matrix> arrow_full;
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& ar = q.arrows[i];
        const auto& m = arrow_actions[i];
        require(m.rows() == vertex_dims[ar.target] && m.cols() == vertex_dims[ar.source],
                "matrix of arrow '" + ar.name + "' must be (dim target) x (dim source)");
        Matrix full(f, n, n);
        full.set_block(offset[ar.target], offset[ar.source], m);
        arrow_full.push_back(std::move(full));
    }
    auto word_action = [&](const Word& w) {
        Matrix m = Matrix::identity(f, n);
        for (auto a_idx : w) m = m * arrow_full[a_idx];
        return m;
    };
    const auto& rels = A.presentation().relations;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        Matrix sum(f, n, n);
        for (const auto& t : rels[r]) sum = sum + scaled(word_action(t.word), t.coeff);
        require(sum.is_zero(), "module does not satisfy relation #" + std::to_string(r + 1));
    }
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        const Word& w = A.basis_words()[i];
        if (w.empty()) {
            const std::size_t v = A.basis_vertex()[i];
            Matrix e(f, n, n);
            for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) e(k, k) = f.one();
            acts.push_back(std::move(e));
        } else {
            acts.push_back(word_action(w));
        }
    }
    return Module(std::move(a), n, std::move(acts));
}

Module Module::from_t_action(AlgebraPtr a, const Matrix& t) {
    const Algebra& A = *a;
    require(A.presentation().kind == Presentation::Kind::Univariate, "t-action modules need a k[t]/(f) algebra");
    const Field& f = A.field();
    const std::size_t n = t.rows();
    require(t.cols() == n, "t must act by a square matrix");
    std::vector<Matrix> acts;
    Matrix p = Matrix::identity(f, n);
    for (std::size_t i = 0; i < A.dim(); ++i) {
        acts.push_back(p);
        p = p * t;
    }
    // p = t^deg; check f(t) = 0
    Matrix ft = p;
    const auto& m = A.presentation().modulus;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) ft = ft + scaled(acts[i], m[i]);
    require(ft.is_zero(), "matrix of t does not satisfy f(t) = 0");
    return Module(std::move(a), n, std::move(acts));
}

std::vector<std::size_t> Module::dimension_vector() const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < a_->num_projectives(); ++u) out.push_back(rank(action_of(a_->proj(u).idempotent)));
    return out;
}

Module projective_module(AlgebraPtr a, std::size_t u) {
    const Algebra& A = *a;
    require(u < A.num_projectives(), "unknown projective");
    const auto& p = A.proj(u);
    const std::size_t n = p.basis.size();
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Matrix m(A.field(), n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vec c = p.coords.coords(A.mul(A.basis(i), p.basis[j]));
            for (std::size_t r = 0; r < n; ++r) m(r, j) = c[r];
        }
        acts.push_back(std::move(m));
    }
    return Module(std::move(a), n, std::move(acts));
}

Module simple_module(AlgebraPtr a, std::size_t u) {
    Module p = projective_module(a, u);
    return radical_of_module(p).top;
}

Module direct_sum(const Module& m, const Module& n) {
    check_same_algebra(m, n);
    const Field& f = m.algebra().field();
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
        Matrix s(f, m.dim() + n.dim(), m.dim() + n.dim());
        s.set_block(0, 0, m.action(i));
        s.set_block(m.dim(), m.dim(), n.action(i));
        acts.push_back(std::move(s));
    }
    return Module(m.algebra_ptr(), m.dim() + n.dim(), std::move(acts));
}

Module submodule(const Module& m, const std::vector<Vec>& basis) {
    const Field& f = m.algebra().field();
    CoordMap cm(f, basis, m.dim());
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
        Matrix s(f, basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto c = cm.try_coords(m.action(i).apply(basis[j]));
            require(c.has_value(), "subspace is not a submodule");
            for (std::size_t r = 0; r < basis.size(); ++r) s(r, j) = (*c)[r];
        }
        acts.push_back(std::move(s));
    }
    return Module(m.algebra_ptr(), basis.size(), std::move(acts));
}

Module quotient_module(const Module& m, const std::vector<Vec>& sub_basis) {
    const Field& f = m.algebra().field();
    const std::size_t n = m.dim();
    auto sub = span_basis(f, sub_basis, n);
    std::vector<bool> pivot(n, false);
    if (!sub.empty()) {
        auto ech = rref(Matrix::from_rows(f, sub, n));
        for (auto p : ech.pivots) pivot[p] = true;
    }
    std::vector<Vec> comp;
    for (std::size_t i = 0; i < n; ++i)
        if (!pivot[i]) comp.push_back(unit_vec(f, n, i));
    std::vector<Vec> all = comp;
    all.insert(all.end(), sub.begin(), sub.end());
    CoordMap cm(f, all, n);
    const std::size_t k = comp.size();
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
        Matrix s(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            Vec c = cm.coords(m.action(i).apply(comp[j]));
            for (std::size_t r = 0; r < k; ++r) s(r, j) = c[r];
        }
        acts.push_back(std::move(s));
    }
    return Module(m.algebra_ptr(), k, std::move(acts));
}

std::vector<Matrix> hom_modules(const Module& m, const Module& n) {
    check_same_algebra(m, n);
    const Algebra& A = m.algebra();
    const Field& f = A.field();
    const std::size_t a = m.dim(), b = n.dim();
    if (a == 0 || b == 0) return {};
    const auto& gens = A.generators();
    // unknown phi (b x a), index i*a + j; equations phi M(g) - N(g) phi = 0
    Matrix eq(f, gens.size() * a * b, a * b);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        Matrix mg = m.action_of(gens[g]);
        Matrix ng = n.action_of(gens[g]);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < a; ++j) {
                const std::size_t row = (g * b + i) * a + j;
                for (std::size_t k = 0; k < a; ++k)
                    if (!mg(k, j).is_zero()) eq(row, i * a + k) += mg(k, j);
                for (std::size_t k = 0; k < b; ++k)
                    if (!ng(i, k).is_zero()) eq(row, k * a + j) -= ng(i, k);
            }
    }
    std::vector<Matrix> out;
    for (const auto& v : kernel(eq)) out.push_back(unflatten(f, v, b, a));
    return out;
}

RadicalData radical_of_module(const Module& m) {
    const Algebra& A = m.algebra();
    const Field& f = A.field();
    std::vector<Vec> images;
    for (const auto& r : A.radical_basis()) {
        Matrix act = m.action_of(r);
        for (std::size_t j = 0; j < m.dim(); ++j) images.push_back(act.col(j));
    }
    auto basis = span_basis(f, images, m.dim());
    return RadicalData{basis, submodule(m, basis), quotient_module(m, basis)};
}

Matrix EndAlgebra::to_matrix(const Vec& coords) const {
    Matrix m(algebra.field(), basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) m = m + scaled(basis[i], coords[i]);
    return m;
}

EndAlgebra endomorphism_algebra(const Module& m) {
    const Field& f = m.algebra().field();
    EndAlgebra e;
    e.basis = hom_modules(m, m);
    const std::size_t d = e.basis.size();
    std::vector<Vec> flat;
    for (const auto& b : e.basis) flat.push_back(flatten(b));
    CoordMap cm(f, flat, m.dim() * m.dim());
    std::vector<Vec> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) table.push_back(cm.coords(flatten(e.basis[i] * e.basis[j])));
    Vec unit = d ? cm.coords(flatten(Matrix::identity(f, m.dim()))) : Vec{};
    e.algebra = AssocAlgebra(f, d, std::move(table), std::move(unit));
    return e;
}

std::vector<ModuleSummand> decompose_module(const Module& m) {
    if (m.dim() == 0) return {};
    const Field& f = m.algebra().field();
    auto end = endomorphism_algebra(m);
    std::vector<ModuleSummand> out;
    Matrix total(f, m.dim(), m.dim());
    for (const auto& e : primitive_idempotents(end.algebra)) {
        Matrix em = end.to_matrix(e);
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < m.dim(); ++j) cols.push_back(em.col(j));
        auto image = span_basis(f, cols, m.dim());
        CoordMap cm(f, image, m.dim());
        Matrix incl = columns(f, image, m.dim());
        Matrix proj(f, image.size(), m.dim());
        for (std::size_t j = 0; j < m.dim(); ++j) {
            Vec c = cm.coords(cols[j]);
            for (std::size_t r = 0; r < image.size(); ++r) proj(r, j) = c[r];
        }
        invariant(proj * incl == Matrix::identity(f, image.size()), "module summand certificate failed");
        total = total + incl * proj;
        out.push_back(ModuleSummand{submodule(m, image), incl, proj});
    }
    invariant(total == Matrix::identity(f, m.dim()), "module summand idempotents do not sum to the identity");
    return out;
}

bool is_indecomposable(const Module& m) {
    if (m.dim() == 0) return false;
    return is_local(endomorphism_algebra(m).algebra);
}

namespace {

bool indecomposables_isomorphic(const Module& x, const Module& y) {
    if (x.dim() != y.dim()) return false;
    auto fwd = hom_modules(x, y);
    auto back = hom_modules(y, x);
    if (fwd.empty() || back.empty()) return false;
    auto end = endomorphism_algebra(x);
    const Field& f = x.algebra().field();
    std::vector<Vec> flat;
    for (const auto& b : end.basis) flat.push_back(flatten(b));
    CoordMap cm(f, flat, x.dim() * x.dim());
    CoordMap rad(f, jacobson_radical(end.algebra), end.algebra.dim());
    for (const auto& a : fwd)
        for (const auto& b : back)
            if (!rad.try_coords(cm.coords(flatten(b * a)))) return true;
    return false;
}

}  // namespace

bool modules_isomorphic(const Module& m, const Module& n) {
    check_same_algebra(m, n);
    if (m.dim() != n.dim()) return false;
    if (m.dim() == 0) return true;
    auto xs = decompose_module(m);
    auto ys = decompose_module(n);
    if (xs.size() != ys.size()) return false;
    std::vector<bool> used(ys.size(), false);
    for (const auto& x : xs) {
        bool found = false;
        for (std::size_t j = 0; j < ys.size() && !found; ++j)
            if (!used[j] && indecomposables_isomorphic(x.module, ys[j].module)) used[j] = found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace drt
