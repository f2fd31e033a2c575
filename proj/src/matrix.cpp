#include "drt/matrix.hpp"

#include "drt/kernels.hpp"

namespace drt {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == cols, "from_rows: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_cols(const Field& f, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        require(cols[j].size() == rows, "from_cols: ragged input");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_)); }

Vec Matrix::col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Vec Matrix::apply(const Vec& x) const {
    require(x.size() == cols_, "apply: shape mismatch");
    Vec y(rows_, f_->zero());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] = f_->add(y[i], f_->mul((*this)(i, j), x[j]));
    return y;
}

Matrix Matrix::transpose() const {
    Matrix t(*f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "block: out of range");
    Matrix b(*f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "set_block: out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product: shape mismatch");
    const Field& f = *(a.f_ ? a.f_ : b.f_);
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = c.a_[i] + b.a_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = c.a_[i] - b.a_[i];
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "hstack: row mismatch");
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.cols(), "vstack: column mismatch");
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

namespace {

Echelon rref_prime(const Matrix& m) {
    const Field& f = m.field();
    const std::uint32_t p = f.characteristic();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::uint32_t> buf(R * C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) buf[i * C + j] = m(i, j).residues()[0];
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && buf[piv * C + c] == 0) ++piv;
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(buf[piv * C + j], buf[r * C + j]);
        std::uint32_t iv = f.inv(f.from_int(buf[r * C + c])).residues()[0];
        kernels::scale_mod(&buf[r * C], iv, p, C);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || buf[i * C + c] == 0) continue;
            kernels::axpy_mod(&buf[i * C], &buf[r * C], p - buf[i * C + c], p, C);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix out(f, R, C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (buf[i * C + j]) out(i, j) = f.from_int(buf[i * C + j]);
    return {std::move(out), std::move(pivots)};
}

Echelon rref_generic(const Matrix& m) {
    const Field& f = m.field();
    Matrix a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && a(piv, c).is_zero()) ++piv;
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(piv, j), a(r, j));
        Scalar iv = f.inv(a(r, c));
        for (std::size_t j = c; j < C; ++j) a(r, j) = f.mul(a(r, j), iv);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar fac = a(i, c);
            for (std::size_t j = c; j < C; ++j)
                if (!a(r, j).is_zero()) a(i, j) = f.sub(a(i, j), f.mul(fac, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

}  // namespace

Echelon rref(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {m, {}};
    if (m.field().kind() == Field::Kind::Prime) return rref_prime(m);
    return rref_generic(m);
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Matrix& m) {
    const Field& f = m.field();
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.rref(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    require(b.size() == m.rows(), "solve: right-hand side has wrong length");
    const Field& f = m.field();
    Matrix aug(f, m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
    auto e = rref(aug);
    Vec x(m.cols(), f.zero());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols()) return std::nullopt;
        x[e.pivots[r]] = e.rref(r, m.cols());
    }
    return x;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols())
        fail(ErrorKind::Precondition, "inverse: matrix is not square (" + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()) + ")");
    const std::size_t n = m.rows();
    auto e = rref(hstack(m, Matrix::identity(m.field(), n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw SingularMatrixError("inverse: matrix is singular");
    return e.rref.block(0, n, n, n);
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
    Vec v(n, f.zero());
    v[i] = f.one();
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "vector sum: length mismatch");
    Vec c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b[i];
    return c;
}

Vec sub(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "vector difference: length mismatch");
    Vec c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] - b[i];
    return c;
}

Vec scale(const Vec& a, const Scalar& s) {
    Vec c = a;
    for (auto& x : c) x = x * s;
    return c;
}

bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<Vec> span_basis(const Field& f, const std::vector<Vec>& vectors, std::size_t n) {
    if (vectors.empty()) return {};
    auto e = rref(Matrix::from_rows(f, vectors, n));
    std::vector<Vec> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.rref.row(r));
    return out;
}

std::vector<std::size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors, std::size_t n) {
    if (vectors.empty()) return {};
    // Pivot columns of the matrix whose columns are the vectors.
    auto e = rref(Matrix::from_cols(f, vectors, n));
    return e.pivots;
}

std::optional<Vec> coordinates_in(const Field& f, const std::vector<Vec>& basis, const Vec& v, std::size_t n) {
    if (basis.empty()) {
        if (is_zero(v)) return Vec{};
        return std::nullopt;
    }
    return solve(Matrix::from_cols(f, basis, n), v);
}

}  // namespace drt
