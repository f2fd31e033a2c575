#pragma once

// Dense matrices over a Field and the exact elimination routines everything
// else is built on.  Prime-field elimination runs on packed residue rows
// through drt::kernels; other fields use generic Scalar arithmetic.

#include <optional>
#include <vector>

#include "drt/field.hpp"

namespace drt {

using Vec = std::vector<Scalar>;

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& f, std::size_t rows, std::size_t cols);
    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_cols(const Field& f, const std::vector<Vec>& cols, std::size_t rows);

    const Field& field() const { return *f_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    Vec apply(const Vec& x) const;
    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    const Field* f_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct Echelon {
    Matrix rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per free column in increasing order.
std::vector<Vec> kernel(const Matrix& m);
// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Matrix inverse(const Matrix& m);

// Vector helpers.
Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Scalar& c);
bool is_zero(const Vec& a);

// Reduced row-echelon basis of span(vectors) (vectors of length n).
std::vector<Vec> span_basis(const Field& f, const std::vector<Vec>& vectors, std::size_t n);
// Indices of a maximal independent subset chosen greedily left to right.
std::vector<std::size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors, std::size_t n);
// Coordinates of v in terms of the given basis (columns), or nullopt if outside the span.
std::optional<Vec> coordinates_in(const Field& f, const std::vector<Vec>& basis, const Vec& v, std::size_t n);

}  // namespace drt
