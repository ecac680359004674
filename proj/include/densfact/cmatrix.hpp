#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "densfact/errors.hpp"

namespace densfact {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

// Tolerances are relative to the matrix norm, with an absolute floor of
// `tol` itself so that checks on zero or tiny matrices stay meaningful.
inline double scaled_tol(double tol, double norm) {
    return tol * (norm > 1.0 ? norm : 1.0);
}

// Dense complex matrix, row-major. Values are immutable in practice: every
// operation below returns a fresh matrix, so instances can be shared freely
// across threads.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }

    // Exact (bitwise) equality; used by the determinism tests.
    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

CMatrix adjoint(const CMatrix& m);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& m);
inline CMatrix operator*(double s, const CMatrix& m) { return Complex(s, 0.0) * m; }

Complex trace(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool all_finite(const CMatrix& m);

// Column/row rescaling, used to form U*Sigma and Sigma^-2 * M products
// without materialising diagonal matrices.
CMatrix scale_columns(const CMatrix& m, std::span<const double> factors);
CMatrix scale_rows(const CMatrix& m, std::span<const double> factors);
CMatrix diagonal(std::span<const double> values);

} // namespace densfact
