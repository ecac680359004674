#include "densfact/cmatrix.hpp"

#include <cmath>

#include "densfact/kernels.hpp"

namespace densfact {

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("from_rows: ragged row lengths");
        std::size_t j = 0;
        for (const Complex& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

CMatrix adjoint(const CMatrix& m) { return kernels::adjoint(m); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions disagree");
    return kernels::matmul(a, b);
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("operator+: shapes disagree");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.entries()[i] = a.entries()[i] + b.entries()[i];
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("operator-: shapes disagree");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.entries()[i] = a.entries()[i] - b.entries()[i];
    return out;
}

CMatrix operator*(Complex s, const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) out.entries()[i] = s * m.entries()[i];
    return out;
}

Complex trace(const CMatrix& m) {
    Complex t = 0.0;
    const std::size_t n = m.rows() < m.cols() ? m.rows() : m.cols();
    for (std::size_t i = 0; i < n; ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const Complex& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (const Complex& z : m.entries()) best = std::max(best, std::abs(z));
    return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shapes disagree");
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    return best;
}

bool all_finite(const CMatrix& m) {
    for (const Complex& z : m.entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix scale_columns(const CMatrix& m, std::span<const double> factors) {
    if (factors.size() != m.cols()) throw DimensionMismatch("scale_columns: factor count");
    CMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= factors[j];
    return out;
}

CMatrix scale_rows(const CMatrix& m, std::span<const double> factors) {
    if (factors.size() != m.rows()) throw DimensionMismatch("scale_rows: factor count");
    CMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= factors[i];
    return out;
}

CMatrix diagonal(std::span<const double> values) {
    CMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
}

} // namespace densfact
