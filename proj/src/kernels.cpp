#include "densfact/kernels.hpp"

#include <cstdint>

namespace densfact::kernels {

namespace {

// Work thresholds (complex multiply-adds) below which the serial kernel wins.
constexpr std::uint64_t kMatmulCutoff = 1u << 16;
constexpr std::uint64_t kElementCutoff = 1u << 15;

inline void matmul_row(const CMatrix& a, const CMatrix& b, CMatrix& out, std::size_t i) {
    const std::size_t inner = a.cols();
    const std::size_t cols = b.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < inner; ++t) acc += a(i, t) * b(t, j);
        out(i, j) = acc;
    }
}

inline void adjoint_row(const CMatrix& m, CMatrix& out, std::size_t i) {
    for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) = std::conj(m(j, i));
}

inline void outer_sum_row(const CMatrix& states, std::span<const double> w, CMatrix& out,
                          std::size_t i) {
    const std::size_t n = states.rows();
    const std::size_t k = states.cols();
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < k; ++t) acc += w[t] * states(i, t) * std::conj(states(j, t));
        out(i, j) = acc;
    }
}

} // namespace

CMatrix serial_matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, out, i);
    return out;
}

CMatrix parallel_matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows(), b.cols());
    const std::int64_t rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) matmul_row(a, b, out, static_cast<std::size_t>(i));
    return out;
}

CMatrix serial_adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.cols(); ++i) adjoint_row(m, out, i);
    return out;
}

CMatrix parallel_adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    const std::int64_t rows = static_cast<std::int64_t>(m.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) adjoint_row(m, out, static_cast<std::size_t>(i));
    return out;
}

CMatrix serial_weighted_outer_sum(const CMatrix& states, std::span<const double> w) {
    CMatrix out(states.rows(), states.rows());
    for (std::size_t i = 0; i < states.rows(); ++i) outer_sum_row(states, w, out, i);
    return out;
}

CMatrix parallel_weighted_outer_sum(const CMatrix& states, std::span<const double> w) {
    CMatrix out(states.rows(), states.rows());
    const std::int64_t rows = static_cast<std::int64_t>(states.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) outer_sum_row(states, w, out, static_cast<std::size_t>(i));
    return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    const std::uint64_t work =
        std::uint64_t(a.rows()) * std::uint64_t(a.cols()) * std::uint64_t(b.cols());
    return work >= kMatmulCutoff ? parallel_matmul(a, b) : serial_matmul(a, b);
}

CMatrix adjoint(const CMatrix& m) {
    const std::uint64_t work = std::uint64_t(m.rows()) * std::uint64_t(m.cols());
    return work >= kElementCutoff ? parallel_adjoint(m) : serial_adjoint(m);
}

CMatrix weighted_outer_sum(const CMatrix& states, std::span<const double> w) {
    if (w.size() != states.cols())
        throw DimensionMismatch("weighted_outer_sum: weight count must match column count");
    const std::uint64_t work =
        std::uint64_t(states.rows()) * std::uint64_t(states.rows()) * std::uint64_t(states.cols());
    return work >= kMatmulCutoff ? parallel_weighted_outer_sum(states, w)
                                 : serial_weighted_outer_sum(states, w);
}

} // namespace densfact::kernels
