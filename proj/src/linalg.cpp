#include "densfact/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "densfact/kernels.hpp"

namespace densfact {

namespace {

constexpr int kMaxJacobiSweeps = 64;

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// One cyclic sweep of complex Jacobi rotations on the Hermitian matrix a,
// accumulating the same rotations into v (a <- J^* a J, v <- v J). Each
// rotation zeroes a(p,q) exactly: with a(p,q) = b*e^{i phi}, the 2x2 block is
// first de-phased to a real symmetric one and then rotated classically.
void jacobi_sweep(CMatrix& a, CMatrix& v) {
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const Complex apq = a(p, q);
            const double b = std::abs(apq);
            if (b == 0.0) continue;

            const Complex phase = apq / b;
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double tau = (aqq - app) / (2.0 * b);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const Complex cp = c * phase;
            const Complex sp = s * phase;

            // Columns p and q: a <- a J with J = [[c*phase, s*phase], [-s, c]].
            for (std::size_t r = 0; r < n; ++r) {
                const Complex arp = a(r, p);
                const Complex arq = a(r, q);
                a(r, p) = cp * arp - s * arq;
                a(r, q) = sp * arp + c * arq;
            }
            // Rows p and q: a <- J^* a.
            for (std::size_t col = 0; col < n; ++col) {
                const Complex apc = a(p, col);
                const Complex aqc = a(q, col);
                a(p, col) = std::conj(cp) * apc - s * aqc;
                a(q, col) = std::conj(sp) * apc + c * aqc;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = Complex(app - t * b, 0.0);
            a(q, q) = Complex(aqq + t * b, 0.0);

            for (std::size_t r = 0; r < n; ++r) {
                const Complex vrp = v(r, p);
                const Complex vrq = v(r, q);
                v(r, p) = cp * vrp - s * vrq;
                v(r, q) = sp * vrp + c * vrq;
            }
        }
    }
}

} // namespace

std::size_t phase_pivot_row(const CMatrix& m, std::size_t col) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double a = std::abs(m(i, col));
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    return pivot;
}

std::vector<Complex> phase_normalize_columns(CMatrix& m) {
    std::vector<Complex> applied(m.cols(), Complex(1.0, 0.0));
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const std::size_t pivot = phase_pivot_row(m, j);
        const Complex z = m(pivot, j);
        const double a = std::abs(z);
        if (a == 0.0) continue;
        const Complex factor = std::conj(z) / a;
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= factor;
        m(pivot, j) = Complex(std::abs(m(pivot, j)), 0.0);
        applied[j] = factor;
    }
    return applied;
}

std::size_t numeric_rank(std::span<const double> singular_values, double tol) {
    if (singular_values.empty()) return 0;
    const double cutoff = tol * std::max(singular_values.front(), 1.0);
    std::size_t r = 0;
    while (r < singular_values.size() && singular_values[r] > cutoff) ++r;
    return r;
}

SpectralData hermitian_eid(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_eid: matrix must be square");
    if (!all_finite(m)) throw NotHermitian("hermitian_eid: non-finite entries");

    const std::size_t n = m.rows();
    const double scale = frobenius_norm(m);
    if (frobenius_norm(m - adjoint(m)) > scaled_tol(tol, scale))
        throw NotHermitian("hermitian_eid: matrix deviates from its adjoint beyond tolerance");

    // Work on the Hermitian average so roundoff in the input cannot leak
    // asymmetry into the iteration.
    CMatrix a = 0.5 * (m + adjoint(m));
    CMatrix v = CMatrix::identity(n);

    const double target = n * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) break;
        jacobi_sweep(a, v);
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i).real();

    const double lambda_max = eigenvalues.empty()
                                  ? 0.0
                                  : *std::max_element(eigenvalues.begin(), eigenvalues.end());
    const double psd_floor = -scaled_tol(tol, scale);
    for (double lambda : eigenvalues)
        if (lambda < psd_floor)
            throw NotPositiveSemidefinite("hermitian_eid: eigenvalue " + std::to_string(lambda) +
                                          " below tolerance");

    // Canonical phases first, then order: descending eigenvalue with exact
    // ties broken by the pivot row, so degenerate spectra still come out in
    // one fixed order.
    phase_normalize_columns(v);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> pivots(n);
    for (std::size_t j = 0; j < n; ++j) pivots[j] = phase_pivot_row(v, j);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (eigenvalues[x] != eigenvalues[y]) return eigenvalues[x] > eigenvalues[y];
        return pivots[x] < pivots[y];
    });

    const double cutoff = tol * std::max(lambda_max, 1.0);
    std::size_t r = 0;
    for (std::size_t j : order)
        if (eigenvalues[j] > cutoff) ++r;

    SpectralData out;
    out.eigenvalues.reserve(r);
    out.vectors = CMatrix(n, r);
    std::size_t dst = 0;
    for (std::size_t j : order) {
        if (eigenvalues[j] <= cutoff) continue;
        out.eigenvalues.push_back(eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, dst) = v(i, j);
        ++dst;
    }
    out.sigma = CMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i) out.sigma(i, i) = std::sqrt(out.eigenvalues[i]);
    return out;
}

SvdResult svd(const CMatrix& m, double tol) {
    const bool left_is_smaller = m.rows() <= m.cols();
    SvdResult out;

    if (left_is_smaller) {
        const SpectralData spec = hermitian_eid(matmul(m, adjoint(m)), tol);
        const std::size_t r = spec.rank();
        out.singular_values.resize(r);
        for (std::size_t i = 0; i < r; ++i) out.singular_values[i] = std::sqrt(spec.eigenvalues[i]);
        out.u = spec.vectors;
        std::vector<double> inv(r);
        for (std::size_t i = 0; i < r; ++i) inv[i] = 1.0 / out.singular_values[i];
        out.v = scale_columns(matmul(adjoint(m), out.u), inv);
    } else {
        const SpectralData spec = hermitian_eid(matmul(adjoint(m), m), tol);
        const std::size_t r = spec.rank();
        out.singular_values.resize(r);
        for (std::size_t i = 0; i < r; ++i) out.singular_values[i] = std::sqrt(spec.eigenvalues[i]);
        out.v = spec.vectors;
        std::vector<double> inv(r);
        for (std::size_t i = 0; i < r; ++i) inv[i] = 1.0 / out.singular_values[i];
        out.u = scale_columns(matmul(m, out.v), inv);
        // Canonical phases live on u; mirror the factors onto v so
        // u * sigma * v^* is untouched.
        const std::vector<Complex> factors = phase_normalize_columns(out.u);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < out.v.rows(); ++i) out.v(i, j) *= factors[j];
    }

    out.sigma = diagonal(out.singular_values);
    return out;
}

CMatrix qr_orthonormal_rows(const CMatrix& m, double tol) {
    const std::size_t k = m.rows();
    const std::size_t p = m.cols();
    if (k > p)
        throw RankDeficient("qr_orthonormal_rows: more rows than columns cannot be orthonormal");

    const double floor = scaled_tol(tol, frobenius_norm(m));
    CMatrix q = m;
    for (std::size_t i = 0; i < k; ++i) {
        // Two projection passes keep the result orthonormal to machine
        // precision even for nearly dependent rows.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                Complex proj = 0.0;
                for (std::size_t c = 0; c < p; ++c) proj += std::conj(q(j, c)) * q(i, c);
                for (std::size_t c = 0; c < p; ++c) q(i, c) -= proj * q(j, c);
            }
        }
        double norm = 0.0;
        for (std::size_t c = 0; c < p; ++c) norm += std::norm(q(i, c));
        norm = std::sqrt(norm);
        if (norm <= floor)
            throw RankDeficient("qr_orthonormal_rows: row " + std::to_string(i) +
                                " is linearly dependent within tolerance");
        for (std::size_t c = 0; c < p; ++c) q(i, c) /= norm;
    }
    return q;
}

} // namespace densfact
