#include "densfact/factorization.hpp"

#include <cmath>

#include "densfact/kernels.hpp"

namespace densfact {

namespace {

// Projector onto the span of columns [begin, end) of an orthonormal-column
// matrix.
CMatrix span_projector(const CMatrix& m, std::size_t begin, std::size_t end) {
    CMatrix block(m.rows(), end - begin);
    for (std::size_t j = begin; j < end; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) block(i, j - begin) = m(i, j);
    return matmul(block, adjoint(block));
}

} // namespace

MinimumFactorEid minimum_df_from_eid(const DensityOperator& d, double tol) {
    SpectralData spec = hermitian_eid(d.matrix, tol);
    std::vector<double> sigmas(spec.rank());
    for (std::size_t i = 0; i < sigmas.size(); ++i) sigmas[i] = std::sqrt(spec.eigenvalues[i]);
    CMatrix psi0 = scale_columns(spec.vectors, sigmas);
    return MinimumFactorEid{DensityFactor{std::move(psi0)}, std::move(spec)};
}

MinimumFactorSvd minimum_df_from_svd(const DensityFactor& f, double tol) {
    SvdResult s = svd(f.matrix, tol);
    CMatrix psi0 = scale_columns(s.u, s.singular_values);
    return MinimumFactorSvd{DensityFactor{std::move(psi0)}, std::move(s.v),
                            std::move(s.singular_values)};
}

bool assert_same_minimum(const DensityOperator& d, const DensityFactor& f, double tol) {
    const CMatrix from_factor = matmul(f.matrix, adjoint(f.matrix));
    if (frobenius_norm(from_factor - d.matrix) > tol)
        throw NotAFactorOf("assert_same_minimum: factor does not reproduce the density operator");

    const SpectralData spec_eid = hermitian_eid(d.matrix, tol);
    const SvdResult spec_svd = svd(f.matrix, tol);
    const std::size_t r = spec_eid.rank();
    if (spec_svd.singular_values.size() != r) return false;

    const std::vector<double>& lambda = spec_eid.eigenvalues;
    const double weight_tol = 10.0 * tol * std::max(lambda.empty() ? 0.0 : lambda[0], 1.0);
    for (std::size_t i = 0; i < r; ++i) {
        const double s2 = spec_svd.singular_values[i] * spec_svd.singular_values[i];
        if (std::abs(lambda[i] - s2) > weight_tol) return false;
    }

    // Compare eigenspace by eigenspace: within a degenerate group only the
    // span is well defined, and projectors are also immune to the
    // per-column phase freedom. The grouping gap is far above roundoff so
    // that near-degenerate pairs, whose individual eigenvectors are
    // ill-conditioned, land in one group and get compared as a subspace.
    const double gap =
        std::max(1e-6 * std::max(lambda.empty() ? 0.0 : lambda[0], 1.0), 100.0 * tol);
    std::size_t begin = 0;
    while (begin < r) {
        std::size_t end = begin + 1;
        while (end < r && lambda[end - 1] - lambda[end] <= gap) ++end;
        const CMatrix p_eid = span_projector(spec_eid.vectors, begin, end);
        const CMatrix p_svd = span_projector(spec_svd.u, begin, end);
        if (frobenius_norm(p_eid - p_svd) > 10.0 * tol) return false;
        begin = end;
    }
    return true;
}

} // namespace densfact
