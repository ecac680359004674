#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "densfact/cmatrix.hpp"

namespace densfact {

// Truncated spectrum of a Hermitian PSD matrix: the r eigenvalues above the
// rank cutoff, in descending order, with their orthonormal eigenvectors and
// the diagonal factor Sigma = diag(sqrt(eigenvalues)).
struct SpectralData {
    std::vector<double> eigenvalues; // descending, all > cutoff
    CMatrix vectors;                 // n x r, orthonormal columns
    CMatrix sigma;                   // r x r diagonal, sigma(i,i) = sqrt(eigenvalues[i])

    std::size_t rank() const { return eigenvalues.size(); }
};

struct SvdResult {
    CMatrix u;     // n x r, orthonormal columns
    CMatrix sigma; // r x r diagonal, descending positive
    CMatrix v;     // k x r, orthonormal columns
    std::vector<double> singular_values;
};

// Eigendecomposition of a Hermitian PSD matrix by cyclic Jacobi rotations.
// Eigenpairs with eigenvalue <= tol*max(lambda_max, 1) are truncated away.
// Output is deterministic: eigenvalues sorted descending (exact ties broken
// by the phase pivot row, ascending) and each eigenvector scaled so its
// largest-modulus entry (first such row on ties) is real and positive.
// Throws NotHermitian / NotPositiveSemidefinite.
SpectralData hermitian_eid(const CMatrix& m, double tol = kDefaultTol);

// Thin SVD m = u * sigma * v^*, computed from the eigendecomposition of the
// smaller Gram matrix and carrying the same truncation, ordering and phase
// conventions as hermitian_eid.
SvdResult svd(const CMatrix& m, double tol = kDefaultTol);

// Count of values strictly greater than tol*max(values[0], 1). Expects a
// descending nonnegative sequence.
std::size_t numeric_rank(std::span<const double> singular_values, double tol = kDefaultTol);

// Orthonormalises the rows of a k x p matrix (k <= p) by modified
// Gram-Schmidt with reorthogonalisation; preserves the row span and leaves
// the implicit triangular factor with a positive real diagonal. Throws
// RankDeficient when the rows do not span a k-dimensional space.
CMatrix qr_orthonormal_rows(const CMatrix& m, double tol = kDefaultTol);

// Phase convention helpers. phase_pivot_row returns the first row of maximal
// modulus in the given column; phase_normalize_columns multiplies each column
// by the unit scalar making its pivot entry real positive and returns the
// multipliers applied (1 for zero columns).
std::size_t phase_pivot_row(const CMatrix& m, std::size_t col);
std::vector<Complex> phase_normalize_columns(CMatrix& m);

} // namespace densfact
