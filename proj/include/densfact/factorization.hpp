#pragma once

#include "densfact/density.hpp"
#include "densfact/linalg.hpp"

namespace densfact {

// Minimum orthonormal factor Psi0 = U * Sigma built from the
// eigendecomposition rho = U * Sigma^2 * U^*. The spectrum is returned
// alongside so callers can reuse the exact same rank cutoff (notably for
// Sigma^-2 in the equivalence module).
struct MinimumFactorEid {
    DensityFactor psi0; // n x r
    SpectralData spectrum;
};

MinimumFactorEid minimum_df_from_eid(const DensityOperator& d, double tol = kDefaultTol);

// Minimum orthonormal factor from the SVD Psi = U * Sigma * V^* of an
// arbitrary factor: Psi0 = U * Sigma, with the right singular vectors
// returned for callers that need the co-isometry connection.
struct MinimumFactorSvd {
    DensityFactor psi0; // n x r
    CMatrix v;          // k x r, orthonormal columns
    std::vector<double> singular_values;
};

MinimumFactorSvd minimum_df_from_svd(const DensityFactor& f, double tol = kDefaultTol);

// Checks that the eigendecomposition route (on d) and the SVD route (on f)
// produce the same minimum factor, comparing eigenspace projectors so that
// degenerate spectra and phase freedom do not produce false mismatches.
// Throws NotAFactorOf when f is not a factor of d in the first place.
bool assert_same_minimum(const DensityOperator& d, const DensityFactor& f, double tol = kDefaultTol);

} // namespace densfact
