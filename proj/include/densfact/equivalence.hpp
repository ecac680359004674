#pragma once

#include <cstdint>
#include <random>

#include "densfact/density.hpp"
#include "densfact/linalg.hpp"

namespace densfact {

// k x p matrix A (k <= p) with orthonormal rows: A * A^* = I_k. Right
// multiplication by a co-isometry maps a k-component factor to a p-component
// factor of the same density operator.
struct CoIsometry {
    CMatrix matrix;

    std::size_t rows() const { return matrix.rows(); }
    std::size_t cols() const { return matrix.cols(); }
};

// Validates A * A^* = I_k within tol (NotCoIsometry) and k <= p
// (InvalidDimensions).
CoIsometry make_coisometry(CMatrix matrix, double tol = kDefaultTol);

// Phi = Psi * A. Throws DimensionMismatch when the shapes do not chain and
// NotCoIsometry when A fails its defining condition at tol.
DensityFactor expand_factor(const DensityFactor& f, const CoIsometry& a, double tol = kDefaultTol);

// Recovers the co-isometry A0 = Sigma^-2 * Psi0^* * Phi connecting a minimum
// orthonormal factor psi0 to an arbitrary factor phi of the same density
// operator, so that Psi0 * A0 = Phi. The spectrum must be the one psi0 was
// built from; its eigenvalues supply Sigma^-2 with the authoritative cutoff.
// Throws NotMinimalOrthonormal when psi0 is not a minimum orthonormal factor
// and NotAFactorOf when phi factors a different operator.
CoIsometry relate_to_minimum(const DensityFactor& psi0, const DensityFactor& phi,
                             const SpectralData& spectrum, double tol = kDefaultTol);

// First k rows of a Haar-distributed p x p unitary: complex standard normal
// entries orthonormalised row by row. The generator is the explicit RNG
// state; the same state sequence always yields the same matrix.
CoIsometry random_coisometry(std::size_t k, std::size_t p, std::mt19937_64& rng);
CoIsometry random_coisometry(std::size_t k, std::size_t p, std::uint64_t seed);

// Row m holds (1/sqrt(p)) * exp(-2*pi*i*m*j/p), j = 0..p-1; the first k rows
// of the unitary DFT matrix.
CoIsometry dft_coisometry(std::size_t k, std::size_t p);

// True iff f1*f1^* and f2*f2^* agree within absolute Frobenius tolerance.
bool same_density(const DensityFactor& f1, const DensityFactor& f2, double tol = kDefaultTol);

} // namespace densfact
