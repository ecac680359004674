#pragma once

#include <cstddef>
#include <vector>

#include "densfact/cmatrix.hpp"
#include "densfact/linalg.hpp"

namespace densfact {

// A mixture of k normalized states in C^n with a probability distribution.
// states is n x k with column i holding the i-th normalized state; the
// unnormalized factor column sqrt(p_i)*state_i is always derived, never
// stored, so the probabilities stay exact.
struct Ensemble {
    CMatrix states;
    std::vector<double> probs;

    std::size_t dim() const { return states.rows(); }
    std::size_t size() const { return probs.size(); }
};

// n x n Hermitian PSD matrix with unit trace.
struct DensityOperator {
    CMatrix matrix;

    std::size_t dim() const { return matrix.rows(); }
};

// n x k matrix whose columns are unnormalized states and whose outer product
// with its own adjoint is a density operator (unit Frobenius norm).
struct DensityFactor {
    CMatrix matrix;

    std::size_t dim() const { return matrix.rows(); }
    std::size_t components() const { return matrix.cols(); }
};

// Validating constructors. Each checks the type's invariants at the given
// tolerance and throws (InvalidEnsemble, NotHermitian,
// NotPositiveSemidefinite, NotUnitTrace) on violation.
Ensemble make_ensemble(CMatrix states, std::vector<double> probs, double tol = kDefaultTol);
DensityOperator make_density_operator(CMatrix matrix, double tol = kDefaultTol);
DensityFactor make_density_factor(CMatrix matrix, double tol = kDefaultTol);

void validate_ensemble(const Ensemble& e, double tol = kDefaultTol);

// rho = sum_i p_i |state_i><state_i|
DensityOperator density_from_ensemble(const Ensemble& e, double tol = kDefaultTol);

// Column i of the factor is sqrt(p_i) * state_i.
DensityFactor factor_from_ensemble(const Ensemble& e, double tol = kDefaultTol);

// rho = Psi * Psi^*. Throws NotUnitTrace when ||Psi||_F^2 deviates from 1.
DensityOperator density_from_factor(const DensityFactor& f, double tol = kDefaultTol);

// Psi^* * Psi; diagonal entries are the component probabilities.
CMatrix gram(const DensityFactor& f);

// True iff every off-diagonal Gram entry has modulus <= tol.
bool is_orthonormal_factor(const DensityFactor& f, double tol = kDefaultTol);

struct ExtractedEnsemble {
    Ensemble ensemble;
    std::vector<std::size_t> dropped_columns; // zero-probability components removed
};

// Recovers probabilities (squared column norms) and normalized states from a
// factor. Columns with probability <= tol are dropped and reported. Throws
// NotUnitTrace when the probabilities do not already sum to 1 within tol.
ExtractedEnsemble ensemble_from_factor(const DensityFactor& f, double tol = kDefaultTol);

// Rank via the truncated eigendecomposition.
std::size_t rank_of(const DensityOperator& d, double tol = kDefaultTol);

} // namespace densfact
