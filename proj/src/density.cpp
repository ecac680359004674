#include "densfact/density.hpp"

#include <cmath>
#include <string>

#include "densfact/kernels.hpp"

namespace densfact {

namespace {

double column_norm(const CMatrix& m, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
    return std::sqrt(s);
}

} // namespace

void validate_ensemble(const Ensemble& e, double tol) {
    const std::size_t k = e.probs.size();
    if (k == 0) throw InvalidEnsemble("ensemble: at least one state is required");
    if (e.states.cols() != k)
        throw InvalidEnsemble("ensemble: " + std::to_string(e.states.cols()) + " states but " +
                              std::to_string(k) + " probabilities");
    if (e.states.rows() == 0) throw InvalidEnsemble("ensemble: zero-dimensional states");
    if (!all_finite(e.states)) throw InvalidEnsemble("ensemble: non-finite state entries");

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double p = e.probs[i];
        if (!std::isfinite(p) || p < 0.0)
            throw InvalidEnsemble("ensemble: probability " + std::to_string(i) + " is negative");
        sum += p;
        const double norm = column_norm(e.states, i);
        if (std::abs(norm - 1.0) > tol)
            throw InvalidEnsemble("ensemble: state " + std::to_string(i) + " has norm " +
                                  std::to_string(norm));
    }
    if (std::abs(sum - 1.0) > tol)
        throw InvalidEnsemble("ensemble: probabilities sum to " + std::to_string(sum));
}

Ensemble make_ensemble(CMatrix states, std::vector<double> probs, double tol) {
    Ensemble e{std::move(states), std::move(probs)};
    validate_ensemble(e, tol);
    return e;
}

DensityOperator make_density_operator(CMatrix matrix, double tol) {
    if (matrix.rows() != matrix.cols())
        throw DimensionMismatch("density operator: matrix must be square");
    const double scale = frobenius_norm(matrix);
    if (frobenius_norm(matrix - adjoint(matrix)) > scaled_tol(tol, scale))
        throw NotHermitian("density operator: matrix is not Hermitian within tolerance");
    if (std::abs(trace(matrix).real() - 1.0) > scaled_tol(tol, scale) ||
        std::abs(trace(matrix).imag()) > scaled_tol(tol, scale))
        throw NotUnitTrace("density operator: trace is not 1 within tolerance");
    hermitian_eid(matrix, tol); // throws NotPositiveSemidefinite on a bad spectrum
    return DensityOperator{std::move(matrix)};
}

DensityFactor make_density_factor(CMatrix matrix, double tol) {
    if (matrix.rows() == 0 || matrix.cols() == 0)
        throw DimensionMismatch("density factor: empty matrix");
    if (!all_finite(matrix)) throw NotUnitTrace("density factor: non-finite entries");
    const double norm = frobenius_norm(matrix);
    if (std::abs(norm * norm - 1.0) > tol)
        throw NotUnitTrace("density factor: squared Frobenius norm is " +
                           std::to_string(norm * norm));
    return DensityFactor{std::move(matrix)};
}

DensityOperator density_from_ensemble(const Ensemble& e, double tol) {
    validate_ensemble(e, tol);
    return DensityOperator{kernels::weighted_outer_sum(e.states, e.probs)};
}

DensityFactor factor_from_ensemble(const Ensemble& e, double tol) {
    validate_ensemble(e, tol);
    CMatrix f = e.states;
    for (std::size_t j = 0; j < f.cols(); ++j) {
        const double root = std::sqrt(e.probs[j]);
        for (std::size_t i = 0; i < f.rows(); ++i) f(i, j) *= root;
    }
    return DensityFactor{std::move(f)};
}

DensityOperator density_from_factor(const DensityFactor& f, double tol) {
    const double norm = frobenius_norm(f.matrix);
    if (std::abs(norm * norm - 1.0) > tol)
        throw NotUnitTrace("density_from_factor: squared Frobenius norm is " +
                           std::to_string(norm * norm));
    return DensityOperator{matmul(f.matrix, adjoint(f.matrix))};
}

CMatrix gram(const DensityFactor& f) { return matmul(adjoint(f.matrix), f.matrix); }

bool is_orthonormal_factor(const DensityFactor& f, double tol) {
    const CMatrix g = gram(f);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (i != j && std::abs(g(i, j)) > tol) return false;
    return true;
}

ExtractedEnsemble ensemble_from_factor(const DensityFactor& f, double tol) {
    const std::size_t k = f.matrix.cols();
    std::vector<double> probs;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double norm = column_norm(f.matrix, j);
        const double p = norm * norm;
        sum += p;
        if (p <= tol) {
            dropped.push_back(j);
        } else {
            probs.push_back(p);
            kept.push_back(j);
        }
    }
    if (std::abs(sum - 1.0) > tol)
        throw NotUnitTrace("ensemble_from_factor: probabilities sum to " + std::to_string(sum));
    if (kept.empty()) throw InvalidEnsemble("ensemble_from_factor: every column is zero");

    CMatrix states(f.matrix.rows(), kept.size());
    for (std::size_t dst = 0; dst < kept.size(); ++dst) {
        const std::size_t j = kept[dst];
        const double inv = 1.0 / std::sqrt(probs[dst]);
        for (std::size_t i = 0; i < f.matrix.rows(); ++i) states(i, dst) = f.matrix(i, j) * inv;
    }
    return ExtractedEnsemble{Ensemble{std::move(states), std::move(probs)}, std::move(dropped)};
}

std::size_t rank_of(const DensityOperator& d, double tol) {
    return hermitian_eid(d.matrix, tol).rank();
}

} // namespace densfact
