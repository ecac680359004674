#include "densfact/equivalence.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "densfact/kernels.hpp"

namespace densfact {

namespace {

double coisometry_residual(const CMatrix& a) {
    return frobenius_norm(matmul(a, adjoint(a)) - CMatrix::identity(a.rows()));
}

// Uniform in (0, 1], bit-reproducible for a given engine sequence.
double next_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller; one standard complex normal per call (re and im each N(0, 1/2)
// would be the unit-variance complex convention, but any fixed radial scale
// cancels in the orthonormalisation, so plain N(0,1) components are fine).
Complex next_gaussian(std::mt19937_64& rng) {
    const double u1 = next_unit(rng);
    const double u2 = next_unit(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
}

} // namespace

CoIsometry make_coisometry(CMatrix matrix, double tol) {
    if (matrix.rows() == 0 || matrix.rows() > matrix.cols())
        throw InvalidDimensions("coisometry: need 1 <= rows <= cols, got " +
                                std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()));
    CoIsometry a{std::move(matrix)};
    const double residual = coisometry_residual(a.matrix);
    if (residual > tol)
        throw NotCoIsometry("coisometry: A*adjoint(A) deviates from identity by " +
                            std::to_string(residual));
    return a;
}

DensityFactor expand_factor(const DensityFactor& f, const CoIsometry& a, double tol) {
    if (f.matrix.cols() != a.matrix.rows())
        throw DimensionMismatch("expand_factor: factor has " + std::to_string(f.matrix.cols()) +
                                " components but co-isometry has " +
                                std::to_string(a.matrix.rows()) + " rows");
    const double residual = coisometry_residual(a.matrix);
    if (residual > tol)
        throw NotCoIsometry("expand_factor: A*adjoint(A) deviates from identity by " +
                            std::to_string(residual));
    return DensityFactor{matmul(f.matrix, a.matrix)};
}

CoIsometry relate_to_minimum(const DensityFactor& psi0, const DensityFactor& phi,
                             const SpectralData& spectrum, double tol) {
    const std::size_t r = spectrum.rank();
    if (psi0.matrix.cols() != r)
        throw NotMinimalOrthonormal("relate_to_minimum: factor has " +
                                    std::to_string(psi0.matrix.cols()) +
                                    " components but the spectrum has rank " + std::to_string(r));
    if (phi.matrix.rows() != psi0.matrix.rows())
        throw DimensionMismatch("relate_to_minimum: factors live in different dimensions");

    for (double lambda : spectrum.eigenvalues)
        if (!(lambda > 0.0))
            throw NotMinimalOrthonormal("relate_to_minimum: spectrum has a nonpositive eigenvalue");

    const CMatrix g = matmul(adjoint(psi0.matrix), psi0.matrix);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const double expected = i == j ? spectrum.eigenvalues[i] : 0.0;
            if (std::abs(g(i, j) - Complex(expected, 0.0)) > 10.0 * tol)
                throw NotMinimalOrthonormal(
                    "relate_to_minimum: reference factor is not orthonormal with the supplied "
                    "spectrum");
        }
    }

    const CMatrix rho_ref = matmul(psi0.matrix, adjoint(psi0.matrix));
    const CMatrix rho_phi = matmul(phi.matrix, adjoint(phi.matrix));
    if (frobenius_norm(rho_ref - rho_phi) > tol)
        throw NotAFactorOf("relate_to_minimum: factors describe different density operators");

    std::vector<double> inv_lambda(r);
    for (std::size_t i = 0; i < r; ++i) inv_lambda[i] = 1.0 / spectrum.eigenvalues[i];
    CMatrix a0 = scale_rows(matmul(adjoint(psi0.matrix), phi.matrix), inv_lambda);
    return CoIsometry{std::move(a0)};
}

CoIsometry random_coisometry(std::size_t k, std::size_t p, std::mt19937_64& rng) {
    if (k < 1 || k > p)
        throw InvalidDimensions("random_coisometry: need 1 <= k <= p, got k=" + std::to_string(k) +
                                " p=" + std::to_string(p));
    CMatrix g(k, p);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < p; ++j) g(i, j) = next_gaussian(rng);
    // Row-wise Gram-Schmidt with positive real diagonal on the triangular
    // factor: exactly the first k rows of a Haar unitary.
    return CoIsometry{qr_orthonormal_rows(g)};
}

CoIsometry random_coisometry(std::size_t k, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_coisometry(k, p, rng);
}

CoIsometry dft_coisometry(std::size_t k, std::size_t p) {
    if (k < 1 || k > p)
        throw InvalidDimensions("dft_coisometry: need 1 <= k <= p, got k=" + std::to_string(k) +
                                " p=" + std::to_string(p));
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(p));
    CMatrix a(k, p);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < p; ++j) {
            // Reduce the index product mod p before forming the angle so the
            // entries are exact periodic repeats.
            const std::size_t phase_index = (m * j) % p;
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>(phase_index) / static_cast<double>(p);
            a(m, j) = std::polar(amplitude, angle);
        }
    }
    return CoIsometry{std::move(a)};
}

bool same_density(const DensityFactor& f1, const DensityFactor& f2, double tol) {
    if (f1.matrix.rows() != f2.matrix.rows())
        throw DimensionMismatch("same_density: factors live in different dimensions");
    const CMatrix d1 = matmul(f1.matrix, adjoint(f1.matrix));
    const CMatrix d2 = matmul(f2.matrix, adjoint(f2.matrix));
    return frobenius_norm(d1 - d2) <= tol;
}

} // namespace densfact
