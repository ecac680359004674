#include <doctest.h>

#include <random>

#include "densfact/density.hpp"

#include "golden.hpp"
#include "oracles.hpp"

using densfact::CMatrix;
using densfact::Complex;

TEST_CASE("density_from_ensemble reproduces the golden circulant operator") {
    const densfact::DensityOperator d =
        densfact::density_from_ensemble(golden::circulant_ensemble());
    CHECK(densfact::max_abs_diff(d.matrix, golden::circulant_rho()) < 1e-12);
    CHECK(densfact::trace(d.matrix).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density_from_ensemble simple mixtures") {
    // maximally mixed qubit
    CMatrix basis = CMatrix::identity(2);
    const densfact::Ensemble mixed{basis, {0.5, 0.5}};
    CHECK(densfact::max_abs_diff(densfact::density_from_ensemble(mixed).matrix,
                                 0.5 * CMatrix::identity(2)) < 1e-15);

    // pure state: rank-1 projector
    std::mt19937_64 rng(41);
    const densfact::Ensemble pure = oracles::random_ensemble(4, 1, rng);
    const densfact::DensityOperator d = densfact::density_from_ensemble(pure);
    const CMatrix expected = oracles::column_projector(pure.states);
    CHECK(densfact::max_abs_diff(d.matrix, expected) < 1e-14);
}

TEST_CASE("invalid ensembles are rejected with the offending index") {
    CMatrix states = CMatrix::identity(2);
    CHECK_THROWS_AS(densfact::density_from_ensemble({states, {0.5, 0.6}}),
                    densfact::InvalidEnsemble);
    CHECK_THROWS_AS(densfact::density_from_ensemble({states, {1.5, -0.5}}),
                    densfact::InvalidEnsemble);

    CMatrix unnormalized = CMatrix::identity(2);
    unnormalized(0, 0) = 2.0;
    try {
        densfact::density_from_ensemble({unnormalized, {0.5, 0.5}});
        FAIL("expected InvalidEnsemble");
    } catch (const densfact::InvalidEnsemble& e) {
        CHECK(std::string(e.what()).find("state 0") != std::string::npos);
    }

    CHECK_THROWS_AS(densfact::make_ensemble(CMatrix(2, 0), {}), densfact::InvalidEnsemble);
}

TEST_CASE("factor_from_ensemble is the column-scaled state matrix") {
    const densfact::DensityFactor f =
        densfact::factor_from_ensemble(golden::circulant_ensemble());
    CHECK(densfact::max_abs_diff(f.matrix, golden::circulant_factor()) < 1e-15);

    // single state: the factor is the state itself
    std::mt19937_64 rng(43);
    const densfact::Ensemble pure = oracles::random_ensemble(3, 1, rng);
    CHECK(densfact::max_abs_diff(densfact::factor_from_ensemble(pure).matrix, pure.states) <
          1e-15);

    // a zero-probability component becomes a zero column
    CMatrix states(2, 2);
    states(0, 0) = 1.0;
    states(1, 1) = 1.0;
    const densfact::DensityFactor with_zero =
        densfact::factor_from_ensemble({states, {1.0, 0.0}});
    CHECK(std::abs(with_zero.matrix(0, 1)) == 0.0);
    CHECK(std::abs(with_zero.matrix(1, 1)) == 0.0);
}

TEST_CASE("density_from_factor") {
    const densfact::DensityFactor f{golden::circulant_factor()};
    CHECK(densfact::max_abs_diff(densfact::density_from_factor(f).matrix,
                                 golden::circulant_rho()) < 1e-15);

    // the minimum factor produces the same operator (cross-route oracle)
    const densfact::DensityFactor min_f{golden::circulant_minimum_factor()};
    const CMatrix via_ensemble =
        densfact::density_from_ensemble(golden::circulant_ensemble()).matrix;
    CHECK(densfact::max_abs_diff(densfact::density_from_factor(min_f).matrix, via_ensemble) <
          1e-14);

    // non-unit norm is rejected
    CMatrix too_big = golden::circulant_factor();
    for (auto& z : too_big.entries()) z *= 2.0;
    CHECK_THROWS_AS(densfact::density_from_factor(densfact::DensityFactor{too_big}),
                    densfact::NotUnitTrace);
}

TEST_CASE("gram matrix of the golden factor (exact dyadic values)") {
    const CMatrix g = densfact::gram(densfact::DensityFactor{golden::circulant_factor()});
    CHECK(densfact::max_abs_diff(g, golden::circulant_gram()) < 1e-15);

    // diagonal entries are the probabilities
    CHECK(g(0, 0).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g(1, 1).real() == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(g(2, 2).real() == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("gram of the minimum factor is the eigenvalue diagonal") {
    const CMatrix g =
        densfact::gram(densfact::DensityFactor{golden::circulant_minimum_factor()});
    CHECK(densfact::max_abs_diff(g, densfact::diagonal(golden::circulant_eigenvalues())) <
          1e-14);
}

TEST_CASE("is_orthonormal_factor") {
    CHECK_FALSE(densfact::is_orthonormal_factor(
        densfact::DensityFactor{golden::circulant_factor()}));
    CHECK(densfact::is_orthonormal_factor(
        densfact::DensityFactor{golden::circulant_minimum_factor()}));

    std::mt19937_64 rng(47);
    const densfact::Ensemble pure = oracles::random_ensemble(5, 1, rng);
    CHECK(densfact::is_orthonormal_factor(densfact::factor_from_ensemble(pure)));
}

TEST_CASE("ensemble_from_factor inverts factor_from_ensemble") {
    const densfact::ExtractedEnsemble out =
        densfact::ensemble_from_factor(densfact::DensityFactor{golden::circulant_factor()});
    CHECK(out.dropped_columns.empty());
    REQUIRE(out.ensemble.size() == 3);
    CHECK(out.ensemble.probs[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(out.ensemble.probs[1] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(out.ensemble.probs[2] == doctest::Approx(0.375).epsilon(1e-12));

    // states match up to global phase: compare projectors
    const densfact::Ensemble reference = golden::circulant_ensemble();
    for (std::size_t j = 0; j < 3; ++j) {
        const CMatrix pj = oracles::column_projector(out.ensemble.states, j, j + 1);
        const CMatrix ej = oracles::column_projector(reference.states, j, j + 1);
        CHECK(densfact::frobenius_norm(pj - ej) < 1e-12);
    }
}

TEST_CASE("ensemble_from_factor on the minimum factor gives the eigenvalues") {
    const densfact::ExtractedEnsemble out = densfact::ensemble_from_factor(
        densfact::DensityFactor{golden::circulant_minimum_factor()});
    REQUIRE(out.ensemble.size() == 2);
    CHECK(out.ensemble.probs[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(out.ensemble.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("ensemble_from_factor drops zero columns and reports them") {
    CMatrix f(2, 3);
    f(0, 0) = std::sqrt(0.5);
    f(1, 2) = std::sqrt(0.5);
    const densfact::ExtractedEnsemble out =
        densfact::ensemble_from_factor(densfact::DensityFactor{f});
    REQUIRE(out.dropped_columns.size() == 1);
    CHECK(out.dropped_columns[0] == 1);
    REQUIRE(out.ensemble.size() == 2);
    CHECK(out.ensemble.probs[0] + out.ensemble.probs[1] == doctest::Approx(1.0).epsilon(1e-14));

    // a factor whose probabilities do not sum to one is rejected
    CMatrix bad(2, 1);
    bad(0, 0) = 0.5;
    CHECK_THROWS_AS(densfact::ensemble_from_factor(densfact::DensityFactor{bad}),
                    densfact::NotUnitTrace);
}

TEST_CASE("rank_of") {
    CHECK(densfact::rank_of(densfact::DensityOperator{golden::circulant_rho()}) == 2);

    std::mt19937_64 rng(53);
    const densfact::Ensemble pure = oracles::random_ensemble(4, 1, rng);
    CHECK(densfact::rank_of(densfact::density_from_ensemble(pure)) == 1);

    CHECK(densfact::rank_of(densfact::DensityOperator{
              (1.0 / 3.0) * CMatrix::identity(3)}) == 3);
}

TEST_CASE("round trip: factor route equals ensemble route") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const std::size_t k = 1 + rng() % 12;
        const densfact::Ensemble e = oracles::random_ensemble(n, k, rng);
        const CMatrix via_factor =
            densfact::density_from_factor(densfact::factor_from_ensemble(e)).matrix;
        const CMatrix direct = densfact::density_from_ensemble(e).matrix;
        CHECK(densfact::max_abs_diff(via_factor, direct) < 1e-12);

        // trace identity: gram trace == density trace == 1
        const CMatrix g = densfact::gram(densfact::factor_from_ensemble(e));
        CHECK(densfact::trace(g).real() == doctest::Approx(1.0).epsilon(1e-12));

        // rank(factor) == rank(density)
        const densfact::DensityFactor f = densfact::factor_from_ensemble(e);
        const auto svd_rank = densfact::svd(f.matrix).singular_values.size();
        CHECK(svd_rank == densfact::rank_of(densfact::DensityOperator{direct}));
    }
}

TEST_CASE("orthonormal factors with nonzero columns are minimum") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + rng() % 5;
        const std::size_t k = 1 + rng() % n;
        // build an orthonormal-column factor from a random unitary's columns
        const CMatrix u = densfact::adjoint(
            densfact::qr_orthonormal_rows(oracles::random_matrix(n, n, rng)));
        std::vector<double> probs(k);
        double sum = 0.0;
        for (auto& p : probs) {
            p = 0.1 + 0.9 * static_cast<double>(rng() % 100) / 100.0;
            sum += p;
        }
        CMatrix f(n, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) f(i, j) = u(i, j) * std::sqrt(probs[j] / sum);

        const densfact::DensityFactor factor{f};
        REQUIRE(densfact::is_orthonormal_factor(factor, 1e-9));
        const densfact::DensityOperator d = densfact::density_from_factor(factor);
        CHECK(densfact::rank_of(d) == k);
    }
}

TEST_CASE("ensemble round trip up to per-state phase") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        const std::size_t k = 1 + rng() % 6;
        const densfact::Ensemble e = oracles::random_ensemble(n, k, rng);
        const densfact::ExtractedEnsemble back =
            densfact::ensemble_from_factor(densfact::factor_from_ensemble(e));
        REQUIRE(back.ensemble.size() == k);
        for (std::size_t j = 0; j < k; ++j) {
            CHECK(back.ensemble.probs[j] == doctest::Approx(e.probs[j]).epsilon(1e-10));
            const CMatrix pj = oracles::column_projector(back.ensemble.states, j, j + 1);
            const CMatrix ej = oracles::column_projector(e.states, j, j + 1);
            CHECK(densfact::frobenius_norm(pj - ej) < 1e-10);
        }
    }
}

TEST_CASE("make_density_operator validates") {
    CHECK_NOTHROW(densfact::make_density_operator(golden::circulant_rho()));
    CHECK_THROWS_AS(densfact::make_density_operator(CMatrix::identity(2)),
                    densfact::NotUnitTrace);
    CMatrix skew = CMatrix::from_rows({{0.5, 0.5}, {-0.5, 0.5}});
    CHECK_THROWS_AS(densfact::make_density_operator(skew), densfact::NotHermitian);
    CMatrix indefinite = CMatrix::from_rows({{1.5, 0.0}, {0.0, -0.5}});
    CHECK_THROWS_AS(densfact::make_density_operator(indefinite),
                    densfact::NotPositiveSemidefinite);
}
