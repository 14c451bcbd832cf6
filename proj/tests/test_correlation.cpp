#include <doctest.h>

#include <cmath>
#include <random>

#include "corrmetric/correlation.hpp"
#include "corrmetric/counterexample.hpp"
#include "test_support.hpp"

using namespace corrmetric;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("pearson_correlation: perfectly correlated and anticorrelated pairs") {
    Eigen::MatrixXd values(5, 2);
    values << 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.5, 4.5, -1.0, -1.0;
    const auto corr = pearson_correlation(DataMatrix(values, {"a", "b"}));
    CHECK(corr(0, 1) == 1.0);

    values.col(1) = -values.col(0);
    const auto anti = pearson_correlation(DataMatrix(values, {"a", "b"}));
    CHECK(anti(0, 1) == -1.0);
}

TEST_CASE("pearson_correlation: recovers the theta-family correlations from samples") {
    // Sampling oracle: 1e5 seeded draws from the pi/4 family.
    const auto spec = build_counterexample(ThetaParams(kPi / 4.0));
    const auto data = sample_triple(spec, SampleConfig{100000, 20240401ULL});
    const auto corr = pearson_correlation(data);
    CHECK(std::abs(corr(0, 1) - 0.25) < 0.01);
    CHECK(std::abs(corr(0, 2) - std::sqrt(0.5)) < 0.01);
    CHECK(std::abs(corr(1, 2) - std::sqrt(0.5)) < 0.01);
}

TEST_CASE("pearson_correlation: degenerate inputs are hard errors") {
    Eigen::MatrixXd constant(4, 2);
    constant << 1.0, 7.0, 2.0, 7.0, 3.0, 7.0, 4.0, 7.0;
    CHECK_THROWS_AS(pearson_correlation(DataMatrix(constant, {"a", "b"})), ZeroVarianceColumn);
    try {
        pearson_correlation(DataMatrix(constant, {"a", "b"}));
    } catch (const ZeroVarianceColumn& e) {
        CHECK(e.column == 1);
    }

    Eigen::MatrixXd one_row(1, 2);
    one_row << 1.0, 2.0;
    CHECK_THROWS_AS(DataMatrix(one_row, {"a", "b"}), DimensionTooSmall);
}

TEST_CASE("validate_correlation: accept, clamp, reject") {
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(3, 3);
    const auto accepted = validate_correlation(identity, 1e-9);
    CHECK(accepted.entries() == identity);

    Eigen::MatrixXd nearly = identity;
    nearly(0, 1) = 1.0000001;
    nearly(1, 0) = 1.0000001;
    const auto clamped = validate_correlation(nearly, 1e-6);
    CHECK(clamped(0, 1) == 1.0);

    Eigen::MatrixXd asym = identity;
    asym(0, 1) = 0.3;
    asym(1, 0) = 0.5;
    CHECK_THROWS_AS(validate_correlation(asym, 1e-6), AsymmetryExceeded);
    try {
        validate_correlation(asym, 1e-6);
    } catch (const AsymmetryExceeded& e) {
        CHECK(e.max_delta == doctest::Approx(0.2));
    }

    CHECK_THROWS_AS(validate_correlation(Eigen::MatrixXd::Zero(2, 3), 1e-6), NotSquare);

    Eigen::MatrixXd bad_diag = identity;
    bad_diag(1, 1) = 0.9;
    CHECK_THROWS_AS(validate_correlation(bad_diag, 1e-6), DiagonalNotUnit);

    Eigen::MatrixXd out_of_range = identity;
    out_of_range(0, 1) = 1.5;
    out_of_range(1, 0) = 1.5;
    CHECK_THROWS_AS(validate_correlation(out_of_range, 1e-6), EntryOutOfRange);
}

TEST_CASE("psd_check: identity, the pi/4 family, and an indefinite matrix") {
    const auto identity = CorrelationMatrix::canonical(Eigen::MatrixXd::Identity(4, 4));
    const auto id_verdict = psd_check(identity);
    CHECK(id_verdict.is_psd);
    CHECK(id_verdict.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));

    // Analytic spectrum of the pi/4 matrix: {(9 + sqrt(65))/8, 3/4, (9 - sqrt(65))/8}.
    const auto family = build_counterexample(ThetaParams(kPi / 4.0));
    const auto verdict = psd_check(family.correlation);
    CHECK(verdict.is_psd);
    CHECK(std::abs(verdict.min_eigenvalue - (9.0 - std::sqrt(65.0)) / 8.0) < 1e-10);

    Eigen::MatrixXd indefinite(3, 3);
    indefinite << 1.0, 0.9, -0.9, 0.9, 1.0, 0.9, -0.9, 0.9, 1.0;
    const auto bad = psd_check(CorrelationMatrix::canonical(indefinite));
    CHECK_FALSE(bad.is_psd);
    CHECK(bad.min_eigenvalue < 0.0);
}

TEST_CASE("hadamard_square: squares entries and erases signs") {
    const auto identity = CorrelationMatrix::canonical(Eigen::MatrixXd::Identity(3, 3));
    CHECK(hadamard_square(identity).entries() == identity.entries());

    const auto family = build_counterexample(ThetaParams(kPi / 4.0));
    const auto squared = hadamard_square(family.correlation);
    CHECK(squared(0, 1) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(squared(0, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(squared(1, 2) == doctest::Approx(0.5).epsilon(1e-14));

    Eigen::MatrixXd with_negative = Eigen::MatrixXd::Identity(2, 2);
    with_negative(0, 1) = -0.6;
    with_negative(1, 0) = -0.6;
    const auto pos = hadamard_square(CorrelationMatrix::canonical(with_negative));
    CHECK(pos(0, 1) == doctest::Approx(0.36).epsilon(1e-14));
}

TEST_CASE("pearson_correlation output always satisfies the type invariants") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> n_obs_dist(2, 40);
    std::uniform_int_distribution<int> n_vars_dist(1, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_obs = n_obs_dist(rng);
        const int n_vars = n_vars_dist(rng);
        Eigen::MatrixXd values(n_obs, n_vars);
        for (int i = 0; i < n_obs; ++i) {
            for (int j = 0; j < n_vars; ++j) values(i, j) = normal(rng);
        }
        std::vector<std::string> names;
        for (int j = 0; j < n_vars; ++j) names.push_back("v" + std::to_string(j));
        const auto corr = pearson_correlation(DataMatrix(values, names));
        CHECK(corr.entries() == corr.entries().transpose().eval());
        CHECK(corr.entries().diagonal() == Eigen::VectorXd::Ones(n_vars));
        CHECK(corr.entries().cwiseAbs().maxCoeff() <= 1.0);
    }
}

TEST_CASE("pearson_correlation converges at the 4/sqrt(n) scale") {
    // Data generated from a known correlation matrix by the oracle sampler;
    // each entry must land within 4/sqrt(n_obs) in at least 99 of 100 seeds.
    const int n_obs = 2500;
    const double bound = 4.0 / std::sqrt(static_cast<double>(n_obs));
    std::mt19937_64 setup_rng(99);
    const auto target = test_support::random_psd_correlation(4, setup_rng);

    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        const Eigen::MatrixXd samples =
            test_support::sample_gaussian(target.entries(), n_obs, rng);
        const auto estimate =
            pearson_correlation(DataMatrix(samples, {"a", "b", "c", "d"}));
        const double err = (estimate.entries() - target.entries()).cwiseAbs().maxCoeff();
        if (err <= bound) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("random Gram matrices are PSD and stay PSD under hadamard_square") {
    for (int t = 0; t < 40; ++t) {
        const auto corr = test_support::property_suite_instance(t);
        CHECK(psd_check(corr).is_psd);
        CHECK(psd_check(hadamard_square(corr)).is_psd);
    }
}
