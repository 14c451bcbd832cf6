#include <doctest.h>

#include <cmath>

#include "corrmetric/counterexample.hpp"
#include "corrmetric/metric_audit.hpp"
#include "test_support.hpp"

using namespace corrmetric;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("build_counterexample: correlation structure at named angles") {
    const auto quarter = build_counterexample(ThetaParams(kPi / 4.0));
    CHECK(quarter.correlation(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(quarter.correlation(0, 2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(quarter.correlation(1, 2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(quarter.latent.var_u == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(quarter.latent.var_vw == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(quarter.latent.corr_vw == doctest::Approx(-0.5).epsilon(1e-14));

    const auto third = build_counterexample(ThetaParams(kPi / 3.0));
    CHECK(third.correlation(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(third.correlation(0, 1) == doctest::Approx(0.0625).epsilon(1e-12));

    // Near pi/2 the family degenerates toward independence: no violation.
    const auto edge = build_counterexample(ThetaParams(1.5707));
    CHECK(std::abs(edge.correlation(0, 2)) < 1e-3);
    CHECK(std::abs(edge.correlation(0, 1)) < 1e-12);
    CHECK(margins(ThetaParams(1.5707)).pearson < 0.0);
}

TEST_CASE("ThetaParams rejects angles outside the open interval") {
    CHECK_THROWS_AS(ThetaParams(0.0), ThetaOutOfRange);
    CHECK_THROWS_AS(ThetaParams(kPi / 2.0), ThetaOutOfRange);
    CHECK_THROWS_AS(ThetaParams(-0.1), ThetaOutOfRange);
    CHECK_THROWS_AS(ThetaParams(2.0), ThetaOutOfRange);
    CHECK_NOTHROW(ThetaParams(1e-9));
}

TEST_CASE("margins: closed forms at pi/4 and pi/6") {
    const auto quarter = margins(ThetaParams(kPi / 4.0));
    CHECK(quarter.pearson == doctest::Approx(std::sqrt(2.0) - 1.25).epsilon(1e-12));
    CHECK(quarter.abs_pearson == quarter.pearson);
    CHECK(quarter.sqrt_pearson ==
          doctest::Approx(std::sqrt(0.75) - 2.0 * std::sqrt(1.0 - std::sqrt(0.5)))
              .epsilon(1e-12));
    CHECK(quarter.sqrt_pearson < 0.0);
    CHECK(quarter.psquared < 0.0);

    const auto sixth = margins(ThetaParams(kPi / 6.0));
    CHECK(sixth.abs_pearson == doctest::Approx(std::sqrt(3.0) - 1.5625).epsilon(1e-12));
}

TEST_CASE("margins agree with the audit margins of the realized family") {
    for (double theta : {0.3, 0.7, kPi / 4.0, 1.1, 1.4}) {
        const auto analytic = margins(ThetaParams(theta));
        const auto d = apply_measure(build_counterexample(ThetaParams(theta)).correlation,
                                     MeasureKind::pearson);
        const double scanned = d(0, 1) - d(0, 2) - d(2, 1);
        CHECK(analytic.pearson == doctest::Approx(scanned).epsilon(1e-12));
    }
}

TEST_CASE("sweep_boundary: locates the root of c^3 + c^2 + c - 1") {
    const auto boundary = sweep_boundary(10000);

    // Oracle: bisect the cubic in c, then take arccos.
    const double c_star = test_support::bisect_root(
        [](double c) { return c * c * c + c * c + c - 1.0; }, 0.0, 1.0, 1e-14);
    const double theta_star = std::acos(c_star);

    CHECK(std::abs(boundary.theta_star - theta_star) < 1e-8);
    CHECK(std::abs(boundary.fraction_of_range - theta_star / (kPi / 2.0)) < 1e-8);
    CHECK(boundary.fraction_of_range == doctest::Approx(0.634).epsilon(0.002));
    CHECK(boundary.fraction_of_range > 0.5);

    CHECK_THROWS_AS(sweep_boundary(99), GridTooSmall);
}

TEST_CASE("sweep_margins: flags match the closed-form predicates on the grid") {
    const auto rows = sweep_margins(1000);
    REQUIRE(rows.size() == 1000);
    for (const auto& row : rows) {
        const double c = std::cos(row.theta);
        // Pearson violation iff (1 + cos)(1 + cos^2) > 2.
        CHECK(row.pearson_violated == ((1.0 + c) * (1.0 + c * c) > 2.0));
        // AbsPearson violation iff cos(2 - cos^3) > 1, the same interior root.
        CHECK(row.abs_pearson_violated == (c * (2.0 - c * c * c) > 1.0));
        CHECK(row.margins.abs_pearson == row.margins.pearson);
        CHECK(row.margins.sqrt_pearson <= 1e-12);
        CHECK(row.margins.psquared <= 1e-12);
        CHECK_FALSE(row.sqrt_pearson_violated);
        CHECK_FALSE(row.psquared_violated);
    }
}

TEST_CASE("the family is PSD along the whole guarded grid") {
    for (std::size_t i = 0; i < 1000; ++i) {
        const double theta =
            0.01 + (kPi / 2.0 - 0.02) * static_cast<double>(i) / 999.0;
        // build_counterexample runs the PSD assertion internally.
        CHECK_NOTHROW(build_counterexample(ThetaParams(theta)));
    }
}

TEST_CASE("sample_triple: shape, centering and determinism") {
    const auto spec = build_counterexample(ThetaParams(0.9));
    const auto small = sample_triple(spec, SampleConfig{10, 7});
    CHECK(small.n_obs() == 10);
    CHECK(small.n_vars() == 3);
    CHECK(small.var_names() == std::vector<std::string>{"X", "Y", "Z"});
    for (Eigen::Index j = 0; j < 3; ++j) {
        CHECK(std::abs(small.values().col(j).mean()) <= 1.5 / std::sqrt(10.0));
    }

    const auto again = sample_triple(spec, SampleConfig{10, 7});
    CHECK(small.values() == again.values());
    const auto other_seed = sample_triple(spec, SampleConfig{10, 8});
    CHECK(small.values() != other_seed.values());

    CHECK_THROWS_AS(sample_triple(spec, SampleConfig{1, 7}), DimensionTooSmall);
}

TEST_CASE("sample_triple: empirical audit reproduces the pi/4 violation") {
    const auto spec = build_counterexample(ThetaParams(kPi / 4.0));
    const auto data = sample_triple(spec, SampleConfig{100000, 42});
    const auto corr = pearson_correlation(data);
    CHECK((corr.entries() - spec.correlation.entries()).cwiseAbs().maxCoeff() < 0.01);

    const auto report = audit(apply_measure(corr, MeasureKind::pearson));
    REQUIRE_FALSE(report.triangle_violations.empty());
    const auto& worst = report.triangle_violations.front();
    CHECK(worst.k == 2);  // through Z
    CHECK(std::abs(worst.margin - (std::sqrt(2.0) - 1.25)) < 0.03);
}

TEST_CASE("sample_triple correlations tighten from n=1e4 to n=1e6") {
    const auto spec = build_counterexample(ThetaParams(kPi / 4.0));
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto coarse = sample_triple(spec, SampleConfig{10000, 5000 + seed});
        const auto fine = sample_triple(spec, SampleConfig{1000000, 6000 + seed});
        const double err_coarse = (pearson_correlation(coarse).entries() -
                                   spec.correlation.entries()).cwiseAbs().maxCoeff();
        const double err_fine = (pearson_correlation(fine).entries() -
                                 spec.correlation.entries()).cwiseAbs().maxCoeff();
        if (err_fine <= err_coarse) ++improved;
    }
    CHECK(improved >= 19);
}
