#include "corrmetric/counterexample.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace corrmetric {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
// Grid sweeps stay this far away from the endpoints: at theta -> 0 the latent
// pair degenerates (var(V) -> 0) and checks become ill-conditioned.
constexpr double kEndpointGuard = 0.01;

double pearson_margin_at(double theta) {
    const double c = std::cos(theta);
    const double c4 = c * c * c * c;
    return (1.0 - c4) - 2.0 * (1.0 - c);
}
}  // namespace

ThetaParams::ThetaParams(double radians) : theta_(radians) {
    if (!(radians > 0.0) || !(radians < kHalfPi)) {
        throw ThetaOutOfRange(radians);
    }
}

CounterexampleSpec build_counterexample(ThetaParams theta) {
    const double c = std::cos(theta.value());
    const double c2 = c * c;
    const double c4 = c2 * c2;

    Eigen::MatrixXd m(3, 3);
    m << 1.0, c4, c,
         c4, 1.0, c,
         c,  c,  1.0;
    CorrelationMatrix correlation = CorrelationMatrix::canonical(std::move(m));

    // Realized by actual random variables, so PSD must hold; a failure here
    // is a construction bug, not a data problem.
    if (!psd_check(correlation).is_psd) {
        throw Error("counterexample correlation matrix failed the PSD check");
    }

    LatentSpec latent;
    latent.var_u = c2;
    latent.var_vw = 1.0 - c2;
    latent.corr_vw = -c2;
    return CounterexampleSpec{theta, std::move(correlation), latent};
}

ViolationMargins margins(ThetaParams theta) {
    const double c = std::cos(theta.value());
    const double c2 = c * c;
    const double c4 = c2 * c2;
    const double c8 = c4 * c4;

    ViolationMargins m;
    m.pearson = (1.0 - c4) - 2.0 * (1.0 - c);
    // |rho| = rho for this family (all correlations positive), so the
    // abs_pearson margin evaluates to the same expression.
    m.abs_pearson = (1.0 - std::abs(c4)) - 2.0 * (1.0 - std::abs(c));
    m.sqrt_pearson = std::sqrt(1.0 - c4) - 2.0 * std::sqrt(1.0 - c);
    m.psquared = std::sqrt(1.0 - c8) - 2.0 * std::sqrt(1.0 - c2);
    return m;
}

BoundaryEstimate sweep_boundary(std::size_t grid_size) {
    if (grid_size < 100) {
        throw GridTooSmall(grid_size, 100);
    }
    const double lo = kEndpointGuard;
    const double hi = kHalfPi - kEndpointGuard;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);

    // The margin is positive on (0, theta*) and negative beyond, so the first
    // positive-to-nonpositive step brackets the root.
    double left = lo;
    double right = hi;
    bool bracketed = false;
    double prev_theta = lo;
    double prev_margin = pearson_margin_at(lo);
    for (std::size_t i = 1; i < grid_size; ++i) {
        const double theta = lo + step * static_cast<double>(i);
        const double margin = pearson_margin_at(theta);
        if (prev_margin > 0.0 && margin <= 0.0) {
            left = prev_theta;
            right = theta;
            bracketed = true;
            break;
        }
        prev_theta = theta;
        prev_margin = margin;
    }
    if (!bracketed) {
        throw Error("no sign change of the pearson margin on the sweep grid");
    }

    while (right - left > 1e-10) {
        const double mid = 0.5 * (left + right);
        if (pearson_margin_at(mid) > 0.0) {
            left = mid;
        } else {
            right = mid;
        }
    }
    const double theta_star = 0.5 * (left + right);
    return BoundaryEstimate{theta_star, theta_star / kHalfPi};
}

std::vector<SweepRow> sweep_margins(std::size_t grid_size) {
    if (grid_size < 100) {
        throw GridTooSmall(grid_size, 100);
    }
    const double lo = kEndpointGuard;
    const double hi = kHalfPi - kEndpointGuard;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);

    std::vector<SweepRow> rows;
    rows.reserve(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        SweepRow row;
        row.theta = lo + step * static_cast<double>(i);
        row.margins = margins(ThetaParams(row.theta));
        row.pearson_violated = row.margins.pearson > 0.0;
        row.abs_pearson_violated = row.margins.abs_pearson > 0.0;
        row.sqrt_pearson_violated = row.margins.sqrt_pearson > 0.0;
        row.psquared_violated = row.margins.psquared > 0.0;
        rows.push_back(row);
    }
    return rows;
}

DataMatrix sample_triple(const CounterexampleSpec& spec, const SampleConfig& cfg) {
    if (cfg.n_samples < 2) {
        throw DimensionTooSmall(cfg.n_samples);
    }
    const double theta = spec.theta.value();
    const double c = std::cos(theta);
    const double c2 = c * c;
    const double c4 = c2 * c2;
    const double s = std::sin(theta);

    // 2x2 factorization of the (V, W) covariance: V = s*g1,
    // W = s*(-c^2*g1 + sqrt(1-c^4)*g2), which reproduces var = sin^2 and
    // corr(V, W) = -cos^2. U = c*g3 is independent.
    const double w1 = -c2;
    const double w2 = std::sqrt(1.0 - c4);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::MatrixXd values(static_cast<Eigen::Index>(cfg.n_samples), 3);
    for (Eigen::Index row = 0; row < values.rows(); ++row) {
        const double g1 = normal(rng);
        const double g2 = normal(rng);
        const double g3 = normal(rng);
        const double v = s * g1;
        const double w = s * (w1 * g1 + w2 * g2);
        const double u = c * g3;
        values(row, 0) = u + v;  // X
        values(row, 1) = u + w;  // Y
        values(row, 2) = u;      // Z
    }
    return DataMatrix(std::move(values), {"X", "Y", "Z"});
}

}  // namespace corrmetric
