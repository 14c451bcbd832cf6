#pragma once

#include <cstdint>
#include <vector>

#include "corrmetric/correlation.hpp"

namespace corrmetric {

// Angle parameterizing the counterexample family, strictly inside (0, pi/2);
// the endpoints degenerate the construction.
class ThetaParams {
public:
    explicit ThetaParams(double radians);
    double value() const { return theta_; }

private:
    double theta_;
};

// Second moments of the latent triple (U, V, W): U independent of (V, W),
// var(U) = cos^2(theta), var(V) = var(W) = sin^2(theta),
// corr(V, W) = -cos^2(theta).
struct LatentSpec {
    double var_u = 0.0;
    double var_vw = 0.0;
    double corr_vw = 0.0;
};

// The 3-variable family (X, Y, Z) = (U+V, U+W, U) whose correlation matrix is
//   [[1, cos^4, cos], [cos^4, 1, cos], [cos, cos, 1]].
struct CounterexampleSpec {
    ThetaParams theta;
    CorrelationMatrix correlation;
    LatentSpec latent;
};

// Closed-form triangle margins d(X,Y) - d(X,Z) - d(Z,Y) of the family under
// each measure. pearson and abs_pearson coincide here (all correlations are
// positive); sqrt_pearson and p_squared can never be positive.
struct ViolationMargins {
    double pearson = 0.0;
    double abs_pearson = 0.0;
    double sqrt_pearson = 0.0;
    double psquared = 0.0;
};

struct SampleConfig {
    std::size_t n_samples = 0;  // >= 2
    std::uint64_t seed = 0;
};

struct BoundaryEstimate {
    double theta_star = 0.0;         // largest theta with pearson margin > 0 on (0, theta*)
    double fraction_of_range = 0.0;  // theta* / (pi/2)
};

struct SweepRow {
    double theta = 0.0;
    ViolationMargins margins;
    bool pearson_violated = false;
    bool abs_pearson_violated = false;
    bool sqrt_pearson_violated = false;
    bool psquared_violated = false;
};

// Builds the family at theta and asserts its correlation matrix is PSD (it is
// realized by actual random variables, so this can only fail on a bug).
CounterexampleSpec build_counterexample(ThetaParams theta);

ViolationMargins margins(ThetaParams theta);

// Locates theta* by scanning a grid over (0.01, pi/2 - 0.01) for the sign
// change of the pearson margin, then bisecting to 1e-10. theta* is
// arccos(c*) with c* the real root of c^3 + c^2 + c - 1 = 0. Throws
// GridTooSmall below 100 points.
BoundaryEstimate sweep_boundary(std::size_t grid_size);

// Margins and violation flags on a grid over (0.01, pi/2 - 0.01).
std::vector<SweepRow> sweep_margins(std::size_t grid_size);

// Draws i.i.d. Gaussian realizations of (U, V, W) with the latent second
// moments and returns the columns X = U+V, Y = U+W, Z = U. Deterministic for
// a fixed (seed, n_samples, theta): the generator is local to the call and
// each row consumes exactly three normal draws.
DataMatrix sample_triple(const CounterexampleSpec& spec, const SampleConfig& cfg);

}  // namespace corrmetric
