#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrmetric/correlation.hpp"

namespace corrmetric {

// The four correlation dissimilarities:
//   pearson       d = 1 - rho
//   abs_pearson   d = 1 - |rho|
//   sqrt_pearson  d = sqrt(1 - rho)
//   p_squared     d = sqrt(1 - rho^2)
enum class MeasureKind { pearson, abs_pearson, sqrt_pearson, p_squared };

std::string to_string(MeasureKind kind);
std::optional<MeasureKind> measure_from_string(std::string_view name);
double measure_value(MeasureKind kind, double rho);

// Symmetric zero-diagonal nonnegative matrix produced by a measure or a
// transform; provenance records how it was made (e.g. "sqrt(pearson)").
class DissimilarityMatrix {
public:
    DissimilarityMatrix(Eigen::MatrixXd entries, std::string provenance);

    const Eigen::MatrixXd& entries() const { return entries_; }
    const std::string& provenance() const { return provenance_; }
    Eigen::Index size() const { return entries_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    Eigen::MatrixXd entries_;
    std::string provenance_;
};

// A scalar function f: [0,inf) -> [0,inf) with f(0) = 0, either one of the
// builtins or a piecewise-linear interpolant of a sampled grid.
//   square                 f(x) = x^2
//   sqrt                   f(x) = sqrt(x)
//   quarter_root_composite f(x) = x^(1/4), i.e. sqrt applied twice
//   circle_convex          f(x) = 1 - sqrt(1 - x^2), domain [0, 1]
class TransformSpec {
public:
    enum class Builtin { square, sqrt, quarter_root_composite, circle_convex };

    static TransformSpec builtin(Builtin b);
    static std::optional<TransformSpec> builtin_from_string(std::string_view name);

    // Sampled spec: xs strictly ascending with xs[0] == 0, |ys[0]| <= 1e-12
    // and at least 16 points. Throws GridTooSmall or Error on bad input.
    static TransformSpec sampled(std::vector<double> xs, std::vector<double> ys);

    bool in_domain(double x) const;
    double evaluate(double x) const;  // precondition: in_domain(x)
    // Upper end of the domain: grid end for sampled specs, 1 for
    // circle_convex, +inf otherwise.
    double domain_max() const;
    const std::string& name() const { return name_; }
    bool is_sampled() const { return sampled_; }

private:
    TransformSpec() = default;
    bool sampled_ = false;
    Builtin builtin_ = Builtin::square;
    std::vector<double> xs_, ys_;
    std::string name_;
};

enum class Curvature { strictly_convex, strictly_concave, mixed };
enum class Prediction { metric_preserving, not_metric_preserving, no_prediction };

std::string to_string(Curvature c);
std::string to_string(Prediction p);

// Outcome of the metric-preservation analysis. A function is predicted
// metric-preserving only when it passes the origin, strictly increases and is
// strictly concave on the tested grid; predicted non-preserving only when it
// passes the origin and is strictly convex. Everything else abstains.
struct TransformVerdict {
    bool passes_origin = false;
    bool monotone_increasing = false;
    Curvature convexity = Curvature::mixed;
    Prediction prediction = Prediction::no_prediction;
};

// Entrywise dissimilarity per the measure formula; the diagonal is exactly 0
// and rounding-level negatives (magnitude <= 1e-12) are clamped to 0.
DissimilarityMatrix apply_measure(const CorrelationMatrix& c, MeasureKind kind);

// Entrywise application of f. Throws DomainExceeded(i, j, value) when an
// entry falls outside f's domain. The zero diagonal is preserved (f(0) = 0).
DissimilarityMatrix compose_transform(const DissimilarityMatrix& d, const TransformSpec& f);

// Decides monotonicity and curvature from finite differences over {0} + grid
// (grid: >= 16 strictly ascending points in (0, x_max]). Strict increase
// requires every first difference > 1e-12; curvature compares successive
// chord slopes against the same slack, so non-uniform grids are fine.
// Indeterminate cases (e.g. affine specs) yield no_prediction.
TransformVerdict analyze_transform(const TransformSpec& f, const std::vector<double>& grid);

// count evenly spaced points over (0, x_max], endpoints included on the right.
std::vector<double> uniform_grid(double x_max, std::size_t count);

// Default analysis range: 0.99 for circle_convex (the derivative blows up at
// 1), 2 for everything else (dissimilarities here are bounded by 2).
double default_analysis_max(const TransformSpec& f);

}  // namespace corrmetric
