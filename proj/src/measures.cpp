#include "corrmetric/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace corrmetric {

namespace {
constexpr double kNegativeClamp = 1e-12;   // rounding-level negatives snapped to 0
constexpr double kDifferenceSlack = 1e-12; // strictness threshold for the analyzer
}  // namespace

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::pearson: return "pearson";
        case MeasureKind::abs_pearson: return "abspearson";
        case MeasureKind::sqrt_pearson: return "sqrtpearson";
        case MeasureKind::p_squared: return "psquared";
    }
    return "unknown";
}

std::optional<MeasureKind> measure_from_string(std::string_view name) {
    if (name == "pearson") return MeasureKind::pearson;
    if (name == "abspearson") return MeasureKind::abs_pearson;
    if (name == "sqrtpearson") return MeasureKind::sqrt_pearson;
    if (name == "psquared") return MeasureKind::p_squared;
    return std::nullopt;
}

double measure_value(MeasureKind kind, double rho) {
    switch (kind) {
        case MeasureKind::pearson: return 1.0 - rho;
        case MeasureKind::abs_pearson: return 1.0 - std::abs(rho);
        case MeasureKind::sqrt_pearson: return std::sqrt(std::max(0.0, 1.0 - rho));
        case MeasureKind::p_squared: return std::sqrt(std::max(0.0, 1.0 - rho * rho));
    }
    return 0.0;
}

DissimilarityMatrix::DissimilarityMatrix(Eigen::MatrixXd entries, std::string provenance)
    : entries_(std::move(entries)), provenance_(std::move(provenance)) {
    if (entries_.rows() != entries_.cols()) {
        throw NotSquare(static_cast<std::size_t>(entries_.rows()),
                        static_cast<std::size_t>(entries_.cols()));
    }
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        entries_(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = entries_(i, j);
            if (v != entries_(j, i)) {
                throw Error("dissimilarity matrix is not symmetric");
            }
            if (v < 0.0) {
                if (v < -kNegativeClamp) {
                    throw Error("negative dissimilarity entry " + std::to_string(v));
                }
                v = 0.0;
            }
            entries_(i, j) = v;
            entries_(j, i) = v;
        }
    }
}

DissimilarityMatrix apply_measure(const CorrelationMatrix& c, MeasureKind kind) {
    const Eigen::Index n = c.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = measure_value(kind, c(i, j));
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return DissimilarityMatrix(std::move(d), to_string(kind));
}

TransformSpec TransformSpec::builtin(Builtin b) {
    TransformSpec spec;
    spec.sampled_ = false;
    spec.builtin_ = b;
    switch (b) {
        case Builtin::square: spec.name_ = "square"; break;
        case Builtin::sqrt: spec.name_ = "sqrt"; break;
        case Builtin::quarter_root_composite: spec.name_ = "quarter_root_composite"; break;
        case Builtin::circle_convex: spec.name_ = "circle_convex"; break;
    }
    return spec;
}

std::optional<TransformSpec> TransformSpec::builtin_from_string(std::string_view name) {
    if (name == "square") return builtin(Builtin::square);
    if (name == "sqrt") return builtin(Builtin::sqrt);
    if (name == "quarter_root_composite") return builtin(Builtin::quarter_root_composite);
    if (name == "circle_convex") return builtin(Builtin::circle_convex);
    return std::nullopt;
}

TransformSpec TransformSpec::sampled(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size()) {
        throw Error("sampled transform: x and y counts differ");
    }
    if (xs.size() < 16) {
        throw GridTooSmall(xs.size(), 16);
    }
    if (xs.front() != 0.0) {
        throw Error("sampled transform: grid must start at x = 0");
    }
    if (std::abs(ys.front()) > kNegativeClamp) {
        throw Error("sampled transform: f(0) must be 0");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw Error("sampled transform: abscissae must be strictly ascending");
        }
    }
    for (double y : ys) {
        if (y < 0.0) {
            throw Error("sampled transform: values must be nonnegative");
        }
    }
    TransformSpec spec;
    spec.sampled_ = true;
    spec.xs_ = std::move(xs);
    spec.ys_ = std::move(ys);
    spec.name_ = "sampled";
    return spec;
}

bool TransformSpec::in_domain(double x) const {
    if (x < 0.0) return false;
    if (sampled_) return x <= xs_.back();
    if (builtin_ == Builtin::circle_convex) return x <= 1.0;
    return true;
}

double TransformSpec::evaluate(double x) const {
    if (sampled_) {
        // Monotone piecewise-linear interpolation between grid knots.
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        if (it == xs_.begin()) return ys_.front();
        if (it == xs_.end()) return ys_.back();
        const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
        const std::size_t lo = hi - 1;
        const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
        return ys_[lo] + t * (ys_[hi] - ys_[lo]);
    }
    switch (builtin_) {
        case Builtin::square: return x * x;
        case Builtin::sqrt: return std::sqrt(x);
        case Builtin::quarter_root_composite: return std::sqrt(std::sqrt(x));
        case Builtin::circle_convex: return 1.0 - std::sqrt(std::max(0.0, 1.0 - x * x));
    }
    return 0.0;
}

double TransformSpec::domain_max() const {
    if (sampled_) return xs_.back();
    if (builtin_ == Builtin::circle_convex) return 1.0;
    return std::numeric_limits<double>::infinity();
}

DissimilarityMatrix compose_transform(const DissimilarityMatrix& d, const TransformSpec& f) {
    const Eigen::Index n = d.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double x = d(i, j);
            if (!f.in_domain(x)) {
                throw DomainExceeded(static_cast<std::size_t>(i), static_cast<std::size_t>(j), x);
            }
            const double v = f.evaluate(x);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return DissimilarityMatrix(std::move(out), f.name() + "(" + d.provenance() + ")");
}

std::string to_string(Curvature c) {
    switch (c) {
        case Curvature::strictly_convex: return "strictly_convex";
        case Curvature::strictly_concave: return "strictly_concave";
        case Curvature::mixed: return "mixed/indeterminate";
    }
    return "unknown";
}

std::string to_string(Prediction p) {
    switch (p) {
        case Prediction::metric_preserving: return "metric_preserving";
        case Prediction::not_metric_preserving: return "not_metric_preserving";
        case Prediction::no_prediction: return "no_prediction";
    }
    return "unknown";
}

TransformVerdict analyze_transform(const TransformSpec& f, const std::vector<double>& grid) {
    if (grid.size() < 16) {
        throw GridTooSmall(grid.size(), 16);
    }
    std::vector<double> knots;
    knots.reserve(grid.size() + 1);
    knots.push_back(0.0);
    for (double x : grid) {
        if (!(x > knots.back())) {
            throw Error("analysis grid must be strictly ascending and positive");
        }
        knots.push_back(x);
    }

    std::vector<double> values(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!f.in_domain(knots[i])) {
            throw DomainExceeded(i, i, knots[i]);
        }
        values[i] = f.evaluate(knots[i]);
    }

    TransformVerdict verdict;
    verdict.passes_origin = std::abs(values.front()) <= kDifferenceSlack;

    bool increasing = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i + 1] - values[i] > kDifferenceSlack)) {
            increasing = false;
            break;
        }
    }
    verdict.monotone_increasing = increasing;

    // Curvature from successive chord slopes, so uneven grids are handled.
    bool all_convex = true;
    bool all_concave = true;
    double prev_slope = (values[1] - values[0]) / (knots[1] - knots[0]);
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double slope = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
        const double curvature = slope - prev_slope;
        if (!(curvature > kDifferenceSlack)) all_convex = false;
        if (!(curvature < -kDifferenceSlack)) all_concave = false;
        prev_slope = slope;
    }
    if (all_convex) {
        verdict.convexity = Curvature::strictly_convex;
    } else if (all_concave) {
        verdict.convexity = Curvature::strictly_concave;
    } else {
        verdict.convexity = Curvature::mixed;
    }

    if (verdict.passes_origin && verdict.convexity == Curvature::strictly_convex) {
        verdict.prediction = Prediction::not_metric_preserving;
    } else if (verdict.passes_origin && verdict.monotone_increasing &&
               verdict.convexity == Curvature::strictly_concave) {
        verdict.prediction = Prediction::metric_preserving;
    } else {
        verdict.prediction = Prediction::no_prediction;
    }
    return verdict;
}

std::vector<double> uniform_grid(double x_max, std::size_t count) {
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = x_max * static_cast<double>(i + 1) / static_cast<double>(count);
    }
    return grid;
}

double default_analysis_max(const TransformSpec& f) {
    const double dm = f.domain_max();
    if (std::isfinite(dm)) return 0.99 * dm;
    return 2.0;
}

}  // namespace corrmetric
