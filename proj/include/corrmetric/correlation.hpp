#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "corrmetric/errors.hpp"

namespace corrmetric {

// Observations of a finite set of variables: rows are samples, columns are
// variables. Immutable after construction.
class DataMatrix {
public:
    DataMatrix(Eigen::MatrixXd values, std::vector<std::string> var_names);

    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    Eigen::Index n_obs() const { return values_.rows(); }
    Eigen::Index n_vars() const { return values_.cols(); }

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> var_names_;
};

// Symmetric unit-diagonal matrix of pairwise correlations (or any normalized
// similarity): stored canonically, so entries(i,j) == entries(j,i) exactly,
// the diagonal is exactly 1 and every entry lies in [-1, 1].
class CorrelationMatrix {
public:
    // Unconditionally canonicalizes: symmetrizes by averaging, clamps to
    // [-1, 1] and sets the diagonal to 1. For matrices we computed ourselves;
    // user-supplied matrices go through validate_correlation instead.
    static CorrelationMatrix canonical(Eigen::MatrixXd m);

    const Eigen::MatrixXd& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    explicit CorrelationMatrix(Eigen::MatrixXd m) : entries_(std::move(m)) {}
    Eigen::MatrixXd entries_;
};

struct PsdVerdict {
    double min_eigenvalue = 0.0;
    bool is_psd = false;
    double tolerance_used = 0.0;
};

// Sample Pearson correlation of all column pairs. Columns are mean-centered
// and scaled by their sample standard deviation; each pair is computed once
// and mirrored, the diagonal is exactly 1 and entries are clamped to [-1, 1].
// Throws DimensionTooSmall if there are fewer than 2 rows and
// ZeroVarianceColumn if any column is constant.
CorrelationMatrix pearson_correlation(const DataMatrix& data);

// Ingestion guard for user-supplied matrices. Accepts m when its asymmetry,
// diagonal deviation from 1 and range excess are all within tol, then returns
// the canonical (symmetrized, clamped, unit-diagonal) form. Throws NotSquare,
// AsymmetryExceeded, DiagonalNotUnit or EntryOutOfRange.
CorrelationMatrix validate_correlation(const Eigen::MatrixXd& m, double tol);

// Smallest eigenvalue of the symmetric matrix, with a verdict relative to the
// spectral scale: tolerance_used = tol_rel * max(1, |lambda|_max) and
// is_psd <=> min_eigenvalue >= -tolerance_used.
PsdVerdict psd_check(const CorrelationMatrix& c, double tol_rel = 1e-10);

// Entrywise square. The result is again a valid correlation matrix: it is the
// correlation matrix of coordinatewise products of two independent copies,
// and PSD inputs stay PSD (Schur product theorem; tests check this).
CorrelationMatrix hadamard_square(const CorrelationMatrix& c);

}  // namespace corrmetric
