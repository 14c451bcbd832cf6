#include "corrmetric/correlation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>

namespace corrmetric {

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> var_names)
    : values_(std::move(values)), var_names_(std::move(var_names)) {
    if (values_.rows() < 2) {
        throw DimensionTooSmall(static_cast<std::size_t>(values_.rows()));
    }
    if (values_.cols() < 1 || static_cast<Eigen::Index>(var_names_.size()) != values_.cols()) {
        throw Error("variable name count does not match column count");
    }
}

CorrelationMatrix CorrelationMatrix::canonical(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) {
        throw NotSquare(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    }
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = std::clamp(0.5 * (m(i, j) + m(j, i)), -1.0, 1.0);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return CorrelationMatrix(std::move(m));
}

CorrelationMatrix pearson_correlation(const DataMatrix& data) {
    const Eigen::Index n_obs = data.n_obs();
    const Eigen::Index n = data.n_vars();
    if (n_obs < 2) {
        throw DimensionTooSmall(static_cast<std::size_t>(n_obs));
    }

    // Center the columns; the n-1 denominators of variance and covariance
    // cancel, so only centered cross products are needed.
    Eigen::MatrixXd centered = data.values().rowwise() - data.values().colwise().mean();
    Eigen::VectorXd norms(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto col = data.values().col(j);
        if (col.maxCoeff() == col.minCoeff()) {
            throw ZeroVarianceColumn(static_cast<std::size_t>(j));
        }
        norms(j) = centered.col(j).norm();
        if (norms(j) == 0.0) {
            throw ZeroVarianceColumn(static_cast<std::size_t>(j));
        }
    }

    Eigen::MatrixXd corr(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        corr(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j));
            const double clamped = std::clamp(r, -1.0, 1.0);
            corr(i, j) = clamped;
            corr(j, i) = clamped;
        }
    }
    return CorrelationMatrix::canonical(std::move(corr));
}

CorrelationMatrix validate_correlation(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) {
        throw NotSquare(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    }
    const Eigen::Index n = m.rows();

    double max_delta = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            max_delta = std::max(max_delta, std::abs(m(i, j) - m(j, i)));
        }
    }
    if (max_delta > tol) {
        throw AsymmetryExceeded(max_delta);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(m(i, i) - 1.0) > tol) {
            throw DiagonalNotUnit(static_cast<std::size_t>(i));
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(m(i, j)) > 1.0 + tol) {
                throw EntryOutOfRange(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                      m(i, j));
            }
        }
    }
    return CorrelationMatrix::canonical(m);
}

PsdVerdict psd_check(const CorrelationMatrix& c, double tol_rel) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.entries(),
                                                          Eigen::EigenvaluesOnly);
    const auto& eigenvalues = solver.eigenvalues();  // ascending
    const double min_ev = eigenvalues(0);
    const double max_abs = std::max(std::abs(eigenvalues(0)),
                                    std::abs(eigenvalues(eigenvalues.size() - 1)));
    PsdVerdict verdict;
    verdict.min_eigenvalue = min_ev;
    verdict.tolerance_used = tol_rel * std::max(1.0, max_abs);
    verdict.is_psd = min_ev >= -verdict.tolerance_used;
    return verdict;
}

CorrelationMatrix hadamard_square(const CorrelationMatrix& c) {
    Eigen::MatrixXd squared = c.entries().cwiseProduct(c.entries());
    return CorrelationMatrix::canonical(std::move(squared));
}

}  // namespace corrmetric
