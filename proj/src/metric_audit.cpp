#include "corrmetric/metric_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace corrmetric {

MetricReport audit(const DissimilarityMatrix& d, double tol, bool fail_fast) {
    const int n = static_cast<int>(d.size());
    MetricReport report;
    report.tolerance = tol;

    // Symmetry and the nonnegativity/zero-diagonal axioms. The type stores
    // canonically, so these only fail for exotic inputs; the audit re-checks
    // rather than trusting the producer.
    report.symmetric = true;
    report.nonneg_zero_diag = true;
    for (int i = 0; i < n; ++i) {
        if (std::abs(d(i, i)) > tol) report.nonneg_zero_diag = false;
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(d(i, j) - d(j, i)) > tol) report.symmetric = false;
            if (d(i, j) < -tol) report.nonneg_zero_diag = false;
            if (d(i, j) == 0.0) report.zero_offdiagonal_pairs.emplace_back(i, j);
        }
    }

    // Triangle and ultrametric scans over unordered pairs {i, j} with every
    // intermediate k; symmetry makes the ordered duplicates redundant.
    double worst_ultra = -std::numeric_limits<double>::infinity();
    bool stop = false;
    for (int i = 0; i < n && !stop; ++i) {
        for (int j = i + 1; j < n && !stop; ++j) {
            const double dij = d(i, j);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double dik = d(i, k);
                const double dkj = d(k, j);
                const double margin = dij - dik - dkj;
                if (margin > tol) {
                    report.triangle_violations.push_back({i, j, k, margin});
                    if (fail_fast) {
                        stop = true;
                        break;
                    }
                }
                const double ultra_margin = dij - std::max(dik, dkj);
                if (ultra_margin > tol) {
                    ++report.ultrametric_violation_count;
                    if (ultra_margin > worst_ultra) {
                        worst_ultra = ultra_margin;
                        report.worst_ultrametric = TriangleViolation{i, j, k, ultra_margin};
                    }
                }
            }
        }
    }

    std::sort(report.triangle_violations.begin(), report.triangle_violations.end(),
              [](const TriangleViolation& a, const TriangleViolation& b) {
                  if (a.margin != b.margin) return a.margin > b.margin;
                  return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
              });

    report.is_metric =
        report.symmetric && report.nonneg_zero_diag && report.triangle_violations.empty();
    report.is_ultrametric = report.is_metric && report.ultrametric_violation_count == 0;
    return report;
}

std::string to_string(CertificateVerdict v) {
    return v == CertificateVerdict::certified_metric ? "certified_metric" : "inconclusive";
}

MetricCertificate certify_sqrt_metric(const CorrelationMatrix& s, double tol_rel) {
    const PsdVerdict verdict = psd_check(s, tol_rel);
    MetricCertificate cert;
    cert.min_eigenvalue = verdict.min_eigenvalue;
    cert.verdict = verdict.is_psd ? CertificateVerdict::certified_metric
                                  : CertificateVerdict::inconclusive;
    return cert;
}

CoherenceIndex coherence_index(const DissimilarityMatrix& d) {
    const int n = static_cast<int>(d.size());
    if (n < 3) {
        throw TooFewVariables(static_cast<std::size_t>(n), 3);
    }
    CoherenceIndex best;
    best.value = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = d(i, j);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double denom = d(i, k) + d(k, j);
                double ratio;
                if (denom == 0.0) {
                    if (dij == 0.0) continue;  // 0/0 triples carry no information
                    ratio = std::numeric_limits<double>::infinity();
                } else {
                    ratio = dij / denom;
                }
                if (!found || ratio > best.value) {
                    best = CoherenceIndex{ratio, i, j, k};
                    found = true;
                }
            }
        }
    }
    if (!found) {
        // All triples were 0/0: a fully degenerate all-zero matrix.
        best = CoherenceIndex{0.0, 0, 1, 2};
    }
    return best;
}

}  // namespace corrmetric
