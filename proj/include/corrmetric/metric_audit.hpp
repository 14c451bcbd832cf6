#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "corrmetric/measures.hpp"

namespace corrmetric {

// One failed triangle: d(i,j) > d(i,k) + d(k,j) by margin, with i < j
// canonically. For ultrametric records the margin is d(i,j) - max(d(i,k), d(k,j)).
struct TriangleViolation {
    int i = 0, j = 0, k = 0;
    double margin = 0.0;
};

struct MetricReport {
    bool symmetric = false;
    bool nonneg_zero_diag = false;
    // Sorted by descending margin, then lexicographic (i, j, k).
    std::vector<TriangleViolation> triangle_violations;
    std::size_t ultrametric_violation_count = 0;
    std::optional<TriangleViolation> worst_ultrametric;
    // Distinct variables at dissimilarity 0: the strict-positivity axiom
    // cannot be decided from the matrix alone, so these are warnings.
    std::vector<std::pair<int, int>> zero_offdiagonal_pairs;
    bool is_metric = false;
    bool is_ultrametric = false;
    double tolerance = 0.0;
};

// Full metric-property audit. Scans every unordered pair {i, j} with every
// intermediate k (O(n^3)); a violation is recorded when the margin exceeds
// tol. The ultrametric scan runs alongside. With fail_fast the scan stops at
// the first triangle violation (the lists are then incomplete; the verdicts
// are still correct).
MetricReport audit(const DissimilarityMatrix& d, double tol = 1e-9, bool fail_fast = false);

enum class CertificateVerdict { certified_metric, inconclusive };

std::string to_string(CertificateVerdict v);

struct MetricCertificate {
    CertificateVerdict verdict = CertificateVerdict::inconclusive;
    double min_eigenvalue = 0.0;
};

// PSD certificate for sqrt(1 - s): if the similarity matrix s is positive
// semi-definite then sqrt(1 - s) is a metric, no triple scan needed. The
// implication is one-directional, so a non-PSD input is inconclusive, never
// "not a metric".
MetricCertificate certify_sqrt_metric(const CorrelationMatrix& s, double tol_rel = 1e-10);

struct CoherenceIndex {
    double value = 0.0;
    int i = 0, j = 0, k = 0;  // achieving triple: d(i,j) / (d(i,k) + d(k,j))
};

// Max over distinct triples of d(i,j) / (d(i,k) + d(k,j)); <= 1 exactly when
// the triangle inequality holds everywhere at tolerance 0. A zero denominator
// under a positive numerator yields +infinity; 0/0 triples are skipped.
// Throws TooFewVariables for n < 3.
CoherenceIndex coherence_index(const DissimilarityMatrix& d);

}  // namespace corrmetric
