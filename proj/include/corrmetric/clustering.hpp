#pragma once

#include <string>
#include <vector>

#include "corrmetric/metric_audit.hpp"

namespace corrmetric {

// Cross-cluster merge rule: single = min pair dissimilarity, complete = max,
// average = unweighted mean over cross pairs.
enum class LinkageKind { single, complete, average };

std::string to_string(LinkageKind k);
std::optional<LinkageKind> linkage_from_string(std::string_view name);

struct Merge {
    int cluster_a = 0;  // cluster_a < cluster_b
    int cluster_b = 0;
    double height = 0.0;
};

// Leaves are clusters 0..n-1; merge t creates cluster n+t. Exactly n-1 merges.
struct Dendrogram {
    std::vector<Merge> merges;
    std::vector<std::string> leaf_names;
    int n_leaves() const { return static_cast<int>(leaf_names.size()); }
};

// Disjoint index sets covering all leaves; each set ascending, sets ordered
// by smallest member.
using Partition = std::vector<std::vector<int>>;

// Agglomerative clustering: repeatedly merge the pair of active clusters with
// minimal linkage dissimilarity. Ties break toward the lexicographically
// smallest (cluster_a, cluster_b) id pair, which makes the output
// deterministic; on exact-tie inputs the result therefore depends on label
// order. Empty leaf_names default to V0..V{n-1}. Throws TooFewVariables for
// n < 2.
Dendrogram cluster(const DissimilarityMatrix& d, LinkageKind linkage,
                   std::vector<std::string> leaf_names = {});

// Partition into k clusters by undoing the last k-1 merges.
// Throws KOutOfRange unless 1 <= k <= n.
Partition cut(const Dendrogram& dend, std::size_t k);

// Fraction of variable pairs on whose co-membership the two partitions agree;
// 1 for identical partitions, symmetric in its arguments.
double rand_index(const Partition& a, const Partition& b, std::size_t n);

struct KAgreement {
    std::size_t k = 0;
    Partition partition_a, partition_b;
    double rand = 0.0;
};

// Side-by-side coherence comparison of two measures on one correlation
// matrix: coherence indices, dendrograms, and partition agreement at each k.
struct CoherenceComparison {
    MeasureKind measure_a = MeasureKind::pearson;
    MeasureKind measure_b = MeasureKind::pearson;
    CoherenceIndex coherence_a, coherence_b;
    Dendrogram dendrogram_a, dendrogram_b;
    std::vector<KAgreement> at_k;  // ascending k
};

CoherenceComparison compare_measures(const CorrelationMatrix& c, MeasureKind a, MeasureKind b,
                                     LinkageKind linkage, const std::vector<std::size_t>& ks,
                                     std::vector<std::string> names = {});

}  // namespace corrmetric
