#include "corrmetric/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace corrmetric {

std::string to_string(LinkageKind k) {
    switch (k) {
        case LinkageKind::single: return "single";
        case LinkageKind::complete: return "complete";
        case LinkageKind::average: return "average";
    }
    return "unknown";
}

std::optional<LinkageKind> linkage_from_string(std::string_view name) {
    if (name == "single") return LinkageKind::single;
    if (name == "complete") return LinkageKind::complete;
    if (name == "average") return LinkageKind::average;
    return std::nullopt;
}

Dendrogram cluster(const DissimilarityMatrix& d, LinkageKind linkage,
                   std::vector<std::string> leaf_names) {
    const int n = static_cast<int>(d.size());
    if (n < 2) {
        throw TooFewVariables(static_cast<std::size_t>(n), 2);
    }
    if (leaf_names.empty()) {
        for (int i = 0; i < n; ++i) leaf_names.push_back("V" + std::to_string(i));
    }
    if (static_cast<int>(leaf_names.size()) != n) {
        throw Error("leaf name count does not match matrix size");
    }

    // Cluster ids: leaves 0..n-1, merge t creates id n+t. Cross-cluster
    // dissimilarities live in one (2n-1)^2 table and are updated with the
    // Lance-Williams rules, which are exact for these three linkages.
    const int total = 2 * n - 1;
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(total, total);
    std::vector<int> sizes(total, 0);
    std::vector<bool> active(total, false);
    for (int i = 0; i < n; ++i) {
        sizes[i] = 1;
        active[i] = true;
        for (int j = 0; j < n; ++j) dist(i, j) = d(i, j);
    }

    Dendrogram dend;
    dend.leaf_names = std::move(leaf_names);
    dend.merges.reserve(n - 1);

    for (int step = 0; step < n - 1; ++step) {
        // Minimal pair; ascending id iteration makes the first strict minimum
        // the lexicographically smallest tied pair.
        int best_a = -1, best_b = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < total; ++a) {
            if (!active[a]) continue;
            for (int b = a + 1; b < total; ++b) {
                if (!active[b]) continue;
                if (dist(a, b) < best) {
                    best = dist(a, b);
                    best_a = a;
                    best_b = b;
                }
            }
        }

        const int merged = n + step;
        for (int c = 0; c < total; ++c) {
            if (!active[c] || c == best_a || c == best_b) continue;
            const double dac = dist(best_a, c);
            const double dbc = dist(best_b, c);
            double updated = 0.0;
            switch (linkage) {
                case LinkageKind::single: updated = std::min(dac, dbc); break;
                case LinkageKind::complete: updated = std::max(dac, dbc); break;
                case LinkageKind::average:
                    updated = (sizes[best_a] * dac + sizes[best_b] * dbc) /
                              static_cast<double>(sizes[best_a] + sizes[best_b]);
                    break;
            }
            dist(merged, c) = updated;
            dist(c, merged) = updated;
        }
        sizes[merged] = sizes[best_a] + sizes[best_b];
        active[best_a] = false;
        active[best_b] = false;
        active[merged] = true;
        dend.merges.push_back(Merge{best_a, best_b, best});
    }
    return dend;
}

Partition cut(const Dendrogram& dend, std::size_t k) {
    const int n = dend.n_leaves();
    if (k < 1 || k > static_cast<std::size_t>(n)) {
        throw KOutOfRange(k, static_cast<std::size_t>(n));
    }

    // Apply the first n-k merges; the roots then define the k clusters.
    const int applied = n - static_cast<int>(k);
    std::vector<int> parent(n + applied);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int t = 0; t < applied; ++t) {
        const Merge& m = dend.merges[static_cast<std::size_t>(t)];
        const int root = n + t;
        parent[find(m.cluster_a)] = root;
        parent[find(m.cluster_b)] = root;
    }

    std::vector<std::vector<int>> by_root(n + applied);
    for (int leaf = 0; leaf < n; ++leaf) {
        by_root[static_cast<std::size_t>(find(leaf))].push_back(leaf);
    }
    Partition partition;
    for (auto& group : by_root) {
        if (!group.empty()) partition.push_back(std::move(group));
    }
    // Members come out ascending; order the sets by smallest member.
    std::sort(partition.begin(), partition.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    return partition;
}

double rand_index(const Partition& a, const Partition& b, std::size_t n) {
    if (n < 2) return 1.0;
    std::vector<int> label_a(n, -1), label_b(n, -1);
    for (std::size_t c = 0; c < a.size(); ++c) {
        for (int member : a[c]) label_a[static_cast<std::size_t>(member)] = static_cast<int>(c);
    }
    for (std::size_t c = 0; c < b.size(); ++c) {
        for (int member : b[c]) label_b[static_cast<std::size_t>(member)] = static_cast<int>(c);
    }
    std::size_t agree = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool together_a = label_a[i] == label_a[j];
            const bool together_b = label_b[i] == label_b[j];
            agree += together_a == together_b ? 1 : 0;
            ++pairs;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(pairs);
}

CoherenceComparison compare_measures(const CorrelationMatrix& c, MeasureKind a, MeasureKind b,
                                     LinkageKind linkage, const std::vector<std::size_t>& ks,
                                     std::vector<std::string> names) {
    const DissimilarityMatrix da = apply_measure(c, a);
    const DissimilarityMatrix db = apply_measure(c, b);

    CoherenceComparison cmp;
    cmp.measure_a = a;
    cmp.measure_b = b;
    cmp.coherence_a = coherence_index(da);
    cmp.coherence_b = coherence_index(db);
    cmp.dendrogram_a = cluster(da, linkage, names);
    cmp.dendrogram_b = cluster(db, linkage, std::move(names));

    std::vector<std::size_t> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()), sorted_ks.end());
    for (std::size_t k : sorted_ks) {
        KAgreement agreement;
        agreement.k = k;
        agreement.partition_a = cut(cmp.dendrogram_a, k);
        agreement.partition_b = cut(cmp.dendrogram_b, k);
        agreement.rand = rand_index(agreement.partition_a, agreement.partition_b,
                                    static_cast<std::size_t>(c.size()));
        cmp.at_k.push_back(std::move(agreement));
    }
    return cmp;
}

}  // namespace corrmetric
