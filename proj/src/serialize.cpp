#include "corrmetric/serialize.hpp"

#include <cmath>

namespace corrmetric {

namespace {

// JSON has no infinity literal; degenerate coherence ratios come out as a
// tagged string instead of nlohmann's silent null.
json finite_or_tag(double v) {
    if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
    return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json triple_names(int i, int j, int k, const std::vector<std::string>& names) {
    return json::array({names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)],
                        names[static_cast<std::size_t>(k)]});
}

}  // namespace

json to_json(const TriangleViolation& v, const std::vector<std::string>& names) {
    json out{{"i", v.i}, {"j", v.j}, {"k", v.k}, {"margin", v.margin}};
    if (!names.empty()) out["variables"] = triple_names(v.i, v.j, v.k, names);
    return out;
}

json to_json(const MetricReport& report, const std::vector<std::string>& names) {
    json violations = json::array();
    for (const auto& v : report.triangle_violations) violations.push_back(to_json(v, names));

    json ultra{{"count", report.ultrametric_violation_count}};
    ultra["worst"] = report.worst_ultrametric ? to_json(*report.worst_ultrametric, names)
                                              : json(nullptr);

    json zeros = json::array();
    for (const auto& [i, j] : report.zero_offdiagonal_pairs) {
        json pair{{"i", i}, {"j", j}};
        if (!names.empty()) {
            pair["variables"] = json::array({names[static_cast<std::size_t>(i)],
                                             names[static_cast<std::size_t>(j)]});
        }
        zeros.push_back(std::move(pair));
    }

    return json{{"symmetric", report.symmetric},
                {"nonneg_zero_diag", report.nonneg_zero_diag},
                {"tolerance", report.tolerance},
                {"is_metric", report.is_metric},
                {"is_ultrametric", report.is_ultrametric},
                {"triangle_violations", std::move(violations)},
                {"ultrametric_violations", std::move(ultra)},
                {"zero_dissimilarity_pairs", std::move(zeros)}};
}

json to_json(const MetricCertificate& cert) {
    return json{{"verdict", to_string(cert.verdict)},
                {"min_eigenvalue", cert.min_eigenvalue}};
}

json to_json(const CoherenceIndex& ci, const std::vector<std::string>& names) {
    json out{{"value", finite_or_tag(ci.value)}, {"i", ci.i}, {"j", ci.j}, {"k", ci.k}};
    if (!names.empty()) out["variables"] = triple_names(ci.i, ci.j, ci.k, names);
    return out;
}

json to_json(const PsdVerdict& verdict) {
    return json{{"min_eigenvalue", verdict.min_eigenvalue},
                {"is_psd", verdict.is_psd},
                {"tolerance_used", verdict.tolerance_used}};
}

json to_json(const TransformVerdict& verdict) {
    return json{{"passes_origin", verdict.passes_origin},
                {"monotone_increasing", verdict.monotone_increasing},
                {"convexity", to_string(verdict.convexity)},
                {"prediction", to_string(verdict.prediction)}};
}

json to_json(const CounterexampleSpec& spec) {
    return json{{"theta", spec.theta.value()},
                {"correlation", matrix_to_json(spec.correlation.entries())},
                {"latent",
                 json{{"var_u", spec.latent.var_u},
                      {"var_vw", spec.latent.var_vw},
                      {"corr_vw", spec.latent.corr_vw}}}};
}

json to_json(const ViolationMargins& m) {
    return json{{"pearson", m.pearson},
                {"abs_pearson", m.abs_pearson},
                {"sqrt_pearson", m.sqrt_pearson},
                {"psquared", m.psquared}};
}

json to_json(const Dendrogram& dend) {
    json merges = json::array();
    for (const Merge& m : dend.merges) {
        merges.push_back(json{{"a", m.cluster_a}, {"b", m.cluster_b}, {"height", m.height}});
    }
    return json{{"leaves", dend.leaf_names}, {"merges", std::move(merges)}};
}

json to_json(const Partition& partition, const std::vector<std::string>& names) {
    json sets = json::array();
    for (const auto& group : partition) {
        json members = json::array();
        for (int member : group) {
            if (!names.empty()) {
                members.push_back(names[static_cast<std::size_t>(member)]);
            } else {
                members.push_back(member);
            }
        }
        sets.push_back(std::move(members));
    }
    return sets;
}

json to_json(const CoherenceComparison& cmp) {
    const auto& names = cmp.dendrogram_a.leaf_names;
    json at_k = json::array();
    for (const KAgreement& agreement : cmp.at_k) {
        at_k.push_back(json{{"k", agreement.k},
                            {"partition_a", to_json(agreement.partition_a, names)},
                            {"partition_b", to_json(agreement.partition_b, names)},
                            {"rand_index", agreement.rand}});
    }
    return json{{"measure_a", to_string(cmp.measure_a)},
                {"measure_b", to_string(cmp.measure_b)},
                {"coherence_a", to_json(cmp.coherence_a, names)},
                {"coherence_b", to_json(cmp.coherence_b, names)},
                {"at_k", std::move(at_k)},
                {"dendrogram_a", to_json(cmp.dendrogram_a)},
                {"dendrogram_b", to_json(cmp.dendrogram_b)}};
}

}  // namespace corrmetric
