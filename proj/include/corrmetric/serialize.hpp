#pragma once

#include <json.hpp>

#include "corrmetric/clustering.hpp"
#include "corrmetric/counterexample.hpp"
#include "corrmetric/metric_audit.hpp"

// JSON renderings of the report types, shared by the CLI and its tests.
// Field order is fixed (ordered_json) so identical inputs serialize to
// identical bytes. Variable names, when supplied, label the index fields.

namespace corrmetric {

using json = nlohmann::ordered_json;

json to_json(const TriangleViolation& v, const std::vector<std::string>& names = {});
json to_json(const MetricReport& report, const std::vector<std::string>& names = {});
json to_json(const MetricCertificate& cert);
json to_json(const CoherenceIndex& ci, const std::vector<std::string>& names = {});
json to_json(const PsdVerdict& verdict);
json to_json(const TransformVerdict& verdict);
json to_json(const CounterexampleSpec& spec);
json to_json(const ViolationMargins& m);
json to_json(const Dendrogram& dend);
json to_json(const Partition& partition, const std::vector<std::string>& names = {});
json to_json(const CoherenceComparison& cmp);

}  // namespace corrmetric
