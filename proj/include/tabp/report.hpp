#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tabp/analytics.hpp"
#include "tabp/classifier.hpp"
#include "tabp/monte_carlo.hpp"

namespace tabp {

/// Version of every JSON document this tool emits.
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json params_json(const ModelParams& params);
Json verdict_json(const ModelParams& params, const RegimeVerdict& verdict);
Json analytics_json(const ClosedForms& cf, const std::vector<double>& probes, const std::vector<double>& windows);
Json report_json(const McReport& report);

/// Aligned human-readable table of a report.
std::string report_text(const McReport& report);

/// `replicate,covered_fraction,n_vacant,vacant_length`.
void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records);
/// `gap_length`, pooled in replicate order.
void write_gaps_csv(std::ostream& out, const std::vector<ReplicateRecord>& records);

}  // namespace tabp
