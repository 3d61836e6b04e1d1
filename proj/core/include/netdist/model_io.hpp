#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "netdist/metric.hpp"

namespace netdist {

inline constexpr int kModelSchemaVersion = 1;

/// JSON document with schema_version, feature_names, normalizer.{mu,sigma},
/// L as nested rows and training_meta. M is not stored.
void save_model(std::ostream& out, const MetricModel& model);
void save_model_file(const std::string& path, const MetricModel& model);

/// Recomputes M from L. Throws kModelFormat on any schema or shape violation.
MetricModel load_model(std::istream& in);
MetricModel load_model_file(const std::string& path);

}  // namespace netdist
