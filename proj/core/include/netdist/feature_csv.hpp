#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "netdist/features.hpp"

namespace netdist {

/// In-memory form of a feature CSV: the value column names plus rows.
struct FeatureTable {
  std::vector<std::string> feature_names;
  std::vector<FeatureVector> rows;
};

/// Header `graph_id,category,<feature_names...>`; values use 17 significant
/// digits so that a read-back is exact. An absent category is an empty field.
void write_feature_csv(std::ostream& out, const FeatureTable& table);

/// Throws kParse with a line number on malformed input.
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv_file(const std::string& path);

/// Formats a double with `digits` significant digits (%.*g).
std::string format_real(double value, int digits = 17);

}  // namespace netdist
