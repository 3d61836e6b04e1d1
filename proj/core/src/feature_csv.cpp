#include "netdist/feature_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "netdist/error.hpp"

namespace netdist {
namespace {

std::vector<std::string> split_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

void check_field(const std::string& field, std::string_view what) {
  if (field.find_first_of(",\n\r") != std::string::npos) {
    throw Error(ErrorKind::kArgument,
                std::string(what) + " '" + field + "' contains a comma or newline");
  }
}

}  // namespace

std::string format_real(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "graph_id,category";
  for (const auto& name : table.feature_names) out << ',' << name;
  out << '\n';
  for (const auto& row : table.rows) {
    check_field(row.graph_id, "graph id");
    if (row.category) check_field(*row.category, "category");
    if (row.values.size() != table.feature_names.size()) {
      throw Error(ErrorKind::kArgument, "row '" + row.graph_id + "' has " +
                                            std::to_string(row.values.size()) + " values, expected " +
                                            std::to_string(table.feature_names.size()));
    }
    out << row.graph_id << ',' << row.category.value_or("");
    for (double v : row.values) out << ',' << format_real(v);
    out << '\n';
  }
}

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields = split_row(line);
    auto fail = [&](const std::string& why) {
      return Error(ErrorKind::kParse, "feature csv line " + std::to_string(line_no) + ": " + why);
    };
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "graph_id" || fields[1] != "category") {
        throw fail("header must start with graph_id,category and name at least one feature");
      }
      table.feature_names.assign(fields.begin() + 2, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != table.feature_names.size() + 2) {
      throw fail("expected " + std::to_string(table.feature_names.size() + 2) + " fields, found " +
                 std::to_string(fields.size()));
    }
    FeatureVector fv;
    fv.graph_id = fields[0];
    if (fv.graph_id.empty()) throw fail("empty graph_id");
    if (!fields[1].empty()) fv.category = fields[1];
    fv.values.reserve(table.feature_names.size());
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty() || !std::isfinite(value)) {
        throw fail("column '" + table.feature_names[i - 2] + "' is not a finite number: '" + f +
                   "'");
      }
      fv.values.push_back(value);
    }
    table.rows.push_back(std::move(fv));
  }
  if (!have_header) throw Error(ErrorKind::kEmptyInput, "feature csv is empty");
  return table;
}

FeatureTable read_feature_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open feature csv '" + path + "'");
  return read_feature_csv(in);
}

}  // namespace netdist
