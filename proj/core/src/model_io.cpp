#include "netdist/model_io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "netdist/error.hpp"

namespace netdist {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& why) {
  throw Error(ErrorKind::kModelFormat, "model file: " + why);
}

json to_array(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector read_vector(const json& node, std::size_t expected, const std::string& name) {
  if (!node.is_array() || node.size() != expected) {
    bad(name + " must be an array of " + std::to_string(expected) + " numbers");
  }
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    if (!node[i].is_number()) bad(name + "[" + std::to_string(i) + "] is not a number");
    const double value = node[i].get<double>();
    if (!std::isfinite(value)) bad(name + "[" + std::to_string(i) + "] is not finite");
    v[static_cast<Eigen::Index>(i)] = value;
  }
  return v;
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

void save_model(std::ostream& out, const MetricModel& model) {
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["feature_names"] = model.feature_names();
  doc["normalizer"] = {{"mu", to_array(model.normalizer().mu)},
                       {"sigma", to_array(model.normalizer().sigma)}};
  json rows = json::array();
  for (Eigen::Index r = 0; r < model.L().rows(); ++r) rows.push_back(to_array(model.L().row(r).transpose()));
  doc["L"] = rows;
  const TrainingMeta& meta = model.training_meta();
  doc["training_meta"] = {{"iterations", meta.iterations},
                          {"final_loss", meta.final_loss},
                          {"target_neighbors", meta.target_neighbors}};
  out << doc.dump(2) << '\n';
}

void save_model_file(const std::string& path, const MetricModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write model file '" + path + "'");
  save_model(out, model);
  if (!out) throw Error(ErrorKind::kIo, "write failure on model file '" + path + "'");
}

MetricModel load_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) bad("top level must be an object");

  const json& version = field(doc, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion) {
    bad("unsupported schema_version");
  }

  const json& names_node = field(doc, "feature_names");
  if (!names_node.is_array() || names_node.empty()) bad("feature_names must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& n : names_node) {
    if (!n.is_string()) bad("feature_names entries must be strings");
    names.push_back(n.get<std::string>());
  }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    bad("feature_names contains duplicates");
  }
  const std::size_t d = names.size();

  const json& nrm_node = field(doc, "normalizer");
  if (!nrm_node.is_object()) bad("normalizer must be an object");
  Normalizer nrm;
  nrm.mu = read_vector(field(nrm_node, "mu"), d, "normalizer.mu");
  nrm.sigma = read_vector(field(nrm_node, "sigma"), d, "normalizer.sigma");
  if ((nrm.sigma.array() < 0.0).any()) bad("normalizer.sigma has a negative entry");

  const json& l_node = field(doc, "L");
  if (!l_node.is_array() || l_node.size() != d) {
    bad("L must have " + std::to_string(d) + " rows to match feature_names");
  }
  Matrix L(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    L.row(static_cast<Eigen::Index>(r)) =
        read_vector(l_node[r], d, "L[" + std::to_string(r) + "]").transpose();
  }

  TrainingMeta meta;
  const json& meta_node = field(doc, "training_meta");
  if (!meta_node.is_object()) bad("training_meta must be an object");
  const json& iters = field(meta_node, "iterations");
  const json& loss = field(meta_node, "final_loss");
  const json& targets = field(meta_node, "target_neighbors");
  if (!iters.is_number_integer() || !targets.is_number_integer() || !loss.is_number()) {
    bad("training_meta fields have the wrong type");
  }
  meta.iterations = iters.get<int>();
  meta.final_loss = loss.get<double>();
  meta.target_neighbors = targets.get<int>();

  MetricModel model(std::move(L), std::move(nrm), std::move(names), meta);
  const double min_eigen =
      Eigen::SelfAdjointEigenSolver<Matrix>(model.M(), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (!(min_eigen >= -1e-9)) bad("metric matrix is not positive semidefinite");
  return model;
}

MetricModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open model file '" + path + "'");
  return load_model(in);
}

}  // namespace netdist
