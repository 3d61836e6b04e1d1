#include "netdist/corpus.hpp"

#include <algorithm>

#include "netdist/error.hpp"

namespace netdist {

std::vector<std::string> default_feature_names(std::size_t dimension) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dimension; ++i) {
    if (i < kFeatureNames.size()) {
      names.emplace_back(kFeatureNames[i]);
    } else {
      names.push_back("extra_" + std::to_string(i - kFeatureNames.size() + 1));
    }
  }
  if (dimension < kFeatureNames.size()) {
    for (std::size_t i = 0; i < dimension; ++i) names[i] = "f" + std::to_string(i);
  }
  return names;
}

LabeledCorpus::LabeledCorpus(std::vector<FeatureVector> entries,
                             std::vector<std::string> feature_names)
    : entries_(std::move(entries)), feature_names_(std::move(feature_names)) {
  if (feature_names_.empty() && !entries_.empty()) {
    feature_names_ = default_feature_names(entries_.front().values.size());
  }
  for (const auto& e : entries_) {
    if (!e.category || e.category->empty()) {
      throw Error(ErrorKind::kArgument, "corpus entry '" + e.graph_id + "' has no category");
    }
    if (e.values.size() != feature_names_.size()) {
      throw Error(ErrorKind::kArgument, "corpus entry '" + e.graph_id + "' has " +
                                            std::to_string(e.values.size()) +
                                            " values, expected " +
                                            std::to_string(feature_names_.size()));
    }
    categories_.push_back(*e.category);
  }
  std::sort(categories_.begin(), categories_.end());
  categories_.erase(std::unique(categories_.begin(), categories_.end()), categories_.end());
}

std::size_t LabeledCorpus::count(const std::string& category) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [&](const auto& e) { return *e.category == category; }));
}

LabeledCorpus LabeledCorpus::without_index(std::size_t i) const {
  std::vector<FeatureVector> kept;
  kept.reserve(entries_.size());
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j != i) kept.push_back(entries_[j]);
  }
  return LabeledCorpus(std::move(kept), feature_names_);
}

LabeledCorpus LabeledCorpus::without_category(const std::string& category) const {
  std::vector<FeatureVector> kept;
  for (const auto& e : entries_) {
    if (*e.category != category) kept.push_back(e);
  }
  return LabeledCorpus(std::move(kept), feature_names_);
}

}  // namespace netdist
