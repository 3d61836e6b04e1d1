#pragma once

#include <string>
#include <vector>

#include "netdist/features.hpp"

namespace netdist {

/// Feature vectors that all carry a non-empty category label.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  /// Throws kArgument on an unlabeled entry or a dimension mismatch. An empty
  /// feature_names list is filled with defaults for the entry dimension.
  LabeledCorpus(std::vector<FeatureVector> entries, std::vector<std::string> feature_names = {});

  const std::vector<FeatureVector>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  /// Distinct labels in sorted order.
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t dimension() const noexcept { return feature_names_.size(); }
  const FeatureVector& operator[](std::size_t i) const { return entries_[i]; }
  const std::string& label(std::size_t i) const { return *entries_[i].category; }

  std::size_t count(const std::string& category) const;

  /// Copy without entry i.
  LabeledCorpus without_index(std::size_t i) const;
  /// Copy without every entry labelled `category`.
  LabeledCorpus without_category(const std::string& category) const;

 private:
  std::vector<FeatureVector> entries_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> categories_;
};

/// kFeatureNames for dimension 10; otherwise those names followed by
/// extra_<i> columns (or f<i> when shorter).
std::vector<std::string> default_feature_names(std::size_t dimension);

}  // namespace netdist
