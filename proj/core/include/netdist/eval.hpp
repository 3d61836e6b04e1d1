#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netdist/corpus.hpp"
#include "netdist/lmnn.hpp"
#include "netdist/metric.hpp"

namespace netdist {

enum class Protocol {
  kLoocv,
  /// Metric trained without any entry of the test entry's category; kNN still
  /// searches the full corpus minus the test entry.
  kClassRemoved,
};

std::string_view to_string(Protocol protocol);

/// Learns a metric from `metric_training` over the given normalizer.
using Trainer =
    std::function<MetricModel(const LabeledCorpus& metric_training, const Normalizer& normalizer)>;

/// Identity metric; still requires two or more categories.
Trainer euclidean_trainer();
Trainer lmnn_trainer(LmnnConfig cfg = {});

inline const std::vector<int> kDefaultKs = {1, 3, 4};
inline const std::vector<int> kFigureKs = {3, 4, 5};

/// Majority label of the k nearest entries. Distance ties go to the lower
/// corpus index; vote ties to the tied label whose member ranks nearest.
std::string knn_classify(const MetricModel& model, const LabeledCorpus& train,
                         const FeatureVector& query, int k);

struct CategoryResult {
  std::size_t instance_count = 0;
  std::map<int, std::size_t> correct_per_k;
  /// Mean over k of the per-k fraction correct within the category.
  double precision = 0.0;

  friend bool operator==(const CategoryResult&, const CategoryResult&) = default;
};

struct EvalReport {
  Protocol protocol = Protocol::kLoocv;
  std::vector<int> ks;
  std::size_t instance_count = 0;
  std::map<int, std::size_t> correct_per_k;
  std::map<int, double> per_k_precision;
  double average_precision = 0.0;
  std::map<std::string, CategoryResult> per_category;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct EvalOptions {
  /// Folds run on this many threads; 0 picks hardware concurrency. Results
  /// do not depend on the value.
  unsigned threads = 0;
};

/// Leave-one-out: per entry, the normalizer and metric see only the others.
EvalReport evaluate_loocv(const LabeledCorpus& corpus, const std::vector<int>& ks,
                          const Trainer& trainer, const EvalOptions& options = {});

/// Leave-class-out. Needs three or more categories (kProtocol otherwise).
/// The normalizer is fitted on the kNN reference set (corpus minus the test
/// entry), the metric on the corpus minus the test entry's whole category.
EvalReport evaluate_class_removed(const LabeledCorpus& corpus, const std::vector<int>& ks,
                                  const Trainer& trainer, const EvalOptions& options = {});

EvalReport evaluate(Protocol protocol, const LabeledCorpus& corpus, const std::vector<int>& ks,
                    const Trainer& trainer, const EvalOptions& options = {});

/// JSON rendering of the report fields, with `metric` as a label.
void write_report(std::ostream& out, const EvalReport& report, std::string_view metric);

/// Aligned columns: category, #instances, then one precision column per method.
void write_category_table(std::ostream& out,
                          const std::vector<std::pair<std::string, EvalReport>>& methods);

}  // namespace netdist
