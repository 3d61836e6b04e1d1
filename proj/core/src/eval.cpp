#include "netdist/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>
#include <thread>

#include "netdist/error.hpp"

namespace netdist {
namespace {

// Reference indices sorted by (squared distance, index) from the query.
std::vector<std::size_t> rank_references(const MetricModel& model,
                                         const std::vector<Vector>& references,
                                         const Vector& query) {
  std::vector<std::pair<double, std::size_t>> order(references.size());
  for (std::size_t i = 0; i < references.size(); ++i) {
    order[i] = {model.squared_distance_normalized(query, references[i]), i};
  }
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> ranked(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) ranked[i] = order[i].second;
  return ranked;
}

const std::string& vote(const LabeledCorpus& reference, const std::vector<std::size_t>& ranked,
                        int k) {
  std::map<std::string, int> votes;
  for (int i = 0; i < k; ++i) ++votes[reference.label(ranked[static_cast<std::size_t>(i)])];
  int best = 0;
  for (const auto& [label, count] : votes) best = std::max(best, count);
  // The first-ranked member of a maximal label wins.
  for (int i = 0; i < k; ++i) {
    const std::string& label = reference.label(ranked[static_cast<std::size_t>(i)]);
    if (votes[label] == best) return label;
  }
  return reference.label(ranked.front());
}

void check_ks(const std::vector<int>& ks, std::size_t reference_size) {
  if (ks.empty()) throw Error(ErrorKind::kArgument, "at least one k is required");
  for (int k : ks) {
    if (k < 1 || static_cast<std::size_t>(k) > reference_size) {
      throw Error(ErrorKind::kArgument, "k = " + std::to_string(k) +
                                            " must be in [1, " + std::to_string(reference_size) +
                                            "]");
    }
  }
}

struct FoldOutcome {
  std::vector<bool> correct;  // one per k
};

template <typename Fold>
std::vector<FoldOutcome> run_folds(std::size_t n, unsigned threads, const Fold& fold) {
  std::vector<FoldOutcome> outcomes(n);
  unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1U, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) outcomes[i] = fold(i);
    return outcomes;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) outcomes[i] = fold(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

FoldOutcome classify_fold(const LabeledCorpus& reference, const MetricModel& model,
                          const FeatureVector& query, const std::vector<int>& ks) {
  std::vector<Vector> refs;
  refs.reserve(reference.size());
  for (const auto& e : reference.entries()) refs.push_back(model.normalizer().apply(e.values));
  const auto ranked = rank_references(model, refs, model.normalizer().apply(query.values));
  FoldOutcome out;
  for (int k : ks) out.correct.push_back(vote(reference, ranked, k) == *query.category);
  return out;
}

EvalReport assemble(Protocol protocol, const LabeledCorpus& corpus, const std::vector<int>& ks,
                    const std::vector<FoldOutcome>& outcomes) {
  EvalReport report;
  report.protocol = protocol;
  report.ks = ks;
  report.instance_count = corpus.size();
  for (int k : ks) report.correct_per_k[k] = 0;
  for (const auto& c : corpus.categories()) {
    auto& cat = report.per_category[c];
    for (int k : ks) cat.correct_per_k[k] = 0;
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto& cat = report.per_category[corpus.label(i)];
    ++cat.instance_count;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (outcomes[i].correct[j]) {
        ++report.correct_per_k[ks[j]];
        ++cat.correct_per_k[ks[j]];
      }
    }
  }
  const double n = static_cast<double>(corpus.size());
  double sum = 0.0;
  for (int k : ks) {
    report.per_k_precision[k] = static_cast<double>(report.correct_per_k[k]) / n;
    sum += report.per_k_precision[k];
  }
  report.average_precision = sum / static_cast<double>(ks.size());
  for (auto& [label, cat] : report.per_category) {
    double s = 0.0;
    for (int k : ks) {
      s += static_cast<double>(cat.correct_per_k[k]) / static_cast<double>(cat.instance_count);
    }
    cat.precision = s / static_cast<double>(ks.size());
  }
  return report;
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::kLoocv ? "loocv" : "loocv_class_removed";
}

Trainer euclidean_trainer() {
  return [](const LabeledCorpus& training, const Normalizer& normalizer) {
    if (training.categories().size() < 2) {
      throw Error(ErrorKind::kInsufficientData,
                  "metric training needs at least 2 categories, got " +
                      std::to_string(training.categories().size()));
    }
    return euclidean_model(normalizer, training.feature_names());
  };
}

Trainer lmnn_trainer(LmnnConfig cfg) {
  cfg.validate();
  return [cfg](const LabeledCorpus& training, const Normalizer& normalizer) {
    return train_lmnn(training, normalizer, cfg);
  };
}

std::string knn_classify(const MetricModel& model, const LabeledCorpus& train,
                         const FeatureVector& query, int k) {
  if (train.empty()) throw Error(ErrorKind::kArgument, "kNN needs a non-empty training set");
  check_ks({k}, train.size());
  std::vector<Vector> refs;
  refs.reserve(train.size());
  for (const auto& e : train.entries()) refs.push_back(model.normalizer().apply(e.values));
  const auto ranked = rank_references(model, refs, model.normalizer().apply(query.values));
  return vote(train, ranked, k);
}

EvalReport evaluate_loocv(const LabeledCorpus& corpus, const std::vector<int>& ks,
                          const Trainer& trainer, const EvalOptions& options) {
  if (corpus.size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "leave-one-out needs at least 2 entries");
  }
  check_ks(ks, corpus.size() - 1);
  auto fold = [&](std::size_t i) {
    const LabeledCorpus reference = corpus.without_index(i);
    const Normalizer nrm = fit_normalizer(reference.entries());
    const MetricModel model = trainer(reference, nrm);
    return classify_fold(reference, model, corpus[i], ks);
  };
  return assemble(Protocol::kLoocv, corpus, ks, run_folds(corpus.size(), options.threads, fold));
}

EvalReport evaluate_class_removed(const LabeledCorpus& corpus, const std::vector<int>& ks,
                                  const Trainer& trainer, const EvalOptions& options) {
  if (corpus.categories().size() < 3) {
    throw Error(ErrorKind::kProtocol,
                "leave-class-out needs at least 3 categories so that 2 remain for training, got " +
                    std::to_string(corpus.categories().size()));
  }
  check_ks(ks, corpus.size() - 1);
  auto fold = [&](std::size_t i) {
    const LabeledCorpus reference = corpus.without_index(i);
    const LabeledCorpus training = corpus.without_category(corpus.label(i));
    const Normalizer nrm = fit_normalizer(reference.entries());
    const MetricModel model = trainer(training, nrm);
    return classify_fold(reference, model, corpus[i], ks);
  };
  return assemble(Protocol::kClassRemoved, corpus, ks,
                  run_folds(corpus.size(), options.threads, fold));
}

EvalReport evaluate(Protocol protocol, const LabeledCorpus& corpus, const std::vector<int>& ks,
                    const Trainer& trainer, const EvalOptions& options) {
  return protocol == Protocol::kLoocv ? evaluate_loocv(corpus, ks, trainer, options)
                                      : evaluate_class_removed(corpus, ks, trainer, options);
}

void write_report(std::ostream& out, const EvalReport& report, std::string_view metric) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["metric"] = metric;
  doc["protocol"] = to_string(report.protocol);
  doc["instance_count"] = report.instance_count;
  doc["ks"] = report.ks;
  ordered_json per_k = ordered_json::array();
  for (int k : report.ks) {
    per_k.push_back({{"k", k},
                     {"correct", report.correct_per_k.at(k)},
                     {"precision", report.per_k_precision.at(k)}});
  }
  doc["per_k_precision"] = per_k;
  doc["average_precision"] = report.average_precision;
  ordered_json cats = ordered_json::array();
  for (const auto& [label, cat] : report.per_category) {
    ordered_json correct = ordered_json::object();
    for (int k : report.ks) correct[std::to_string(k)] = cat.correct_per_k.at(k);
    cats.push_back({{"category", label},
                    {"instance_count", cat.instance_count},
                    {"correct_per_k", correct},
                    {"precision", cat.precision}});
  }
  doc["per_category"] = cats;
  out << doc.dump(2) << '\n';
}

void write_category_table(std::ostream& out,
                          const std::vector<std::pair<std::string, EvalReport>>& methods) {
  if (methods.empty()) return;
  std::size_t label_width = std::string_view("Category").size();
  for (const auto& [label, cat] : methods.front().second.per_category) {
    label_width = std::max(label_width, label.size());
  }
  std::vector<std::size_t> widths;
  for (const auto& [name, report] : methods) widths.push_back(std::max<std::size_t>(name.size(), 9));

  out << std::left << std::setw(static_cast<int>(label_width)) << "Category" << "  #Instances";
  for (std::size_t m = 0; m < methods.size(); ++m) {
    out << "  " << std::right << std::setw(static_cast<int>(widths[m])) << methods[m].first;
  }
  out << '\n';
  auto row = [&](const std::string& label, std::size_t count, auto precision_of) {
    out << std::left << std::setw(static_cast<int>(label_width)) << label << "  " << std::right
        << std::setw(10) << count;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(2) << 100.0 * precision_of(methods[m].second);
      out << "  " << std::setw(static_cast<int>(widths[m])) << cell.str();
    }
    out << '\n';
  };
  for (const auto& [label, cat] : methods.front().second.per_category) {
    row(label, cat.instance_count,
        [&label](const EvalReport& r) { return r.per_category.at(label).precision; });
  }
  row("Total", methods.front().second.instance_count,
      [](const EvalReport& r) { return r.average_precision; });
}

}  // namespace netdist
