#pragma once

#include <string>
#include <vector>

#include "netdist/corpus.hpp"
#include "netdist/metric.hpp"

namespace netdist {

struct LmnnConfig {
  int iterations = 5000;
  int target_neighbors = 3;
  /// Weight of the impostor (push) term; the pull term gets 1 - weight.
  double push_pull_weight = 0.5;
  double margin = 1.0;
  double initial_step = 1e-3;
  double step_decay_on_increase = 0.5;
  double step_growth_on_decrease = 1.01;

  /// Throws kArgument on an out-of-range field.
  void validate() const;
};

/// Normalized training points with fixed target neighbors.
struct LmnnProblem {
  Matrix points;  // one row per training point
  std::vector<int> labels;
  std::vector<std::vector<std::size_t>> targets;
  double margin = 1.0;
  double push_pull_weight = 0.5;
};

/// The k same-label nearest points of each row by Euclidean distance, ties
/// broken by index. Throws kInsufficientClassSize if a label has <= k rows.
std::vector<std::vector<std::size_t>> select_target_neighbors(const Matrix& points,
                                                              const std::vector<int>& labels,
                                                              int k);

struct LmnnObjective {
  double loss = 0.0;
  Matrix gradient;  // d loss / d L, empty unless requested
};

/// Pull plus hinge push terms over every differently-labelled point.
LmnnObjective lmnn_objective(const LmnnProblem& problem, const Matrix& L, bool with_gradient = true);

struct LmnnResult {
  Matrix L;
  /// Loss at the start and after every accepted step.
  std::vector<double> accepted_losses;
  int iterations = 0;
  double final_loss = 0.0;
};

/// Full-batch gradient descent from L = identity. A step that raises the loss
/// is reverted and the step size shrinks; an accepted step grows it.
LmnnResult optimize_lmnn(const LmnnProblem& problem, const LmnnConfig& cfg);

/// Builds the problem for a corpus over the given normalizer.
LmnnProblem make_lmnn_problem(const LabeledCorpus& corpus, const Normalizer& normalizer,
                              const LmnnConfig& cfg);

/// Fits the normalizer on the corpus itself, then learns L.
MetricModel train_lmnn(const LabeledCorpus& corpus, const LmnnConfig& cfg = {});
MetricModel train_lmnn(const LabeledCorpus& corpus, const Normalizer& normalizer,
                       const LmnnConfig& cfg = {});

}  // namespace netdist
