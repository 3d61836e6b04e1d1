#include "netdist/lmnn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "netdist/error.hpp"

namespace netdist {

void LmnnConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kArgument, "lmnn: " + what); };
  if (iterations < 0) fail("iterations must be non-negative");
  if (target_neighbors < 1) fail("target_neighbors must be positive");
  if (!(push_pull_weight > 0.0 && push_pull_weight < 1.0)) fail("push_pull_weight must be in (0,1)");
  if (!(margin > 0.0)) fail("margin must be positive");
  if (!(initial_step > 0.0)) fail("initial_step must be positive");
  if (!(step_decay_on_increase > 0.0 && step_decay_on_increase < 1.0)) {
    fail("step_decay_on_increase must be in (0,1)");
  }
  if (!(step_growth_on_decrease > 1.0)) fail("step_growth_on_decrease must exceed 1");
}

std::vector<std::vector<std::size_t>> select_target_neighbors(const Matrix& points,
                                                              const std::vector<int>& labels,
                                                              int k) {
  const auto n = static_cast<std::size_t>(points.rows());
  std::map<int, std::size_t> class_size;
  for (int y : labels) ++class_size[y];
  for (const auto& [label, size] : class_size) {
    if (size <= static_cast<std::size_t>(k)) {
      throw Error(ErrorKind::kInsufficientClassSize,
                  "class " + std::to_string(label) + " has " + std::to_string(size) +
                      " members, needs more than " + std::to_string(k));
    }
  }
  std::vector<std::vector<std::size_t>> targets(n);
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    candidates.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || labels[j] != labels[i]) continue;
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      candidates.emplace_back((points.row(ii) - points.row(jj)).squaredNorm(), j);
    }
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
    for (int t = 0; t < k; ++t) targets[i].push_back(candidates[static_cast<std::size_t>(t)].second);
  }
  return targets;
}

LmnnObjective lmnn_objective(const LmnnProblem& problem, const Matrix& L, bool with_gradient) {
  const Matrix& x = problem.points;
  const Eigen::Index n = x.rows();
  const Matrix projected = x * L.transpose();

  Matrix dist(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    dist(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      dist(a, b) = dist(b, a) = (projected.row(a) - projected.row(b)).squaredNorm();
    }
  }

  const double push = problem.push_pull_weight;
  const double pull = 1.0 - push;
  Matrix weight = Matrix::Zero(n, n);
  double pull_loss = 0.0;
  double push_loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int yi = problem.labels[static_cast<std::size_t>(i)];
    for (std::size_t jt : problem.targets[static_cast<std::size_t>(i)]) {
      const auto j = static_cast<Eigen::Index>(jt);
      pull_loss += dist(i, j);
      double active = 0.0;
      for (Eigen::Index l = 0; l < n; ++l) {
        if (problem.labels[static_cast<std::size_t>(l)] == yi) continue;
        const double hinge = problem.margin + dist(i, j) - dist(i, l);
        if (hinge > 0.0) {
          push_loss += hinge;
          active += 1.0;
          weight(i, l) -= push;
        }
      }
      weight(i, j) += pull + push * active;
    }
  }

  LmnnObjective out;
  out.loss = pull * pull_loss + push * push_loss;
  if (with_gradient) {
    // sum_ab w_ab (x_a - x_b)(x_a - x_b)ᵀ = Xᵀ (diag(S 1) - S) X with S = W + Wᵀ.
    const Matrix sym = weight + weight.transpose();
    Matrix laplacian = -sym;
    laplacian.diagonal() += sym.rowwise().sum();
    const Matrix outer = x.transpose() * laplacian * x;
    out.gradient = 2.0 * L * outer;
  }
  return out;
}

LmnnResult optimize_lmnn(const LmnnProblem& problem, const LmnnConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = problem.points.cols();
  LmnnResult result;
  result.L = Matrix::Identity(d, d);
  LmnnObjective current = lmnn_objective(problem, result.L);
  result.accepted_losses.push_back(current.loss);

  double step = cfg.initial_step;
  for (int it = 0; it < cfg.iterations; ++it) {
    Matrix candidate = result.L - step * current.gradient;
    LmnnObjective next = lmnn_objective(problem, candidate);
    if (next.loss <= current.loss) {
      result.L = std::move(candidate);
      current = std::move(next);
      result.accepted_losses.push_back(current.loss);
      step *= cfg.step_growth_on_decrease;
    } else {
      step *= cfg.step_decay_on_increase;
    }
  }
  result.iterations = cfg.iterations;
  result.final_loss = current.loss;
  return result;
}

LmnnProblem make_lmnn_problem(const LabeledCorpus& corpus, const Normalizer& normalizer,
                              const LmnnConfig& cfg) {
  cfg.validate();
  if (corpus.categories().size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "metric training needs at least 2 categories, got " +
                                                  std::to_string(corpus.categories().size()));
  }
  for (const auto& category : corpus.categories()) {
    const std::size_t size = corpus.count(category);
    if (size <= static_cast<std::size_t>(cfg.target_neighbors)) {
      throw Error(ErrorKind::kInsufficientClassSize,
                  "category '" + category + "' has " + std::to_string(size) +
                      " members, needs more than " + std::to_string(cfg.target_neighbors));
    }
  }
  LmnnProblem problem;
  const auto n = static_cast<Eigen::Index>(corpus.size());
  problem.points.resize(n, static_cast<Eigen::Index>(corpus.dimension()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& entry = corpus[static_cast<std::size_t>(i)];
    problem.points.row(i) = normalizer.apply(entry.values).transpose();
    const auto pos = std::lower_bound(corpus.categories().begin(), corpus.categories().end(),
                                      *entry.category);
    problem.labels.push_back(static_cast<int>(pos - corpus.categories().begin()));
  }
  problem.targets = select_target_neighbors(problem.points, problem.labels, cfg.target_neighbors);
  problem.margin = cfg.margin;
  problem.push_pull_weight = cfg.push_pull_weight;
  return problem;
}

MetricModel train_lmnn(const LabeledCorpus& corpus, const Normalizer& normalizer,
                       const LmnnConfig& cfg) {
  const LmnnProblem problem = make_lmnn_problem(corpus, normalizer, cfg);
  LmnnResult fit = optimize_lmnn(problem, cfg);
  TrainingMeta meta{fit.iterations, fit.final_loss, cfg.target_neighbors};
  return MetricModel(std::move(fit.L), normalizer, corpus.feature_names(), meta);
}

MetricModel train_lmnn(const LabeledCorpus& corpus, const LmnnConfig& cfg) {
  return train_lmnn(corpus, fit_normalizer(corpus.entries()), cfg);
}

}  // namespace netdist
