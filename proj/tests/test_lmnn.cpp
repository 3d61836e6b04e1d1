#include <doctest.h>

#include <random>

#include "netdist/error.hpp"
#include "netdist/eval.hpp"
#include "netdist/lmnn.hpp"

using namespace netdist;

namespace {

LmnnProblem toy_problem(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  LmnnProblem p;
  p.points.resize(5, d);
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) p.points(i, j) = normal(rng) + (i < 3 ? 0.0 : 0.7);
  }
  p.labels = {0, 0, 0, 1, 1};
  p.targets = select_target_neighbors(p.points, p.labels, 1);
  p.margin = 1.0;
  p.push_pull_weight = 0.5;
  return p;
}

Matrix finite_difference(const LmnnProblem& p, const Matrix& L, double h) {
  Matrix g(L.rows(), L.cols());
  for (Eigen::Index r = 0; r < L.rows(); ++r) {
    for (Eigen::Index c = 0; c < L.cols(); ++c) {
      Matrix plus = L;
      Matrix minus = L;
      plus(r, c) += h;
      minus(r, c) -= h;
      g(r, c) = (lmnn_objective(p, plus, false).loss - lmnn_objective(p, minus, false).loss) / (2 * h);
    }
  }
  return g;
}

FeatureVector labelled(std::vector<double> v, std::string cat, int i) {
  return FeatureVector{cat + std::to_string(i), cat, std::move(v)};
}

// Classes separated along feature 0, all other features noise of larger spread.
LabeledCorpus separated_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 3.0);
  std::normal_distribution<double> tight(0.0, 0.2);
  std::vector<FeatureVector> entries;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 10; ++i) {
      std::vector<double> v(10);
      v[0] = 2.0 * c + tight(rng);
      for (int f = 1; f < 10; ++f) v[f] = noise(rng);
      entries.push_back(labelled(v, std::string(1, static_cast<char>('a' + c)), i));
    }
  }
  return LabeledCorpus(entries);
}

}  // namespace

TEST_CASE("analytic LMNN gradient matches central finite differences") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const LmnnProblem p = toy_problem(rng, 3);
    Matrix L = Matrix::Identity(3, 3);
    for (Eigen::Index i = 0; i < 9; ++i) L(i / 3, i % 3) += 0.3 * normal(rng);
    const LmnnObjective obj = lmnn_objective(p, L);
    const Matrix fd = finite_difference(p, L, 1e-5);
    const double rel = (obj.gradient - fd).norm() / std::max(fd.norm(), 1e-12);
    INFO("trial " << trial << " loss " << obj.loss);
    CHECK(rel <= 1e-4);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("accepted losses never increase and L starts at the identity") {
  std::mt19937_64 rng(6);
  const LmnnProblem p = toy_problem(rng, 4);
  LmnnConfig cfg;
  cfg.iterations = 500;
  const LmnnResult r = optimize_lmnn(p, cfg);
  REQUIRE(r.accepted_losses.size() >= 2);
  for (std::size_t i = 1; i < r.accepted_losses.size(); ++i) {
    CHECK(r.accepted_losses[i] <= r.accepted_losses[i - 1]);
  }
  CHECK(r.final_loss == r.accepted_losses.back());
  CHECK(r.final_loss < r.accepted_losses.front());

  cfg.iterations = 0;
  const LmnnResult none = optimize_lmnn(p, cfg);
  CHECK(none.L == Matrix::Identity(4, 4));
  CHECK(none.accepted_losses.size() == 1);
}

TEST_CASE("zero iterations reproduces the euclidean model") {
  const LabeledCorpus corpus = separated_corpus(1);
  LmnnConfig cfg;
  cfg.iterations = 0;
  const MetricModel trained = train_lmnn(corpus, cfg);
  const MetricModel plain = euclidean_model(fit_normalizer(corpus.entries()), corpus.feature_names());
  CHECK(trained.L() == plain.L());
  CHECK(trained.M() == plain.M());
  CHECK(trained.normalizer() == plain.normalizer());
  CHECK(trained.training_meta().iterations == 0);
}

TEST_CASE("target neighbors are the nearest same-class points") {
  Matrix pts(5, 1);
  pts << 0.0, 1.0, 3.0, 0.5, 10.0;
  const std::vector<int> labels = {0, 0, 0, 1, 1};
  const auto t = select_target_neighbors(pts, labels, 1);
  CHECK(t[0] == std::vector<std::size_t>{1});
  CHECK(t[1] == std::vector<std::size_t>{0});
  CHECK(t[2] == std::vector<std::size_t>{1});
  CHECK(t[3] == std::vector<std::size_t>{4});
  CHECK_THROWS_AS(select_target_neighbors(pts, labels, 2), Error);
}

TEST_CASE("training rejects undersized classes and names them") {
  std::vector<FeatureVector> entries;
  for (int i = 0; i < 5; ++i) entries.push_back(labelled({double(i), 1.0}, "big", i));
  for (int i = 0; i < 3; ++i) entries.push_back(labelled({double(i), 9.0}, "tiny", i));
  try {
    train_lmnn(LabeledCorpus(entries), LmnnConfig{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInsufficientClassSize);
    CHECK(std::string(e.what()).find("tiny") != std::string::npos);
  }
  std::vector<FeatureVector> single(entries.begin(), entries.begin() + 5);
  CHECK_THROWS_AS(train_lmnn(LabeledCorpus(single), LmnnConfig{}), Error);
}

TEST_CASE("config validation") {
  LmnnConfig cfg;
  cfg.push_pull_weight = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.step_growth_on_decrease = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.target_neighbors = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_NOTHROW(LmnnConfig{}.validate());
}

TEST_CASE("learned metric beats identity on a noisy separable corpus") {
  const LabeledCorpus corpus = separated_corpus(3);
  LmnnConfig cfg;
  cfg.iterations = 1000;
  const auto learned = evaluate_loocv(corpus, {1}, lmnn_trainer(cfg), {1});
  const auto plain = evaluate_loocv(corpus, {1}, euclidean_trainer(), {1});
  MESSAGE("lmnn " << learned.average_precision << " euclidean " << plain.average_precision);
  CHECK(learned.average_precision >= plain.average_precision);
  CHECK(learned.average_precision >= 0.9);
}

TEST_CASE("training is bitwise deterministic and keeps M = LtL") {
  const LabeledCorpus corpus = separated_corpus(5);
  LmnnConfig cfg;
  cfg.iterations = 300;
  const MetricModel a = train_lmnn(corpus, cfg);
  const MetricModel b = train_lmnn(corpus, cfg);
  CHECK(a == b);
  CHECK((a.M() - a.L().transpose() * a.L()).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(a.M()).eigenvalues().minCoeff() >= -1e-9);
  CHECK(a.training_meta().target_neighbors == 3);
  CHECK(a.training_meta().iterations == 300);
}
