#include <doctest.h>

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "netdist/error.hpp"
#include "netdist/eval.hpp"

using namespace netdist;

namespace {

FeatureVector entry(std::vector<double> v, std::string cat, std::string id) {
  return FeatureVector{std::move(id), std::move(cat), std::move(v)};
}

// Clusters centred at distinct points with small spread.
LabeledCorpus clustered_corpus(int classes, int per_class, double spread, std::uint64_t seed,
                               std::size_t dim = 10) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spread);
  std::vector<FeatureVector> entries;
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      std::vector<double> v(dim);
      for (std::size_t f = 0; f < dim; ++f) {
        v[f] = (static_cast<int>(f) % classes == c ? 10.0 : 0.0) + noise(rng);
      }
      const std::string cat = "c" + std::to_string(c);
      entries.push_back(entry(v, cat, cat + "_" + std::to_string(i)));
    }
  }
  return LabeledCorpus(entries);
}

// Sort-everything kNN computed from scratch on z-scores.
std::string brute_knn(const LabeledCorpus& train, const FeatureVector& q, int k) {
  const std::size_t d = train.dimension();
  std::vector<double> mu(d, 0.0), sd(d, 0.0);
  for (const auto& e : train.entries()) {
    for (std::size_t f = 0; f < d; ++f) mu[f] += e.values[f] / static_cast<double>(train.size());
  }
  for (const auto& e : train.entries()) {
    for (std::size_t f = 0; f < d; ++f) sd[f] += (e.values[f] - mu[f]) * (e.values[f] - mu[f]);
  }
  for (auto& s : sd) s = std::sqrt(s / static_cast<double>(train.size()));
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double sum = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
      const double a = sd[f] > 0 ? (train[i].values[f] - mu[f]) / sd[f] : 0.0;
      const double b = sd[f] > 0 ? (q.values[f] - mu[f]) / sd[f] : 0.0;
      sum += (a - b) * (a - b);
    }
    all.emplace_back(sum, i);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::map<std::string, int> votes;
  for (int i = 0; i < k; ++i) ++votes[train.label(all[i].second)];
  int best = 0;
  for (const auto& [l, c] : votes) best = std::max(best, c);
  for (int i = 0; i < k; ++i) {
    if (votes[train.label(all[i].second)] == best) return train.label(all[i].second);
  }
  return "";
}

}  // namespace

TEST_CASE("knn_classify simple cases") {
  const LabeledCorpus train({entry({0.0, 0.0}, "a", "a0"), entry({0.0, 0.1}, "a", "a1"),
                             entry({10.0, 0.0}, "b", "b0"), entry({10.0, 0.1}, "b", "b1")});
  const MetricModel m = euclidean_model(identity_normalizer(2));
  CHECK(knn_classify(m, train, train[2], 1) == "b");
  CHECK(knn_classify(m, train, entry({1.0, 0.0}, "?", "q"), 1) == "a");
  CHECK(knn_classify(m, train, entry({9.0, 0.0}, "?", "q"), 3) == "b");
  // 2-2 vote: nearest member decides.
  CHECK(knn_classify(m, train, entry({4.0, 0.0}, "?", "q"), 4) == "a");
  CHECK(knn_classify(m, train, entry({6.0, 0.0}, "?", "q"), 4) == "b");
  CHECK_THROWS_AS(knn_classify(m, train, train[0], 5), Error);
  CHECK_THROWS_AS(knn_classify(m, LabeledCorpus(), train[0], 1), Error);
}

TEST_CASE("knn_classify breaks distance ties by corpus index") {
  const LabeledCorpus train({entry({-1.0}, "left", "l"), entry({1.0}, "right", "r")});
  const MetricModel m = euclidean_model(identity_normalizer(1));
  CHECK(knn_classify(m, train, entry({0.0}, "?", "q"), 1) == "left");
  const LabeledCorpus flipped({entry({1.0}, "right", "r"), entry({-1.0}, "left", "l")});
  CHECK(knn_classify(m, flipped, entry({0.0}, "?", "q"), 1) == "right");
}

TEST_CASE("knn_classify agrees with a brute-force oracle") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FeatureVector> entries;
    for (int i = 0; i < 30; ++i) {
      std::vector<double> v(10);
      for (auto& x : v) x = normal(rng);
      entries.push_back(entry(v, "c" + std::to_string(i % 3), "e" + std::to_string(i)));
    }
    const LabeledCorpus train(entries);
    const MetricModel m = euclidean_model(fit_normalizer(train.entries()), train.feature_names());
    for (int q = 0; q < 10; ++q) {
      std::vector<double> v(10);
      for (auto& x : v) x = normal(rng);
      const auto query = entry(v, "?", "q");
      CHECK(knn_classify(m, train, query, 3) == brute_knn(train, query, 3));
    }
  }
}

TEST_CASE("loocv on a separable corpus is perfect") {
  const LabeledCorpus corpus = clustered_corpus(3, 8, 0.3, 1);
  const EvalReport r = evaluate_loocv(corpus, {1}, euclidean_trainer());
  CHECK(r.per_k_precision.at(1) == 1.0);
  CHECK(r.protocol == Protocol::kLoocv);

  const EvalReport three = evaluate_loocv(corpus, kDefaultKs, euclidean_trainer());
  CHECK(three.per_k_precision.size() == 3);
  CHECK(three.average_precision ==
        (three.per_k_precision.at(1) + three.per_k_precision.at(3) + three.per_k_precision.at(4)) / 3.0);
}

TEST_CASE("single-class corpus fails in the trainer") {
  const LabeledCorpus corpus = clustered_corpus(1, 6, 0.3, 2);
  CHECK_THROWS_AS(evaluate_loocv(corpus, {1}, euclidean_trainer()), Error);
  CHECK_THROWS_AS(evaluate_loocv(corpus, {1}, lmnn_trainer()), Error);
}

TEST_CASE("duplicated vectors are found by 1-NN") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<FeatureVector> entries;
  for (int c = 0; c < 4; ++c) {
    for (int i = 0; i < 3; ++i) {
      std::vector<double> v(10);
      for (auto& x : v) x = normal(rng);
      const std::string cat = "c" + std::to_string(c);
      entries.push_back(entry(v, cat, cat + "a" + std::to_string(i)));
      entries.push_back(entry(v, cat, cat + "b" + std::to_string(i)));
    }
  }
  const EvalReport r = evaluate_loocv(LabeledCorpus(entries), {1}, euclidean_trainer());
  CHECK(r.per_k_precision.at(1) == 1.0);
}

TEST_CASE("report totals recombine from per-category results") {
  const LabeledCorpus corpus = clustered_corpus(3, 7, 9.0, 9);
  const EvalReport r = evaluate_loocv(corpus, kDefaultKs, euclidean_trainer());
  std::size_t count = 0;
  double weighted = 0.0;
  std::map<int, std::size_t> correct;
  for (const auto& [label, cat] : r.per_category) {
    count += cat.instance_count;
    weighted += cat.precision * static_cast<double>(cat.instance_count);
    for (const auto& [k, c] : cat.correct_per_k) correct[k] += c;
  }
  CHECK(count == corpus.size());
  CHECK(correct == r.correct_per_k);
  for (int k : kDefaultKs) {
    CHECK(r.per_k_precision.at(k) ==
          static_cast<double>(r.correct_per_k.at(k)) / static_cast<double>(corpus.size()));
  }
  CHECK(weighted / static_cast<double>(count) == doctest::Approx(r.average_precision).epsilon(1e-12));
  MESSAGE("precision on overlapping clusters: " << r.average_precision);
}

TEST_CASE("leave-one-out never lets the test entry reach the trainer") {
  const LabeledCorpus corpus = clustered_corpus(3, 6, 0.5, 4);
  auto fingerprint = [](const LabeledCorpus& c, const Normalizer& n) {
    std::size_t h = 0;
    auto fold = [&h](double v) { h = h * 1000003u ^ std::hash<double>{}(v); };
    for (const auto& e : c.entries()) {
      for (double v : e.values) fold(v);
    }
    for (Eigen::Index i = 0; i < n.mu.size(); ++i) {
      fold(n.mu[i]);
      fold(n.sigma[i]);
    }
    return h;
  };
  auto record = [&](std::vector<std::size_t>& seen, std::vector<Matrix>& ls) {
    return [&, base = lmnn_trainer(LmnnConfig{200})](const LabeledCorpus& c, const Normalizer& n) {
      seen.push_back(fingerprint(c, n));
      MetricModel m = base(c, n);
      ls.push_back(m.L());
      return m;
    };
  };
  std::vector<std::size_t> before, after;
  std::vector<Matrix> l_before, l_after;
  evaluate_loocv(corpus, {1}, record(before, l_before), {1});

  const std::size_t victim = 7;
  std::vector<FeatureVector> mutated = corpus.entries();
  for (auto& v : mutated[victim].values) v = v * 3.0 + 100.0;
  evaluate_loocv(LabeledCorpus(mutated), {1}, record(after, l_after), {1});

  REQUIRE(before.size() == corpus.size());
  REQUIRE(after.size() == corpus.size());
  CHECK(before[victim] == after[victim]);
  CHECK(l_before[victim] == l_after[victim]);
  CHECK(before[0] != after[0]);  // other folds do see the mutated entry
}

TEST_CASE("leave-class-out protocol") {
  const LabeledCorpus two = clustered_corpus(2, 6, 0.3, 5);
  try {
    evaluate_class_removed(two, {1}, euclidean_trainer());
    FAIL("expected a protocol error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kProtocol);
  }

  const LabeledCorpus four = clustered_corpus(4, 6, 2.0, 6);
  const EvalReport loo = evaluate_loocv(four, kDefaultKs, euclidean_trainer());
  const EvalReport lco = evaluate_class_removed(four, kDefaultKs, euclidean_trainer());
  CHECK(lco.protocol == Protocol::kClassRemoved);
  CHECK(lco.per_k_precision == loo.per_k_precision);
  CHECK(lco.per_category == loo.per_category);

  const LabeledCorpus tight = clustered_corpus(4, 6, 0.3, 7);
  const EvalReport tight_loo = evaluate_loocv(tight, kDefaultKs, lmnn_trainer(LmnnConfig{300}));
  const EvalReport tight_lco = evaluate_class_removed(tight, kDefaultKs, lmnn_trainer(LmnnConfig{300}));
  CHECK(std::abs(tight_loo.average_precision - tight_lco.average_precision) <= 0.15);
}

TEST_CASE("fold threading does not change the report") {
  const LabeledCorpus corpus = clustered_corpus(3, 6, 3.0, 8);
  const auto a = evaluate_loocv(corpus, kDefaultKs, lmnn_trainer(LmnnConfig{100}), {1});
  const auto b = evaluate_loocv(corpus, kDefaultKs, lmnn_trainer(LmnnConfig{100}), {3});
  CHECK(a == b);
}

TEST_CASE("k out of range is rejected") {
  const LabeledCorpus corpus = clustered_corpus(3, 2, 0.3, 9);
  CHECK_THROWS_AS(evaluate_loocv(corpus, {6}, euclidean_trainer()), Error);
  CHECK_THROWS_AS(evaluate_loocv(corpus, {}, euclidean_trainer()), Error);
  CHECK_THROWS_AS(evaluate_loocv(corpus, {0}, euclidean_trainer()), Error);
}

TEST_CASE("report rendering") {
  const LabeledCorpus corpus = clustered_corpus(3, 5, 0.3, 10);
  const EvalReport r = evaluate_loocv(corpus, kDefaultKs, euclidean_trainer());
  std::ostringstream json;
  write_report(json, r, "euclidean");
  CHECK(json.str().find("\"average_precision\": 1.0") != std::string::npos);
  CHECK(json.str().find("\"protocol\": \"loocv\"") != std::string::npos);
  std::ostringstream table;
  write_category_table(table, {{"euclidean", r}, {"other", r}});
  const std::string t = table.str();
  CHECK(t.find("Category  #Instances  euclidean      other") != std::string::npos);
  CHECK(t.find("Total             15     100.00     100.00") != std::string::npos);
}

TEST_CASE("corpus construction checks labels") {
  CHECK_THROWS_AS(LabeledCorpus({FeatureVector{"x", std::nullopt, {1.0}}}), Error);
  CHECK_THROWS_AS(LabeledCorpus({entry({1.0}, "a", "x"), entry({1.0, 2.0}, "a", "y")}), Error);
  const LabeledCorpus c({entry({1.0}, "b", "x"), entry({2.0}, "a", "y"), entry({3.0}, "b", "z")});
  CHECK(c.categories() == std::vector<std::string>{"a", "b"});
  CHECK(c.without_category("b").size() == 1);
  CHECK(c.without_index(0)[0].graph_id == "y");
}
