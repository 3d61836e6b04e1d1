#include "netdist/metric.hpp"

#include <cmath>

#include "netdist/corpus.hpp"
#include "netdist/error.hpp"

namespace netdist {

Vector Normalizer::apply(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorKind::kArgument, "vector of dimension " + std::to_string(x.size()) +
                                          " does not match normalizer dimension " +
                                          std::to_string(dimension()));
  }
  Vector z(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    z[i] = sigma[i] > 0.0 ? (x[static_cast<std::size_t>(i)] - mu[i]) / sigma[i] : 0.0;
  }
  return z;
}

Vector Normalizer::invert(const Vector& z) const {
  Vector x(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) x[i] = mu[i] + sigma[i] * z[i];
  return x;
}

Normalizer fit_normalizer(std::span<const FeatureVector> training) {
  if (training.size() < 2) {
    throw Error(ErrorKind::kInsufficientData,
                "normalizer needs at least 2 training vectors, got " +
                    std::to_string(training.size()));
  }
  const std::size_t d = training.front().values.size();
  Normalizer nrm;
  nrm.mu = Vector::Zero(static_cast<Eigen::Index>(d));
  nrm.sigma = Vector::Zero(static_cast<Eigen::Index>(d));
  for (const auto& fv : training) {
    if (fv.values.size() != d) {
      throw Error(ErrorKind::kArgument, "training vector '" + fv.graph_id + "' has dimension " +
                                            std::to_string(fv.values.size()) + ", expected " +
                                            std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) nrm.mu[static_cast<Eigen::Index>(i)] += fv.values[i];
  }
  const double n = static_cast<double>(training.size());
  nrm.mu /= n;
  for (const auto& fv : training) {
    for (std::size_t i = 0; i < d; ++i) {
      const double dev = fv.values[i] - nrm.mu[static_cast<Eigen::Index>(i)];
      nrm.sigma[static_cast<Eigen::Index>(i)] += dev * dev;
    }
  }
  nrm.sigma = (nrm.sigma / n).cwiseSqrt();
  return nrm;
}

Normalizer identity_normalizer(std::size_t dimension) {
  const auto d = static_cast<Eigen::Index>(dimension);
  return Normalizer{Vector::Zero(d), Vector::Ones(d)};
}

Vector normalize(const Normalizer& nrm, const FeatureVector& v) { return nrm.apply(v.values); }

MetricModel::MetricModel(Matrix L, Normalizer normalizer, std::vector<std::string> feature_names,
                         TrainingMeta meta)
    : L_(std::move(L)),
      normalizer_(std::move(normalizer)),
      feature_names_(std::move(feature_names)),
      meta_(meta) {
  const auto d = static_cast<Eigen::Index>(feature_names_.size());
  if (d == 0 || L_.rows() != d || L_.cols() != d || normalizer_.mu.size() != d ||
      normalizer_.sigma.size() != d) {
    throw Error(ErrorKind::kArgument,
                "metric model needs a square L matching the feature and normalizer dimension");
  }
  // Average with the transpose so M is symmetric bit for bit.
  M_ = L_.transpose() * L_;
  M_ = 0.5 * (M_ + M_.transpose()).eval();
}

double MetricModel::squared_distance_normalized(const Vector& za, const Vector& zb) const {
  if (za.size() != M_.rows() || zb.size() != M_.rows()) {
    throw Error(ErrorKind::kArgument, "vector dimension does not match metric dimension " +
                                          std::to_string(M_.rows()));
  }
  const Vector diff = za - zb;
  const double q = diff.dot(M_ * diff);
  return q > 0.0 ? q : 0.0;
}

MetricModel euclidean_model(Normalizer normalizer, std::vector<std::string> feature_names) {
  const std::size_t d = normalizer.dimension();
  if (feature_names.empty()) feature_names = default_feature_names(d);
  const auto n = static_cast<Eigen::Index>(d);
  return MetricModel(Matrix::Identity(n, n), std::move(normalizer), std::move(feature_names));
}

MetricModel euclidean_model(std::size_t dimension) {
  return euclidean_model(identity_normalizer(dimension));
}

double squared_distance(const MetricModel& m, const FeatureVector& a, const FeatureVector& b) {
  const Normalizer& nrm = m.normalizer();
  return m.squared_distance_normalized(nrm.apply(a.values), nrm.apply(b.values));
}

double distance(const MetricModel& m, const FeatureVector& a, const FeatureVector& b) {
  return std::sqrt(squared_distance(m, a, b));
}

}  // namespace netdist
