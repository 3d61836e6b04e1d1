#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "netdist/features.hpp"

namespace netdist {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-feature z-score statistics fitted on training vectors only.
struct Normalizer {
  Vector mu;
  Vector sigma;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(mu.size()); }
  /// z_i = (x_i - mu_i) / sigma_i, or 0 where sigma_i == 0.
  Vector apply(std::span<const double> x) const;
  /// Inverse of apply on features with sigma_i > 0; constant features map to mu_i.
  Vector invert(const Vector& z) const;

  friend bool operator==(const Normalizer& a, const Normalizer& b) {
    return a.mu == b.mu && a.sigma == b.sigma;
  }
};

/// Mean and population standard deviation per feature. Throws
/// kInsufficientData for fewer than two vectors, kArgument on ragged input.
Normalizer fit_normalizer(std::span<const FeatureVector> training);
Normalizer identity_normalizer(std::size_t dimension);

Vector normalize(const Normalizer& nrm, const FeatureVector& v);

struct TrainingMeta {
  int iterations = 0;
  double final_loss = 0.0;
  int target_neighbors = 0;

  friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

/// Mahalanobis metric x -> L x over z-scored features, with M = LᵀL cached.
class MetricModel {
 public:
  /// Throws kArgument when L is not square or sizes disagree.
  MetricModel(Matrix L, Normalizer normalizer, std::vector<std::string> feature_names,
              TrainingMeta meta = {});

  const Matrix& L() const noexcept { return L_; }
  const Matrix& M() const noexcept { return M_; }
  const Normalizer& normalizer() const noexcept { return normalizer_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const TrainingMeta& training_meta() const noexcept { return meta_; }
  std::size_t dimension() const noexcept { return feature_names_.size(); }

  /// (za - zb)ᵀ M (za - zb) on already normalized vectors, clamped at 0.
  double squared_distance_normalized(const Vector& za, const Vector& zb) const;

  friend bool operator==(const MetricModel& a, const MetricModel& b) {
    return a.L_ == b.L_ && a.normalizer_ == b.normalizer_ &&
           a.feature_names_ == b.feature_names_ && a.meta_ == b.meta_;
  }

 private:
  Matrix L_;
  Matrix M_;
  Normalizer normalizer_;
  std::vector<std::string> feature_names_;
  TrainingMeta meta_;
};

/// L = M = identity over the given normalizer.
MetricModel euclidean_model(Normalizer normalizer, std::vector<std::string> feature_names = {});
/// Identity metric with an identity normalizer (mu = 0, sigma = 1).
MetricModel euclidean_model(std::size_t dimension = kFeatureCount);

/// Squared Mahalanobis distance of the normalized vectors. Throws kArgument
/// on a dimension mismatch.
double squared_distance(const MetricModel& m, const FeatureVector& a, const FeatureVector& b);
/// Square root of squared_distance; a pseudometric.
double distance(const MetricModel& m, const FeatureVector& a, const FeatureVector& b);

}  // namespace netdist
