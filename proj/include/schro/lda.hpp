#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace schro {

// Shared-covariance Gaussian discriminant. The pooled covariance is ridge
// regularized with eps * trace/dim on the diagonal, so a singular pooled
// covariance is never an error. Prediction is
//   argmax_c  x' S^-1 mu_c - 1/2 mu_c' S^-1 mu_c + ln pi_c
// with ties resolved towards the lowest class id.
template <typename Scalar>
struct LdaModel {
  static constexpr Scalar kRidge = Scalar(1e-6);

  std::vector<int> class_ids;                  // ascending
  Eigen::MatrixX<Scalar> class_means;          // C x d
  Eigen::MatrixX<Scalar> shared_covariance;    // d x d, regularized
  Eigen::VectorX<Scalar> class_priors;         // C, sums to 1
  Eigen::MatrixX<Scalar> weights;              // d x C  (S^-1 mu_c)
  Eigen::VectorX<Scalar> biases;               // C

  Eigen::Index dimension() const { return class_means.cols(); }
  Eigen::Index class_count() const { return class_means.rows(); }
};

template <typename Scalar>
LdaModel<Scalar> lda_fit(const Eigen::MatrixX<Scalar>& samples,
                         const std::vector<int>& labels) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw std::invalid_argument("lda_fit: labels/samples size mismatch");
  if (!samples.allFinite()) throw std::invalid_argument("lda_fit: non-finite entry");

  std::map<int, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < n; ++i) groups[labels[i]].push_back(i);
  if (groups.size() < 2) throw std::invalid_argument("lda_fit: need at least 2 classes");
  for (const auto& [id, rows] : groups)
    if (rows.size() < 2)
      throw std::invalid_argument("lda_fit: class " + std::to_string(id) +
                                  " has fewer than 2 samples");

  const Eigen::Index c = static_cast<Eigen::Index>(groups.size());
  LdaModel<Scalar> model;
  model.class_ids.reserve(c);
  model.class_means.resize(c, d);
  model.class_priors.resize(c);

  Eigen::MatrixX<Scalar> scatter = Eigen::MatrixX<Scalar>::Zero(d, d);
  Eigen::Index ci = 0;
  for (const auto& [id, rows] : groups) {
    model.class_ids.push_back(id);
    Eigen::VectorX<Scalar> mean = Eigen::VectorX<Scalar>::Zero(d);
    for (const Eigen::Index r : rows) mean += samples.row(r).transpose();
    mean /= static_cast<Scalar>(rows.size());
    model.class_means.row(ci) = mean.transpose();
    model.class_priors[ci] =
        static_cast<Scalar>(rows.size()) / static_cast<Scalar>(n);
    for (const Eigen::Index r : rows) {
      const Eigen::VectorX<Scalar> dev = samples.row(r).transpose() - mean;
      scatter.noalias() += dev * dev.transpose();
    }
    ++ci;
  }

  model.shared_covariance = scatter / static_cast<Scalar>(n - c);
  model.shared_covariance =
      ((model.shared_covariance + model.shared_covariance.transpose()) * Scalar(0.5))
          .eval();
  const Scalar trace = model.shared_covariance.trace();
  const Scalar ridge =
      LdaModel<Scalar>::kRidge * (trace > Scalar(0) ? trace / static_cast<Scalar>(d)
                                                    : Scalar(1));
  model.shared_covariance.diagonal().array() += ridge;

  const Eigen::LDLT<Eigen::MatrixX<Scalar>> solver(model.shared_covariance);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("lda_fit: covariance factorization failed");
  model.weights = solver.solve(model.class_means.transpose());
  model.biases.resize(c);
  for (Eigen::Index i = 0; i < c; ++i)
    model.biases[i] = Scalar(-0.5) * model.class_means.row(i).dot(model.weights.col(i)) +
                      std::log(model.class_priors[i]);
  return model;
}

template <typename Scalar>
Eigen::VectorX<Scalar> lda_scores(const LdaModel<Scalar>& model,
                                  const Eigen::VectorX<Scalar>& x) {
  if (x.size() != model.dimension())
    throw std::invalid_argument("lda_scores: feature dimension mismatch");
  return model.weights.transpose() * x + model.biases;
}

template <typename Scalar>
int lda_predict(const LdaModel<Scalar>& model, const Eigen::VectorX<Scalar>& x) {
  const Eigen::VectorX<Scalar> scores = lda_scores(model, x);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;  // ties keep the lowest class id
  return model.class_ids[static_cast<std::size_t>(best)];
}

template <typename Scalar>
std::vector<int> lda_predict(const LdaModel<Scalar>& model,
                             const Eigen::MatrixX<Scalar>& samples) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index i = 0; i < samples.rows(); ++i)
    out.push_back(lda_predict(model, Eigen::VectorX<Scalar>(samples.row(i).transpose())));
  return out;
}

}  // namespace schro
