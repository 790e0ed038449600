#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "schro/lda.hpp"
#include "schro/pca.hpp"
#include "schro/rng.hpp"

namespace schro {

struct ClassificationReport {
  std::vector<double> fold_accuracies;          // one entry per non-empty fold
  double success_rate = 0;                      // mean fold accuracy * 100
  double deviation = 0;                         // stddev of fold accuracies
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> confusion;  // true x pred
  std::vector<int> class_ids;                   // confusion row/col order
  int folds = 0;
  std::uint64_t seed = 0;
  double pca_variance_target = 0;
};

template <typename Scalar>
struct FoldModel {
  std::vector<Eigen::Index> test_indices;
  PcaModel<Scalar> pca;
  LdaModel<Scalar> lda;
};

template <typename Scalar>
struct CrossValResult {
  ClassificationReport report;
  std::vector<FoldModel<Scalar>> fold_models;
};

// Stratified fold assignment from a seeded shuffle. Classes are visited in
// ascending label order; each class's indices (in given order) are shuffled
// and dealt into k chunks, the oversized chunks rotating with the class
// ordinal so fold sizes stay balanced. Returns per-fold test index lists;
// together they partition 0..n-1.
inline std::vector<std::vector<Eigen::Index>> stratified_folds(
    const std::vector<int>& labels, int k, std::uint64_t seed) {
  const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be >= 2");
  if (static_cast<Eigen::Index>(k) > n)
    throw std::invalid_argument("stratified_folds: k exceeds sample count");

  std::map<int, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[labels[i]].push_back(i);

  std::vector<std::vector<Eigen::Index>> folds(static_cast<std::size_t>(k));
  Rng rng(seed);
  std::size_t class_ordinal = 0;
  for (auto& [label, indices] : by_class) {
    rng.shuffle(indices);
    const std::size_t m = indices.size();
    const std::size_t base = m / static_cast<std::size_t>(k);
    const std::size_t extra = m % static_cast<std::size_t>(k);
    std::size_t cursor = 0;
    for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
      const std::size_t slot =
          (f + static_cast<std::size_t>(k) - class_ordinal % k) % k;
      std::size_t take = base + (slot < extra ? 1 : 0);
      for (std::size_t j = 0; j < take; ++j) folds[f].push_back(indices[cursor++]);
    }
    ++class_ordinal;
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

// Per fold: PCA and LDA are fitted on the training rows only, then evaluated
// on the held-out rows; the confusion matrix accumulates over all folds.
template <typename Scalar>
CrossValResult<Scalar> cross_validate(const Eigen::MatrixX<Scalar>& samples,
                                      const std::vector<int>& labels, int k,
                                      std::uint64_t seed,
                                      Scalar pca_variance_target = Scalar(0.95)) {
  const Eigen::Index n = samples.rows();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw std::invalid_argument("cross_validate: labels/samples size mismatch");

  std::vector<int> class_ids;
  {
    std::map<int, Eigen::Index> counts;
    for (const int l : labels) ++counts[l];
    for (const auto& [id, cnt] : counts) class_ids.push_back(id);
  }
  if (class_ids.size() < 2)
    throw std::invalid_argument("cross_validate: need at least 2 classes");
  std::map<int, Eigen::Index> class_pos;
  for (std::size_t i = 0; i < class_ids.size(); ++i)
    class_pos[class_ids[i]] = static_cast<Eigen::Index>(i);

  const auto folds = stratified_folds(labels, k, seed);

  CrossValResult<Scalar> result;
  ClassificationReport& report = result.report;
  report.class_ids = class_ids;
  report.folds = k;
  report.seed = seed;
  report.pca_variance_target = static_cast<double>(pca_variance_target);
  const Eigen::Index c = static_cast<Eigen::Index>(class_ids.size());
  report.confusion.setZero(c, c);

  std::vector<char> in_test(static_cast<std::size_t>(n));
  for (const auto& test : folds) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (const Eigen::Index i : test) in_test[static_cast<std::size_t>(i)] = 1;

    std::vector<Eigen::Index> train;
    train.reserve(static_cast<std::size_t>(n) - test.size());
    for (Eigen::Index i = 0; i < n; ++i)
      if (!in_test[static_cast<std::size_t>(i)]) train.push_back(i);

    Eigen::MatrixX<Scalar> train_x(static_cast<Eigen::Index>(train.size()),
                                   samples.cols());
    std::vector<int> train_y(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      train_x.row(static_cast<Eigen::Index>(i)) = samples.row(train[i]);
      train_y[i] = labels[static_cast<std::size_t>(train[i])];
    }

    FoldModel<Scalar> fm;
    fm.test_indices = test;
    fm.pca = pca_fit(train_x, pca_variance_target);
    const Eigen::MatrixX<Scalar> train_z = pca_transform(fm.pca, train_x);
    fm.lda = lda_fit(train_z, train_y);

    if (!test.empty()) {
      Eigen::MatrixX<Scalar> test_x(static_cast<Eigen::Index>(test.size()),
                                    samples.cols());
      for (std::size_t i = 0; i < test.size(); ++i)
        test_x.row(static_cast<Eigen::Index>(i)) = samples.row(test[i]);
      const Eigen::MatrixX<Scalar> test_z = pca_transform(fm.pca, test_x);

      Eigen::Index correct = 0;
      for (std::size_t i = 0; i < test.size(); ++i) {
        const int truth = labels[static_cast<std::size_t>(test[i])];
        const int predicted = lda_predict(
            fm.lda, Eigen::VectorX<Scalar>(test_z.row(static_cast<Eigen::Index>(i))
                                               .transpose()));
        if (predicted == truth) ++correct;
        ++report.confusion(class_pos.at(truth), class_pos.at(predicted));
      }
      report.fold_accuracies.push_back(static_cast<double>(correct) /
                                       static_cast<double>(test.size()));
    }
    result.fold_models.push_back(std::move(fm));
  }

  const std::size_t f = report.fold_accuracies.size();
  double mean = 0;
  for (const double a : report.fold_accuracies) mean += a;
  mean /= static_cast<double>(f);
  report.success_rate = 100.0 * mean;
  double ss = 0;
  for (const double a : report.fold_accuracies) ss += (a - mean) * (a - mean);
  report.deviation = f > 1 ? std::sqrt(ss / static_cast<double>(f - 1)) : 0.0;
  return result;
}

}  // namespace schro
