#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace schro {

// Principal component basis fitted to a sample matrix (rows = samples).
// Components are stored as columns, orthonormal, ordered by decreasing
// explained variance; only the prefix reaching the cumulative variance
// target is retained.
template <typename Scalar>
struct PcaModel {
  Eigen::VectorX<Scalar> mean;                // d
  Eigen::MatrixX<Scalar> components;          // d x kept
  Eigen::VectorX<Scalar> explained_variance;  // kept, non-increasing
  Scalar total_variance = 0;

  Eigen::Index dimension() const { return mean.size(); }
  Eigen::Index kept() const { return components.cols(); }

  Scalar explained_fraction() const {
    return total_variance > Scalar(0) ? explained_variance.sum() / total_variance
                                      : Scalar(1);
  }
};

template <typename Scalar>
PcaModel<Scalar> pca_fit(const Eigen::MatrixX<Scalar>& samples,
                         Scalar variance_target = Scalar(0.95)) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (n < 2) throw std::invalid_argument("pca_fit: need at least 2 samples");
  if (d < 1) throw std::invalid_argument("pca_fit: need at least 1 feature");
  if (!(variance_target > Scalar(0) && variance_target <= Scalar(1)))
    throw std::invalid_argument("pca_fit: variance_target must be in (0, 1]");
  if (!samples.allFinite()) throw std::invalid_argument("pca_fit: non-finite entry");

  PcaModel<Scalar> model;
  model.mean = samples.colwise().mean();
  const Eigen::MatrixX<Scalar> centered = samples.rowwise() - model.mean.transpose();
  Eigen::MatrixX<Scalar> cov =
      (centered.adjoint() * centered) / static_cast<Scalar>(n - 1);
  cov = ((cov + cov.transpose()) * Scalar(0.5)).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixX<Scalar>> solver(cov);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("pca_fit: eigendecomposition failed");

  // Solver returns ascending eigenvalues; reverse and clamp tiny negatives.
  const Eigen::Index rank = solver.eigenvalues().size();
  Eigen::VectorX<Scalar> eigenvalues(rank);
  Eigen::MatrixX<Scalar> eigenvectors(d, rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const Scalar lambda = solver.eigenvalues()[rank - 1 - i];
    eigenvalues[i] = lambda > Scalar(0) ? lambda : Scalar(0);
    eigenvectors.col(i) = solver.eigenvectors().col(rank - 1 - i);
  }

  model.total_variance = eigenvalues.sum();
  Eigen::Index kept = 1;
  if (model.total_variance > Scalar(0)) {
    const Scalar goal =
        (variance_target - Scalar(1e-12)) * model.total_variance;
    Scalar cumulative = eigenvalues[0];
    while (cumulative < goal && kept < rank) {
      cumulative += eigenvalues[kept];
      ++kept;
    }
  }
  model.components = eigenvectors.leftCols(kept);
  model.explained_variance = eigenvalues.head(kept);
  return model;
}

// Projects samples onto the retained components (centred scores).
template <typename Scalar>
Eigen::MatrixX<Scalar> pca_transform(const PcaModel<Scalar>& model,
                                     const Eigen::MatrixX<Scalar>& samples) {
  if (samples.cols() != model.dimension())
    throw std::invalid_argument("pca_transform: feature dimension mismatch");
  return (samples.rowwise() - model.mean.transpose()) * model.components;
}

// Back-projection from score space to the original feature space.
template <typename Scalar>
Eigen::MatrixX<Scalar> pca_inverse_transform(const PcaModel<Scalar>& model,
                                             const Eigen::MatrixX<Scalar>& scores) {
  if (scores.cols() != model.kept())
    throw std::invalid_argument("pca_inverse_transform: score dimension mismatch");
  return (scores * model.components.transpose()).rowwise() + model.mean.transpose();
}

}  // namespace schro
