#pragma once

#include <Eigen/Core>

namespace isoform {

/// Numerical nullspace of a dense matrix from a full SVD.
struct Nullspace {
  Eigen::VectorXd singular_values;  // descending, min(rows, cols) entries
  Eigen::MatrixXd basis;            // orthonormal columns
  int nullity = 0;
  double sigma_max = 0;
  double rel_tol = 0;
  /// Smallest kept singular value over the largest discarded one (infinite
  /// when nothing is discarded or nothing is kept).
  double gap_ratio = 0;
  /// Some singular value lies within half a decade of the threshold.
  bool marginal = false;
};

/// nullity = #{sigma_i < rel_tol * sigma_max} + max(0, cols - rows).
Nullspace nullspace(const Eigen::MatrixXd& A, double rel_tol);

int numerical_rank(const Eigen::MatrixXd& A, double rel_tol);

/// Largest principal angle between the column spans of two matrices with
/// orthonormal columns; pi/2 if the dimensions differ.
double max_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V);

/// Orthogonal projector onto the column span of A (rank by rel_tol).
Eigen::MatrixXd span_projector(const Eigen::MatrixXd& A, double rel_tol);

}  // namespace isoform
