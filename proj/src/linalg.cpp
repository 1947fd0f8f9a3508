#include "isoform/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace isoform {

Nullspace nullspace(const Eigen::MatrixXd& A, double rel_tol) {
  Nullspace ns;
  ns.rel_tol = rel_tol;
  const Eigen::Index cols = A.cols();
  if (A.rows() == 0 || cols == 0) {
    ns.basis = Eigen::MatrixXd::Identity(cols, cols);
    ns.nullity = static_cast<int>(cols);
    ns.gap_ratio = std::numeric_limits<double>::infinity();
    return ns;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  ns.singular_values = svd.singularValues();
  ns.sigma_max = ns.singular_values.size() ? ns.singular_values[0] : 0.0;

  const double cut = rel_tol * ns.sigma_max;
  int rank = 0;
  for (Eigen::Index i = 0; i < ns.singular_values.size(); ++i)
    if (ns.singular_values[i] >= cut && ns.sigma_max > 0) ++rank;
  ns.nullity = static_cast<int>(cols) - rank;
  ns.basis = svd.matrixV().rightCols(ns.nullity);

  const double lo = cut / std::sqrt(10.0), hi = cut * std::sqrt(10.0);
  for (Eigen::Index i = 0; i < ns.singular_values.size(); ++i)
    if (ns.singular_values[i] >= lo && ns.singular_values[i] <= hi) ns.marginal = true;

  const Eigen::Index n = ns.singular_values.size();
  if (rank == 0 || rank >= n)
    ns.gap_ratio = std::numeric_limits<double>::infinity();
  else
    ns.gap_ratio = ns.singular_values[rank - 1] / std::max(ns.singular_values[rank], 1e-300);
  return ns;
}

int numerical_rank(const Eigen::MatrixXd& A, double rel_tol) {
  return static_cast<int>(A.cols()) - nullspace(A, rel_tol).nullity;
}

double max_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) {
  if (U.cols() != V.cols()) return M_PI / 2;
  if (U.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U.transpose() * V);
  double smallest = svd.singularValues().minCoeff();
  return std::acos(std::clamp(smallest, -1.0, 1.0));
}

Eigen::MatrixXd span_projector(const Eigen::MatrixXd& A, double rel_tol) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[0] > 0 && s[i] >= rel_tol * s[0]) ++rank;
  Eigen::MatrixXd Q = svd.matrixU().leftCols(rank);
  return Q * Q.transpose();
}

}  // namespace isoform
