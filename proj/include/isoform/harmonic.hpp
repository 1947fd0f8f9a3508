#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "isoform/mesh.hpp"

namespace isoform {

/// Per-edge cotangent weights c_ij = cot beta_ij^k + cot beta_ji^l; boundary
/// edges carry their single cotangent. Weights may be negative.
std::vector<double> cotan_weights(const Realization& r);

/// Sparse |V| x |V| operator (Lu)_i = sum_j c_ij (u_j - u_i).
Eigen::SparseMatrix<double> cotan_laplacian(const Realization& r);

/// sum_j c_ij (u_j - u_i) at every vertex.
std::vector<double> laplacian_residual(const Realization& r, const std::vector<double>& u);

/// Two boundary vertices of a cut domain that are the same point of the
/// uncut surface. The slave value is tied to the master by a fixed jump
/// u[slave] = u[master] + (boundary[slave] - boundary[master]).
struct SeamPair {
  int master;
  int slave;
};

struct HarmonicFunction {
  std::vector<double> u;
  /// Residual per interior vertex (interior_vertex_index order).
  std::vector<double> residual;
  /// Combined residual of each seam pair.
  std::vector<double> seam_residual;
  double max_residual = 0;
  /// max_residual / (max_i sum_j |c_ij| * max(|u|_inf, 1)).
  double relative_residual = 0;
  std::string solver;
};

/// Solves the discrete Dirichlet problem. `boundary` holds one value per
/// vertex; only boundary vertices (and seam slaves, for the jump) are read.
/// Seam pairs are solved for rather than prescribed. Throws Error("harmonic")
/// when there is no boundary or the system is singular.
HarmonicFunction solve_dirichlet(const Realization& r, const std::vector<double>& boundary,
                                 const std::vector<SeamPair>& seam = {}, double tol = 1e-10);

HarmonicFunction solve_dirichlet(const Realization& r, const std::function<double(int)>& boundary,
                                 const std::vector<SeamPair>& seam = {}, double tol = 1e-10);

}  // namespace isoform
