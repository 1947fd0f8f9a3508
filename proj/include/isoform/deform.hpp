#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "isoform/forms.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/mesh.hpp"

namespace isoform {

/// log l_jk - log l_ki + log l_il - log l_lj per interior edge.
std::vector<double> lcr(const Realization& r);
std::vector<double> lcr(const SurfaceMesh& mesh, const std::vector<double>& edge_lengths);

/// |E_int| x |E| matrix of L(sigma)_ij = sigma_jk - sigma_ki + sigma_il - sigma_lj.
Eigen::SparseMatrix<double> lcr_operator(const SurfaceMesh& mesh);

/// |V| x |E| unsigned incidence: (B^T u)_ij = u_i + u_j.
Eigen::SparseMatrix<double> unsigned_incidence(const SurfaceMesh& mesh);

struct Decomposition {
  /// sigma_ij = <d fdot, df> / l^2 per edge.
  std::vector<double> sigma;
  /// W_ij = (d fdot x df) / l^2, perpendicular to df.
  std::vector<Vec3> W;
  /// max |d fdot - sigma df - df x W|.
  double reconstruction_residual = 0;
};

/// d fdot = sigma df + df x W with <W, df> = 0.
Decomposition decompose(const Realization& r, const std::vector<Vec3>& fdot);

struct DeformationField {
  std::vector<Vec3> fdot;
  std::vector<Vec3> Z;
  /// max |(Z_left - Z_right) x df| / (max |Z| l) over interior edges.
  double compatibility = 0;
  int worst_edge = kNone;
  double closure = 0;
  double max_sigma = 0;
};

/// Integrates d fdot(e_ij) = df(e_ij) x Z_left over a vertex spanning tree
/// rooted at vertex 0. Throws Error("deform") if Z is incompatible beyond tol.
DeformationField isometric_from_rotations(const Realization& r, const std::vector<Vec3>& Z, double tol = 1e-9);

struct HarmonicNormalField {
  Vec3 normal;
  std::vector<double> u;
  std::vector<Vec3> fdot;  // u N
  std::vector<Vec3> Z;
  std::vector<double> sigma;
  std::vector<double> Hdot;
  /// Analytic first-order edge-length rate max |<d fdot, df>| / l.
  double max_length_rate = 0;
};

/// Z_ijk = -(u_i df_jk + u_j df_ki + u_k df_ij) / (2 A_ijk), where
/// A_ijk = <df_ij x df_ik, N> / 2 and N is the common face normal of a planar
/// realization.
HarmonicNormalField harmonic_normal_deformation(const Realization& r, const std::vector<double>& u);

struct ConformalDimension {
  int kernel_dimension = 0;
  int bound = 0;
  int genus = 0;
  Verdict verdict = Verdict::not_isothermic;
  /// |V| < 6g + 4.
  bool counting_predicate = false;
  bool marginal = false;
  Eigen::VectorXd singular_values;
};

/// Kernel dimension of fdot -> L(sigma(fdot)) on a closed realization,
/// compared against |V| - 6g + 6.
ConformalDimension conformal_dimension(const Realization& r, double rank_tol = 1e-8);

}  // namespace isoform
