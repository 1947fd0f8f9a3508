#pragma once

#include <vector>

#include <Eigen/Core>

#include "isoform/forms.hpp"
#include "isoform/kernels.hpp"
#include "isoform/mesh.hpp"

namespace isoform {

enum class Verdict { isothermic, not_isothermic, marginal, vacuous };

const char* to_string(Verdict v);

/// Self-stress system on normalized positions (f - centroid) / bbox_diagonal.
/// Column c is multiplied by column_scale[c] = 1 / l_c (normalized length),
/// so a nullspace vector y gives the stress k = column_scale * y.
struct StressSystem {
  Eigen::MatrixXd matrix;
  std::vector<double> column_scale;
  std::vector<Vec3> normalized_positions;
  int rows_per_vertex = 4;
};

StressSystem self_stress_system(const Realization& r, kernels::StressRows rows = kernels::StressRows::quadratic,
                                Exec exec = Exec::parallel);

/// Relative residuals of the three defining equations of a dual 1-form tau:
/// closedness at interior vertices, parallelism to df, and the vertex
/// pairing sum_j <df, tau>. For stresses, scalar_row is the residual of
/// sum_j k (|f_j|^2 - |f_i|^2).
struct StressResiduals {
  double closedness = 0;
  double parallelism = 0;
  double pairing = 0;
  double scalar_row = 0;
  double max() const;
};

StressResiduals tau_residuals(const Realization& r, const DualOneForm<Vec3>& tau);
StressResiduals stress_residuals(const Realization& r, const std::vector<double>& k);

struct SelfStressBasis {
  /// Orthonormal stresses k (one value per interior edge).
  std::vector<std::vector<double>> stresses;
  Eigen::VectorXd singular_values;
  double rank_tol = 0;
  int rows = 0;
  int cols = 0;
  int nullity = 0;
  Verdict verdict = Verdict::vacuous;
  double gap_ratio = 0;
  std::vector<StressResiduals> residuals;
  /// Number of edges with |k_e| > 1e-8 max|k| per basis vector.
  std::vector<int> support;
  /// Cross-checks: nullity of the five-row lifted system and largest
  /// principal angle between the two nullspaces; nullity of the three-row
  /// Euclidean system.
  int lifted_nullity = 0;
  double lifted_angle = 0;
  int euclidean_nullity = 0;
};

SelfStressBasis isothermic_basis(const Realization& r, double rank_tol = 1e-8);

struct TauFromStress {
  DualOneForm<Vec3> tau;
  StressResiduals residuals;
  bool consistent = true;
};

/// tau(e*_ij) = k_ij df(e_ij). consistent is false if a residual exceeds
/// 10 * tol.
TauFromStress tau_from_stress(const Realization& r, const std::vector<double>& k, double tol = 1e-8);

struct MeanCurvatureData {
  /// Signed dihedral angle per interior edge (interior-edge index order).
  std::vector<double> alpha;
  /// H_ij = alpha_ij * l_ij.
  std::vector<double> edge_H;
  /// sum_j H_ij over interior edges at each vertex.
  std::vector<double> vertex_H;
};

MeanCurvatureData mean_curvature(const Realization& r);

/// Hdot_i = sum_j <df(e_ij), Z_ijk - Z_jil>, interior vertices only.
std::vector<double> vertex_mean_curvature_rate(const Realization& r, const std::vector<Vec3>& Z);

struct InscribedReport {
  double radius = 0;
  double radius_deviation = 0;
  int euclidean_nullity = 0;
  /// max over Euclidean stresses of |sum_j k |df|^2| relative to max |k| l^2.
  double sphere_identity = 0;
  int rigidity_corank = 0;
  bool flexible = false;
  Verdict verdict = Verdict::vacuous;
  bool agree = false;
};

/// Requires all vertices on a sphere about the origin (relative 1e-9).
InscribedReport inscribed_diagnostics(const Realization& r, double rank_tol = 1e-8);

}  // namespace isoform
