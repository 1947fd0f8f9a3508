#pragma once

#include <vector>

#include <Eigen/Core>

#include "isoform/mesh.hpp"
#include "isoform/parallel.hpp"

// Data-parallel kernels. Every kernel has a serial reference loop (usually a
// scatter over edges or halfedges) and a parallel version that gathers per
// output slot. Tests compare the two; the benchmark target times them.
namespace isoform::kernels {

FaceGeometry face_geometry(const Realization& r, Exec exec, double rel_tol = 1e-12);

/// Per-edge cotangent weight: sum of the cotangents opposite the edge in its
/// one or two faces. Serial and parallel results are bitwise equal.
std::vector<double> cotan_weights(const SurfaceMesh& mesh, const FaceGeometry& geometry, Exec exec);

/// r_v = sum_j c_vj (u_j - u_v) for every vertex (boundary vertices included).
std::vector<double> laplacian_residual(const SurfaceMesh& mesh, const std::vector<double>& weights,
                                       const std::vector<double>& u, Exec exec);

enum class StressRows {
  euclidean = 3,  // sum_j k df = 0
  quadratic = 4,  // plus sum_j k (|f_j|^2 - |f_i|^2) = 0
  lifted = 5,     // sum_j k d(lift f) = 0
};

/// Dense self-stress matrix: rows_per_vertex rows per interior vertex, one
/// column per interior edge, column c multiplied by column_scale[c].
Eigen::MatrixXd self_stress_matrix(const SurfaceMesh& mesh, const std::vector<Vec3>& positions,
                                   const std::vector<double>& column_scale, StressRows rows, Exec exec);

/// |E| x 3|V| rigidity matrix, row e = (f_i - f_j) at i, (f_j - f_i) at j.
Eigen::MatrixXd rigidity_matrix(const SurfaceMesh& mesh, const std::vector<Vec3>& positions, Exec exec);

/// |E_int| x 3|V| matrix of fdot -> L(sigma(fdot)), with
/// sigma_e = <d fdot, df>/l^2. The serial version forms sigma and L
/// separately and multiplies.
Eigen::MatrixXd sigma_lcr_composite(const SurfaceMesh& mesh, const std::vector<Vec3>& positions, Exec exec);

/// Hdot_i = sum_j <df(e_ij), Z_left - Z_right> per interior vertex (indexed
/// by interior_vertex_index).
std::vector<double> mean_curvature_rate(const Realization& r, const std::vector<Vec3>& Z, Exec exec);

}  // namespace isoform::kernels
