#include "isoform/isothermic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "isoform/linalg.hpp"

namespace isoform {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::isothermic: return "isothermic";
    case Verdict::not_isothermic: return "not_isothermic";
    case Verdict::marginal: return "marginal";
    case Verdict::vacuous: return "vacuous";
  }
  return "unknown";
}

double StressResiduals::max() const { return std::max({closedness, parallelism, pairing, scalar_row}); }

StressSystem self_stress_system(const Realization& r, kernels::StressRows rows, Exec exec) {
  const SurfaceMesh& mesh = r.mesh();
  StressSystem sys;
  sys.rows_per_vertex = static_cast<int>(rows);
  const Vec3 c = r.centroid();
  const double diag = r.bbox_diagonal();
  sys.normalized_positions.reserve(mesh.vertex_count());
  for (const auto& p : r.positions()) sys.normalized_positions.push_back((p - c) / diag);
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    double len = (sys.normalized_positions[mesh.head(h)] - sys.normalized_positions[mesh.tail(h)]).norm();
    sys.column_scale.push_back(1.0 / len);
  }
  sys.matrix = kernels::self_stress_matrix(mesh, sys.normalized_positions, sys.column_scale, rows, exec);
  return sys;
}

StressResiduals tau_residuals(const Realization& r, const DualOneForm<Vec3>& tau) {
  const SurfaceMesh& mesh = r.mesh();
  StressResiduals res;
  const double tmax = tau.max_magnitude();
  if (tmax == 0) return res;
  double pair_scale = 0;
  const auto edges = mesh.interior_edges();
  for (std::size_t n = 0; n < edges.size(); ++n) {
    Vec3 d = r.edge_vector(mesh.edge_halfedge(edges[n]));
    const Vec3& t = tau.values()[n];
    pair_scale = std::max(pair_scale, t.norm() * d.norm());
    res.parallelism = std::max(res.parallelism, t.cross(d).norm() / (tmax * d.norm()));
  }
  for (int v : mesh.interior_vertices()) {
    Vec3 sum = Vec3::Zero();
    double pair = 0;
    for (int h : mesh.outgoing(v)) {
      Vec3 t = tau.at(mesh, h);
      sum += t;
      pair += r.edge_vector(h).dot(t);
    }
    res.closedness = std::max(res.closedness, sum.norm() / tmax);
    res.pairing = std::max(res.pairing, std::abs(pair) / pair_scale);
  }
  return res;
}

StressResiduals stress_residuals(const Realization& r, const std::vector<double>& k) {
  const SurfaceMesh& mesh = r.mesh();
  std::vector<Vec3> t;
  const auto edges = mesh.interior_edges();
  t.reserve(edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n) t.push_back(k[n] * r.edge_vector(mesh.edge_halfedge(edges[n])));
  StressResiduals res = tau_residuals(r, DualOneForm<Vec3>(std::move(t)));

  double scale = 0;
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = mesh.edge_halfedge(edges[n]);
    const Vec3 &a = r.position(mesh.tail(h)), &b = r.position(mesh.head(h));
    scale = std::max(scale, std::abs(k[n]) * (b - a).norm() * (a.norm() + b.norm()));
  }
  if (scale > 0) {
    for (int v : mesh.interior_vertices()) {
      double sum = 0;
      const double fi = r.position(v).squaredNorm();
      for (int h : mesh.outgoing(v))
        sum += k[mesh.interior_edge_index(mesh.edge_of(h))] * (r.position(mesh.head(h)).squaredNorm() - fi);
      res.scalar_row = std::max(res.scalar_row, std::abs(sum) / scale);
    }
  }
  return res;
}

SelfStressBasis isothermic_basis(const Realization& r, double rank_tol) {
  const SurfaceMesh& mesh = r.mesh();
  SelfStressBasis out;
  out.rank_tol = rank_tol;
  StressSystem sys = self_stress_system(r);
  out.rows = static_cast<int>(sys.matrix.rows());
  out.cols = static_cast<int>(sys.matrix.cols());

  Nullspace ns = nullspace(sys.matrix, rank_tol);
  out.singular_values = ns.singular_values;
  out.nullity = ns.nullity;
  out.gap_ratio = ns.gap_ratio;
  if (mesh.interior_vertices().empty())
    out.verdict = Verdict::vacuous;
  else if (ns.marginal)
    out.verdict = Verdict::marginal;
  else
    out.verdict = ns.nullity >= 1 ? Verdict::isothermic : Verdict::not_isothermic;

  if (ns.nullity > 0) {
    Eigen::MatrixXd K = ns.basis;
    for (Eigen::Index c = 0; c < K.rows(); ++c) K.row(c) *= sys.column_scale[c];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), K.cols());
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
      std::vector<double> k(Q.col(j).data(), Q.col(j).data() + Q.rows());
      double kmax = 0;
      for (double x : k) kmax = std::max(kmax, std::abs(x));
      int support = 0;
      for (double x : k) support += std::abs(x) > 1e-8 * kmax;
      out.support.push_back(support);
      out.residuals.push_back(stress_residuals(r, k));
      out.stresses.push_back(std::move(k));
    }
  }

  auto lifted = kernels::self_stress_matrix(mesh, sys.normalized_positions, sys.column_scale,
                                            kernels::StressRows::lifted, Exec::parallel);
  Nullspace lns = nullspace(lifted, rank_tol);
  out.lifted_nullity = lns.nullity;
  out.lifted_angle = max_principal_angle(ns.basis, lns.basis);
  auto euclid = kernels::self_stress_matrix(mesh, sys.normalized_positions, sys.column_scale,
                                            kernels::StressRows::euclidean, Exec::parallel);
  out.euclidean_nullity = nullspace(euclid, rank_tol).nullity;
  return out;
}

TauFromStress tau_from_stress(const Realization& r, const std::vector<double>& k, double tol) {
  const SurfaceMesh& mesh = r.mesh();
  const auto edges = mesh.interior_edges();
  if (k.size() != edges.size()) throw Error("isothermic", "stress needs one value per interior edge");
  std::vector<Vec3> t;
  t.reserve(edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n) t.push_back(k[n] * r.edge_vector(mesh.edge_halfedge(edges[n])));
  TauFromStress out;
  out.tau = DualOneForm<Vec3>(std::move(t));
  out.residuals = stress_residuals(r, k);
  out.consistent = out.residuals.max() <= 10 * tol;
  return out;
}

MeanCurvatureData mean_curvature(const Realization& r) {
  const SurfaceMesh& mesh = r.mesh();
  FaceGeometry g = face_geometry(r);
  MeanCurvatureData out;
  out.vertex_H.assign(mesh.vertex_count(), 0.0);
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    Vec3 d = r.edge_vector(h);
    double len = d.norm();
    const Vec3& nl = g.normals[SurfaceMesh::face_of(h)];
    const Vec3& nr = g.normals[SurfaceMesh::face_of(mesh.twin(h))];
    double a = std::atan2(nl.cross(nr).dot(d / len), nl.dot(nr));
    out.alpha.push_back(a);
    out.edge_H.push_back(a * len);
    out.vertex_H[mesh.tail(h)] += a * len;
    out.vertex_H[mesh.head(h)] += a * len;
  }
  return out;
}

std::vector<double> vertex_mean_curvature_rate(const Realization& r, const std::vector<Vec3>& Z) {
  if (static_cast<int>(Z.size()) != r.mesh().face_count())
    throw Error("isothermic", "rotation field needs one vector per face");
  return kernels::mean_curvature_rate(r, Z, Exec::parallel);
}

InscribedReport inscribed_diagnostics(const Realization& r, double rank_tol) {
  const SurfaceMesh& mesh = r.mesh();
  InscribedReport out;
  for (const auto& p : r.positions()) out.radius += p.norm();
  out.radius /= r.positions().size();
  for (const auto& p : r.positions())
    out.radius_deviation = std::max(out.radius_deviation, std::abs(p.norm() - out.radius) / out.radius);
  if (out.radius_deviation > 1e-9)
    throw Error("isothermic", "vertices are not on a sphere about the origin (relative deviation " +
                                  std::to_string(out.radius_deviation) + ")");

  StressSystem sys = self_stress_system(r, kernels::StressRows::euclidean);
  Nullspace ns = nullspace(sys.matrix, rank_tol);
  out.euclidean_nullity = ns.nullity;
  const auto edges = mesh.interior_edges();
  for (Eigen::Index j = 0; j < ns.basis.cols(); ++j) {
    std::vector<double> k(edges.size());
    for (std::size_t n = 0; n < edges.size(); ++n) k[n] = ns.basis(n, j) * sys.column_scale[n];
    double scale = 0;
    for (std::size_t n = 0; n < edges.size(); ++n)
      scale = std::max(scale, std::abs(k[n]) * r.edge_vector(mesh.edge_halfedge(edges[n])).squaredNorm());
    for (int v : mesh.interior_vertices()) {
      double sum = 0;
      for (int h : mesh.outgoing(v))
        sum += k[mesh.interior_edge_index(mesh.edge_of(h))] * r.edge_vector(h).squaredNorm();
      out.sphere_identity = std::max(out.sphere_identity, std::abs(sum) / scale);
    }
  }

  Eigen::MatrixXd R = kernels::rigidity_matrix(mesh, sys.normalized_positions, Exec::parallel);
  out.rigidity_corank = nullspace(R, rank_tol).nullity;
  out.flexible = out.rigidity_corank > 6;
  out.verdict = isothermic_basis(r, rank_tol).verdict;
  out.agree = out.flexible == (out.verdict == Verdict::isothermic);
  return out;
}

}  // namespace isoform
