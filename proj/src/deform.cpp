#include "isoform/deform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isoform/kernels.hpp"
#include "isoform/linalg.hpp"

namespace isoform {

namespace {

std::array<int, 4> lcr_stencil(const SurfaceMesh& mesh, int e) {
  int h = mesh.edge_halfedge(e), t = mesh.twin(h);
  return {mesh.edge_of(SurfaceMesh::next(h)), mesh.edge_of(SurfaceMesh::prev(h)), mesh.edge_of(SurfaceMesh::next(t)),
          mesh.edge_of(SurfaceMesh::prev(t))};
}

}  // namespace

std::vector<double> lcr(const SurfaceMesh& mesh, const std::vector<double>& edge_lengths) {
  std::vector<double> out;
  out.reserve(mesh.interior_edges().size());
  for (int e : mesh.interior_edges()) {
    auto s = lcr_stencil(mesh, e);
    out.push_back(std::log(edge_lengths[s[0]]) - std::log(edge_lengths[s[1]]) + std::log(edge_lengths[s[2]]) -
                  std::log(edge_lengths[s[3]]));
  }
  return out;
}

std::vector<double> lcr(const Realization& r) { return lcr(r.mesh(), r.edge_lengths()); }

Eigen::SparseMatrix<double> lcr_operator(const SurfaceMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  const auto edges = mesh.interior_edges();
  for (std::size_t row = 0; row < edges.size(); ++row) {
    auto s = lcr_stencil(mesh, edges[row]);
    trips.emplace_back(row, s[0], 1.0);
    trips.emplace_back(row, s[1], -1.0);
    trips.emplace_back(row, s[2], 1.0);
    trips.emplace_back(row, s[3], -1.0);
  }
  Eigen::SparseMatrix<double> L(edges.size(), mesh.edge_count());
  L.setFromTriplets(trips.begin(), trips.end());
  return L;
}

Eigen::SparseMatrix<double> unsigned_incidence(const SurfaceMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    trips.emplace_back(mesh.tail(h), e, 1.0);
    trips.emplace_back(mesh.head(h), e, 1.0);
  }
  Eigen::SparseMatrix<double> B(mesh.vertex_count(), mesh.edge_count());
  B.setFromTriplets(trips.begin(), trips.end());
  return B;
}

Decomposition decompose(const Realization& r, const std::vector<Vec3>& fdot) {
  const SurfaceMesh& mesh = r.mesh();
  Decomposition out;
  out.sigma.resize(mesh.edge_count());
  out.W.resize(mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    Vec3 d = r.edge_vector(h);
    Vec3 dd = fdot[mesh.head(h)] - fdot[mesh.tail(h)];
    double l2 = d.squaredNorm();
    out.sigma[e] = dd.dot(d) / l2;
    out.W[e] = dd.cross(d) / l2;
    Vec3 rec = out.sigma[e] * d + d.cross(out.W[e]);
    out.reconstruction_residual = std::max(out.reconstruction_residual, (dd - rec).norm());
  }
  return out;
}

DeformationField isometric_from_rotations(const Realization& r, const std::vector<Vec3>& Z, double tol) {
  const SurfaceMesh& mesh = r.mesh();
  if (static_cast<int>(Z.size()) != mesh.face_count())
    throw Error("deform", "rotation field needs one vector per face");
  DeformationField out;
  out.Z = Z;
  double zmax = 0;
  for (const auto& z : Z) zmax = std::max(zmax, z.norm());

  std::vector<std::pair<double, int>> bad;
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    Vec3 d = r.edge_vector(h);
    Vec3 dz = Z[SurfaceMesh::face_of(h)] - Z[SurfaceMesh::face_of(mesh.twin(h))];
    double c = zmax > 0 ? dz.cross(d).norm() / (zmax * d.norm()) : 0.0;
    if (c > out.compatibility) {
      out.compatibility = c;
      out.worst_edge = e;
    }
    if (c > tol) bad.emplace_back(c, e);
  }
  if (!bad.empty()) {
    std::sort(bad.rbegin(), bad.rend());
    std::ostringstream os;
    os << "rotation field incompatible on " << bad.size() << " edges; worst:";
    for (std::size_t n = 0; n < std::min<std::size_t>(5, bad.size()); ++n)
      os << " e" << bad[n].second << " (" << bad[n].first << ")";
    throw Error("deform", os.str());
  }

  std::vector<Vec3> per_edge(mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    per_edge[e] = r.edge_vector(h).cross(Z[SurfaceMesh::face_of(h)]);
  }
  auto integ = integrate_primal(mesh, PrimalOneForm<Vec3>(std::move(per_edge)));
  out.fdot = std::move(integ.vertex_values);
  out.closure = integ.closure;
  for (double s : decompose(r, out.fdot).sigma) out.max_sigma = std::max(out.max_sigma, std::abs(s));
  return out;
}

HarmonicNormalField harmonic_normal_deformation(const Realization& r, const std::vector<double>& u) {
  const SurfaceMesh& mesh = r.mesh();
  if (static_cast<int>(u.size()) != mesh.vertex_count()) throw Error("deform", "u needs one value per vertex");
  FaceGeometry g = face_geometry(r);
  HarmonicNormalField out;
  out.normal = g.normals[0];
  for (int f = 0; f < mesh.face_count(); ++f)
    if (g.normals[f].dot(out.normal) < 1 - 1e-9)
      throw Error("deform", "realization is not planar (face " + std::to_string(f) + " normal differs)");
  for (const auto& p : r.positions())
    if (std::abs((p - r.position(0)).dot(out.normal)) > 1e-9 * r.bbox_diagonal())
      throw Error("deform", "realization is not planar");

  out.u = u;
  out.fdot.reserve(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) out.fdot.push_back(u[v] * out.normal);
  out.Z.resize(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.face(f);
    const Vec3 &fi = r.position(t[0]), &fj = r.position(t[1]), &fk = r.position(t[2]);
    double area = 0.5 * (fj - fi).cross(fk - fi).dot(out.normal);
    if (!(std::abs(area) > 0)) throw Error("deform", "zero-area face " + std::to_string(f));
    out.Z[f] = -(u[t[0]] * (fk - fj) + u[t[1]] * (fi - fk) + u[t[2]] * (fj - fi)) / (2 * area);
  }
  Decomposition dec = decompose(r, out.fdot);
  out.sigma = dec.sigma;
  for (int e = 0; e < mesh.edge_count(); ++e)
    out.max_length_rate = std::max(out.max_length_rate, std::abs(dec.sigma[e]) * r.edge_length(e));
  out.Hdot = vertex_mean_curvature_rate(r, out.Z);
  return out;
}

ConformalDimension conformal_dimension(const Realization& r, double rank_tol) {
  const SurfaceMesh& mesh = r.mesh();
  if (!mesh.is_closed()) throw Error("deform", "conformal dimension needs a closed surface");
  ConformalDimension out;
  out.genus = *mesh.genus();
  out.bound = mesh.vertex_count() - 6 * out.genus + 6;
  out.counting_predicate = mesh.vertex_count() < 6 * out.genus + 4;

  const Vec3 c = r.centroid();
  const double diag = r.bbox_diagonal();
  std::vector<Vec3> p;
  for (const auto& x : r.positions()) p.push_back((x - c) / diag);
  Eigen::MatrixXd C = kernels::sigma_lcr_composite(mesh, p, Exec::parallel);
  Nullspace ns = nullspace(C, rank_tol);
  out.kernel_dimension = ns.nullity;
  out.marginal = ns.marginal;
  out.singular_values = ns.singular_values;
  if (ns.marginal)
    out.verdict = Verdict::marginal;
  else
    out.verdict = out.kernel_dimension > out.bound ? Verdict::isothermic : Verdict::not_isothermic;
  return out;
}

}  // namespace isoform
