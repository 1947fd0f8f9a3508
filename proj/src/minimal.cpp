#include "isoform/minimal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isoform {

namespace {

Vec3 dual_edge(const SurfaceMesh& mesh, const std::vector<Vec3>& fstar, int h) {
  return fstar[SurfaceMesh::face_of(h)] - fstar[SurfaceMesh::face_of(mesh.twin(h))];
}

}  // namespace

ParallelReport reciprocal_parallel_check(const Realization& source, const std::vector<Vec3>& fstar) {
  const SurfaceMesh& mesh = source.mesh();
  ParallelReport out;
  double dmax = 0;
  for (int e : mesh.interior_edges()) dmax = std::max(dmax, dual_edge(mesh, fstar, mesh.edge_halfedge(e)).norm());
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    Vec3 ds = dual_edge(mesh, fstar, h), d = source.edge_vector(h);
    if (ds.norm() <= 1e-10 * dmax) {
      ++out.zero_edges;
      continue;
    }
    double ang = std::atan2(ds.cross(d).norm(), std::abs(ds.dot(d)));
    out.max_deviation = std::max(out.max_deviation, ang);
  }
  return out;
}

double duality_sum_residual(const Realization& source, const std::vector<Vec3>& fstar) {
  const SurfaceMesh& mesh = source.mesh();
  double scale = 0, worst = 0;
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    scale = std::max(scale, source.edge_vector(h).norm() * dual_edge(mesh, fstar, h).norm());
  }
  if (scale == 0) return 0;
  for (int v : mesh.interior_vertices()) {
    double sum = 0;
    for (int h : mesh.outgoing(v)) sum += source.edge_vector(h).dot(dual_edge(mesh, fstar, h));
    worst = std::max(worst, std::abs(sum) / scale);
  }
  return worst;
}

MinimalSurface christoffel_dual(const Realization& source, const DualOneForm<Vec3>& tau) {
  if (tau.max_magnitude() == 0) throw Error("minimal", "dual 1-form is identically zero; f* would be constant");
  const SurfaceMesh& mesh = source.mesh();
  auto integ = integrate_dual(mesh, tau);
  MinimalSurface out{source, std::move(integ.face_values), integ.closure, static_cast<int>(integ.roots.size()),
                     {}, 0, 0};
  out.parallel = reciprocal_parallel_check(source, out.fstar);
  out.duality_sum = duality_sum_residual(source, out.fstar);
  for (const auto& p : source.positions()) out.sphere_deviation = std::max(out.sphere_deviation, std::abs(p.norm() - 1));
  return out;
}

WeierstrassResult weierstrass(const Realization& domain, const std::vector<double>& boundary,
                              const std::vector<SeamPair>& seam, const WeierstrassConfig& config) {
  const SurfaceMesh& mesh = domain.mesh();
  if (mesh.boundary_vertices().size() <= 3) throw Error("minimal", "domain needs more than three boundary vertices");

  HarmonicFunction hf = solve_dirichlet(domain, boundary, seam, config.harmonic_tol);
  HarmonicNormalField field = harmonic_normal_deformation(domain, hf.u);

  auto tau = DualOneForm<Vec3>::exact(mesh, field.Z);
  std::vector<double> k;
  k.reserve(tau.values().size());
  const auto edges = mesh.interior_edges();
  for (std::size_t n = 0; n < edges.size(); ++n) {
    Vec3 d = domain.edge_vector(mesh.edge_halfedge(edges[n]));
    k.push_back(tau.values()[n].dot(d) / d.squaredNorm());
  }
  StressResiduals planar = tau_residuals(domain, tau);
  if (planar.max() > config.transport_tol) {
    std::ostringstream os;
    os << "dZ fails the dual 1-form equations on the domain (residual " << planar.max() << ")";
    throw Error("minimal", os.str());
  }

  TransportResult tr = transport_stress(domain, k, stereographic_chain(config.stereographic_radius),
                                        config.transport_tol);
  if (tr.flagged) {
    std::ostringstream os;
    os << "transported stress residual " << tr.residuals.max() << " exceeds " << config.transport_tol
       << " (amplification " << tr.amplification << ")";
    throw Error("minimal", os.str());
  }

  MinimalSurface surf = christoffel_dual(tr.image, tr.tau);
  double scale = 0;
  for (const auto& p : surf.fstar) scale = std::max(scale, p.norm());
  double rel = scale > 0 ? surf.closure / scale : surf.closure;
  if (rel > config.closure_tol) {
    std::ostringstream os;
    os << "dual closure " << rel << " exceeds " << config.closure_tol;
    throw Error("minimal", os.str());
  }
  return {std::move(hf), std::move(field), std::move(tr), std::move(surf), planar, scale, rel};
}

std::vector<std::vector<int>> dual_polygons(const SurfaceMesh& mesh) {
  std::vector<std::vector<int>> polys;
  for (int v : mesh.interior_vertices()) polys.push_back(mesh.face_ring(v));
  return polys;
}

}  // namespace isoform
