#include "isoform/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "isoform/error.hpp"
#include "isoform/kernels.hpp"

namespace isoform {

std::vector<double> cotan_weights(const Realization& r) {
  return kernels::cotan_weights(r.mesh(), face_geometry(r), Exec::parallel);
}

Eigen::SparseMatrix<double> cotan_laplacian(const Realization& r) {
  const SurfaceMesh& mesh = r.mesh();
  auto c = cotan_weights(r);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(4 * mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    int i = mesh.tail(h), j = mesh.head(h);
    trips.emplace_back(i, j, c[e]);
    trips.emplace_back(j, i, c[e]);
    trips.emplace_back(i, i, -c[e]);
    trips.emplace_back(j, j, -c[e]);
  }
  Eigen::SparseMatrix<double> L(mesh.vertex_count(), mesh.vertex_count());
  L.setFromTriplets(trips.begin(), trips.end());
  return L;
}

std::vector<double> laplacian_residual(const Realization& r, const std::vector<double>& u) {
  return kernels::laplacian_residual(r.mesh(), cotan_weights(r), u, Exec::parallel);
}

HarmonicFunction solve_dirichlet(const Realization& r, const std::function<double(int)>& boundary,
                                 const std::vector<SeamPair>& seam, double tol) {
  std::vector<double> values(r.mesh().vertex_count(), 0.0);
  for (int v : r.mesh().boundary_vertices()) values[v] = boundary(v);
  return solve_dirichlet(r, values, seam, tol);
}

HarmonicFunction solve_dirichlet(const Realization& r, const std::vector<double>& boundary,
                                 const std::vector<SeamPair>& seam, double tol) {
  const SurfaceMesh& mesh = r.mesh();
  const int nv = mesh.vertex_count();
  if (mesh.boundary_vertices().empty()) throw Error("harmonic", "Dirichlet problem needs boundary vertices");
  if (static_cast<int>(boundary.size()) != nv)
    throw Error("harmonic", "boundary table has " + std::to_string(boundary.size()) + " entries for " +
                                std::to_string(nv) + " vertices");

  // Unknown index per vertex: interior vertices and seam masters get their
  // own slot; a seam slave shares its master's slot plus a fixed offset.
  std::vector<int> slot(nv, kNone);
  std::vector<double> offset(nv, 0.0);
  int unknowns = 0;
  for (int v : mesh.interior_vertices()) slot[v] = unknowns++;
  for (const auto& p : seam) {
    if (!mesh.is_boundary_vertex(p.master) || !mesh.is_boundary_vertex(p.slave))
      throw Error("harmonic", "seam vertices must lie on the boundary of the cut domain");
    slot[p.master] = unknowns++;
  }
  for (const auto& p : seam) {
    slot[p.slave] = slot[p.master];
    offset[p.slave] = boundary[p.slave] - boundary[p.master];
  }
  if (unknowns == 0) {
    HarmonicFunction hf;
    hf.u = boundary;
    hf.solver = "none";
    return hf;
  }

  const auto c = cotan_weights(r);
  // Row of equation for vertex v (seam slaves add into their master's row).
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    int ends[2] = {mesh.tail(h), mesh.head(h)};
    for (int s = 0; s < 2; ++s) {
      int i = ends[s], j = ends[1 - s];
      if (slot[i] == kNone) continue;
      // c (u_i - u_j) with u = x + offset for unknowns.
      int row = slot[i];
      trips.emplace_back(row, slot[i], c[e]);
      rhs[row] -= c[e] * offset[i];
      if (slot[j] == kNone) {
        rhs[row] += c[e] * boundary[j];
      } else {
        trips.emplace_back(row, slot[j], -c[e]);
        rhs[row] += c[e] * offset[j];
      }
    }
  }
  Eigen::SparseMatrix<double> K(unknowns, unknowns);
  K.setFromTriplets(trips.begin(), trips.end());

  auto assemble = [&](const Eigen::VectorXd& x) {
    std::vector<double> u(nv);
    for (int v = 0; v < nv; ++v) u[v] = slot[v] == kNone ? boundary[v] : x[slot[v]] + offset[v];
    return u;
  };

  HarmonicFunction hf;
  auto evaluate = [&](std::vector<double> u, const char* solver) {
    HarmonicFunction out;
    out.u = std::move(u);
    out.solver = solver;
    auto res = kernels::laplacian_residual(mesh, c, out.u, Exec::parallel);
    for (int v : mesh.interior_vertices()) {
      out.residual.push_back(res[v]);
      out.max_residual = std::max(out.max_residual, std::abs(res[v]));
    }
    for (const auto& p : seam) {
      double s = res[p.master] + res[p.slave];
      out.seam_residual.push_back(s);
      out.max_residual = std::max(out.max_residual, std::abs(s));
    }
    std::vector<double> row_weight(nv, 0.0);
    for (int e = 0; e < mesh.edge_count(); ++e) {
      int h = mesh.edge_halfedge(e);
      row_weight[mesh.tail(h)] += std::abs(c[e]);
      row_weight[mesh.head(h)] += std::abs(c[e]);
    }
    double unorm = 1.0;
    for (double x : out.u) unorm = std::max(unorm, std::abs(x));
    double wmax = *std::max_element(row_weight.begin(), row_weight.end());
    out.relative_residual = out.max_residual / (std::max(wmax, 1e-300) * unorm);
    return out;
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
  if (ldlt.info() == Eigen::Success) {
    Eigen::VectorXd x = ldlt.solve(rhs);
    if (ldlt.info() == Eigen::Success && x.allFinite()) {
      hf = evaluate(assemble(x), "simplicial_ldlt");
      if (hf.relative_residual <= tol) return hf;
    }
  }

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(K);
  lu.factorize(K);
  if (lu.info() != Eigen::Success) {
    std::ostringstream os;
    os << "singular Dirichlet system (" << unknowns << " unknowns): " << lu.lastErrorMessage();
    throw Error("harmonic", os.str());
  }
  Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) throw Error("harmonic", "Dirichlet solve produced non-finite values");
  hf = evaluate(assemble(x), "sparse_lu");
  if (hf.relative_residual > tol) {
    std::ostringstream os;
    os << "Dirichlet residual " << hf.relative_residual << " exceeds tolerance " << tol;
    throw Error("harmonic", os.str());
  }
  return hf;
}

}  // namespace isoform
