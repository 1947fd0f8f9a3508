#include "isoform/forms.hpp"

#include <algorithm>
#include <queue>

namespace isoform {

template <class T>
PrimalOneForm<T> PrimalOneForm<T>::from_halfedges(const SurfaceMesh& mesh, const std::vector<T>& per_halfedge,
                                                  double tol) {
  if (static_cast<int>(per_halfedge.size()) != mesh.halfedge_count())
    throw Error("mesh-core", "primal form needs one value per halfedge");
  double scale = 0;
  for (const auto& v : per_halfedge) scale = std::max(scale, magnitude(v));
  std::vector<T> values(mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    values[e] = per_halfedge[h];
    int t = mesh.twin(h);
    if (t == kNone) continue;
    T sum = per_halfedge[h] + per_halfedge[t];
    if (magnitude(sum) > tol * std::max(scale, 1e-300))
      throw Error("mesh-core", "values on edge " + std::to_string(e) + " are not antisymmetric");
  }
  return PrimalOneForm(std::move(values));
}

template <class T>
PrimalOneForm<T> PrimalOneForm<T>::exact(const SurfaceMesh& mesh, const std::vector<T>& g) {
  std::vector<T> values(mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    int h = mesh.edge_halfedge(e);
    values[e] = g[mesh.head(h)] - g[mesh.tail(h)];
  }
  return PrimalOneForm(std::move(values));
}

template <class T>
DualOneForm<T> DualOneForm<T>::from_halfedges(const SurfaceMesh& mesh, const std::vector<T>& per_halfedge,
                                              double tol) {
  if (static_cast<int>(per_halfedge.size()) != mesh.halfedge_count())
    throw Error("mesh-core", "dual form needs one value per halfedge");
  double scale = 0;
  for (const auto& v : per_halfedge) scale = std::max(scale, magnitude(v));
  std::vector<T> values;
  values.reserve(mesh.interior_edges().size());
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    T sum = per_halfedge[h] + per_halfedge[mesh.twin(h)];
    if (magnitude(sum) > tol * std::max(scale, 1e-300))
      throw Error("mesh-core", "dual values on edge " + std::to_string(e) + " are not antisymmetric");
    values.push_back(per_halfedge[h]);
  }
  return DualOneForm(std::move(values));
}

template <class T>
DualOneForm<T> DualOneForm<T>::exact(const SurfaceMesh& mesh, const std::vector<T>& face_values) {
  std::vector<T> values;
  values.reserve(mesh.interior_edges().size());
  for (int e : mesh.interior_edges()) {
    int h = mesh.edge_halfedge(e);
    values.push_back(face_values[SurfaceMesh::face_of(h)] - face_values[SurfaceMesh::face_of(mesh.twin(h))]);
  }
  return DualOneForm(std::move(values));
}

template <class T>
ClosednessReport primal_closedness(const SurfaceMesh& mesh, const PrimalOneForm<T>& form) {
  ClosednessReport report;
  report.residuals.resize(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    T sum = form.at(mesh, 3 * f) + form.at(mesh, 3 * f + 1) + form.at(mesh, 3 * f + 2);
    report.residuals[f] = magnitude(sum);
    report.max_residual = std::max(report.max_residual, report.residuals[f]);
  }
  return report;
}

template <class T>
ClosednessReport dual_closedness(const SurfaceMesh& mesh, const DualOneForm<T>& form) {
  ClosednessReport report;
  auto interior = mesh.interior_vertices();
  report.residuals.resize(interior.size());
  for (std::size_t n = 0; n < interior.size(); ++n) {
    T sum = zero_value<T>();
    for (int h : mesh.outgoing(interior[n])) sum += form.at(mesh, h);
    report.residuals[n] = magnitude(sum);
    report.max_residual = std::max(report.max_residual, report.residuals[n]);
  }
  return report;
}

template <class T>
DualIntegration<T> integrate_dual(const SurfaceMesh& mesh, const DualOneForm<T>& tau) {
  const int nf = mesh.face_count();
  DualIntegration<T> result;
  result.face_values.assign(nf, zero_value<T>());
  std::vector<bool> visited(nf, false);
  std::vector<bool> tree_edge(mesh.edge_count(), false);

  for (int root = 0; root < nf; ++root) {
    if (visited[root]) continue;
    result.roots.push_back(root);
    visited[root] = true;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      int f = queue.front();
      queue.pop();
      // (neighbour face, halfedge of f on the shared edge)
      std::array<std::pair<int, int>, 3> nbrs;
      int count = 0;
      for (int c = 0; c < 3; ++c) {
        int h = 3 * f + c, t = mesh.twin(h);
        if (t != kNone) nbrs[count++] = {SurfaceMesh::face_of(t), h};
      }
      std::sort(nbrs.begin(), nbrs.begin() + count);
      for (int n = 0; n < count; ++n) {
        auto [g, h] = nbrs[n];
        if (visited[g]) continue;
        visited[g] = true;
        // h lies in f, so f is the left face of e*_h: Z_f - Z_g = tau(e*_h).
        result.face_values[g] = result.face_values[f] - tau.at(mesh, h);
        tree_edge[mesh.edge_of(h)] = true;
        queue.push(g);
      }
    }
  }

  for (int e : mesh.interior_edges()) {
    if (tree_edge[e]) continue;
    result.non_tree_edges.push_back(e);
    int h = mesh.edge_halfedge(e);
    T dz = result.face_values[SurfaceMesh::face_of(h)] - result.face_values[SurfaceMesh::face_of(mesh.twin(h))];
    double gap = magnitude(T(dz - tau.at(mesh, h)));
    if (gap > result.closure || result.worst_edge == kNone) {
      result.closure = std::max(result.closure, gap);
      result.worst_edge = e;
    }
  }
  return result;
}

template <class T>
PrimalIntegration<T> integrate_primal(const SurfaceMesh& mesh, const PrimalOneForm<T>& omega, int root) {
  const int nv = mesh.vertex_count();
  PrimalIntegration<T> result;
  result.vertex_values.assign(nv, zero_value<T>());
  std::vector<bool> visited(nv, false);
  std::vector<bool> tree_edge(mesh.edge_count(), false);
  visited[root] = true;
  std::queue<int> queue;
  queue.push(root);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    std::vector<std::pair<int, int>> nbrs;  // (neighbour, halfedge v->neighbour or twin)
    for (int h : mesh.outgoing(v)) nbrs.emplace_back(mesh.head(h), h);
    if (mesh.is_boundary_vertex(v)) {
      int last = SurfaceMesh::prev(mesh.outgoing(v).back());  // incoming boundary halfedge k->v
      nbrs.emplace_back(mesh.tail(last), last);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (auto [w, h] : nbrs) {
      if (visited[w]) continue;
      visited[w] = true;
      T step = mesh.tail(h) == v ? omega.at(mesh, h) : T(-omega.at(mesh, h));
      result.vertex_values[w] = result.vertex_values[v] + step;
      tree_edge[mesh.edge_of(h)] = true;
      queue.push(w);
    }
  }
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    int h = mesh.edge_halfedge(e);
    T d = result.vertex_values[mesh.head(h)] - result.vertex_values[mesh.tail(h)];
    double gap = magnitude(T(d - omega.at(mesh, h)));
    if (gap > result.closure || result.worst_edge == kNone) {
      result.closure = std::max(result.closure, gap);
      result.worst_edge = e;
    }
  }
  return result;
}

template <class T>
T dual_cycle_sum(const SurfaceMesh& mesh, const DualOneForm<T>& tau, const std::vector<int>& faces) {
  T sum = zero_value<T>();
  for (std::size_t n = 0; n + 1 < faces.size(); ++n) {
    int from = faces[n], to = faces[n + 1];
    int found = kNone;
    for (int c = 0; c < 3; ++c) {
      int h = 3 * to + c, t = mesh.twin(h);
      if (t != kNone && SurfaceMesh::face_of(t) == from) found = h;
    }
    if (found == kNone)
      throw Error("mesh-core", "faces " + std::to_string(from) + " and " + std::to_string(to) + " are not dual-adjacent");
    // Crossing from `from` (right of e*_found) to `to` (left).
    sum += tau.at(mesh, found);
  }
  return sum;
}

#define ISOFORM_INSTANTIATE_FORMS(T)                                                                   \
  template class PrimalOneForm<T>;                                                                     \
  template class DualOneForm<T>;                                                                       \
  template ClosednessReport primal_closedness<T>(const SurfaceMesh&, const PrimalOneForm<T>&);         \
  template ClosednessReport dual_closedness<T>(const SurfaceMesh&, const DualOneForm<T>&);              \
  template DualIntegration<T> integrate_dual<T>(const SurfaceMesh&, const DualOneForm<T>&);            \
  template PrimalIntegration<T> integrate_primal<T>(const SurfaceMesh&, const PrimalOneForm<T>&, int); \
  template T dual_cycle_sum<T>(const SurfaceMesh&, const DualOneForm<T>&, const std::vector<int>&);

ISOFORM_INSTANTIATE_FORMS(double)
ISOFORM_INSTANTIATE_FORMS(Vec3)

}  // namespace isoform
