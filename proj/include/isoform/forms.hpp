#pragma once

#include <cmath>
#include <vector>

#include "isoform/mesh.hpp"

namespace isoform {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Vec3& x) { return x.norm(); }

template <class T>
T zero_value() {
  if constexpr (std::is_same_v<T, double>)
    return 0.0;
  else
    return T::Zero();
}

/// Primal 1-form: one value per edge, stored for the canonical orientation.
/// Reading it on the reversed halfedge negates the value, so antisymmetry
/// holds by construction.
template <class T>
class PrimalOneForm {
 public:
  PrimalOneForm() = default;
  explicit PrimalOneForm(std::vector<T> canonical) : values_(std::move(canonical)) {}

  /// Builds a form from per-halfedge values; rejects values that are not
  /// antisymmetric on interior edges (beyond tol * max magnitude).
  static PrimalOneForm from_halfedges(const SurfaceMesh& mesh, const std::vector<T>& per_halfedge,
                                      double tol = 1e-12);

  /// Exact form dg of a vertex function.
  static PrimalOneForm exact(const SurfaceMesh& mesh, const std::vector<T>& g);

  T at(const SurfaceMesh& mesh, int h) const {
    const T& v = values_[mesh.edge_of(h)];
    return mesh.orientation_sign(h) > 0 ? T(v) : T(-v);
  }
  const std::vector<T>& values() const { return values_; }

 private:
  std::vector<T> values_;
};

/// Dual 1-form: one value per interior edge (indexed by interior-edge
/// position), stored for the dual of the canonical halfedge.
template <class T>
class DualOneForm {
 public:
  DualOneForm() = default;
  explicit DualOneForm(std::vector<T> canonical) : values_(std::move(canonical)) {}

  static DualOneForm from_halfedges(const SurfaceMesh& mesh, const std::vector<T>& per_halfedge,
                                    double tol = 1e-12);

  /// Exact dual form dZ(e*_ij) = Z(left face) - Z(right face).
  static DualOneForm exact(const SurfaceMesh& mesh, const std::vector<T>& face_values);

  /// Value on e*_h for an interior halfedge h.
  T at(const SurfaceMesh& mesh, int h) const {
    const T& v = values_[mesh.interior_edge_index(mesh.edge_of(h))];
    return mesh.orientation_sign(h) > 0 ? T(v) : T(-v);
  }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  double max_magnitude() const {
    double m = 0;
    for (const auto& v : values_) m = std::max(m, magnitude(v));
    return m;
  }

 private:
  std::vector<T> values_;
};

struct ClosednessReport {
  std::vector<double> residuals;  // per face (primal) or per interior vertex (dual)
  double max_residual = 0;
};

template <class T>
ClosednessReport primal_closedness(const SurfaceMesh& mesh, const PrimalOneForm<T>& form);

template <class T>
ClosednessReport dual_closedness(const SurfaceMesh& mesh, const DualOneForm<T>& form);

template <class T>
struct DualIntegration {
  std::vector<T> face_values;
  /// Root face per dual-graph component (ascending).
  std::vector<int> roots;
  /// max |dZ(e*) - tau(e*)| over interior edges not in the spanning tree.
  double closure = 0;
  int worst_edge = kNone;
  /// Edges (mesh edge ids) that were not used by the spanning tree.
  std::vector<int> non_tree_edges;
};

/// Integrates tau over a BFS spanning tree of the dual graph (interior edges
/// only), starting at face 0 and visiting neighbours in ascending face order.
/// Root value is zero.
template <class T>
DualIntegration<T> integrate_dual(const SurfaceMesh& mesh, const DualOneForm<T>& tau);

template <class T>
struct PrimalIntegration {
  std::vector<T> vertex_values;
  double closure = 0;
  int worst_edge = kNone;
};

/// Integrates a primal form over a BFS vertex spanning tree rooted at
/// `root` (value zero), neighbours in ascending vertex order.
template <class T>
PrimalIntegration<T> integrate_primal(const SurfaceMesh& mesh, const PrimalOneForm<T>& omega, int root = 0);

/// Sum of tau along an oriented closed path in the dual graph given as a
/// sequence of faces, each consecutive pair adjacent through an interior edge.
template <class T>
T dual_cycle_sum(const SurfaceMesh& mesh, const DualOneForm<T>& tau, const std::vector<int>& faces);

}  // namespace isoform
