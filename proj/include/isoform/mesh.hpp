#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "isoform/error.hpp"

namespace isoform {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

inline constexpr int kNone = -1;

/// Oriented triangulated surface (connected 2-manifold with boundary).
///
/// Halfedge h = 3f + c runs from face(f)[c] to face(f)[(c+1)%3], so the face
/// of a halfedge is its left face. Each undirected edge is represented by its
/// lower-index halfedge (the canonical orientation); for interior edges the
/// twin lives in the right face. Dual edge e*_ij of the canonical halfedge
/// i->j is oriented from the right face to the left face.
class SurfaceMesh {
 public:
  /// Validates the complex and derives all connectivity. Inconsistently wound
  /// but orientable input is re-oriented by BFS from face 0 (face 0 keeps its
  /// winding). Throws MeshError.
  static SurfaceMesh build(int vertex_count, std::vector<Triangle> triangles);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edge_halfedge_.size()); }
  int halfedge_count() const { return 3 * face_count(); }

  const std::vector<Triangle>& faces() const { return faces_; }
  const Triangle& face(int f) const { return faces_[f]; }
  /// Faces whose winding was reversed during orientation repair.
  int reoriented_face_count() const { return reoriented_; }

  // Halfedges.
  int tail(int h) const { return faces_[h / 3][h % 3]; }
  int head(int h) const { return faces_[h / 3][(h % 3 + 1) % 3]; }
  int opposite_vertex(int h) const { return faces_[h / 3][(h % 3 + 2) % 3]; }
  static int face_of(int h) { return h / 3; }
  static int next(int h) { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  static int prev(int h) { return 3 * (h / 3) + (h % 3 + 2) % 3; }
  int twin(int h) const { return twin_[h]; }
  int edge_of(int h) const { return halfedge_edge_[h]; }
  /// +1 if h is the canonical halfedge of its edge, -1 otherwise.
  int orientation_sign(int h) const { return edge_halfedge_[halfedge_edge_[h]] == h ? 1 : -1; }

  // Edges.
  int edge_halfedge(int e) const { return edge_halfedge_[e]; }
  bool is_boundary_edge(int e) const { return twin_[edge_halfedge_[e]] == kNone; }
  std::span<const int> interior_edges() const { return interior_edges_; }
  std::span<const int> boundary_edges() const { return boundary_edges_; }
  /// Position of e among interior_edges(), or kNone for a boundary edge.
  int interior_edge_index(int e) const { return interior_edge_index_[e]; }
  int halfedge_between(int i, int j) const;

  // Vertices.
  bool is_boundary_vertex(int v) const { return vertex_boundary_[v]; }
  std::span<const int> interior_vertices() const { return interior_vertices_; }
  std::span<const int> boundary_vertices() const { return boundary_vertices_; }
  int interior_vertex_index(int v) const { return interior_vertex_index_[v]; }
  /// Outgoing halfedges of v in counter-clockwise rotation order. For a
  /// boundary vertex the list starts at the outgoing boundary halfedge.
  std::span<const int> outgoing(int v) const {
    return {outgoing_.data() + outgoing_offset_[v],
            static_cast<std::size_t>(outgoing_offset_[v + 1] - outgoing_offset_[v])};
  }
  /// Neighbours of v in rotation order (boundary vertices include the final
  /// neighbour reached only through an incoming boundary halfedge).
  std::vector<int> neighbors(int v) const;
  /// Faces around v in rotation order.
  std::vector<int> face_ring(int v) const;

  // Topology.
  int euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }
  bool is_closed() const { return boundary_edges_.empty(); }
  /// Genus is only reported for closed surfaces.
  std::optional<int> genus() const;
  /// Boundary loops as vertex cycles following the boundary halfedges.
  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }

  /// Same complex with every face winding reversed.
  SurfaceMesh reversed() const;

 private:
  SurfaceMesh() = default;

  int vertex_count_ = 0;
  int reoriented_ = 0;
  std::vector<Triangle> faces_;
  std::vector<int> twin_;
  std::vector<int> halfedge_edge_;
  std::vector<int> edge_halfedge_;
  std::vector<int> interior_edges_;
  std::vector<int> boundary_edges_;
  std::vector<int> interior_edge_index_;
  std::vector<bool> vertex_boundary_;
  std::vector<int> interior_vertices_;
  std::vector<int> boundary_vertices_;
  std::vector<int> interior_vertex_index_;
  std::vector<int> outgoing_offset_;
  std::vector<int> outgoing_;
  std::vector<std::vector<int>> boundary_loops_;
};

using MeshPtr = std::shared_ptr<const SurfaceMesh>;

inline MeshPtr make_mesh(int vertex_count, std::vector<Triangle> triangles) {
  return std::make_shared<const SurfaceMesh>(SurfaceMesh::build(vertex_count, std::move(triangles)));
}

enum class Degeneracy { degenerate, non_degenerate, strongly_non_degenerate };

const char* to_string(Degeneracy grade);

/// Vertex positions in R^3 over a shared, immutable mesh.
class Realization {
 public:
  Realization(MeshPtr mesh, std::vector<Vec3> positions);

  const SurfaceMesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  const std::vector<Vec3>& positions() const { return positions_; }
  const Vec3& position(int v) const { return positions_[v]; }

  /// df(e_h) = f(head) - f(tail).
  Vec3 edge_vector(int h) const { return positions_[mesh_->head(h)] - positions_[mesh_->tail(h)]; }
  double edge_length(int e) const { return edge_vector(mesh_->edge_halfedge(e)).norm(); }
  std::vector<double> edge_lengths() const;

  double bbox_diagonal() const;
  Vec3 centroid() const;

  /// Non-degeneracy grade with thresholds relative to the bounding box:
  /// edge length > rel_tol*diag, face area > rel_tol*diag^2.
  Degeneracy grade(double rel_tol = 1e-12) const;

  Realization with_positions(std::vector<Vec3> positions) const { return {mesh_, std::move(positions)}; }

 private:
  MeshPtr mesh_;
  std::vector<Vec3> positions_;
};

/// Per-face normals and areas, and per-halfedge opposite corner angles.
struct FaceGeometry {
  std::vector<Vec3> normals;
  std::vector<double> areas;
  /// Angle at the vertex opposite halfedge h inside face(h): beta_ij^k for
  /// h = i->j in face ijk.
  std::vector<double> opposite_angles;
  /// cot of opposite_angles, evaluated as <a,b>/|a x b| from the edge vectors.
  std::vector<double> opposite_cotangents;
};

/// Throws MeshError(collinear_face) naming the first face whose area is below
/// rel_tol * diag^2.
FaceGeometry face_geometry(const Realization& r, double rel_tol = 1e-12);

/// Counting identity |E_int| - 3|V_int| == |V_b| - 3 chi.
bool counting_identity_holds(const SurfaceMesh& mesh);

}  // namespace isoform
