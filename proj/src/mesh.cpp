#include "isoform/mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "isoform/kernels.hpp"

namespace isoform {

namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

std::string face_str(const Triangle& t) {
  std::ostringstream os;
  os << "(" << t[0] << ", " << t[1] << ", " << t[2] << ")";
  return os.str();
}

}  // namespace

SurfaceMesh SurfaceMesh::build(int vertex_count, std::vector<Triangle> triangles) {
  if (vertex_count <= 0 || triangles.empty())
    throw MeshError(MeshErrorKind::bad_index, "mesh needs at least one vertex and one triangle");

  const int nf = static_cast<int>(triangles.size());
  for (int f = 0; f < nf; ++f) {
    const auto& t = triangles[f];
    for (int c = 0; c < 3; ++c)
      if (t[c] < 0 || t[c] >= vertex_count)
        throw MeshError(MeshErrorKind::bad_index, "face " + std::to_string(f) + " references vertex " +
                                                      std::to_string(t[c]) + " outside 0.." +
                                                      std::to_string(vertex_count - 1));
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError(MeshErrorKind::degenerate_triangle, "face " + std::to_string(f) + " " + face_str(t) +
                                                              " repeats a vertex");
  }

  {
    std::map<Triangle, int> seen;
    for (int f = 0; f < nf; ++f) {
      Triangle key = triangles[f];
      std::sort(key.begin(), key.end());
      auto [it, inserted] = seen.emplace(key, f);
      if (!inserted)
        throw MeshError(MeshErrorKind::duplicate_face, "faces " + std::to_string(it->second) + " and " +
                                                           std::to_string(f) + " span the same vertices " +
                                                           face_str(key));
    }
  }

  // Undirected edge -> incident (face, corner) slots.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_faces;
  for (int f = 0; f < nf; ++f)
    for (int c = 0; c < 3; ++c) {
      int a = triangles[f][c], b = triangles[f][(c + 1) % 3];
      edge_faces[{std::min(a, b), std::max(a, b)}].emplace_back(f, c);
    }
  for (const auto& [edge, slots] : edge_faces)
    if (slots.size() > 2)
      throw MeshError(MeshErrorKind::non_manifold_edge, "edge {" + std::to_string(edge.first) + ", " +
                                                            std::to_string(edge.second) + "} has " +
                                                            std::to_string(slots.size()) + " incident faces");

  // Coherent orientation by BFS over faces.
  std::vector<int> flip(nf, -1);
  flip[0] = 0;
  std::queue<int> queue;
  queue.push(0);
  std::vector<std::vector<std::pair<int, bool>>> adjacency(nf);  // (neighbour, same traversal direction)
  for (const auto& [edge, slots] : edge_faces) {
    if (slots.size() != 2) continue;
    auto [f0, c0] = slots[0];
    auto [f1, c1] = slots[1];
    bool same = triangles[f0][c0] == triangles[f1][c1];
    adjacency[f0].emplace_back(f1, same);
    adjacency[f1].emplace_back(f0, same);
  }
  for (auto& adj : adjacency) std::sort(adj.begin(), adj.end());
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    for (auto [g, same] : adjacency[f]) {
      int expected = flip[f] ^ (same ? 1 : 0);
      if (flip[g] == -1) {
        flip[g] = expected;
        queue.push(g);
      } else if (flip[g] != expected) {
        throw MeshError(MeshErrorKind::non_orientable,
                        "no coherent orientation exists (conflict between faces " + std::to_string(f) + " and " +
                            std::to_string(g) + ")");
      }
    }
  }
  for (int f = 0; f < nf; ++f)
    if (flip[f] == -1)
      throw MeshError(MeshErrorKind::disconnected,
                      "face " + std::to_string(f) + " is not edge-connected to face 0");

  SurfaceMesh mesh;
  mesh.vertex_count_ = vertex_count;
  mesh.faces_ = std::move(triangles);
  for (int f = 0; f < nf; ++f)
    if (flip[f] == 1) {
      std::swap(mesh.faces_[f][1], mesh.faces_[f][2]);
      ++mesh.reoriented_;
    }

  const int nh = 3 * nf;
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(static_cast<std::size_t>(nh) * 2);
  for (int h = 0; h < nh; ++h) directed.emplace(directed_key(mesh.tail(h), mesh.head(h)), h);
  mesh.twin_.assign(nh, kNone);
  for (int h = 0; h < nh; ++h) {
    auto it = directed.find(directed_key(mesh.head(h), mesh.tail(h)));
    if (it != directed.end()) mesh.twin_[h] = it->second;
  }

  mesh.halfedge_edge_.assign(nh, kNone);
  for (int h = 0; h < nh; ++h) {
    int t = mesh.twin_[h];
    if (t != kNone && t < h) continue;
    int e = static_cast<int>(mesh.edge_halfedge_.size());
    mesh.edge_halfedge_.push_back(h);
    mesh.halfedge_edge_[h] = e;
    if (t != kNone) mesh.halfedge_edge_[t] = e;
  }
  const int ne = mesh.edge_count();
  mesh.interior_edge_index_.assign(ne, kNone);
  for (int e = 0; e < ne; ++e) {
    if (mesh.is_boundary_edge(e)) {
      mesh.boundary_edges_.push_back(e);
    } else {
      mesh.interior_edge_index_[e] = static_cast<int>(mesh.interior_edges_.size());
      mesh.interior_edges_.push_back(e);
    }
  }

  // Vertex fans.
  std::vector<std::vector<int>> out(vertex_count);
  for (int h = 0; h < nh; ++h) out[mesh.tail(h)].push_back(h);
  mesh.vertex_boundary_.assign(vertex_count, false);
  mesh.interior_vertex_index_.assign(vertex_count, kNone);
  mesh.outgoing_offset_.assign(vertex_count + 1, 0);
  for (int v = 0; v < vertex_count; ++v) {
    const auto& hs = out[v];
    if (hs.empty())
      throw MeshError(MeshErrorKind::disconnected, "vertex " + std::to_string(v) + " belongs to no face");
    int boundary_out = 0, boundary_in = 0, start = hs.front();
    for (int h : hs) {
      if (mesh.twin_[h] == kNone) {
        ++boundary_out;
        start = h;
      }
      if (mesh.twin_[prev(h)] == kNone) ++boundary_in;
    }
    bool boundary = boundary_out > 0 || boundary_in > 0;
    if (boundary && (boundary_out != 1 || boundary_in != 1))
      throw MeshError(MeshErrorKind::bad_vertex_link,
                      "link of boundary vertex " + std::to_string(v) + " is not a single fan");
    std::vector<int> ordered;
    int h = start;
    do {
      ordered.push_back(h);
      int t = mesh.twin_[prev(h)];
      if (t == kNone) break;
      h = t;
    } while (h != start && ordered.size() <= hs.size());
    if (ordered.size() != hs.size())
      throw MeshError(MeshErrorKind::bad_vertex_link,
                      "link of vertex " + std::to_string(v) + " is not a " + (boundary ? "fan" : "disk"));
    mesh.vertex_boundary_[v] = boundary;
    if (boundary) {
      mesh.boundary_vertices_.push_back(v);
    } else {
      mesh.interior_vertex_index_[v] = static_cast<int>(mesh.interior_vertices_.size());
      mesh.interior_vertices_.push_back(v);
    }
    mesh.outgoing_.insert(mesh.outgoing_.end(), ordered.begin(), ordered.end());
    mesh.outgoing_offset_[v + 1] = static_cast<int>(mesh.outgoing_.size());
  }

  // Boundary loops: follow boundary halfedges head to head.
  std::vector<bool> used(nh, false);
  std::vector<int> boundary_out_of(vertex_count, kNone);
  for (int h = 0; h < nh; ++h)
    if (mesh.twin_[h] == kNone) boundary_out_of[mesh.tail(h)] = h;
  for (int h = 0; h < nh; ++h) {
    if (mesh.twin_[h] != kNone || used[h]) continue;
    std::vector<int> loop;
    int g = h;
    while (!used[g]) {
      used[g] = true;
      loop.push_back(mesh.tail(g));
      g = boundary_out_of[mesh.head(g)];
    }
    mesh.boundary_loops_.push_back(std::move(loop));
  }
  return mesh;
}

int SurfaceMesh::halfedge_between(int i, int j) const {
  for (int h : outgoing(i))
    if (head(h) == j) return h;
  return kNone;
}

std::vector<int> SurfaceMesh::neighbors(int v) const {
  std::vector<int> result;
  auto hs = outgoing(v);
  for (int h : hs) result.push_back(head(h));
  if (is_boundary_vertex(v)) result.push_back(opposite_vertex(hs.back()));
  return result;
}

std::vector<int> SurfaceMesh::face_ring(int v) const {
  std::vector<int> result;
  for (int h : outgoing(v)) result.push_back(face_of(h));
  return result;
}

std::optional<int> SurfaceMesh::genus() const {
  if (!is_closed()) return std::nullopt;
  return (2 - euler_characteristic()) / 2;
}

SurfaceMesh SurfaceMesh::reversed() const {
  std::vector<Triangle> faces = faces_;
  for (auto& t : faces) std::swap(t[1], t[2]);
  return build(vertex_count_, std::move(faces));
}

const char* to_string(Degeneracy grade) {
  switch (grade) {
    case Degeneracy::degenerate: return "degenerate";
    case Degeneracy::non_degenerate: return "non_degenerate";
    case Degeneracy::strongly_non_degenerate: return "strongly_non_degenerate";
  }
  return "unknown";
}

Realization::Realization(MeshPtr mesh, std::vector<Vec3> positions)
    : mesh_(std::move(mesh)), positions_(std::move(positions)) {
  if (!mesh_) throw Error("mesh-core", "realization without mesh");
  if (static_cast<int>(positions_.size()) != mesh_->vertex_count())
    throw Error("mesh-core", "realization has " + std::to_string(positions_.size()) + " positions for " +
                                 std::to_string(mesh_->vertex_count()) + " vertices");
}

std::vector<double> Realization::edge_lengths() const {
  std::vector<double> lengths(mesh_->edge_count());
  for (int e = 0; e < mesh_->edge_count(); ++e) lengths[e] = edge_length(e);
  return lengths;
}

double Realization::bbox_diagonal() const {
  Vec3 lo = positions_.front(), hi = positions_.front();
  for (const auto& p : positions_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Vec3 Realization::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& p : positions_) c += p;
  return c / static_cast<double>(positions_.size());
}

Degeneracy Realization::grade(double rel_tol) const {
  const double diag = bbox_diagonal();
  if (!(diag > 0)) return Degeneracy::degenerate;
  for (int e = 0; e < mesh_->edge_count(); ++e)
    if (!(edge_length(e) > rel_tol * diag)) return Degeneracy::degenerate;
  for (int f = 0; f < mesh_->face_count(); ++f) {
    const auto& t = mesh_->face(f);
    double area = 0.5 * (positions_[t[1]] - positions_[t[0]]).cross(positions_[t[2]] - positions_[t[0]]).norm();
    if (!(area > rel_tol * diag * diag)) return Degeneracy::non_degenerate;
  }
  return Degeneracy::strongly_non_degenerate;
}

FaceGeometry face_geometry(const Realization& r, double rel_tol) {
  return kernels::face_geometry(r, Exec::parallel, rel_tol);
}

bool counting_identity_holds(const SurfaceMesh& mesh) {
  const int lhs = static_cast<int>(mesh.interior_edges().size()) - 3 * static_cast<int>(mesh.interior_vertices().size());
  const int rhs = static_cast<int>(mesh.boundary_vertices().size()) - 3 * mesh.euler_characteristic();
  return lhs == rhs;
}

}  // namespace isoform
