#include "isoform/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

namespace isoform::kernels {

namespace {

struct Corner {
  double angle;
  double cotangent;
};

// Corner at the vertex opposite halfedge c of face t.
Corner opposite_corner(const std::vector<Vec3>& p, const Triangle& t, int c) {
  const Vec3& k = p[t[(c + 2) % 3]];
  Vec3 a = p[t[c]] - k, b = p[t[(c + 1) % 3]] - k;
  double s = a.cross(b).norm(), d = a.dot(b);
  return {std::atan2(s, d), d / s};
}

template <class Fn>
void for_each_neighbor_edge(const SurfaceMesh& mesh, int v, Fn&& fn) {
  auto out = mesh.outgoing(v);
  for (int h : out) fn(mesh.edge_of(h), mesh.head(h));
  if (mesh.is_boundary_vertex(v)) {
    int in = SurfaceMesh::prev(out.back());
    fn(mesh.edge_of(in), mesh.tail(in));
  }
}

}  // namespace

FaceGeometry face_geometry(const Realization& r, Exec exec, double rel_tol) {
  const SurfaceMesh& mesh = r.mesh();
  const auto& p = r.positions();
  const int nf = mesh.face_count();
  FaceGeometry g;
  g.normals.resize(nf);
  g.areas.resize(nf);
  g.opposite_angles.resize(3 * nf);
  g.opposite_cotangents.resize(3 * nf);

  auto face_part = [&](int f) {
    const Triangle& t = mesh.face(f);
    Vec3 n = (p[t[1]] - p[t[0]]).cross(p[t[2]] - p[t[0]]);
    double len = n.norm();
    g.areas[f] = 0.5 * len;
    g.normals[f] = n / len;
  };
  auto corner_part = [&](int h) {
    Corner c = opposite_corner(p, mesh.face(h / 3), h % 3);
    g.opposite_angles[h] = c.angle;
    g.opposite_cotangents[h] = c.cotangent;
  };

  if (exec == Exec::serial) {
    for (int f = 0; f < nf; ++f) face_part(f);
    for (int h = 0; h < 3 * nf; ++h) corner_part(h);
  } else {
    for_each_index(exec, nf, [&](int f) {
      face_part(f);
      for (int c = 0; c < 3; ++c) corner_part(3 * f + c);
    });
  }

  const double diag = r.bbox_diagonal();
  for (int f = 0; f < nf; ++f)
    if (!(g.areas[f] > rel_tol * diag * diag))
      throw MeshError(MeshErrorKind::collinear_face, "face " + std::to_string(f) + " is collinear (area " +
                                                         std::to_string(g.areas[f]) + ")");
  return g;
}

std::vector<double> cotan_weights(const SurfaceMesh& mesh, const FaceGeometry& geometry, Exec exec) {
  const auto& cot = geometry.opposite_cotangents;
  std::vector<double> c(mesh.edge_count(), 0.0);
  if (exec == Exec::serial) {
    for (int h = 0; h < mesh.halfedge_count(); ++h) c[mesh.edge_of(h)] += cot[h];
  } else {
    for_each_index(exec, mesh.edge_count(), [&](int e) {
      int h = mesh.edge_halfedge(e), t = mesh.twin(h);
      c[e] = t == kNone ? cot[h] : cot[h] + cot[t];
    });
  }
  return c;
}

std::vector<double> laplacian_residual(const SurfaceMesh& mesh, const std::vector<double>& weights,
                                       const std::vector<double>& u, Exec exec) {
  std::vector<double> res(mesh.vertex_count(), 0.0);
  if (exec == Exec::serial) {
    for (int e = 0; e < mesh.edge_count(); ++e) {
      int h = mesh.edge_halfedge(e);
      int i = mesh.tail(h), j = mesh.head(h);
      double d = weights[e] * (u[j] - u[i]);
      res[i] += d;
      res[j] -= d;
    }
  } else {
    for_each_index(exec, mesh.vertex_count(), [&](int v) {
      double sum = 0;
      for_each_neighbor_edge(mesh, v, [&](int e, int w) { sum += weights[e] * (u[w] - u[v]); });
      res[v] = sum;
    });
  }
  return res;
}

Eigen::MatrixXd self_stress_matrix(const SurfaceMesh& mesh, const std::vector<Vec3>& positions,
                                   const std::vector<double>& column_scale, StressRows rows, Exec exec) {
  const int R = static_cast<int>(rows);
  const auto interior = mesh.interior_vertices();
  const auto edges = mesh.interior_edges();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(R * static_cast<Eigen::Index>(interior.size()), edges.size());

  std::vector<double> sq(positions.size());
  for (std::size_t v = 0; v < positions.size(); ++v) sq[v] = positions[v].squaredNorm();

  // Entries of the column block for one endpoint: d = f_other - f_self.
  auto write = [&](int row0, int col, const Vec3& d, double s) {
    const double w = column_scale[col];
    for (int a = 0; a < 3; ++a) A(row0 + a, col) = d[a] * w;
    if (rows == StressRows::quadratic) {
      A(row0 + 3, col) = s * w;
    } else if (rows == StressRows::lifted) {
      A(row0 + 3, col) = -0.5 * s * w;
      A(row0 + 4, col) = 0.5 * s * w;
    }
  };

  if (exec == Exec::serial) {
    for (std::size_t n = 0; n < interior.size(); ++n) {
      int v = interior[n];
      for (int h : mesh.outgoing(v)) {
        int col = mesh.interior_edge_index(mesh.edge_of(h));
        if (col == kNone) continue;
        int w = mesh.head(h);
        write(R * static_cast<int>(n), col, positions[w] - positions[v], sq[w] - sq[v]);
      }
    }
  } else {
    for_each_index(exec, static_cast<int>(edges.size()), [&](int col) {
      int h = mesh.edge_halfedge(edges[col]);
      int i = mesh.tail(h), j = mesh.head(h);
      Vec3 d = positions[j] - positions[i];
      double s = sq[j] - sq[i];
      if (int n = mesh.interior_vertex_index(i); n != kNone) write(R * n, col, d, s);
      if (int n = mesh.interior_vertex_index(j); n != kNone) write(R * n, col, -d, -s);
    });
  }
  return A;
}

Eigen::MatrixXd rigidity_matrix(const SurfaceMesh& mesh, const std::vector<Vec3>& positions, Exec exec) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(mesh.edge_count(), 3 * mesh.vertex_count());
  for_each_index(exec, mesh.edge_count(), [&](int e) {
    int h = mesh.edge_halfedge(e);
    int i = mesh.tail(h), j = mesh.head(h);
    Vec3 d = positions[j] - positions[i];
    for (int a = 0; a < 3; ++a) {
      A(e, 3 * i + a) = -d[a];
      A(e, 3 * j + a) = d[a];
    }
  });
  return A;
}

Eigen::MatrixXd sigma_lcr_composite(const SurfaceMesh& mesh, const std::vector<Vec3>& positions, Exec exec) {
  const auto edges = mesh.interior_edges();
  const int ne = mesh.edge_count(), nv = mesh.vertex_count();

  auto sigma_row = [&](int e, double sign, auto&& out) {
    int h = mesh.edge_halfedge(e);
    int i = mesh.tail(h), j = mesh.head(h);
    Vec3 d = positions[j] - positions[i];
    Vec3 g = d / d.squaredNorm();
    for (int a = 0; a < 3; ++a) {
      out(3 * i + a) += -sign * g[a];
      out(3 * j + a) += sign * g[a];
    }
  };
  // L(sigma)_ij = sigma_jk - sigma_ki + sigma_il - sigma_lj.
  auto stencil = [&](int e) {
    int h = mesh.edge_halfedge(e), t = mesh.twin(h);
    return std::array<int, 4>{mesh.edge_of(SurfaceMesh::next(h)), mesh.edge_of(SurfaceMesh::prev(h)),
                              mesh.edge_of(SurfaceMesh::next(t)), mesh.edge_of(SurfaceMesh::prev(t))};
  };
  static constexpr double kSigns[4] = {1.0, -1.0, 1.0, -1.0};

  if (exec == Exec::serial) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(ne, 3 * nv);
    for (int e = 0; e < ne; ++e) sigma_row(e, 1.0, [&](Eigen::Index c) -> double& { return S(e, c); });
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(edges.size(), ne);
    for (std::size_t row = 0; row < edges.size(); ++row) {
      auto st = stencil(edges[row]);
      for (int q = 0; q < 4; ++q) L(row, st[q]) += kSigns[q];
    }
    return L * S;
  }

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(edges.size(), 3 * nv);
  for_each_index(exec, static_cast<int>(edges.size()), [&](int row) {
    auto st = stencil(edges[row]);
    for (int q = 0; q < 4; ++q) sigma_row(st[q], kSigns[q], [&](Eigen::Index c) -> double& { return C(row, c); });
  });
  return C;
}

std::vector<double> mean_curvature_rate(const Realization& r, const std::vector<Vec3>& Z, Exec exec) {
  const SurfaceMesh& mesh = r.mesh();
  const auto interior = mesh.interior_vertices();
  std::vector<double> hdot(interior.size(), 0.0);
  if (exec == Exec::serial) {
    // Both endpoints receive the same term: <-df, Z_R - Z_L> = <df, Z_L - Z_R>.
    for (int e : mesh.interior_edges()) {
      int h = mesh.edge_halfedge(e);
      double d = r.edge_vector(h).dot(Z[SurfaceMesh::face_of(h)] - Z[SurfaceMesh::face_of(mesh.twin(h))]);
      if (int n = mesh.interior_vertex_index(mesh.tail(h)); n != kNone) hdot[n] += d;
      if (int n = mesh.interior_vertex_index(mesh.head(h)); n != kNone) hdot[n] += d;
    }
  } else {
    for_each_index(exec, static_cast<int>(interior.size()), [&](int n) {
      double sum = 0;
      for (int h : mesh.outgoing(interior[n]))
        sum += r.edge_vector(h).dot(Z[SurfaceMesh::face_of(h)] - Z[SurfaceMesh::face_of(mesh.twin(h))]);
      hdot[n] = sum;
    });
  }
  return hdot;
}

}  // namespace isoform::kernels
