#include "isoform/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "isoform/deform.hpp"
#include "isoform/isothermic.hpp"

namespace isoform {

namespace {

constexpr double kTwoPi = 2 * M_PI;

double polar_angle(const Vec3& p) {
  double t = std::atan2(p.y(), p.x());
  return t < 0 ? t + kTwoPi : t;
}

Domain planar_grid(int n, double lo, double hi) {
  if (n < 2) throw Error("generators", "grid needs n >= 2");
  std::vector<Vec3> p;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      p.emplace_back(lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1), 0.0);
  std::vector<Triangle> tris;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      int a = j * n + i, b = a + 1, c = a + n + 1, d = a + n;
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  Domain dom{Realization(make_mesh(n * n, tris), p), {}, {}, {}};
  for (const auto& x : p) {
    dom.r.push_back(x.norm());
    dom.theta.push_back(polar_angle(x));
  }
  return dom;
}

// Outward-oriented faces from the triangles of an edge graph on a
// polyhedron whose interior contains the origin.
std::vector<Triangle> clique_faces(const std::vector<Vec3>& p, const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  std::vector<Triangle> tris;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (!adj[a][b] || !adj[b][c] || !adj[a][c]) continue;
        Vec3 nrm = (p[b] - p[a]).cross(p[c] - p[a]);
        if (nrm.dot(p[a] + p[b] + p[c]) > 0)
          tris.push_back({a, b, c});
        else
          tris.push_back({a, c, b});
      }
  return tris;
}

std::vector<std::pair<int, int>> edges_at_distance(const std::vector<Vec3>& p, double d) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (std::abs((p[a] - p[b]).norm() - d) < 1e-9) e.emplace_back(a, b);
  return e;
}

// Cyclic permutations of (0, +-1, +-x): (0,a,b), (b,0,a), (a,b,0).
std::vector<Vec3> icosahedral_vertices(double x) {
  std::vector<Vec3> p;
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      double a = sa * 1.0, b = sb * x;
      p.emplace_back(0, a, b);
      p.emplace_back(b, 0, a);
      p.emplace_back(a, b, 0);
    }
  return p;
}

Eigen::Vector4d mu_of(const CylinderWindow& w, const Realization& r) {
  auto len = [&](int a, int b) { return (r.position(a) - r.position(b)).norm(); };
  int o = w.vertex(0, 0), s1 = w.vertex(1, 0), t1 = w.vertex(0, 1);
  MeanCurvatureData mc = mean_curvature(r);
  return {len(o, s1), len(s1, t1), len(t1, o), mc.vertex_H[o]};
}

}  // namespace

Domain grid_disk(int n) { return planar_grid(n, 0.0, 1.0); }

Domain square_domain(int n, double half) { return planar_grid(n, -half, half); }

Domain cut_annulus(double r_in, double r_out, int n_r, int n_theta) {
  if (!(0 < r_in && r_in < r_out)) throw Error("generators", "annulus needs 0 < r_in < r_out");
  if (n_r < 2 || n_theta < 3) throw Error("generators", "annulus needs n_r >= 2 and n_theta >= 3");
  const int cols = n_theta + 1;
  std::vector<double> radius, theta;
  std::vector<Vec3> p;
  for (int k = 0; k < n_r; ++k) {
    double rad = r_in * std::pow(r_out / r_in, static_cast<double>(k) / (n_r - 1));
    for (int c = 0; c < cols; ++c) {
      double th = c == n_theta ? kTwoPi : kTwoPi * c / n_theta;
      p.emplace_back(rad * std::cos(th), rad * std::sin(th), 0.0);
      if (c == n_theta) p.back() = p[k * cols];  // exact copy of the theta = 0 position
      radius.push_back(rad);
      theta.push_back(th);
    }
  }
  std::vector<Triangle> tris;
  for (int k = 0; k + 1 < n_r; ++k)
    for (int c = 0; c < n_theta; ++c) {
      int a = k * cols + c, b = a + 1, d = a + cols, e = d + 1;
      tris.push_back({a, d, e});
      tris.push_back({a, e, b});
    }
  Domain dom{Realization(make_mesh(n_r * cols, tris), p), std::move(radius), std::move(theta), {}};
  for (int k = 1; k + 1 < n_r; ++k) dom.seam.push_back({k * cols, k * cols + n_theta});
  return dom;
}

Domain annulus(double r_in, double r_out, int n_r, int n_theta) {
  if (!(0 < r_in && r_in < r_out)) throw Error("generators", "annulus needs 0 < r_in < r_out");
  if (n_r < 2 || n_theta < 3) throw Error("generators", "annulus needs n_r >= 2 and n_theta >= 3");
  std::vector<Vec3> p;
  std::vector<double> radius, theta;
  for (int k = 0; k < n_r; ++k) {
    double rad = r_in * std::pow(r_out / r_in, static_cast<double>(k) / (n_r - 1));
    for (int c = 0; c < n_theta; ++c) {
      double th = kTwoPi * c / n_theta;
      p.emplace_back(rad * std::cos(th), rad * std::sin(th), 0.0);
      radius.push_back(rad);
      theta.push_back(th);
    }
  }
  std::vector<Triangle> tris;
  for (int k = 0; k + 1 < n_r; ++k)
    for (int c = 0; c < n_theta; ++c) {
      int a = k * n_theta + c, b = k * n_theta + (c + 1) % n_theta;
      int d = a + n_theta, e = b + n_theta;
      tris.push_back({a, d, e});
      tris.push_back({a, e, b});
    }
  return {Realization(make_mesh(n_r * n_theta, tris), p), std::move(radius), std::move(theta), {}};
}

Realization jessen() {
  // Labels follow the usual figure of the solid.
  const std::map<std::string, Vec3> v = {
      {"A", {1, -2, 0}},  {"E", {-1, -2, 0}}, {"D", {2, 0, 1}},   {"H", {2, 0, -1}},
      {"B", {0, -1, 2}},  {"I", {0, 1, 2}},   {"F", {-2, 0, 1}},  {"G", {-2, 0, -1}},
      {"bA", {1, 2, 0}},  {"bE", {-1, 2, 0}}, {"C", {0, -1, -2}}, {"bI", {0, 1, -2}},
  };
  const char* edges[30][2] = {
      {"A", "B"},  {"B", "C"},  {"C", "A"},  {"B", "E"},  {"E", "C"},   {"A", "D"},   {"D", "B"},  {"B", "F"},
      {"F", "E"},  {"E", "G"},  {"G", "C"},  {"A", "H"},  {"H", "C"},   {"D", "I"},   {"I", "F"},  {"F", "D"},
      {"A", "bA"}, {"bA", "D"}, {"H", "bA"}, {"E", "bE"}, {"I", "bA"},  {"I", "bE"},  {"I", "bI"}, {"bI", "H"},
      {"bI", "G"}, {"bI", "bA"}, {"bI", "bE"}, {"H", "G"}, {"G", "bE"}, {"F", "bE"},
  };
  std::map<std::string, int> id;
  std::vector<Vec3> p;
  for (const auto& [name, x] : v) {
    id[name] = static_cast<int>(p.size());
    p.push_back(x);
  }
  std::vector<std::pair<int, int>> e;
  for (const auto& pair : edges) e.emplace_back(id.at(pair[0]), id.at(pair[1]));
  auto tris = clique_faces(p, e);
  if (tris.size() != 20) throw Error("generators", "Jessen edge graph gave " + std::to_string(tris.size()) + " faces");
  return Realization(make_mesh(12, tris), p);
}

Platonic parse_platonic(const std::string& name) {
  if (name == "tetra") return Platonic::tetra;
  if (name == "octa") return Platonic::octa;
  if (name == "icosa") return Platonic::icosa;
  throw Error("generators", "unknown solid '" + name + "' (tetra|octa|icosa)");
}

Realization platonic(Platonic which) {
  std::vector<Vec3> p;
  std::vector<std::pair<int, int>> e;
  switch (which) {
    case Platonic::tetra:
      p = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      e = edges_at_distance(p, std::sqrt(8.0));
      break;
    case Platonic::octa:
      p = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      e = edges_at_distance(p, std::sqrt(2.0));
      break;
    case Platonic::icosa:
      p = icosahedral_vertices((1 + std::sqrt(5.0)) / 2);
      e = edges_at_distance(p, 2.0);
      break;
  }
  auto tris = clique_faces(p, e);
  for (auto& x : p) x.normalize();
  return Realization(make_mesh(static_cast<int>(p.size()), tris), p);
}

Eigen::Matrix<double, 5, 1> CylinderParams::vector() const {
  Eigen::Matrix<double, 5, 1> v;
  v << r, theta1, h1, theta2, h2;
  return v;
}

CylinderParams CylinderParams::from_vector(const Eigen::Matrix<double, 5, 1>& p, int half_extent) {
  CylinderParams c;
  c.r = p[0];
  c.theta1 = p[1];
  c.h1 = p[2];
  c.theta2 = p[3];
  c.h2 = p[4];
  c.half_extent = half_extent;
  return c;
}

Vec3 cylinder_point(const CylinderParams& p, double s, double t) {
  double phi = s * p.theta1 + t * p.theta2;
  return {p.r * std::cos(phi), -p.r * std::sin(phi), s * p.h1 + t * p.h2};
}

int CylinderWindow::vertex(int s, int t) const {
  const int w = 2 * half_extent + 1;
  return (t + half_extent) * w + (s + half_extent);
}

CylinderWindow homogeneous_cylinder(const CylinderParams& p) {
  const int E = p.half_extent;
  if (E < 1) throw Error("generators", "cylinder window needs half_extent >= 1");
  if (!(p.r > 0)) throw Error("generators", "cylinder radius must be positive");
  if (p.h1 == 0 && p.h2 == 0)
    throw Error("generators", "degenerate cylinder window: h1 = h2 = 0 puts every vertex on one circle");
  const int w = 2 * E + 1;
  std::vector<Vec3> pts;
  for (int t = -E; t <= E; ++t)
    for (int s = -E; s <= E; ++s) pts.push_back(cylinder_point(p, s, t));
  auto id = [&](int s, int t) { return (t + E) * w + (s + E); };
  std::vector<Triangle> tris;
  for (int t = -E; t < E; ++t)
    for (int s = -E; s < E; ++s) {
      tris.push_back({id(s, t), id(s + 1, t), id(s, t + 1)});
      tris.push_back({id(s + 1, t), id(s + 1, t + 1), id(s, t + 1)});
    }
  Realization real(make_mesh(w * w, tris), pts);
  const double diag = real.bbox_diagonal();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if ((pts[a] - pts[b]).norm() <= 1e-9 * diag)
        throw Error("generators", "degenerate cylinder window: vertices " + std::to_string(a) + " and " +
                                      std::to_string(b) + " coincide");
  if (real.grade() != Degeneracy::strongly_non_degenerate)
    throw Error("generators", "degenerate cylinder window");

  CylinderWindow out{real, E};
  out.half_extent = E;
  auto len = [&](int a, int b) { return (pts[a] - pts[b]).norm(); };
  out.la = len(id(0, 0), id(1, 0));
  out.lb = len(id(1, 0), id(0, 1));
  out.lc = len(id(0, 1), id(0, 0));
  for (int t = -E; t < E; ++t)
    for (int s = -E; s < E; ++s) {
      out.class_spread = std::max({out.class_spread, std::abs(len(id(s, t), id(s + 1, t)) - out.la),
                                   std::abs(len(id(s + 1, t), id(s, t + 1)) - out.lb),
                                   std::abs(len(id(s, t + 1), id(s, t)) - out.lc)});
    }
  MeanCurvatureData mc = mean_curvature(real);
  out.H = mc.vertex_H[id(0, 0)];
  for (int v : real.mesh().interior_vertices()) out.H_spread = std::max(out.H_spread, std::abs(mc.vertex_H[v] - out.H));
  return out;
}

Eigen::Vector4d cylinder_mu(const CylinderParams& p) {
  CylinderParams q = p;
  q.half_extent = 1;
  CylinderWindow w = homogeneous_cylinder(q);
  return {w.la, w.lb, w.lc, w.H};
}

double rigid_fit_residual(const std::vector<Vec3>& f, const std::vector<Vec3>& fdot) {
  const int n = static_cast<int>(f.size());
  Eigen::MatrixXd A(3 * n, 6);
  Eigen::VectorXd b(3 * n);
  for (int v = 0; v < n; ++v) {
    // fdot = a + w x f = a - [f]_x w
    Eigen::Matrix3d fx;
    fx << 0, -f[v].z(), f[v].y(), f[v].z(), 0, -f[v].x(), -f[v].y(), f[v].x(), 0;
    A.block<3, 3>(3 * v, 0).setIdentity();
    A.block<3, 3>(3 * v, 3) = -fx;
    b.segment<3>(3 * v) = fdot[v];
  }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  double nb = b.norm();
  return nb > 0 ? (A * x - b).norm() / nb : 0.0;
}

CylinderFlex cylinder_flex(const CylinderParams& p, double eps, double lambda) {
  using Vec5d = Eigen::Matrix<double, 5, 1>;
  CylinderFlex out;
  const Vec5d x0 = p.vector();
  for (int i = 0; i < 5; ++i) {
    double h = eps * (1 + std::abs(x0[i]));
    Vec5d xp = x0, xm = x0;
    xp[i] += h;
    xm[i] -= h;
    out.jacobian.col(i) = (cylinder_mu(CylinderParams::from_vector(xp, 1)) -
                           cylinder_mu(CylinderParams::from_vector(xm, 1))) / (2 * h);
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 5>> svd(out.jacobian, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values[0];
  for (int i = 0; i < 4; ++i) out.rank += out.singular_values[i] > 1e-8 * smax;
  for (int c = out.rank; c < 5; ++c) {
    Vec5d k = svd.matrixV().col(c);
    Eigen::Index big;
    k.cwiseAbs().maxCoeff(&big);
    if (k[big] < 0) k = -k;
    out.kernel.push_back(k);
  }

  CylinderWindow win = homogeneous_cylinder(p);
  const Vec5d& v = out.kernel.front();
  const int E = p.half_extent;
  out.fdot.resize(win.realization.mesh().vertex_count());
  for (int t = -E; t <= E; ++t)
    for (int s = -E; s <= E; ++s) {
      double phi = s * p.theta1 + t * p.theta2;
      double dphi = s * v[1] + t * v[3];
      out.fdot[win.vertex(s, t)] = Vec3(v[0] * std::cos(phi) - p.r * std::sin(phi) * dphi,
                                        -v[0] * std::sin(phi) - p.r * std::cos(phi) * dphi, s * v[2] + t * v[4]);
    }

  auto moved = [&](double lam) {
    std::vector<Vec3> q = win.realization.positions();
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += lam * out.fdot[i];
    return win.realization.with_positions(std::move(q));
  };
  const Eigen::Vector4d mu0 = mu_of(win, win.realization);
  const Eigen::Vector4d d1 = mu_of(win, moved(lambda)) - mu0;
  const Eigen::Vector4d d2 = mu_of(win, moved(lambda / 2)) - mu0;
  out.change = d1.cwiseAbs().maxCoeff();
  out.change_half = d2.cwiseAbs().maxCoeff();
  out.observed_order = std::log2(out.change / out.change_half);
  out.richardson_rate = ((4 * d2 - d1) / lambda).cwiseAbs().maxCoeff();

  Decomposition dec = decompose(win.realization, out.fdot);
  for (int e = 0; e < win.realization.mesh().edge_count(); ++e)
    out.max_length_rate = std::max(out.max_length_rate, std::abs(dec.sigma[e]) * win.realization.edge_length(e));
  out.rigid_fit_residual = rigid_fit_residual(win.realization.positions(), out.fdot);
  return out;
}

}  // namespace isoform
