#include "isoform/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "isoform/quaternion.hpp"

namespace isoform {

namespace {

// Lorentz matrices are built in coordinates (x, a, b) with a = v4 + v5 and
// b = v5 - v4, where the lift of x is (x, 1, |x|^2).
Lorentz to_standard(const Lorentz& W) {
  Lorentz T = Lorentz::Zero();  // v = T w
  T.topLeftCorner<3, 3>().setIdentity();
  T(3, 3) = 0.5;
  T(3, 4) = -0.5;
  T(4, 3) = 0.5;
  T(4, 4) = 0.5;
  Lorentz Tinv = Lorentz::Zero();  // w = Tinv v
  Tinv.topLeftCorner<3, 3>().setIdentity();
  Tinv(3, 3) = 1;
  Tinv(3, 4) = 1;
  Tinv(4, 3) = -1;
  Tinv(4, 4) = 1;
  return T * W * Tinv;
}

Lorentz primitive_matrix(const MoebiusPrimitive& p) {
  Lorentz W = Lorentz::Identity();
  switch (p.kind) {
    case MoebiusPrimitive::Kind::translate:
      W.block<3, 1>(0, 3) = p.t;
      W.block<1, 3>(4, 0) = 2 * p.t.transpose();
      W(4, 3) = p.t.squaredNorm();
      break;
    case MoebiusPrimitive::Kind::rotate:
      W.topLeftCorner<3, 3>() = p.R;
      break;
    case MoebiusPrimitive::Kind::scale:
      W.topLeftCorner<3, 3>() *= p.s > 0 ? 1.0 : -1.0;
      W(3, 3) = 1.0 / std::abs(p.s);
      W(4, 4) = std::abs(p.s);
      break;
    case MoebiusPrimitive::Kind::invert:
      W.topLeftCorner<3, 3>() *= -1.0;
      W(3, 3) = 0;
      W(4, 4) = 0;
      W(3, 4) = 1;
      W(4, 3) = 1;
      break;
  }
  return to_standard(W);
}

}  // namespace

double minkowski(const Vec5& a, const Vec5& b) { return a.head<4>().dot(b.head<4>()) - a[4] * b[4]; }

Vec5 light_cone_lift(const Vec3& f) {
  Vec5 v;
  double q = f.squaredNorm();
  v << f, 0.5 * (1 - q), 0.5 * (1 + q);
  return v;
}

Vec3 light_cone_project(const Vec5& v) { return v.head<3>() / (v[3] + v[4]); }

MoebiusMap MoebiusMap::translation(const Vec3& t) {
  MoebiusMap m;
  MoebiusPrimitive p;
  p.kind = MoebiusPrimitive::Kind::translate;
  p.t = t;
  m.chain_.push_back(p);
  return m;
}

MoebiusMap MoebiusMap::rotation(const Eigen::Matrix3d& R) {
  MoebiusMap m;
  MoebiusPrimitive p;
  p.kind = MoebiusPrimitive::Kind::rotate;
  p.R = R;
  m.chain_.push_back(p);
  return m;
}

MoebiusMap MoebiusMap::scaling(double s) {
  if (s == 0 || !std::isfinite(s)) throw Error("moebius", "scale factor must be finite and nonzero");
  MoebiusMap m;
  MoebiusPrimitive p;
  p.kind = MoebiusPrimitive::Kind::scale;
  p.s = s;
  m.chain_.push_back(p);
  return m;
}

MoebiusMap MoebiusMap::inversion() {
  MoebiusMap m;
  MoebiusPrimitive p;
  p.kind = MoebiusPrimitive::Kind::invert;
  m.chain_.push_back(p);
  return m;
}

MoebiusMap MoebiusMap::parse(const std::string& text) {
  MoebiusMap m;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::istringstream is(item);
    std::string op;
    if (!(is >> op)) continue;
    auto need = [&](double& x) {
      if (!(is >> x)) throw Error("moebius", "missing or bad number in '" + item + "'");
    };
    if (op == "translate") {
      Vec3 t;
      need(t[0]), need(t[1]), need(t[2]);
      m = m.then(translation(t));
    } else if (op == "rotate") {
      Vec3 axis;
      double angle;
      need(axis[0]), need(axis[1]), need(axis[2]), need(angle);
      if (axis.norm() == 0) throw Error("moebius", "rotation axis must be nonzero");
      m = m.then(rotation(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix()));
    } else if (op == "scale") {
      double s;
      need(s);
      m = m.then(scaling(s));
    } else if (op == "invert") {
      m = m.then(inversion());
    } else {
      throw Error("moebius", "unknown primitive '" + op + "'");
    }
    std::string extra;
    if (is >> extra) throw Error("moebius", "unexpected token '" + extra + "' in '" + item + "'");
  }
  return m;
}

MoebiusMap MoebiusMap::then(const MoebiusMap& next) const {
  MoebiusMap m = *this;
  m.chain_.insert(m.chain_.end(), next.chain_.begin(), next.chain_.end());
  return m;
}

Vec3 MoebiusMap::apply(const Vec3& x) const {
  Vec3 y = x;
  for (const auto& p : chain_) {
    switch (p.kind) {
      case MoebiusPrimitive::Kind::translate: y += p.t; break;
      case MoebiusPrimitive::Kind::rotate: y = p.R * y; break;
      case MoebiusPrimitive::Kind::scale: y *= p.s; break;
      case MoebiusPrimitive::Kind::invert: {
        double q = y.squaredNorm();
        if (!(std::sqrt(q) > 1e-12))
          throw MeshError(MeshErrorKind::vertex_at_origin, "inversion meets a point at the origin");
        y = -y / q;
        break;
      }
    }
  }
  return y;
}

Lorentz MoebiusMap::matrix() const {
  Lorentz M = Lorentz::Identity();
  for (const auto& p : chain_) M = primitive_matrix(p) * M;
  return M;
}

Realization apply(const MoebiusMap& map, const Realization& r) {
  std::vector<Vec3> p;
  p.reserve(r.positions().size());
  for (const auto& x : r.positions()) p.push_back(map.apply(x));
  return r.with_positions(std::move(p));
}

Realization invert(const Realization& r) { return apply(MoebiusMap::inversion(), r); }

MoebiusMap stereographic_chain(double radius) {
  const Vec3 N(0, 0, 1);
  return MoebiusMap::scaling(1.0 / radius)
      .then(MoebiusMap::translation(-N))
      .then(MoebiusMap::inversion())
      .then(MoebiusMap::scaling(-2.0))
      .then(MoebiusMap::translation(N));
}

Realization stereographic(const Realization& planar, double radius) {
  for (const auto& p : planar.positions())
    if (std::abs(p.z()) > 1e-12 * std::max(1.0, planar.bbox_diagonal()))
      throw Error("moebius", "stereographic projection needs a realization in the z = 0 plane");
  return apply(stereographic_chain(radius), planar);
}

TransportResult transport_stress(const Realization& r, const std::vector<double>& k, const MoebiusMap& map,
                                 double tol) {
  const SurfaceMesh& mesh = r.mesh();
  const auto edges = mesh.interior_edges();
  if (k.size() != edges.size()) throw Error("moebius", "stress needs one value per interior edge");
  const Lorentz M = map.matrix();
  std::vector<double> lambda(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    Vec5 w = M * light_cone_lift(r.position(v));
    lambda[v] = w[3] + w[4];
  }
  TransportResult out{apply(map, r), {}, {}, {}, 1, false};
  out.k.resize(edges.size());
  double lo = INFINITY, hi = 0;
  std::vector<Vec3> t(edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = mesh.edge_halfedge(edges[n]);
    double f = lambda[mesh.tail(h)] * lambda[mesh.head(h)];
    lo = std::min(lo, std::abs(f));
    hi = std::max(hi, std::abs(f));
    out.k[n] = k[n] * f;
    t[n] = out.k[n] * out.image.edge_vector(h);
  }
  if (!edges.empty()) out.amplification = hi / lo;
  out.tau = DualOneForm<Vec3>(std::move(t));
  out.residuals = stress_residuals(out.image, out.k);
  out.flagged = out.residuals.max() > tol;
  return out;
}

TransportResult transport_tau(const Realization& r, const std::vector<double>& k, double tol) {
  return transport_stress(r, k, MoebiusMap::inversion(), tol);
}

double quaternion_transport_deviation(const Realization& r, const std::vector<double>& k) {
  const SurfaceMesh& mesh = r.mesh();
  const auto edges = mesh.interior_edges();
  TransportResult tr = transport_tau(r, k);
  double scale = tr.tau.max_magnitude(), dev = 0;
  if (scale == 0) return 0;
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = mesh.edge_halfedge(edges[n]);
    Quaternion fi = Quaternion::pure(r.position(mesh.tail(h)));
    Quaternion fj = Quaternion::pure(r.position(mesh.head(h)));
    Quaternion tau = Quaternion::pure(k[n] * r.edge_vector(h));
    Quaternion a = fi * tau * fj.conj();
    Quaternion b = fj * tau * fi.conj();
    Quaternion want = Quaternion::pure(tr.tau.values()[n]);
    dev = std::max({dev, (a - want).norm() / scale, (b - want).norm() / scale});
  }
  return dev;
}

double circumcircle_angle(const Realization& r, int edge) {
  const SurfaceMesh& mesh = r.mesh();
  if (mesh.is_boundary_edge(edge)) throw Error("moebius", "circumcircle angle needs an interior edge");
  int h = mesh.edge_halfedge(edge);
  const Vec3 &pi = r.position(mesh.tail(h)), &pj = r.position(mesh.head(h));
  const Vec3 &pk = r.position(mesh.opposite_vertex(h)), &pl = r.position(mesh.opposite_vertex(mesh.twin(h)));
  auto flat = [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    return (b - a).cross(c - a).norm() <= 1e-14 * (b - a).norm() * (c - a).norm();
  };
  if (flat(pi, pj, pk) || flat(pj, pi, pl)) throw Error("moebius", "collinear face at edge " + std::to_string(edge));
  // Inversion centred at f_i sends both circles to lines through j'.
  auto inv = [&](const Vec3& p) { return Vec3((p - pi) / (p - pi).squaredNorm()); };
  Vec3 t1 = inv(pj) - inv(pk), t2 = inv(pl) - inv(pj);
  double c = t1.dot(t2) / (t1.norm() * t2.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Circumsphere circumsphere(const Realization& r, int edge, double degenerate_tol) {
  const SurfaceMesh& mesh = r.mesh();
  if (mesh.is_boundary_edge(edge)) throw Error("moebius", "circumsphere needs an interior edge");
  int h = mesh.edge_halfedge(edge);
  int ids[4] = {mesh.tail(h), mesh.head(h), mesh.opposite_vertex(h), mesh.opposite_vertex(mesh.twin(h))};
  Eigen::Matrix<double, 5, 4> V;
  for (int c = 0; c < 4; ++c) {
    Vec5 v = light_cone_lift(r.position(ids[c]));
    V.col(c) = v / v.norm();
  }
  Circumsphere out;
  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 4>> svd(V);
  const auto& sv = svd.singularValues();
  if (sv[3] < degenerate_tol * sv[0]) {
    out.degenerate = true;
    return out;
  }
  Vec5 cof;
  for (int m = 0; m < 5; ++m) {
    Lorentz D;
    D.leftCols<4>() = V;
    D.col(4) = Vec5::Unit(m);
    cof[m] = D.determinant();
  }
  Vec5 s = cof;
  s[4] = -s[4];
  double q = minkowski(s, s);
  if (!(q > 0)) {
    out.degenerate = true;
    return out;
  }
  out.s = s / std::sqrt(q);
  return out;
}

SphereAngle circumsphere_angle(const Realization& r, int edge1, int edge2) {
  Circumsphere a = circumsphere(r, edge1), b = circumsphere(r, edge2);
  if (a.degenerate || b.degenerate) return {true, 0.0};
  return {false, std::acos(std::clamp(minkowski(a.s, b.s), -1.0, 1.0))};
}

std::vector<std::pair<int, int>> neighboring_sphere_pairs(const SurfaceMesh& mesh) {
  std::vector<std::pair<int, int>> pairs;
  for (int f = 0; f < mesh.face_count(); ++f) {
    int e[3];
    int n = 0;
    for (int c = 0; c < 3; ++c) {
      int edge = mesh.edge_of(3 * f + c);
      if (!mesh.is_boundary_edge(edge)) e[n++] = edge;
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(std::min(e[a], e[b]), std::max(e[a], e[b]));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

AngleRates angle_rate(const Realization& r, const std::vector<Vec3>& fdot, AngleKind which, double eps) {
  const SurfaceMesh& mesh = r.mesh();
  auto moved = [&](double t) {
    std::vector<Vec3> p(r.positions());
    for (std::size_t v = 0; v < p.size(); ++v) p[v] += t * fdot[v];
    return r.with_positions(std::move(p));
  };
  // Angles of all items at one configuration; NaN marks a degenerate item.
  auto angles = [&](const Realization& q) {
    std::vector<double> out;
    if (which == AngleKind::circles) {
      for (int e : mesh.interior_edges()) {
        try {
          out.push_back(circumcircle_angle(q, e));
        } catch (const Error&) {
          out.push_back(NAN);
        }
      }
    } else {
      for (auto [a, b] : neighboring_sphere_pairs(mesh)) {
        SphereAngle s = circumsphere_angle(q, a, b);
        out.push_back(s.degenerate ? NAN : s.angle);
      }
    }
    return out;
  };

  auto p1 = angles(moved(eps)), m1 = angles(moved(-eps));
  auto p2 = angles(moved(eps / 2)), m2 = angles(moved(-eps / 2));
  AngleRates out;
  for (std::size_t n = 0; n < p1.size(); ++n) {
    if (std::isnan(p1[n]) || std::isnan(m1[n]) || std::isnan(p2[n]) || std::isnan(m2[n])) {
      ++out.skipped;
      continue;
    }
    double d1 = (p1[n] - m1[n]) / (2 * eps);
    double d2 = (p2[n] - m2[n]) / eps;
    double rich = (4 * d2 - d1) / 3;
    out.at_eps.push_back(d1);
    out.at_half.push_back(d2);
    out.richardson.push_back(rich);
    out.max_abs = std::max(out.max_abs, std::abs(rich));
  }
  return out;
}

Vec3 MoebiusVelocity::at(const Vec3& x) const {
  return a + omega.cross(x) + lambda * x + 2 * b.dot(x) * x - x.squaredNorm() * b;
}

std::vector<Vec3> MoebiusVelocity::at(const std::vector<Vec3>& xs) const {
  std::vector<Vec3> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(at(x));
  return out;
}

}  // namespace isoform
