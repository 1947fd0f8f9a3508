// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isoform/deform.hpp"
#include "isoform/generators.hpp"
#include "isoform/harmonic.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/kernels.hpp"
#include "isoform/minimal.hpp"
#include "isoform/moebius.hpp"
#include "isoform/quadnet.hpp"
#include "isoform/quaternion.hpp"

using namespace isoform;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Direct evaluation of the three defining equations for tau = k df, each
// normalized by the largest term that enters it.
struct DefiningResiduals {
  double closed = 0, cross = 0, sum = 0;
  double max() const { return std::max({closed, cross, sum}); }
};

DefiningResiduals defining_residuals(const Realization& r, const std::vector<Vec3>& tau_canonical) {
  const SurfaceMesh& m = r.mesh();
  auto tau = [&](int h) {
    Vec3 t = tau_canonical[m.interior_edge_index(m.edge_of(h))];
    return m.edge_halfedge(m.edge_of(h)) == h ? t : Vec3(-t);
  };
  double tmax = 0, pmax = 0;
  for (int e : m.interior_edges()) {
    int h = m.edge_halfedge(e);
    tmax = std::max(tmax, tau(h).norm());
    pmax = std::max(pmax, tau(h).norm() * r.edge_vector(h).norm());
  }
  DefiningResiduals out;
  if (tmax == 0) return out;
  for (int e : m.interior_edges()) {
    int h = m.edge_halfedge(e);
    Vec3 d = r.edge_vector(h);
    out.cross = std::max(out.cross, d.cross(tau(h)).norm() / (d.norm() * tmax));
  }
  for (int v : m.interior_vertices()) {
    Vec3 s = Vec3::Zero();
    double q = 0;
    for (int h : m.outgoing(v)) {
      s += tau(h);
      q += r.edge_vector(h).dot(tau(h));
    }
    out.closed = std::max(out.closed, s.norm() / tmax);
    out.sum = std::max(out.sum, std::abs(q) / pmax);
  }
  return out;
}

std::vector<Vec3> tau_from_k(const Realization& r, const std::vector<double>& k) {
  std::vector<Vec3> t;
  const auto edges = r.mesh().interior_edges();
  for (std::size_t n = 0; n < edges.size(); ++n) t.push_back(k[n] * r.edge_vector(r.mesh().edge_halfedge(edges[n])));
  return t;
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& A, double tol = 1e-10) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()[i] > tol * svd.singularValues()[0];
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd kernel_columns(const Eigen::MatrixXd& A, double tol = 1e-10) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s[i] > tol * s[0];
  return svd.matrixV().rightCols(A.cols() - r);
}

// Unit vectors of an infinitesimal Moebius algebra basis (10 fields).
std::vector<MoebiusVelocity> moebius_basis() {
  std::vector<MoebiusVelocity> out;
  for (int i = 0; i < 3; ++i) {
    MoebiusVelocity a, w, b;
    a.a[i] = 1;
    w.omega[i] = 1;
    b.b[i] = 1;
    out.push_back(a);
    out.push_back(w);
    out.push_back(b);
  }
  MoebiusVelocity s;
  s.lambda = 1;
  out.push_back(s);
  return out;
}

// sigma_e(fdot) = <d fdot, df>/l^2 on every edge, then L.
Eigen::VectorXd l_of_sigma(const Realization& r, const std::vector<Vec3>& fdot) {
  const SurfaceMesh& m = r.mesh();
  Eigen::VectorXd s(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    int h = m.edge_halfedge(e);
    Vec3 d = r.edge_vector(h);
    s[e] = (fdot[m.head(h)] - fdot[m.tail(h)]).dot(d) / d.squaredNorm();
  }
  return Eigen::MatrixXd(lcr_operator(m)) * s;
}

// Hdot on the halfedge h (from its tail outward), straight from the rotations.
double edge_hdot(const Realization& r, const std::vector<Vec3>& Z, int h) {
  const SurfaceMesh& m = r.mesh();
  return r.edge_vector(h).dot(Z[SurfaceMesh::face_of(h)] - Z[SurfaceMesh::face_of(m.twin(h))]);
}

Quaternion cross_ratio_q(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  auto P = [](const Vec3& x) { return Quaternion::pure(x); };
  return P(a - b) * P(b - c).inverse() * P(c - d) * P(d - a).inverse();
}

// Intersection angle of the circles (a, b, c) and (a, b, d) through a, b,
// from the argument of the cross ratio, folded into [0, pi/2].
double circle_angle_oracle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Quaternion q = cross_ratio_q(a, c, b, d);
  double ang = std::atan2(q.v.norm(), q.w);
  return std::min(ang, M_PI - ang);
}

QuadNet moebius_grid_net(int M, int N) {
  std::vector<double> xs{0}, ys{0};
  for (int m = 1; m < M; ++m) xs.push_back(xs.back() + 0.3 + 0.07 * m);
  for (int n = 1; n < N; ++n) ys.push_back(ys.back() + 0.25 + 0.05 * ((n * 7) % 3));
  MoebiusMap map = MoebiusMap::translation(Vec3(-0.4, 0.3, 0.9)).then(MoebiusMap::inversion());
  std::vector<Vec3> pts;
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m) pts.push_back(map.apply(Vec3(xs[m], ys[n], 0)));
  return QuadNet(M, N, pts);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n : {3, 5, 9}) {
    auto t0 = Clock::now();
    Domain d = grid_disk(n);
    const Realization& r = d.realization;
    SelfStressBasis b = isothermic_basis(r);
    const int vb = static_cast<int>(r.mesh().boundary_vertices().size());
    double worst = 0;
    for (const auto& k : b.stresses) worst = std::max(worst, defining_residuals(r, tau_from_k(r, k)).max());

    // Oracle: stresses from harmonic normal deformations with random
    // boundary data span a |V_b| - 3 dimensional space inside the basis.
    const int ne = static_cast<int>(r.mesh().interior_edges().size());
    Eigen::MatrixXd H(ne, vb);
    for (int c = 0; c < vb; ++c) {
      std::vector<double> bd(r.mesh().vertex_count());
      for (double& x : bd) x = U(rng);
      HarmonicNormalField f = harmonic_normal_deformation(r, solve_dirichlet(r, bd).u);
      const auto edges = r.mesh().interior_edges();
      for (int i = 0; i < ne; ++i) {
        int h = r.mesh().edge_halfedge(edges[i]);
        Vec3 dz = f.Z[SurfaceMesh::face_of(h)] - f.Z[SurfaceMesh::face_of(r.mesh().twin(h))];
        H(i, c) = dz.dot(r.edge_vector(h)) / r.edge_vector(h).squaredNorm();
      }
    }
    Eigen::MatrixXd Qh = orthonormal_columns(H, 1e-9);
    double contain = 0;
    if (b.nullity > 0) {
      Eigen::MatrixXd K(ne, b.nullity);
      for (int c = 0; c < b.nullity; ++c)
        for (int i = 0; i < ne; ++i) K(i, c) = b.stresses[c][i];
      Eigen::MatrixXd Qk = orthonormal_columns(K);
      contain = (Qh - Qk * (Qk.transpose() * Qh)).norm();
    }
    double secs = seconds_since(t0);
    o.detail << " n=" << n << ":nullity=" << b.nullity << "/bound=" << vb - 3 << ",harmonic_dim=" << Qh.cols()
             << ",res=" << worst << ",t=" << secs << "s";
    o.require(b.nullity >= vb - 3, "nullity bound n=" + std::to_string(n));
    o.require(Qh.cols() == vb - 3, "harmonic stress dimension n=" + std::to_string(n));
    o.require(contain < 1e-8, "harmonic stresses in basis span n=" + std::to_string(n));
    o.require(worst < 1e-8, "residuals n=" + std::to_string(n));
    o.require(secs < 5, "runtime n=" + std::to_string(n));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  Domain d = grid_disk(15);
  const Realization& r = d.realization;
  std::vector<double> xy(r.mesh().vertex_count()), x2(r.mesh().vertex_count());
  for (int v = 0; v < r.mesh().vertex_count(); ++v) {
    xy[v] = r.position(v).x() * r.position(v).y();
    x2[v] = r.position(v).x() * r.position(v).x();
  }
  HarmonicNormalField f = harmonic_normal_deformation(r, solve_dirichlet(r, xy).u);
  double hmax = 0;
  for (double h : f.Hdot) hmax = std::max(hmax, std::abs(h));
  double lrate = 0;
  for (int e = 0; e < r.mesh().edge_count(); ++e) {
    int h = r.mesh().edge_halfedge(e);
    lrate = std::max(lrate, std::abs((f.fdot[r.mesh().head(h)] - f.fdot[r.mesh().tail(h)]).dot(r.edge_vector(h))) /
                                r.edge_length(e));
  }
  // Oracle: central difference of the integrated mean curvature.
  auto vertex_H = [&](double eps) {
    std::vector<Vec3> p = r.positions();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += eps * f.fdot[i];
    return mean_curvature(r.with_positions(p)).vertex_H;
  };
  const double eps = 1e-6;
  auto hp = vertex_H(eps), hm = vertex_H(-eps);
  double fd_gap = 0, fd_max = 0;
  for (int v : r.mesh().interior_vertices()) fd_max = std::max(fd_max, std::abs(hp[v] - hm[v]) / (2 * eps));

  HarmonicNormalField g = harmonic_normal_deformation(r, x2);
  double gmax = 0;
  for (double h : g.Hdot) gmax = std::max(gmax, std::abs(h));
  {
    std::vector<Vec3> pp = r.positions(), pm = r.positions();
    for (std::size_t i = 0; i < pp.size(); ++i) {
      pp[i] += eps * g.fdot[i];
      pm[i] -= eps * g.fdot[i];
    }
    auto a = mean_curvature(r.with_positions(pp)).vertex_H, b = mean_curvature(r.with_positions(pm)).vertex_H;
    for (int v : r.mesh().interior_vertices()) {
      double fd = (a[v] - b[v]) / (2 * eps);
      fd_gap = std::max(fd_gap, std::abs(fd - g.Hdot[r.mesh().interior_vertex_index(v)]));
    }
  }
  o.detail << " xy:max|Hdot|=" << hmax << ",fd|Hdot|=" << fd_max << ",length_rate=" << lrate
           << " x^2:max|Hdot|=" << gmax << ",fd_gap=" << fd_gap;
  o.require(hmax < 1e-9, "harmonic Hdot");
  o.require(fd_max < 1e-6, "finite-difference Hdot for harmonic u");
  o.require(lrate < 1e-11, "edge length rate");
  o.require(gmax > 1e-3, "non-harmonic Hdot");
  o.require(fd_gap < 1e-6 * std::max(1.0, gmax), "finite-difference agreement for x^2");
  return o;
}

Outcome criterion3() {
  Outcome o;
  Domain d = grid_disk(5);
  const Realization& base = d.realization;
  SelfStressBasis b = isothermic_basis(base);
  if (b.stresses.empty()) {
    o.require(false, "no stress on the grid");
    return o;
  }
  std::vector<double> k(b.stresses[0].size(), 0.0);
  std::mt19937 rng(5);
  std::normal_distribution<double> G;
  for (const auto& s : b.stresses) {
    double c = G(rng);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] += c * s[i];
  }
  const MoebiusMap shift = MoebiusMap::translation(Vec3(0, 0, 2));
  const Realization r = apply(shift, base);
  TransportResult tr = transport_stress(base, k, shift.then(MoebiusMap::inversion()));
  DefiningResiduals lib = defining_residuals(tr.image, tr.tau.values());

  // Oracle: tau~ = k |f_i|^2 |f_j|^2 d(f^-1), evaluated directly.
  const SurfaceMesh& m = r.mesh();
  const auto edges = m.interior_edges();
  auto finv = [](const Vec3& x) { return Vec3(-x / x.squaredNorm()); };
  std::vector<Vec3> tt;
  double qdev = 0, tscale = 0, tgap = 0;
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = m.edge_halfedge(edges[n]);
    const Vec3 &fi = r.position(m.tail(h)), &fj = r.position(m.head(h));
    tt.push_back(k[n] * fi.squaredNorm() * fj.squaredNorm() * (finv(fj) - finv(fi)));
    tscale = std::max(tscale, tt.back().norm());
  }
  Realization inv = r.with_positions([&] {
    std::vector<Vec3> p;
    for (const auto& x : r.positions()) p.push_back(finv(x));
    return p;
  }());
  DefiningResiduals ora = defining_residuals(inv, tt);
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int h = m.edge_halfedge(edges[n]);
    Quaternion fi = Quaternion::pure(r.position(m.tail(h))), fj = Quaternion::pure(r.position(m.head(h)));
    Quaternion tau = Quaternion::pure(k[n] * r.edge_vector(h));
    Quaternion a = fi * tau * fj.conj(), c = fj * tau * fi.conj();
    Quaternion want = Quaternion::pure(tt[n]);
    qdev = std::max({qdev, (a - want).norm() / tscale, (c - want).norm() / tscale});
    tgap = std::max(tgap, (tr.tau.values()[n] - tt[n]).norm() / tscale);
  }
  double lib_q = quaternion_transport_deviation(r, k);
  o.detail << " transported_res=" << lib.max() << ",oracle_res=" << ora.max() << ",lib_vs_oracle=" << tgap
           << ",quaternion_dev=" << qdev << ",lib_quaternion_dev=" << lib_q;
  o.require(lib.max() < 1e-7, "transported residual");
  o.require(ora.max() < 1e-7, "oracle residual");
  o.require(tgap < 1e-10, "transport matches the k |f_i|^2 |f_j|^2 formula");
  o.require(qdev < 1e-10 && lib_q < 1e-10, "quaternion identity");
  return o;
}

Outcome criterion4() {
  Outcome o;
  struct Case {
    const char* name;
    Realization r;
    bool expect_iso;
  };
  std::vector<Case> cases{{"tetra", platonic(Platonic::tetra), false},
                          {"jessen", jessen(), true},
                          {"octa", platonic(Platonic::octa), false},
                          {"icosa", platonic(Platonic::icosa), false}};
  for (const auto& c : cases) {
    ConformalDimension cd = conformal_dimension(c.r);
    int bound = c.r.mesh().vertex_count() + 6;  // |V| - 6g + 6 with g = 0
    // Oracle: the 10 Moebius velocity fields lie in the kernel of L o sigma.
    double mob = 0;
    Eigen::MatrixXd F(3 * c.r.mesh().vertex_count(), 10);
    int col = 0;
    for (const auto& w : moebius_basis()) {
      auto fd = w.at(c.r.positions());
      for (int v = 0; v < c.r.mesh().vertex_count(); ++v) F.block<3, 1>(3 * v, col) = fd[v];
      ++col;
      mob = std::max(mob, l_of_sigma(c.r, fd).cwiseAbs().maxCoeff());
    }
    int mob_rank = static_cast<int>(orthonormal_columns(F).cols());
    o.detail << " " << c.name << ":dim=" << cd.kernel_dimension << ",bound=" << bound << ",verdict="
             << to_string(cd.verdict) << ",moebius_rank=" << mob_rank << ",moebius_res=" << mob;
    o.require(cd.bound == bound, std::string("bound ") + c.name);
    o.require(mob_rank == 10 && mob < 1e-10, std::string("Moebius fields in kernel ") + c.name);
    bool iso = cd.verdict == Verdict::isothermic;
    o.require(iso == c.expect_iso, std::string("verdict ") + c.name);
    if (c.expect_iso)
      o.require(cd.kernel_dimension > bound, std::string("exceeds bound ") + c.name);
    else
      o.require(cd.kernel_dimension == bound, std::string("meets bound ") + c.name);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto which : {Platonic::tetra, Platonic::icosa}) {
    Realization r = platonic(which);
    const SurfaceMesh& m = r.mesh();
    Eigen::MatrixXd L = lcr_operator(m);
    double skew = 0;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd a = Eigen::VectorXd::NullaryExpr(m.edge_count(), [&] { return U(rng); });
      Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(m.edge_count(), [&] { return U(rng); });
      skew = std::max(skew, std::abs(a.dot(L * b) + (L * a).dot(b)));
    }
    // Ker L = {u_i + u_j}; Im L = {a : sum_j a_ij = 0 at every vertex}.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m.vertex_count(), m.edge_count());
    for (int e = 0; e < m.edge_count(); ++e) {
      int h = m.edge_halfedge(e);
      B(m.tail(h), e) = 1;
      B(m.head(h), e) = 1;
    }
    auto proj = [](const Eigen::MatrixXd& Q) { return Eigen::MatrixXd(Q * Q.transpose()); };
    Eigen::MatrixXd Pker = proj(kernel_columns(L)), Pu = proj(orthonormal_columns(B.transpose()));
    Eigen::MatrixXd Pim = proj(orthonormal_columns(L)), Pz = proj(kernel_columns(B));
    double rk = (Pker - Pu).cwiseAbs().maxCoeff(), ri = (Pim - Pz).cwiseAbs().maxCoeff();
    int rank = static_cast<int>(orthonormal_columns(L).cols());
    const char* name = which == Platonic::tetra ? "tetra" : "icosa";
    o.detail << " " << name << ":skew=" << skew << ",ker_res=" << rk << ",im_res=" << ri << ",rank=" << rank
             << "(|E|-|V|=" << m.edge_count() - m.vertex_count() << ")";
    o.require(skew < 1e-12, std::string("skew ") + name);
    o.require(rk < 1e-10 && ri < 1e-10, std::string("projectors ") + name);
    o.require(rank == m.edge_count() - m.vertex_count(), std::string("rank ") + name);
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto t0 = Clock::now();
  auto check = [&](const char* name, const Domain& d, const std::vector<double>& bd, double radius) {
    WeierstrassConfig cfg;
    cfg.stereographic_radius = radius;
    WeierstrassResult w = weierstrass(d.realization, bd, d.seam, cfg);
    // Oracle: recompute duality sums and parallelism from f* directly.
    const Realization& g = w.surface.source;
    const SurfaceMesh& m = g.mesh();
    const auto& fs = w.surface.fstar;
    double dmax = 0, pmax = 0, par = 0, dual = 0;
    for (int e : m.interior_edges()) {
      int h = m.edge_halfedge(e);
      Vec3 ds = fs[SurfaceMesh::face_of(h)] - fs[SurfaceMesh::face_of(m.twin(h))];
      dmax = std::max(dmax, ds.norm());
      pmax = std::max(pmax, ds.norm() * g.edge_vector(h).norm());
    }
    for (int e : m.interior_edges()) {
      int h = m.edge_halfedge(e);
      Vec3 ds = fs[SurfaceMesh::face_of(h)] - fs[SurfaceMesh::face_of(m.twin(h))], df = g.edge_vector(h);
      if (ds.norm() > 1e-10 * dmax)
        par = std::max(par, std::asin(std::min(1.0, ds.cross(df).norm() / (ds.norm() * df.norm()))));
    }
    for (int v : m.interior_vertices()) {
      double s = 0;
      for (int h : m.outgoing(v)) s += g.edge_vector(h).dot(fs[SurfaceMesh::face_of(h)] - fs[SurfaceMesh::face_of(m.twin(h))]);
      dual = std::max(dual, std::abs(s) / pmax);
    }
    o.detail << " " << name << ":parallel=" << par << ",closure=" << w.relative_closure << ",duality=" << dual
             << ",zero_dual_edges=" << w.surface.parallel.zero_edges;
    o.require(par < 1e-7 && w.surface.parallel.max_deviation < 1e-7, std::string("parallelism ") + name);
    o.require(w.relative_closure < 1e-8, std::string("closure ") + name);
    o.require(dual < 1e-8 && w.surface.duality_sum < 1e-8, std::string("duality ") + name);
    return w;
  };

  Domain sq = square_domain(21, 1.0);
  std::vector<double> bxy(sq.realization.mesh().vertex_count());
  for (int v = 0; v < (int)bxy.size(); ++v) bxy[v] = sq.realization.position(v).x() * sq.realization.position(v).y();
  check("enneper", sq, bxy, 1.0);

  const int nt = 24, nr = 8;
  const double rin = 0.5, rout = 2.0;
  Domain an = cut_annulus(rin, rout, nr, nt);
  std::vector<double> barg(an.theta), blog(an.r.size());
  for (std::size_t v = 0; v < blog.size(); ++v) blog[v] = std::log(an.r[v]);
  WeierstrassResult cat = check("catenoid(arg z)", an, barg, std::sqrt(rin * rout));
  check("helicoid(log|z|)", an, blog, std::sqrt(rin * rout));

  // n-fold symmetry of the catenoid: f*(F_{k,c+1}) = R f*(F_{k,c}) + t for
  // every column step including the step across the cut.
  const double a = 2 * M_PI / nt;
  Eigen::Matrix3d R;
  R << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  auto F = [&](int k, int c, int s) { return cat.surface.fstar[2 * (k * nt + ((c % nt + nt) % nt)) + s]; };
  Vec3 t = F(1, 1, 0) - R * F(1, 0, 0);
  double sym = 0, scale = 0;
  for (const auto& p : cat.surface.fstar) scale = std::max(scale, p.norm());
  for (int k = 0; k + 1 < nr; ++k)
    for (int c = 0; c < nt; ++c)
      for (int s = 0; s < 2; ++s) sym = std::max(sym, (F(k, c + 1, s) - R * F(k, c, s) - t).norm() / scale);
  double secs = seconds_since(t0);
  o.detail << " catenoid_symmetry=" << sym << " t=" << secs << "s";
  o.require(sym < 1e-7, "catenoid symmetry");
  o.require(secs < 30, "runtime");
  return o;
}

Outcome criterion7() {
  Outcome o;
  // Planar rectangular grid with irregular spacing.
  {
    std::vector<Vec3> pts;
    const int M = 6, N = 5;
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < M; ++m) pts.emplace_back(0.3 * m + 0.05 * m * m, 0.4 * n + 0.02 * n * n * n, 0);
    QuadNet net(M, N, pts);
    Factorization fac = fit_factorization(net);
    QuadDual dual = quad_dual(net, fac);
    double qmax = 0;
    for (double q : dual.quad_closure) qmax = std::max(qmax, q);
    o.detail << " planar:factorized=" << fac.factorized << ",closure=" << qmax;
    o.require(fac.factorized, "planar grid factorizes");
    o.require(qmax < 1e-12, "planar dual closure");
  }

  QuadNet net = moebius_grid_net(6, 6);
  Factorization fac = fit_factorization(net);
  QuadDual dual = quad_dual(net, fac);
  o.require(fac.factorized, "Moebius grid factorizes");

  // Oracle: cross ratios equal alpha_m / beta_n, and the dual satisfies the
  // edge and diagonal formulas.
  double cr_gap = 0, edge_gap = 0, diag_gap = 0, fscale = 0;
  for (const auto& p : dual.points) fscale = std::max(fscale, p.norm());
  auto Fs = [&](int m, int n) { return dual.points[net.index(m, n)]; };
  auto inv2 = [](const Vec3& v) { return Vec3(v / v.squaredNorm()); };
  for (int n = 0; n + 1 < net.N; ++n)
    for (int m = 0; m + 1 < net.M; ++m) {
      Quaternion q = cross_ratio_q(net.at(m, n), net.at(m + 1, n), net.at(m + 1, n + 1), net.at(m, n + 1));
      double want = fac.alpha[m] / fac.beta[n];
      cr_gap = std::max(cr_gap, std::hypot(q.w - want, q.v.norm()) / std::abs(want));
      edge_gap = std::max({edge_gap,
                           (Fs(m + 1, n) - Fs(m, n) - fac.alpha[m] * inv2(net.at(m + 1, n) - net.at(m, n))).norm() / fscale,
                           (Fs(m, n + 1) - Fs(m, n) - fac.beta[n] * inv2(net.at(m, n + 1) - net.at(m, n))).norm() / fscale});
      double ab = fac.alpha[m] - fac.beta[n];
      diag_gap = std::max(
          {diag_gap, (Fs(m + 1, n) - Fs(m, n + 1) - ab * inv2(net.at(m + 1, n + 1) - net.at(m, n))).norm() / fscale,
           (Fs(m + 1, n + 1) - Fs(m, n) - ab * inv2(net.at(m + 1, n) - net.at(m, n + 1))).norm() / fscale});
    }
  o.detail << " moebius_grid:cross_ratio_gap=" << cr_gap << ",edge_gap=" << edge_gap << ",diagonal_gap=" << diag_gap;
  o.require(cr_gap < 1e-10, "cross ratio factorization");
  o.require(edge_gap < 1e-12, "dual edge formulas");
  o.require(diag_gap < 1e-12, "diagonal identities");

  // 16 diagonal configurations around the interior vertex (2, 2).
  const int vm = 2, vn = 2, QM = net.quads_m();
  const int quads[4] = {vn * QM + vm, vn * QM + vm - 1, (vn - 1) * QM + vm - 1, (vn - 1) * QM + vm};  // NE NW SW SE
  const double a0 = fac.alpha[vm], a1 = fac.alpha[vm - 1], b0 = fac.beta[vn], b1 = fac.beta[vn - 1];
  double hsum = 0, hscale = std::max({std::abs(a0), std::abs(a1), std::abs(b0), std::abs(b1)}), table_gap = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<bool> diag(QM * net.quads_n(), true);
    for (int q = 0; q < 4; ++q) diag[quads[q]] = (mask >> q) & 1;
    Subdivision s = subdivide_and_rotate(net, dual, diag);
    const SurfaceMesh& m = s.realization.mesh();
    int c = net.index(vm, vn);
    double sum = 0;
    for (int h : m.outgoing(c)) sum += edge_hdot(s.realization, s.Z, h);
    hsum = std::max(hsum, std::abs(sum) / hscale);
    o.require(std::abs(s.Hdot[m.interior_vertex_index(c)] - sum) < 1e-12 * hscale, "library Hdot agrees");

    auto at = [&](int dm, int dn) { return edge_hdot(s.realization, s.Z, m.halfedge_between(c, net.index(vm + dm, vn + dn))); };
    // Table rows: no diagonal through F_mn gives zero on all quad edges; NE
    // and SW diagonals through F_mn give the row
    // (a_m, -a_m + b_n, -b_n, a_{m-1}, -a_{m-1} + b_{n-1}, -b_{n-1}).
    // The NE diagonal always carries -a_m + b_n, the SE one a_m - b_{n-1}.
    bool ne = diag[quads[0]], nw = !diag[quads[1]], sw = diag[quads[2]], se = !diag[quads[3]];
    if (!ne && !nw && !sw && !se)
      table_gap = std::max({table_gap, std::abs(at(1, 0)), std::abs(at(0, 1)), std::abs(at(-1, 0)), std::abs(at(0, -1))});
    if (ne && sw && !nw && !se)
      table_gap = std::max({table_gap, std::abs(at(1, 0) - a0), std::abs(at(1, 1) - (-a0 + b0)), std::abs(at(0, 1) + b0),
                            std::abs(at(-1, 0) - a1), std::abs(at(-1, -1) - (-a1 + b1)), std::abs(at(0, -1) + b1)});
    if (ne) table_gap = std::max(table_gap, std::abs(at(1, 1) - (-a0 + b0)));
    if (se) table_gap = std::max(table_gap, std::abs(at(1, -1) - (a0 - b1)));
  }
  table_gap /= hscale;
  o.detail << " 16_configs:max|Hdot_i|=" << hsum << ",table_gap=" << table_gap;
  o.require(hsum < 1e-10, "Hdot over 16 configurations");
  o.require(table_gap < 1e-10, "per-edge table values");

  // Deformation of quad edges does not depend on the diagonals.
  std::vector<std::vector<Vec3>> fd;
  for (const char* pat : {"all-ne", "all-nw", "alternating", "random:7"}) {
    Subdivision s = subdivide_and_rotate(net, dual, diagonal_pattern(net, pat));
    fd.push_back(isometric_from_rotations(s.realization, s.Z).fdot);
  }
  double dep = 0, fscale2 = 0;
  for (const auto& f : fd)
    for (const auto& v : f) fscale2 = std::max(fscale2, v.norm());
  for (std::size_t p = 1; p < fd.size(); ++p)
    for (int n = 0; n < net.N; ++n)
      for (int m = 0; m < net.M; ++m) {
        int i = net.index(m, n);
        if (m + 1 < net.M) {
          int j = net.index(m + 1, n);
          dep = std::max(dep, ((fd[p][j] - fd[p][i]) - (fd[0][j] - fd[0][i])).norm() / fscale2);
        }
        if (n + 1 < net.N) {
          int j = net.index(m, n + 1);
          dep = std::max(dep, ((fd[p][j] - fd[p][i]) - (fd[0][j] - fd[0][i])).norm() / fscale2);
        }
      }
  o.detail << " diagonal_independence=" << dep;
  o.require(dep < 1e-12, "quad-edge deformation independent of diagonals");
  return o;
}

Outcome criterion8() {
  Outcome o;
  CylinderParams p;
  CylinderFlex fx = cylinder_flex(p);
  // Oracle: move the parameters along the kernel direction and measure the
  // class edge lengths and vertex mean curvature on a fresh window.
  using V5 = Eigen::Matrix<double, 5, 1>;
  const V5 x0 = p.vector(), k = fx.kernel.empty() ? V5::Zero() : fx.kernel.front();
  auto mu = [&](double lam) {
    CylinderWindow w = homogeneous_cylinder(CylinderParams::from_vector(x0 + lam * k, 2));
    return Eigen::Vector4d(w.la, w.lb, w.lc, w.H);
  };
  const double lam = 1e-3;
  Eigen::Vector4d m0 = mu(0);
  double c1 = (mu(lam) - m0).cwiseAbs().maxCoeff(), c2 = (mu(lam / 2) - m0).cwiseAbs().maxCoeff();
  double order = std::log2(c1 / c2);
  CylinderWindow win = homogeneous_cylinder(p);
  SelfStressBasis b = isothermic_basis(win.realization);
  o.detail << " rank=" << fx.rank << ",kernel_dim=" << fx.kernel.size() << ",observed_order=" << fx.observed_order
           << ",oracle_order=" << order << ",window_nullity=" << b.nullity << ",verdict=" << to_string(b.verdict);
  o.require(fx.rank == 4, "Jacobian rank");
  o.require(fx.kernel.size() == 1, "kernel dimension");
  o.require(fx.observed_order >= 1.9 && order >= 1.9, "observed order");
  o.require(b.nullity >= 1 && b.verdict == Verdict::isothermic, "window isothermic");
  return o;
}

Outcome criterion9() {
  Outcome o;
  Domain d = grid_disk(6);
  std::vector<Vec3> p = d.realization.positions();
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto& x : p) x.z() = 0.4 * x.x() * x.x() - 0.3 * x.y() + 0.2 * x.x() * x.y() + 0.02 * U(rng);
  Realization r = d.realization.with_positions(p);
  const SurfaceMesh& m = r.mesh();

  // Oracle circle angle from the quaternionic cross ratio.
  auto oracle_angles = [&](const std::vector<Vec3>& q) {
    std::vector<double> a;
    for (int e : m.interior_edges()) {
      int h = m.edge_halfedge(e);
      a.push_back(circle_angle_oracle(q[m.tail(h)], q[m.head(h)], q[m.opposite_vertex(h)],
                                      q[m.opposite_vertex(m.twin(h))]));
    }
    return a;
  };
  double agree = 0;
  {
    auto a = oracle_angles(p);
    const auto edges = m.interior_edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      double lib = circumcircle_angle(r, edges[i]);
      agree = std::max(agree, std::abs(std::min(lib, M_PI - lib) - a[i]));
    }
  }
  const double eps = 1e-5;
  auto oracle_rate = [&](const std::vector<Vec3>& fd) {
    std::vector<Vec3> qp = p, qm = p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      qp[i] += eps * fd[i];
      qm[i] -= eps * fd[i];
    }
    auto ap = oracle_angles(qp), am = oracle_angles(qm);
    double mx = 0;
    for (std::size_t i = 0; i < ap.size(); ++i) mx = std::max(mx, std::abs(ap[i] - am[i]) / (2 * eps));
    return mx;
  };

  double mob_c = 0, mob_s = 0, mob_o = 0;
  for (int t = 0; t < 5; ++t) {
    MoebiusVelocity w;
    w.a = Vec3(U(rng), U(rng), U(rng));
    w.omega = Vec3(U(rng), U(rng), U(rng));
    w.lambda = U(rng);
    w.b = 0.5 * Vec3(U(rng), U(rng), U(rng));
    auto fd = w.at(p);
    mob_c = std::max(mob_c, angle_rate(r, fd, AngleKind::circles, eps).max_abs);
    mob_s = std::max(mob_s, angle_rate(r, fd, AngleKind::spheres, eps).max_abs);
    mob_o = std::max(mob_o, oracle_rate(fd));
  }
  std::vector<Vec3> rnd(p.size());
  for (auto& v : rnd) v = Vec3(U(rng), U(rng), U(rng));
  double rc = angle_rate(r, rnd, AngleKind::circles, eps).max_abs;
  double rs = angle_rate(r, rnd, AngleKind::spheres, eps).max_abs;
  double ro = oracle_rate(rnd);
  o.detail << " oracle_agreement=" << agree << " moebius:circles=" << mob_c << ",spheres=" << mob_s
           << ",oracle=" << mob_o << " random:circles=" << rc << ",spheres=" << rs << ",oracle=" << ro;
  o.require(agree < 1e-9, "circle angle oracle agreement");
  o.require(mob_c < 1e-6 && mob_s < 1e-6 && mob_o < 1e-6, "Moebius rates");
  o.require(rc > 1e-2 && rs > 1e-2 && ro > 1e-2, "random rates");
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (auto [name, r] : std::vector<std::pair<std::string, Realization>>{{"tetra", platonic(Platonic::tetra)},
                                                                         {"octa", platonic(Platonic::octa)},
                                                                         {"icosa", platonic(Platonic::icosa)},
                                                                         {"jessen", jessen()}}) {
    InscribedReport ir = inscribed_diagnostics(r);
    // Oracle: rigidity corank from the rigidity matrix built here.
    const SurfaceMesh& m = r.mesh();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m.edge_count(), 3 * m.vertex_count());
    for (int e = 0; e < m.edge_count(); ++e) {
      int h = m.edge_halfedge(e);
      Vec3 d = r.edge_vector(h);
      A.block<1, 3>(e, 3 * m.tail(h)) = -d.transpose();
      A.block<1, 3>(e, 3 * m.head(h)) = d.transpose();
    }
    int corank = static_cast<int>(kernel_columns(A, 1e-9).cols());
    bool iso = isothermic_basis(r).verdict == Verdict::isothermic;
    o.detail << " " << name << ":corank=" << corank << ",flexible=" << (corank > 6) << ",isothermic=" << iso;
    o.require(ir.rigidity_corank == corank, "library corank " + name);
    o.require((corank > 6) == iso, "flexible iff isothermic " + name);

    if (name == "jessen") {
      // Euclidean stresses: sum_j k df = 0 at every vertex.
      const auto edges = m.interior_edges();
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3 * m.vertex_count(), edges.size());
      for (std::size_t c = 0; c < edges.size(); ++c) {
        int h = m.edge_halfedge(edges[c]);
        Vec3 d = r.edge_vector(h);
        S.block<3, 1>(3 * m.tail(h), c) += d;
        S.block<3, 1>(3 * m.head(h), c) -= d;
      }
      Eigen::MatrixXd K = kernel_columns(S, 1e-9);
      double sum_kl2 = 0;
      for (int c = 0; c < K.cols(); ++c) {
        double s = 0, sc = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
          double l2 = r.edge_vector(m.edge_halfedge(edges[i])).squaredNorm();
          s += K(i, c) * l2;
          sc += std::abs(K(i, c)) * l2;
        }
        sum_kl2 = std::max(sum_kl2, std::abs(s) / sc);
      }
      o.detail << ",euclidean_stresses=" << K.cols() << ",sum_k_l2=" << sum_kl2;
      o.require(K.cols() >= 1, "Jessen has a Euclidean stress");
      o.require(sum_kl2 < 1e-9, "sum k |df|^2 on Jessen");

      std::mt19937 rng(2024);
      std::uniform_real_distribution<double> U(-1, 1);
      const int base = isothermic_basis(r).nullity;
      int same = 0;
      for (int t = 0; t < 20; ++t) {
        Vec3 c;
        double dmin;
        do {  // inversion centre at least 0.2 away from every vertex
          c = 1.5 * Vec3(U(rng), U(rng), U(rng));
          dmin = INFINITY;
          for (const auto& x : r.positions()) dmin = std::min(dmin, (x - c).norm());
        } while (dmin < 0.2);
        Vec3 axis(U(rng), U(rng), U(rng));
        MoebiusMap map = MoebiusMap::translation(-c)
                             .then(MoebiusMap::inversion())
                             .then(MoebiusMap::rotation(Eigen::AngleAxisd(3 * U(rng), axis.normalized()).toRotationMatrix()))
                             .then(MoebiusMap::scaling(1.5 + U(rng)))
                             .then(MoebiusMap::translation(Vec3(U(rng), U(rng), U(rng))));
        SelfStressBasis b = isothermic_basis(apply(map, r));
        same += b.nullity == base && b.verdict == Verdict::isothermic;
      }
      o.detail << ",moebius_invariant=" << same << "/20";
      o.require(same == 20, "nullity invariant under Moebius maps");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 planar grid nullity", criterion1},         {"2 harmonic normal deformation", criterion2},
      {"3 Moebius transport", criterion3},           {"4 closed-surface dimension", criterion4},
      {"5 operator L structure", criterion5},        {"6 minimal surfaces", criterion6},
      {"7 quad nets", criterion7},                   {"8 homogeneous cylinder", criterion8},
      {"9 angle preservation", criterion9},          {"10 inscribed equivalence", criterion10}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " exception: " << e.what();
    }
    std::printf("%s criterion %s:%s\n", o.ok ? "PASS" : "FAIL", name, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
