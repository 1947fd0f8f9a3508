#include "isoform/quadnet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "isoform/isothermic.hpp"

namespace isoform {

QuadNet::QuadNet(int m, int n, std::vector<Vec3> pts) : M(m), N(n), points(std::move(pts)) {
  if (M < 2 || N < 2) throw Error("quadnet", "net needs at least 2 x 2 points");
  if (static_cast<int>(points.size()) != M * N)
    throw Error("quadnet", "expected " + std::to_string(M * N) + " points, got " + std::to_string(points.size()));
}

CrossRatio cross_ratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, double tol) {
  auto q = [](const Vec3& x) { return Quaternion::pure(x); };
  Vec3 ab = a - b, bc = b - c, cd = c - d, da = d - a;
  double scale = std::max({ab.norm(), bc.norm(), cd.norm(), da.norm()});
  for (const Vec3* e : {&ab, &bc, &cd, &da})
    if (!(e->norm() > 1e-14 * scale)) throw Error("quadnet", "coincident consecutive points in cross-ratio");
  CrossRatio out;
  out.q = q(ab) * q(bc).inverse() * q(cd) * q(da).inverse();
  out.imaginary = out.q.v.norm();
  out.real = out.imaginary < tol * (1 + out.q.norm());
  return out;
}

Factorization fit_factorization(const QuadNet& net, double tol) {
  const int QM = net.quads_m(), QN = net.quads_n();
  Factorization fac;
  std::vector<double> q(QM * QN);
  for (int n = 0; n < QN; ++n)
    for (int m = 0; m < QM; ++m) {
      CrossRatio cr = cross_ratio(net.at(m, n), net.at(m + 1, n), net.at(m + 1, n + 1), net.at(m, n + 1), tol);
      fac.max_imaginary = std::max(fac.max_imaginary, cr.imaginary);
      fac.all_real = fac.all_real && cr.real;
      q[n * QM + m] = cr.q.w;
    }

  // Unknowns: log|alpha_m| for all m, log|beta_n| for n >= 1.
  const int unknowns = QM + QN - 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(QM * QN, unknowns);
  Eigen::VectorXd b(QM * QN);
  for (int n = 0; n < QN; ++n)
    for (int m = 0; m < QM; ++m) {
      int row = n * QM + m;
      A(row, m) = 1;
      if (n > 0) A(row, QM + n - 1) = -1;
      b[row] = std::log(std::max(std::abs(q[row]), 1e-300));
    }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);

  fac.alpha.resize(QM);
  fac.beta.assign(QN, 1.0);
  for (int m = 0; m < QM; ++m) fac.alpha[m] = std::copysign(std::exp(x[m]), q[m]);
  const double s0 = q[0] < 0 ? -1.0 : 1.0;
  for (int n = 1; n < QN; ++n) fac.beta[n] = std::copysign(std::exp(x[QM + n - 1]), s0 * q[n * QM]);

  bool ok = fac.all_real;
  for (int n = 0; n < QN; ++n)
    for (int m = 0; m < QM; ++m) {
      double fit = fac.alpha[m] / fac.beta[n], actual = q[n * QM + m];
      double r = std::abs(actual - fit);
      fac.residual = std::max(fac.residual, r);
      if (r > tol * (1 + std::abs(actual))) ok = false;
    }
  fac.factorized = ok;
  return fac;
}

QuadDual quad_dual(const QuadNet& net, const Factorization& fac) {
  const int M = net.M, N = net.N;
  auto step = [](const Vec3& d) { return Vec3(d / d.squaredNorm()); };
  QuadDual out;
  out.points.assign(M * N, Vec3::Zero());
  for (int m = 0; m + 1 < M; ++m)
    out.points[net.index(m + 1, 0)] = out.points[net.index(m, 0)] + fac.alpha[m] * step(net.at(m + 1, 0) - net.at(m, 0));
  for (int n = 0; n + 1 < N; ++n)
    for (int m = 0; m < M; ++m)
      out.points[net.index(m, n + 1)] =
          out.points[net.index(m, n)] + fac.beta[n] * step(net.at(m, n + 1) - net.at(m, n));

  auto Fs = [&](int m, int n) -> const Vec3& { return out.points[net.index(m, n)]; };
  for (int n = 0; n + 1 < N; ++n)
    for (int m = 0; m + 1 < M; ++m) {
      const double a = fac.alpha[m], b = fac.beta[n];
      Vec3 loop = a * step(net.at(m + 1, n) - net.at(m, n)) + b * step(net.at(m + 1, n + 1) - net.at(m + 1, n)) -
                  a * step(net.at(m + 1, n + 1) - net.at(m, n + 1)) - b * step(net.at(m, n + 1) - net.at(m, n));
      double scale = std::max(std::abs(a), std::abs(b)) / (net.at(m + 1, n) - net.at(m, n)).norm();
      out.quad_closure.push_back(loop.norm() / scale);
      out.closure = std::max(out.closure, out.quad_closure.back());

      Vec3 d1 = Fs(m + 1, n) - Fs(m, n + 1);
      Vec3 e1 = (a - b) * step(net.at(m + 1, n + 1) - net.at(m, n));
      Vec3 d2 = Fs(m + 1, n + 1) - Fs(m, n);
      Vec3 e2 = (a - b) * step(net.at(m + 1, n) - net.at(m, n + 1));
      double ds = std::max({d1.norm(), d2.norm(), 1e-300});
      out.diagonal_residual = std::max({out.diagonal_residual, (d1 - e1).norm() / ds, (d2 - e2).norm() / ds});
    }
  return out;
}

Subdivision subdivide_and_rotate(const QuadNet& net, const QuadDual& dual, const std::vector<bool>& diagonals) {
  const int QM = net.quads_m(), QN = net.quads_n();
  if (static_cast<int>(diagonals.size()) != QM * QN) throw Error("quadnet", "need one diagonal flag per quad");
  std::vector<Triangle> tris;
  std::vector<Vec3> Z;
  for (int n = 0; n < QN; ++n)
    for (int m = 0; m < QM; ++m) {
      int A = net.index(m, n), B = net.index(m + 1, n), C = net.index(m + 1, n + 1), D = net.index(m, n + 1);
      if (diagonals[n * QM + m]) {
        tris.push_back({A, B, C});
        Z.push_back(dual.points[B]);
        tris.push_back({A, C, D});
        Z.push_back(dual.points[D]);
      } else {
        tris.push_back({B, C, D});
        Z.push_back(dual.points[C]);
        tris.push_back({B, D, A});
        Z.push_back(dual.points[A]);
      }
    }
  auto mesh = make_mesh(net.M * net.N, tris);
  if (mesh->reoriented_face_count() != 0) throw Error("quadnet", "subdivision produced inconsistent winding");
  Subdivision out{Realization(mesh, net.points), std::move(Z), diagonals, 0, {}, 0};

  double zmax = 0;
  for (const auto& z : out.Z) zmax = std::max(zmax, z.norm());
  for (int e : mesh->interior_edges()) {
    int h = mesh->edge_halfedge(e);
    Vec3 d = out.realization.edge_vector(h);
    Vec3 dz = out.Z[SurfaceMesh::face_of(h)] - out.Z[SurfaceMesh::face_of(mesh->twin(h))];
    if (zmax > 0) out.compatibility = std::max(out.compatibility, dz.cross(d).norm() / (zmax * d.norm()));
  }
  out.Hdot = vertex_mean_curvature_rate(out.realization, out.Z);
  for (double h : out.Hdot) out.max_Hdot = std::max(out.max_Hdot, std::abs(h));
  return out;
}

std::vector<bool> diagonal_pattern(const QuadNet& net, const std::string& pattern) {
  const int QM = net.quads_m(), QN = net.quads_n();
  std::vector<bool> d(QM * QN);
  if (pattern == "all-ne") {
    std::fill(d.begin(), d.end(), true);
  } else if (pattern == "all-nw") {
    std::fill(d.begin(), d.end(), false);
  } else if (pattern == "alternating") {
    for (int n = 0; n < QN; ++n)
      for (int m = 0; m < QM; ++m) d[n * QM + m] = (m + n) % 2 == 0;
  } else if (pattern.rfind("random:", 0) == 0) {
    std::mt19937_64 rng(std::stoull(pattern.substr(7)));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = coin(rng);
  } else {
    throw Error("quadnet", "unknown diagonal pattern '" + pattern + "'");
  }
  return d;
}

}  // namespace isoform
