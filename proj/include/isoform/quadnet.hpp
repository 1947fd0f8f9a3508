#pragma once

#include <string>
#include <vector>

#include "isoform/mesh.hpp"
#include "isoform/quaternion.hpp"

namespace isoform {

/// Grid of M x N points F(m, n), m in [0, M), n in [0, N), stored with m
/// fastest. Elementary quads are (m, n), (m+1, n), (m+1, n+1), (m, n+1).
struct QuadNet {
  int M = 0;
  int N = 0;
  std::vector<Vec3> points;

  QuadNet(int m, int n, std::vector<Vec3> pts);
  int index(int m, int n) const { return n * M + m; }
  const Vec3& at(int m, int n) const { return points[index(m, n)]; }
  int quads_m() const { return M - 1; }
  int quads_n() const { return N - 1; }
};

struct CrossRatio {
  Quaternion q;
  bool real = false;
  double imaginary = 0;
};

/// (a - b)(b - c)^-1 (c - d)(d - a)^-1 with R^3 as the pure quaternions.
/// real iff |Im q| < tol (1 + |q|). Throws Error("quadnet") for coincident
/// consecutive points.
CrossRatio cross_ratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, double tol = 1e-10);

struct Factorization {
  std::vector<double> alpha;  // M - 1 values
  std::vector<double> beta;   // N - 1 values, beta[0] = 1
  /// max |q_mn - alpha_m / beta_n| over all quads.
  double residual = 0;
  /// max |Im q| over all quads.
  double max_imaginary = 0;
  bool all_real = true;
  bool factorized = false;
};

/// Least-squares fit of log|q_mn| = log|alpha_m| - log|beta_n| with beta_0 = 1
/// and signs taken from the first row and column.
Factorization fit_factorization(const QuadNet& net, double tol = 1e-10);

struct QuadDual {
  std::vector<Vec3> points;  // same indexing as the net
  /// Per-quad closure of the four dual increments.
  std::vector<double> quad_closure;
  double closure = 0;
  /// Max residual of the two diagonal identities.
  double diagonal_residual = 0;
};

/// Integrates F*_{m+1,n} - F*_{m,n} = alpha_m dF / |dF|^2 and
/// F*_{m,n+1} - F*_{m,n} = beta_n dF / |dF|^2 from F*_{0,0} = 0: along n = 0
/// first, then up each column.
QuadDual quad_dual(const QuadNet& net, const Factorization& fac);

struct Subdivision {
  Realization realization;
  std::vector<Vec3> Z;
  /// Per-quad diagonal: true for A-C, false for B-D.
  std::vector<bool> diagonals;
  /// max |(Z_left - Z_right) x df| / (max|Z| l).
  double compatibility = 0;
  std::vector<double> Hdot;
  double max_Hdot = 0;
};

/// Splits each quad ABCD (A = F_mn, B = F_m+1,n, C = F_m+1,n+1, D = F_m,n+1)
/// along A-C into ABC, ACD with Z = B*, D*, or along B-D into BCD, BDA with
/// Z = C*, A*. diagonals holds one flag per quad, quad (m, n) at n*(M-1)+m.
Subdivision subdivide_and_rotate(const QuadNet& net, const QuadDual& dual, const std::vector<bool>& diagonals);

/// Diagonal patterns for the CLI: all-ne (A-C), all-nw (B-D), alternating
/// (checkerboard) and random with a seed.
std::vector<bool> diagonal_pattern(const QuadNet& net, const std::string& pattern);

}  // namespace isoform
